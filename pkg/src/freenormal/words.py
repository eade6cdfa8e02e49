"""
Freely reduced words in a free group of finite rank.

A word is stored as a tuple of nonzero signed integers: ``+(i + 1)`` is the
generator with index ``i`` and ``-(i + 1)`` its inverse.  The compact text form
writes generator ``i`` as the ``i``-th lowercase letter and its inverse in
uppercase, so ``(1, -2, -1, 2)`` prints as ``"aBAb"``.

Conjugation follows ``g^b = b^-1 g b`` and commutators ``[u, v] = u^-1 v^-1 u v``
throughout the package.
"""

import re
import string
from typing import Iterable, NamedTuple

MAX_TEXT_RANK = 26


class WordError(ValueError):
    pass


class UnknownSymbol(WordError):
    pass


class GeneratorOutOfRank(WordError):
    pass


class MalformedExponent(WordError):
    pass


class Letter(NamedTuple):
    generator_index: int
    sign: int

    def as_int(self):
        return self.sign * (self.generator_index + 1)


def letter_of(x):
    """Unpack the signed-int encoding ``x`` into a :class:`Letter`."""
    return Letter(abs(x) - 1, 1 if x > 0 else -1)


def letter_char(x):
    c = string.ascii_lowercase[abs(x) - 1]
    return c if x > 0 else c.upper()


class Word(tuple):
    """
    Immutable freely reduced word.

    Construct through :func:`reduce` (or :func:`parse`) unless the letters are
    already known to be reduced; the constructor does not re-check.
    """

    __slots__ = ()

    def __str__(self):
        return "".join(letter_char(x) for x in self)

    def __repr__(self):
        return f"Word({str(self)!r})" if self and max(map(abs, self)) <= MAX_TEXT_RANK else f"Word({tuple(self)})"

    @property
    def letters(self):
        return [letter_of(x) for x in self]

    def max_generator(self):
        """Largest generator index appearing, or -1 for the identity."""
        return max(map(abs, self), default=0) - 1


EMPTY = Word()


def reduce(raw: Iterable[int]) -> Word:
    """Free reduction of a sequence of signed letters (stack based, linear)."""
    out = []
    for x in raw:
        if x == 0:
            raise WordError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return Word(out)


_TOKEN = re.compile(r"([A-Za-z])(?:\^(-?)(\d*))?")


def parse(text: str, rank: int) -> Word:
    """
    Parse compact word text such as ``"aBAb"``, ``"a^2b"`` or ``"x^-3"``.

    Whitespace is ignored; the result is freely reduced.
    """
    if not 1 <= rank <= MAX_TEXT_RANK:
        raise GeneratorOutOfRank(f"rank {rank} outside [1, {MAX_TEXT_RANK}]")
    s = "".join(text.split())
    raw = []
    pos = 0
    while pos < len(s):
        if not s[pos].isalpha() or not s[pos].isascii():
            if s[pos] == "^":
                raise MalformedExponent(f"exponent without a generator at position {pos} in {text!r}")
            raise UnknownSymbol(f"unknown symbol {s[pos]!r} in {text!r}")
        m = _TOKEN.match(s, pos)
        ch, neg, digits = m.group(1), m.group(2), m.group(3)
        if m.group(0).find("^") >= 0 and not digits:
            raise MalformedExponent(f"missing exponent after {ch!r} in {text!r}")
        gen = ord(ch.lower()) - ord("a")
        if gen >= rank:
            raise GeneratorOutOfRank(f"generator {ch!r} not available in rank {rank}")
        x = gen + 1 if ch.islower() else -(gen + 1)
        k = int(digits) if digits else 1
        if neg:
            x = -x
        raw.extend([x] * k)
        pos = m.end()
    return reduce(raw)


def word_from_letters(letters: Iterable[Letter]) -> Word:
    return reduce(l.sign * (l.generator_index + 1) for l in letters)


def multiply(u, v):
    # cancel only at the seam; both factors are already reduced
    k = 0
    m = min(len(u), len(v))
    while k < m and u[len(u) - 1 - k] == -v[k]:
        k += 1
    return Word(tuple(u[: len(u) - k]) + tuple(v[k:]))


def product(words):
    out = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return Word(out)


def invert(w):
    return Word(-x for x in reversed(w))


def conjugate(g, b):
    """``g^b = b^-1 g b``."""
    return product((invert(b), g, b))


def commutator(u, v):
    """``[u, v] = u^-1 v^-1 u v``."""
    return product((invert(u), invert(v), u, v))


def power(w, k):
    if k < 0:
        w, k = invert(w), -k
    return product([w] * k)


def shortlex_key(w):
    """Sort key: length first, then a < A < b < B < ..."""
    return (len(w), tuple(2 * (abs(x) - 1) + (x < 0) for x in w))


def check_rank(w, rank):
    if w.max_generator() >= rank:
        raise GeneratorOutOfRank(f"{w} uses a generator outside rank {rank}")


def generators(rank):
    return [Word((i + 1,)) for i in range(rank)]


def signed_letters(rank):
    """All letters in the fixed exploration order a, A, b, B, ..."""
    out = []
    for i in range(rank):
        out.extend((i + 1, -(i + 1)))
    return out


def substitute(w, images):
    """Image of ``w`` under the homomorphism sending generator ``i`` to ``images[i]``."""
    inv = {}
    parts = []
    for x in w:
        if x > 0:
            parts.append(images[x - 1])
        else:
            if x not in inv:
                inv[x] = invert(images[-x - 1])
            parts.append(inv[x])
    return product(parts)


def is_reduced(seq):
    return all(seq[i] != -seq[i + 1] for i in range(len(seq) - 1)) and 0 not in seq
