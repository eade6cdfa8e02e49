"""
Brute-force ground truth for small instances.

Everything here works by enumerating products of words and comparing reduced
forms; no automata are involved.  Answers are conservative: ``No`` is only
returned when the enumeration provably covers every candidate.
"""

from dataclasses import dataclass
from itertools import product as cartesian

from .words import EMPTY, Word, conjugate, invert, multiply, reduce


@dataclass(frozen=True)
class Yes:
    pass


@dataclass(frozen=True)
class No:
    pass


@dataclass(frozen=True)
class Unknown:
    depth_exhausted: int


OracleAnswer = (Yes, No, Unknown)


def ball(rank, radius):
    """All freely reduced words of length at most ``radius``, by length then letter order."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    letters = [s * (g + 1) for g in range(rank) for s in (1, -1)]
    out = [EMPTY]
    layer = [EMPTY]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(Word(w + (x,)))
        out.extend(nxt)
        layer = nxt
    return out


def ball_size(rank, radius):
    return 1 + sum(2 * rank * (2 * rank - 1) ** (k - 1) for k in range(1, radius + 1))


def is_nielsen_reduced(gens):
    """
    Conditions N1-N3 on ``gens`` and their inverses.

    When they hold, a reduced product of ``k`` factors has length at least
    ``k``, so elements of length ``<= m`` all come from ``<= m`` factors.
    """
    s = [Word(g) for g in gens]
    if any(not g for g in s):
        return False
    sym = s + [invert(g) for g in s]
    if len(set(sym)) != len(sym):
        return False
    for x in sym:
        for y in sym:
            if x == invert(y):
                continue
            if len(multiply(x, y)) < max(len(x), len(y)):
                return False
    for x in sym:
        for y in sym:
            if x == invert(y):
                continue
            for z in sym:
                if y == invert(z):
                    continue
                if len(reduce(x + y + z)) <= len(x) - len(y) + len(z):
                    return False
    return True


def _products(factors, depth):
    """Reduced forms of all products of at most ``depth`` factors (no factor next to its inverse)."""
    inv = {i: factors.index(invert(f)) for i, f in enumerate(factors)}
    seen = {EMPTY}
    layer = [(EMPTY, None)]
    for _ in range(depth):
        nxt = []
        for w, last in layer:
            for i, f in enumerate(factors):
                if last is not None and inv[last] == i:
                    continue
                p = multiply(w, f)
                seen.add(p)
                nxt.append((p, i))
        layer = nxt
    return seen


def naive_member(gens, w, depth):
    """Search products of at most ``depth`` generators for ``w``."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    w = reduce(w)
    gens = [reduce(g) for g in gens if reduce(g)]
    if not w:
        return Yes()
    if not gens:
        return No()
    factors = list(dict.fromkeys(gens + [invert(g) for g in gens]))
    if w in _products(factors, depth):
        return Yes()
    if depth >= len(w) and is_nielsen_reduced(list(dict.fromkeys(gens))):
        return No()
    return Unknown(depth)


class MemberTable:
    """:func:`naive_member` for many words against one generator list."""

    def __init__(self, gens, depth):
        self.gens = [reduce(g) for g in gens if reduce(g)]
        self.depth = depth
        factors = list(dict.fromkeys(self.gens + [invert(g) for g in self.gens]))
        self.reached = _products(factors, depth) if factors else {EMPTY}
        self.nielsen = not self.gens or is_nielsen_reduced(list(dict.fromkeys(self.gens)))

    def __call__(self, w):
        w = reduce(w)
        if w in self.reached:
            return Yes()
        if self.depth >= len(w) and self.nielsen:
            return No()
        return Unknown(self.depth)


def naive_closure_member(closure_gens, conjugators, w, product_depth):
    """Search products of at most ``product_depth`` conjugates ``g^c``; one-sided."""
    w = reduce(w)
    if not w:
        return Yes()
    base = [reduce(g) for g in closure_gens if reduce(g)]
    base = list(dict.fromkeys(base + [invert(g) for g in base]))
    conj = [reduce(c) for c in conjugators] or [EMPTY]
    factors = list(dict.fromkeys(conjugate(g, c) for g, c in cartesian(base, conj)))
    factors = [f for f in factors if f]
    if not factors:
        return Unknown(product_depth)
    # inverses of conjugates are conjugates of inverses, so the list is symmetric
    if w in _products(factors, product_depth):
        return Yes()
    return Unknown(product_depth)
