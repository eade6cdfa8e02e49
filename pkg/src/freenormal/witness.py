"""
Witnesses: nontrivial elements of ``N``, the intersection of the conjugates
``L^b`` over coset representatives ``b`` of ``C``.

``L`` is the kernel of the retraction ``C -> C ∩ H`` and is normal in ``C``, as
is every ``L^b``.  A commutator ``[u, v]`` of elements of ``C`` therefore lies in
``L^b`` as soon as either argument does.  Starting from ``x_i = j^{b_i}`` (so
``x_i ∈ L^{b_i}``) the left-normed commutator of all ``x_i`` is in ``N``.
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .kurosh import NotInC, retract_letters
from .pipeline import Context, FiniteIndex
from .words import EMPTY, Word, commutator, conjugate, invert, multiply, shortlex_key

log = logging.getLogger(__name__)

TOOL_VERSION = "freenormal 0.1.0"
DEFAULT_MAX_ATTEMPTS = 64
DEFAULT_MAX_LENGTH = 10**6
# left-normed commutators roughly double per factor; past this many letters
# the "auto" strategy switches to a covering of the coset set
LEFT_NORMED_LIMIT = 50_000
COVER_PROBES = 16
COVER_POOL = 64


class SearchExhausted(RuntimeError):
    pass


class WitnessTooLarge(RuntimeError):
    def __init__(self, length, limit):
        super().__init__(f"witness would have length {length} > {limit}")
        self.length = length
        self.limit = limit


@dataclass
class WitnessCertificate:
    rank: int
    input_generators: List[Word]
    basis_H: List[Word]
    basis_Q: List[Word]
    index_FK: int
    n: int
    coset_reps: List[Word]
    basis_CH: List[Word]
    basis_J: List[Word]
    chosen_j: Word
    factors_x: List[Word]
    witness: Word
    construction_log: List[str] = field(default_factory=list)
    tool_version: str = TOOL_VERSION


def member_of_C(ctx: Context, w):
    return ctx.core.core_graph.trace(w) == 0


def member_of_L(ctx: Context, w):
    """``w ∈ C`` and its retraction to ``C ∩ H`` is trivial."""
    try:
        return len(retract_letters(ctx.kurosh, w)) == 0
    except NotInC:
        return False


def member_of_N(ctx: Context, w):
    """
    ``w ∈ L^{b_i}`` for every coset representative.

    Evaluated in one pass over the labelled Cayley graph of ``F/C``: reading
    ``w`` from vertex ``i`` collects the retraction of ``b_i w b_i^-1``.
    """
    if not member_of_C(ctx, w):
        return False
    return ctx.labels().trivial_everywhere(w)


def member_of_N_by_conjugates(ctx: Context, w):
    """Same decision as :func:`member_of_N`, one conjugate at a time."""
    if not member_of_C(ctx, w):
        return False
    return all(member_of_L(ctx, conjugate(w, invert(b))) for b in ctx.coset_reps)


def covered_cosets(ctx: Context, w):
    """Boolean mask over coset representatives: ``w ∈ L^{b_i}``."""
    return ctx.labels().status(w) == 1


def _short_core_elements(ctx):
    return sorted(ctx.core.basis_C.words, key=shortlex_key)


def _nonvanishing(ctx, u, v, max_attempts, notes, what):
    """``[u, v]``, or ``[u, v^c]`` for short ``c ∈ C`` if ``u`` and ``v`` commute."""
    c_uv = commutator(u, v)
    if c_uv:
        return c_uv, v
    for attempt, c in enumerate(_short_core_elements(ctx)[:max_attempts], 1):
        v2 = conjugate(v, c)
        c_uv = commutator(u, v2)
        if c_uv:
            notes.append(f"fallback: {what} commuted; conjugated by core element {c} (attempt {attempt})")
            return c_uv, v2
    raise SearchExhausted(f"{what}: no non-commuting replacement within {max_attempts} attempts")


def _left_normed(ctx, j, max_attempts, limit, notes):
    reps = ctx.coset_reps
    xs = [conjugate(j, b) for b in reps]
    w = xs[0]
    for i in range(1, len(xs)):
        nxt = commutator(w, xs[i])
        if not nxt:
            for attempt, c in enumerate(_short_core_elements(ctx)[:max_attempts], 1):
                x = conjugate(j, multiply(c, reps[i]))
                nxt = commutator(w, x)
                if nxt:
                    notes.append(f"fallback at factor {i + 1}: used j^(c b) with c = {c} (attempt {attempt})")
                    xs[i] = x
                    break
            else:
                raise SearchExhausted(f"partial commutator {i + 1} vanished for every candidate")
        if len(nxt) > limit:
            raise WitnessTooLarge(len(nxt), limit)
        w = nxt
    return w, xs


def _cover(ctx, j):
    """
    Greedy choice of elements of ``C`` whose ``L^b``-memberships cover every coset.

    The pool holds the shortest Schreier generators of ``C`` (these often lie
    in ``N`` outright) plus, each round, conjugates ``j^{b_v}`` for a few
    uncovered ``v``; the latter guarantee progress since ``j^{b_v} ∈ L^{b_v}``.
    """
    reps = ctx.coset_reps
    pool = []
    for u in _short_core_elements(ctx)[:COVER_POOL]:
        mask = covered_cosets(ctx, u)
        pool.append((u, mask))
        if mask.all():
            return [u]
    uncovered = np.ones(len(reps), dtype=bool)
    chosen = []
    while uncovered.any():
        probes = []
        for v in np.flatnonzero(uncovered)[:COVER_PROBES]:
            x = conjugate(j, reps[v])
            mask = covered_cosets(ctx, x)
            assert mask[v]
            probes.append((x, mask))
        best = None
        for x, mask in pool + probes:
            gain = int(np.count_nonzero(mask & uncovered))
            if best is None or gain > best[0] or (gain == best[0] and len(x) < len(best[1])):
                best = (gain, x, mask)
        chosen.append(best[1])
        uncovered &= ~best[2]
    return chosen


def _balanced(ctx, items, max_attempts, notes):
    level = 0
    while len(items) > 1:
        level += 1
        nxt = []
        for i in range(0, len(items) - 1, 2):
            c, _ = _nonvanishing(ctx, items[i], items[i + 1], max_attempts, notes, f"level {level} pair {i // 2 + 1}")
            nxt.append(c)
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def build_witness(ctx: Context, max_attempts=DEFAULT_MAX_ATTEMPTS, max_length=DEFAULT_MAX_LENGTH, strategy="auto"):
    """
    Build a :class:`WitnessCertificate` for ``ctx``.

    ``strategy="left-normed"`` always nests all ``n`` conjugates of ``j``.
    ``"auto"`` does the same while the result stays below
    ``LEFT_NORMED_LIMIT`` letters, and otherwise picks a few elements of ``C``
    (short Schreier generators, conjugates of ``j``) whose ``L^b``-memberships
    jointly cover all cosets and nests those as a balanced commutator.  Either way membership in ``N`` is checked, not
    assumed.
    """
    if strategy not in ("auto", "left-normed", "cover"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if not ctx.basis_J:
        raise FiniteIndex(ctx.factorization.index_FK)
    j = ctx.basis_J[0]
    notes = [
        f"H graph: {ctx.subgroup.num_vertices} vertices, {ctx.subgroup.num_edges} edges",
        f"completion: [F:K] = {ctx.factorization.index_FK}, |basis_Q| = {len(ctx.basis_Q)}",
        f"core: [F:C] = n = {ctx.n}, |basis_CH| = {len(ctx.basis_CH)}, |basis_J| = {len(ctx.basis_J)}",
        f"chosen j = {j}",
    ]

    w = None
    if strategy in ("auto", "left-normed"):
        limit = max_length if strategy == "left-normed" else min(max_length, LEFT_NORMED_LIMIT)
        try:
            w, xs = _left_normed(ctx, j, max_attempts, limit, notes)
            notes.append(f"left-normed commutator of {len(xs)} conjugates x_i = j^(b_i)")
        except WitnessTooLarge:
            if strategy == "left-normed":
                raise
            notes.append(f"left-normed commutator exceeds {limit} letters; switching to coset cover")
    if w is None:
        xs = _cover(ctx, j)
        notes.append(f"coset cover: {len(xs)} elements of C cover all {ctx.n} cosets")
        w = _balanced(ctx, list(xs), max_attempts, notes)
        notes.append("balanced commutator of the cover")
        if len(w) > max_length:
            raise WitnessTooLarge(len(w), max_length)

    if not w or not member_of_N(ctx, w):
        raise AssertionError("constructed witness is not a nontrivial element of N")
    notes.append(f"witness length {len(w)}; member of N confirmed")
    log.debug("witness for %s: length %d", [str(g) for g in ctx.generators], len(w))

    fz = ctx.factorization
    return WitnessCertificate(
        rank=ctx.rank,
        input_generators=list(ctx.generators),
        basis_H=list(fz.basis_H),
        basis_Q=list(fz.basis_Q),
        index_FK=fz.index_FK,
        n=ctx.n,
        coset_reps=list(ctx.coset_reps),
        basis_CH=list(ctx.basis_CH),
        basis_J=list(ctx.basis_J),
        chosen_j=j,
        factors_x=list(xs),
        witness=w,
        construction_log=notes,
    )
