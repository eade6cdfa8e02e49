"""
Independent re-check of a witness certificate.

Nothing computed by the builder is reused: every graph is refolded from the
words stored in the certificate.  Membership in ``L`` and ``N`` is decided
through a second folding of ``basis_CH ∪ basis_J`` that tracks, for each edge,
a word over those basis elements (so reading ``w ∈ C`` spells ``w`` in that
basis); killing the ``basis_J`` letters gives the retraction onto ``C ∩ H``.
"""

import random
from collections import deque
from dataclasses import dataclass, field
from typing import List

from ._kernels import LabelledCovering
from .stallings import (
    Finite,
    SubgroupGraph,
    canonical_form,
    conjugate_graph,
    contains,
    covering_status,
    from_generators,
    pullback,
)
from .words import EMPTY, Word, conjugate, invert, product, reduce

DEFAULT_SAMPLES = 200
DEFAULT_SAMPLE_LENGTH = 20
DEFAULT_PRODUCTS = 50


@dataclass
class Check:
    id: str
    description: str
    passed: bool
    details: str = ""


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def overall(self):
        return all(c.passed for c in self.checks)

    def by_id(self, cid):
        for c in self.checks:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def failed(self):
        return [c.id for c in self.checks if not c.passed]


# -- folding with basis-word labels -------------------------------------------


class _LabelFolder:
    """
    Stallings folding that keeps, on every edge, a word over the input
    generators.  Identifying the far ends of two equally labelled darts at
    ``u`` runs along the path ``d1^-1 d2``; every edge moved across is
    re-labelled by that path's word so loop labels are preserved.
    """

    def __init__(self, rank):
        self.rank = rank
        self.edges = []          # [src, gen, dst, label] or None once removed
        self.out = []
        self.inn = []
        self.inc = []
        self.pending = []
        self.relations = []
        self.base = None
        # merged vertex -> (surviving vertex, word of the path from it to the merged one)
        self.alias = {}

    def find(self, v):
        """Live vertex standing for ``v`` and the path word from it to ``v``."""
        pot = EMPTY
        while v in self.alias:
            v, p = self.alias[v]
            pot = product((p, pot))
        return v, pot

    def add_vertex(self):
        self.out.append({})
        self.inn.append({})
        self.inc.append(set())
        return len(self.out) - 1

    def add_edge(self, u, g, v, label):
        u, pu = self.find(u)
        v, pv = self.find(v)
        label = product((pu, label, invert(pv)))
        eid = len(self.edges)
        self.edges.append([u, g, v, label])
        self.inc[u].add(eid)
        self.inc[v].add(eid)
        self._register(eid)
        self._fold()

    def _register(self, eid):
        u, g, v, _ = self.edges[eid]
        for table, w, kind in ((self.out, u, 0), (self.inn, v, 1)):
            cur = table[w].get(g)
            if cur is None:
                table[w][g] = eid
            elif cur != eid:
                self.pending.append((kind, eid))

    def _remove(self, eid):
        u, g, v, _ = self.edges[eid]
        self.inc[u].discard(eid)
        self.inc[v].discard(eid)
        if self.out[u].get(g) == eid:
            del self.out[u][g]
        if self.inn[v].get(g) == eid:
            del self.inn[v][g]
        self.edges[eid] = None

    def _fold(self):
        while self.pending:
            kind, e2 = self.pending.pop()
            if self.edges[e2] is None:
                continue
            u2, g, v2, lab2 = self.edges[e2]
            table, at = (self.out, u2) if kind == 0 else (self.inn, v2)
            e1 = table[at].get(g)
            if e1 is None:
                table[at][g] = e2
                continue
            if e1 == e2:
                continue
            u1, _, v1, lab1 = self.edges[e1]
            if kind == 0:
                far1, far2, mu1, mu2 = v1, v2, lab1, lab2
            else:
                far1, far2, mu1, mu2 = u1, u2, invert(lab1), invert(lab2)
            if far1 == far2:
                rel = product((invert(mu1), mu2))
                if rel:
                    self.relations.append(rel)
                self._remove(e2)
                continue
            path = product((invert(mu1), mu2))       # far1 -> far2
            if far2 != self.base and (far1 == self.base or len(self.inc[far2]) <= len(self.inc[far1])):
                self._merge(far2, far1, path)
            else:
                self._merge(far1, far2, invert(path))
            self.pending.append((kind, e2))

    def _merge(self, gone, keep, path):
        """Move every edge end at ``gone`` to ``keep``; ``path`` runs keep -> gone."""
        back = invert(path)
        moved = list(self.inc[gone])
        for eid in moved:
            e = self.edges[eid]
            u, g, v, lab = e
            if self.out[u].get(g) == eid:
                del self.out[u][g]
            if self.inn[v].get(g) == eid:
                del self.inn[v][g]
            if u == gone:
                lab = product((path, lab))
                u = keep
            if v == gone:
                lab = product((lab, back))
                v = keep
            e[0], e[2], e[3] = u, v, lab
            self.inc[keep].add(eid)
        self.inc[gone] = set()
        self.out[gone] = {}
        self.inn[gone] = {}
        self.alias[gone] = (keep, path)
        for eid in moved:
            if self.edges[eid] is not None:
                self._register(eid)


def labelled_graph(gens, rank):
    """
    Fold the flower of ``gens`` keeping basis-word labels.

    Returns ``(graph, labels, relations)``: a :class:`SubgroupGraph` in BFS
    numbering, a dict ``(v, g) -> Word`` over letters ``1..len(gens)``, and the
    nontrivial relations found among the generators (empty iff they are a free
    basis of the subgroup they generate).
    """
    f = _LabelFolder(rank)
    f.base = f.add_vertex()
    for i, w in enumerate(gens):
        if not w:
            f.relations.append(Word((i + 1,)))
            continue
        cur = f.base
        for pos, x in enumerate(w):
            nxt = f.base if pos == len(w) - 1 else f.add_vertex()
            lab = Word((i + 1,)) if pos == 0 else EMPTY
            if x > 0:
                f.add_edge(cur, x - 1, nxt, lab)
            else:
                f.add_edge(nxt, -x - 1, cur, invert(lab))
            cur = nxt
    # BFS renumbering from the basepoint
    order = {f.base: 0}
    seq = [f.base]
    queue = deque([f.base])
    while queue:
        v = queue.popleft()
        for g in range(rank):
            for table in (f.out, f.inn):
                eid = table[v].get(g)
                if eid is None:
                    continue
                s, _, t, _ = f.edges[eid]
                nb = t if table is f.out else s
                if nb not in order:
                    order[nb] = len(seq)
                    seq.append(nb)
                    queue.append(nb)
    out = [[-1] * rank for _ in seq]
    labels = {}
    for v in seq:
        for g, eid in f.out[v].items():
            _, _, t, lab = f.edges[eid]
            out[order[v]][g] = order[t]
            if lab:
                labels[(order[v], g)] = lab
    return SubgroupGraph(rank, out), labels, f.relations


class SplitMembership:
    """Decides membership in ``L`` and ``N`` from ``basis_CH`` and ``basis_J`` alone."""

    def __init__(self, basis_CH, basis_J, rank):
        self.graph, labels, self.relations = labelled_graph(list(basis_CH) + list(basis_J), rank)
        keep = len(basis_CH)
        retracted = {}
        for key, lab in labels.items():
            r = reduce(x for x in lab if abs(x) <= keep)
            if r:
                retracted[key] = tuple(r)
        self.covering = LabelledCovering(self.graph, retracted)

    def in_C(self, w):
        return contains(self.graph, w)

    def in_L(self, w):
        return self.in_C(w) and self.covering.status(w, [self.graph.basepoint])[0] == 1

    def in_N(self, w):
        # every vertex is a coset of C, so this runs over all conjugates L^b
        return self.in_C(w) and self.covering.trivial_everywhere(w)


# -- the checks -----------------------------------------------------------------


def _random_word(rng, rank, max_len):
    k = rng.randint(0, max_len)
    w = []
    while len(w) < k:
        x = rng.choice([s * (g + 1) for g in range(rank) for s in (1, -1)])
        if w and w[-1] == -x:
            continue
        w.append(x)
    return Word(w)


def _c1(cert):
    h_in = from_generators(cert.input_generators, cert.rank)
    h_b = from_generators(cert.basis_H, cert.rank)
    bad = [str(w) for w in cert.basis_H if not contains(h_in, w)]
    bad += [str(w) for w in cert.input_generators if not contains(h_b, w)]
    return not bad, "mutual membership holds" if not bad else f"not mutually contained: {bad}"


def _c2(cert, K):
    status = covering_status(K)
    expected = 1 + cert.index_FK * (cert.rank - 1)
    got = len(cert.basis_H) + len(cert.basis_Q)
    ok = status == Finite(cert.index_FK) and got == expected
    return ok, f"covering status {status.__class__.__name__}" + (
        f"({status.index})" if isinstance(status, Finite) else ""
    ) + f"; |basis_H|+|basis_Q| = {got}, expected {expected}"


def _c3(cert, C):
    status = covering_status(C)
    expected = 1 + cert.n * (cert.rank - 1)
    got = len(cert.basis_CH) + len(cert.basis_J)
    not_normal = []
    for c in list(cert.basis_CH) + list(cert.basis_J):
        for g in range(cert.rank):
            if not contains(C, conjugate(c, Word((g + 1,)))):
                not_normal.append(f"{c}^{Word((g + 1,))}")
    ok = status == Finite(cert.n) and got == expected and not not_normal
    details = f"covering status {status}; basis size {got}, expected {expected}"
    if not_normal:
        details += f"; conjugates leaving C: {not_normal[:5]}"
    return ok, details


def _c4(cert, K, C):
    # K^b only depends on the vertex of K reached by b, so conjugates repeat
    seen = {}
    for b in cert.coset_reps:
        end = K.trace(b)
        if end not in seen:
            seen[end] = conjugate_graph(K, b)
    core = None
    for g in seen.values():
        core = g if core is None else pullback(core, g)
    if core is None:
        return False, "no coset representatives"
    ok = canonical_form(core) == canonical_form(C)
    return ok, f"{len(seen)} distinct conjugates of K; intersection has {core.num_vertices} vertices, C has {C.num_vertices}"


def _c5(cert, C):
    reps = cert.coset_reps
    problems = []
    if not reps or reps[0] != EMPTY:
        problems.append("first representative is not the identity")
    if len(reps) != cert.n:
        problems.append(f"{len(reps)} representatives for n = {cert.n}")
    ends = {}
    for b in reps:
        e = C.trace(b)
        if e < 0:
            problems.append(f"{b} leaves the graph of C")
        elif e in ends:
            problems.append(f"{ends[e]} and {b} lie in the same coset")
        else:
            ends[e] = b
    return not problems, "; ".join(problems[:5]) or f"{len(reps)} pairwise inequivalent representatives"


def _c6(cert, C, H):
    ch = from_generators(cert.basis_CH, cert.rank)
    inter = pullback(C, H)
    ok = canonical_form(ch) == canonical_form(inter)
    return ok, f"<basis_CH> has {ch.num_vertices} vertices, C ∩ H has {inter.num_vertices}"


def _c7(cert, H, split):
    w = cert.witness
    problems = []
    if not w:
        problems.append("witness is trivial")
    if not split.in_N(w):
        problems.append("witness not in N")
    if w and contains(H, w):
        problems.append("witness lies in H")
    for g in range(cert.rank):
        x = Word((g + 1,))
        if not split.in_N(conjugate(w, x)):
            problems.append(f"conjugate by {x} not in N")
    return not problems, "; ".join(problems) or f"|w| = {len(w)}; w ∈ N, w ∉ H, w^x ∈ N for every generator x"


def _c8(cert, H, split, sample_count, sample_length, seed, product_count):
    rng = random.Random(seed)
    gens = [w for w in cert.basis_H if w]
    hits = []
    tested = 0
    if gens:
        letters = gens + [invert(g) for g in gens]
        for _ in range(sample_count):
            h = EMPTY
            for _ in range(20):
                h = product(rng.choice(letters) for _ in range(rng.randint(1, sample_length)))
                if h:
                    break
            if not h:
                continue
            tested += 1
            if split.in_N(h):
                hits.append(str(h))
    bad_products = []
    for _ in range(product_count):
        parts = []
        for _ in range(rng.randint(1, 3)):
            base = cert.witness if rng.random() < 0.5 else invert(cert.witness)
            parts.append(conjugate(base, _random_word(rng, cert.rank, 3)))
        p = product(parts)
        if not split.in_N(p) or (p and contains(H, p)):
            bad_products.append(str(p)[:40])
    ok = not hits and not bad_products
    details = (
        f"sampled {tested} nontrivial h ∈ H (none may lie in N): {len(hits)} violations; "
        f"{product_count} products of conjugates of w (must stay in N, off H): {len(bad_products)} violations. "
        "Sampled check only: N is not finitely generated."
    )
    return ok, details


DESCRIPTIONS = {
    "C1": "<basis_H> equals <input_generators>",
    "C2": "<basis_H ∪ basis_Q> has index index_FK with a basis of Nielsen-Schreier size",
    "C3": "<basis_CH ∪ basis_J> is normal of index n with a basis of Nielsen-Schreier size",
    "C4": "C equals the intersection of the conjugates K^b over coset_reps",
    "C5": "coset_reps: first is ε, n of them, pairwise inequivalent mod C",
    "C6": "<basis_CH> equals C ∩ H",
    "C7": "witness nontrivial, in N, not in H, and every generator conjugate in N",
    "C8": "sampled: nontrivial h ∈ H avoid N; products of conjugates of w stay in N and off H",
}


def verify(cert, sample_count=DEFAULT_SAMPLES, sample_length=DEFAULT_SAMPLE_LENGTH, seed=0,
           product_count=DEFAULT_PRODUCTS):
    """Run checks C1-C8 on ``cert`` and return a :class:`VerificationReport`."""
    rank = cert.rank
    H = from_generators(cert.basis_H, rank)
    K = from_generators(list(cert.basis_H) + list(cert.basis_Q), rank)
    C = from_generators(list(cert.basis_CH) + list(cert.basis_J), rank)
    split = SplitMembership(cert.basis_CH, cert.basis_J, rank)

    results = {
        "C1": lambda: _c1(cert),
        "C2": lambda: _c2(cert, K),
        "C3": lambda: _c3(cert, C),
        "C4": lambda: _c4(cert, K, C),
        "C5": lambda: _c5(cert, C),
        "C6": lambda: _c6(cert, C, H),
        "C7": lambda: _c7(cert, H, split),
        "C8": lambda: _c8(cert, H, split, sample_count, sample_length, seed, product_count),
    }
    report = VerificationReport()
    for cid, run in results.items():
        try:
            ok, details = run()
        except (ValueError, RecursionError) as exc:
            ok, details = False, f"check raised {exc.__class__.__name__}: {exc}"
        report.checks.append(Check(cid, DESCRIPTIONS[cid], bool(ok), details))
    return report
