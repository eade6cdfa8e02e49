"""
Stallings subgroup graphs.

A :class:`SubgroupGraph` is a folded, connected, core automaton with vertices
``0..V-1`` and a basepoint.  Only positive edges are stored: ``out[v][g]`` is
the target of the ``g``-edge leaving ``v`` (or ``-1``) and ``inn[v][g]`` its
source when entering ``v``.  Reading a word from the basepoint and returning
to it is exactly membership in the represented subgroup.

Everything that builds a tree or a canonical numbering explores a vertex's
neighbours in the order ``a``-out, ``a``-in, ``b``-out, ``b``-in, ...
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .words import EMPTY, Word, check_rank, invert, product, reduce, substitute

MISSING = -1


class NotAMember(ValueError):
    pass


class SubgroupGraph:
    """Immutable folded core graph.  Use the module constructors, not ``__init__``."""

    __slots__ = ("rank", "out", "inn", "basepoint", "_arrays")

    def __init__(self, rank, out, basepoint=0):
        n = len(out)
        inn = [[MISSING] * rank for _ in range(n)]
        for v, row in enumerate(out):
            if len(row) != rank:
                raise ValueError("edge table row has wrong width")
            for g, t in enumerate(row):
                if t == MISSING:
                    continue
                if inn[t][g] != MISSING:
                    raise ValueError(f"two {g}-edges enter vertex {t}; graph is not folded")
                inn[t][g] = v
        self.rank = rank
        self.out = tuple(tuple(r) for r in out)
        self.inn = tuple(tuple(r) for r in inn)
        self.basepoint = basepoint
        self._arrays = None

    @property
    def num_vertices(self):
        return len(self.out)

    @property
    def num_edges(self):
        return sum(t != MISSING for row in self.out for t in row)

    def edges(self):
        """Positive edges ``(source, generator, target)`` sorted by source then generator."""
        return [(v, g, t) for v, row in enumerate(self.out) for g, t in enumerate(row) if t != MISSING]

    def arrays(self):
        """``(out, inn)`` as int32 numpy arrays, for the compiled kernels."""
        if self._arrays is None:
            self._arrays = (
                np.array(self.out, dtype=np.int32).reshape(len(self.out), self.rank),
                np.array(self.inn, dtype=np.int32).reshape(len(self.out), self.rank),
            )
        return self._arrays

    def step(self, v, x):
        return self.out[v][x - 1] if x > 0 else self.inn[v][-x - 1]

    def trace(self, w, start=None):
        """End vertex of the path reading ``w``, or ``-1`` if it falls off the graph."""
        v = self.basepoint if start is None else start
        out, inn = self.out, self.inn
        for x in w:
            v = out[v][x - 1] if x > 0 else inn[v][-x - 1]
            if v < 0:
                return MISSING
        return v

    def canonical(self):
        return _renumber(self.rank, self.basepoint, _to_maps(self))

    def __eq__(self, other):
        return isinstance(other, SubgroupGraph) and canonical_form(self) == canonical_form(other)

    def __hash__(self):
        return hash(canonical_form(self))

    def __repr__(self):
        return f"<SubgroupGraph rank={self.rank} V={self.num_vertices} E={self.num_edges}>"


# -- folding -----------------------------------------------------------------


class _Folder:
    """Union-find Stallings folding over an incrementally built labelled graph."""

    def __init__(self, rank):
        self.rank = rank
        self.parent = []
        self.out = []
        self.inn = []
        self.pending = []

    def add_vertex(self):
        self.parent.append(len(self.parent))
        self.out.append({})
        self.inn.append({})
        return len(self.parent) - 1

    def find(self, v):
        parent = self.parent
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def add_edge(self, u, g, v):
        u, v = self.find(u), self.find(v)
        t = self.out[u].get(g)
        if t is None:
            self.out[u][g] = v
        else:
            self.pending.append((t, v))
        s = self.inn[v].get(g)
        if s is None:
            self.inn[v][g] = u
        else:
            self.pending.append((s, u))
        self.fold()

    def add_path(self, start, w, end=None):
        """Attach a path reading ``w`` from ``start``; returns its end vertex."""
        cur = start
        for i, x in enumerate(w):
            nxt = end if (end is not None and i == len(w) - 1) else self.add_vertex()
            if x > 0:
                self.add_edge(cur, x - 1, nxt)
            else:
                self.add_edge(nxt, -x - 1, cur)
            cur = nxt
        if not w and end is not None and self.find(start) != self.find(end):
            self.pending.append((start, end))
            self.fold()
        return cur

    def fold(self):
        find = self.find
        while self.pending:
            x, y = self.pending.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            self.parent[y] = x
            for table in (self.out, self.inn):
                dst = table[x]
                for g, t in table[y].items():
                    t0 = dst.get(g)
                    if t0 is None:
                        dst[g] = t
                    else:
                        self.pending.append((t0, t))
                table[y] = None

    def maps(self):
        find = self.find
        out = {}
        for v in range(len(self.parent)):
            if self.parent[v] == v:
                out[v] = {g: find(t) for g, t in self.out[v].items()}
        return out


def _to_maps(g):
    return {v: {k: t for k, t in enumerate(row) if t != MISSING} for v, row in enumerate(g.out)}


def _trim(base, out):
    """Drop hanging trees; the basepoint is never removed."""
    inn = {v: {} for v in out}
    for v, row in out.items():
        for g, t in row.items():
            inn[t][g] = v
    deg = {v: len(out[v]) + len(inn[v]) for v in out}
    stack = [v for v in out if v != base and deg[v] <= 1]
    alive = set(out)
    while stack:
        v = stack.pop()
        if v not in alive or deg[v] > 1:
            continue
        alive.discard(v)
        for g, t in list(out[v].items()):
            del inn[t][g]
            deg[t] -= 1
            if t != base and t in alive and deg[t] <= 1:
                stack.append(t)
        for g, s in list(inn[v].items()):
            del out[s][g]
            deg[s] -= 1
            if s != base and s in alive and deg[s] <= 1:
                stack.append(s)
        out[v] = {}
        inn[v] = {}
    return {v: out[v] for v in alive}


def _renumber(rank, base, out):
    """BFS renumbering from ``base`` (unreachable vertices are dropped)."""
    inn = {v: {} for v in out}
    for v, row in out.items():
        for g, t in row.items():
            inn[t][g] = v
    order = {base: 0}
    queue = deque([base])
    seq = [base]
    while queue:
        v = queue.popleft()
        for g in range(rank):
            for nb in (out[v].get(g), inn[v].get(g)):
                if nb is not None and nb not in order:
                    order[nb] = len(seq)
                    seq.append(nb)
                    queue.append(nb)
    table = [[MISSING] * rank for _ in seq]
    for v in seq:
        for g, t in out[v].items():
            table[order[v]][g] = order[t]
    return SubgroupGraph(rank, table)


def _finish(rank, base, out, trim=True):
    if trim:
        out = _trim(base, out)
    return _renumber(rank, base, out)


def from_generators(gens, rank):
    """Folded core graph of the subgroup generated by ``gens`` (identity words ignored)."""
    f = _Folder(rank)
    base = f.add_vertex()
    for w in gens:
        check_rank(w, rank)
        if w:
            f.add_path(base, w, end=base)
    return _finish(rank, f.find(base), f.maps())


def from_edges(rank, num_vertices, edges, basepoint=0):
    """Graph from explicit ``(source, generator, target)`` triples, folded and trimmed."""
    f = _Folder(rank)
    for _ in range(num_vertices):
        f.add_vertex()
    for s, g, t in edges:
        f.add_edge(s, g, t)
    return _finish(rank, f.find(basepoint), f.maps())


def trivial(rank):
    return SubgroupGraph(rank, [[MISSING] * rank])


def contains(g, w):
    return len(w) == 0 or g.trace(w) == g.basepoint


# -- covering status ---------------------------------------------------------


@dataclass(frozen=True)
class Finite:
    index: int


@dataclass(frozen=True)
class Infinite:
    deficiencies: List[Tuple[int, int, str]]


def covering_status(g):
    missing = []
    for v in range(g.num_vertices):
        for k in range(g.rank):
            if g.out[v][k] == MISSING:
                missing.append((v, k, "out"))
            if g.inn[v][k] == MISSING:
                missing.append((v, k, "in"))
    if missing:
        return Infinite(missing)
    return Finite(g.num_vertices)


def is_covering(g):
    return isinstance(covering_status(g), Finite)


# -- trees, bases, rewriting -------------------------------------------------


@dataclass(frozen=True)
class SpanningTree:
    # parent[v] = (u, g, +1) for the edge u -g-> v, (u, g, -1) for v -g-> u
    parent: Dict[int, Tuple[int, int, int]]
    paths: Tuple[Word, ...]
    root: int = 0

    def edge_set(self):
        """Tree edges as positive ``(source, generator)`` keys."""
        keys = set()
        for v, (u, g, d) in self.parent.items():
            keys.add((u, g) if d > 0 else (v, g))
        return keys


def spanning_tree(g, allowed=None):
    """
    BFS tree from the basepoint in the fixed exploration order.

    ``allowed`` optionally restricts the tree to a set of ``(source, generator)``
    edge keys; it must still span the graph.
    """
    base = g.basepoint
    paths = [None] * g.num_vertices
    paths[base] = EMPTY
    parent = {}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for k in range(g.rank):
            t = g.out[v][k]
            if t != MISSING and paths[t] is None and (allowed is None or (v, k) in allowed):
                parent[t] = (v, k, 1)
                paths[t] = Word(paths[v] + (k + 1,))
                queue.append(t)
            s = g.inn[v][k]
            if s != MISSING and paths[s] is None and (allowed is None or (s, k) in allowed):
                parent[s] = (v, k, -1)
                paths[s] = Word(paths[v] + (-(k + 1),))
                queue.append(s)
    if any(p is None for p in paths):
        raise ValueError("allowed edges do not span the graph")
    return SpanningTree(parent, tuple(paths), base)


@dataclass(frozen=True)
class BasisEnumeration:
    edges: List[Tuple[int, int, int]]
    words: List[Word]
    index: Dict[Tuple[int, int], int] = field(repr=False)

    def __len__(self):
        return len(self.words)


def schreier_word(tree, s, k, t):
    return product((tree.paths[s], (k + 1,), invert(tree.paths[t])))


def basis(g, tree, order=None):
    """
    Nielsen-Schreier basis: one word per non-tree edge.

    Edges are listed by generator, then source vertex, unless ``order`` (a
    list of edge keys) is given.
    """
    in_tree = tree.edge_set()
    if order is None:
        order = sorted(((s, k) for s, k, _ in g.edges()), key=lambda e: (e[1], e[0]))
    edges, words, index = [], [], {}
    for s, k in order:
        if (s, k) in in_tree:
            continue
        t = g.out[s][k]
        index[(s, k)] = len(edges)
        edges.append((s, k, t))
        words.append(schreier_word(tree, s, k, t))
    return BasisEnumeration(edges, words, index)


def schreier_rewrite(g, tree, be, w):
    """
    Rewrite a member ``w`` as a word over the basis letters: letter ``i + 1``
    stands for ``be.words[i]``.
    """
    v = g.basepoint
    out, inn, index = g.out, g.inn, be.index
    emitted = []
    for x in w:
        if x > 0:
            k = x - 1
            key = (v, k)
            t = out[v][k]
            if t == MISSING:
                raise NotAMember(f"{w} leaves the graph")
            i = index.get(key)
            if i is not None:
                emitted.append(i + 1)
            v = t
        else:
            k = -x - 1
            s = inn[v][k]
            if s == MISSING:
                raise NotAMember(f"{w} leaves the graph")
            i = index.get((s, k))
            if i is not None:
                emitted.append(-(i + 1))
            v = s
    if v != g.basepoint:
        raise NotAMember(f"{w} does not return to the basepoint")
    return reduce(emitted)


def expand(be, letters):
    return substitute(letters, be.words)


# -- intersections, conjugates, canonical form -------------------------------


def pullback(g1, g2):
    """Core graph of the intersection of the two subgroups."""
    if g1.rank != g2.rank:
        raise ValueError("rank mismatch")
    rank = g1.rank
    start = (g1.basepoint, g2.basepoint)
    seen = {start}
    queue = deque([start])
    out = {}
    o1, i1, o2, i2 = g1.out, g1.inn, g2.out, g2.inn
    while queue:
        p = queue.popleft()
        a, b = p
        row = out.setdefault(p, {})
        for k in range(rank):
            ta, tb = o1[a][k], o2[b][k]
            if ta != MISSING and tb != MISSING:
                q = (ta, tb)
                row[k] = q
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
            sa, sb = i1[a][k], i2[b][k]
            if sa != MISSING and sb != MISSING:
                q = (sa, sb)
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
    for p in seen:
        out.setdefault(p, {})
    return _finish(rank, start, out)


def conjugate_graph(g, b):
    """Graph of ``b^-1 H b``: a path reading ``b`` leads from the old basepoint to the new one."""
    check_rank(b, g.rank)
    f = _Folder(g.rank)
    for _ in range(g.num_vertices):
        f.add_vertex()
    for s, k, t in g.edges():
        f.add_edge(s, k, t)
    new_base = f.add_path(g.basepoint, b)
    return _finish(g.rank, f.find(new_base), f.maps())


def canonical_form(g):
    """
    Bytes identifying the based graph up to isomorphism: ``rank, V, E`` then
    ``(source, generator, target)`` triples in BFS numbering, all little-endian
    int32.
    """
    c = g if _is_bfs_numbered(g) else g.canonical()
    edges = c.edges()
    data = [c.rank, c.num_vertices, len(edges)]
    for e in edges:
        data.extend(e)
    return np.asarray(data, dtype="<i4").tobytes()


def _is_bfs_numbered(g):
    if g.basepoint != 0:
        return False
    seen = 1
    queue = deque([0])
    visited = [False] * g.num_vertices
    visited[0] = True
    while queue:
        v = queue.popleft()
        for k in range(g.rank):
            for nb in (g.out[v][k], g.inn[v][k]):
                if nb != MISSING and not visited[nb]:
                    if nb != seen:
                        return False
                    visited[nb] = True
                    seen += 1
                    queue.append(nb)
    return seen == g.num_vertices


def subgroup_basis(g):
    """Convenience: Nielsen-Schreier basis words of ``g`` with the default tree."""
    return basis(g, spanning_tree(g)).words


def same_subgroup(g1, g2):
    return canonical_form(g1) == canonical_form(g2)
