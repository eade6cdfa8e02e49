"""
Completion of a subgroup graph to a finite covering.

Adding the missing edges of a folded core graph (without new vertices) gives
the graph of a finite-index subgroup ``K``.  Choosing the spanning tree among
the *original* edges makes the Schreier basis of ``K`` split into a basis of
``H`` (non-tree original edges) followed by the words of the added edges, so
``K = H * Q`` with ``Q`` generated by the latter.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .stallings import (
    MISSING,
    BasisEnumeration,
    SpanningTree,
    SubgroupGraph,
    basis,
    covering_status,
    Finite,
    spanning_tree,
)
from .words import Word


@dataclass(frozen=True)
class FreeFactorization:
    subgroup: SubgroupGraph
    completed: SubgroupGraph
    original_edges: FrozenSet[Tuple[int, int]]
    tree: SpanningTree
    basis_K: BasisEnumeration
    num_H: int
    index_FK: int

    @property
    def basis_H(self) -> List[Word]:
        return self.basis_K.words[: self.num_H]

    @property
    def basis_Q(self) -> List[Word]:
        return self.basis_K.words[self.num_H :]

    @property
    def rank(self):
        return self.completed.rank


def deficiencies(h):
    """Per generator: (vertices missing an outgoing edge, vertices missing an incoming edge)."""
    res = []
    for k in range(h.rank):
        no_out = [v for v in range(h.num_vertices) if h.out[v][k] == MISSING]
        no_in = [v for v in range(h.num_vertices) if h.inn[v][k] == MISSING]
        res.append((no_out, no_in))
    return res


def complete(h, pairings: Optional[Dict[int, List[Tuple[int, int]]]] = None):
    """
    Complete ``h`` to a covering and split the basis of the result.

    By default the ``i``-th vertex lacking an outgoing ``g``-edge is joined to
    the ``i``-th vertex lacking an incoming one, both in ascending order.
    ``pairings`` may override this per generator with explicit
    ``(source, target)`` lists; any bijection between the two deficiency
    sets is a valid completion.
    """
    table = [list(row) for row in h.out]
    for k, (no_out, no_in) in enumerate(deficiencies(h)):
        # a folded core graph has |E_g| edges with distinct sources and targets
        assert len(no_out) == len(no_in)
        if pairings is not None and k in pairings:
            pairs = list(pairings[k])
            if sorted(s for s, _ in pairs) != no_out or sorted(t for _, t in pairs) != no_in:
                raise ValueError(f"pairing for generator {k} is not a bijection of the deficiency sets")
        else:
            pairs = list(zip(no_out, no_in))
        for s, t in pairs:
            table[s][k] = t
    completed = SubgroupGraph(h.rank, table, h.basepoint)
    original = frozenset((s, k) for s, k, _ in h.edges())

    # The tree lives inside h, which is connected and touches every vertex;
    # this is what exhibits H as a free factor of K.
    tree = spanning_tree(completed, allowed=original)

    order = sorted(((s, k) for s, k, _ in completed.edges()), key=lambda e: (e[1], e[0]))
    h_first = [e for e in order if e in original] + [e for e in order if e not in original]
    be = basis(completed, tree, order=h_first)
    num_H = sum(1 for s, k, _ in be.edges if (s, k) in original)

    status = covering_status(completed)
    assert isinstance(status, Finite)
    return FreeFactorization(h, completed, original, tree, be, num_H, status.index)
