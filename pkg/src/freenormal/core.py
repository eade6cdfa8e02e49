"""
Normal core of a finite-index subgroup.

``F`` acts on the right on the vertices (cosets) of a covering graph.  The
kernel of that action is the intersection of all conjugates of ``K``; its graph
is the Cayley graph of the finite permutation image ``G``.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .stallings import (
    BasisEnumeration,
    SpanningTree,
    SubgroupGraph,
    basis,
    is_covering,
    spanning_tree,
)
from .words import EMPTY, Word

DEFAULT_CAP = 5000

Perm = Tuple[int, ...]


class CapExceeded(RuntimeError):
    def __init__(self, order_seen):
        super().__init__(f"permutation image has more than {order_seen - 1} elements")
        self.order_seen = order_seen


@dataclass(frozen=True)
class PermutationAction:
    degree: int
    images: Tuple[Perm, ...]   # images[g][i] = i . x_g

    @property
    def rank(self):
        return len(self.images)

    def of_word(self, w):
        p = list(range(self.degree))
        inv = [None] * self.rank
        for x in w:
            if x > 0:
                img = self.images[x - 1]
            else:
                if inv[-x - 1] is None:
                    inv[-x - 1] = invert_perm(self.images[-x - 1])
                img = inv[-x - 1]
            p = [img[i] for i in p]
        return tuple(p)


def invert_perm(p):
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def action_from_covering(k):
    """Permutation action on the vertices of the completed covering (BFS numbering)."""
    g = k.completed if hasattr(k, "completed") else k
    if not is_covering(g):
        raise ValueError("graph is not a covering")
    c = g.canonical()
    images = tuple(tuple(c.out[v][x] for v in range(c.num_vertices)) for x in range(c.rank))
    return PermutationAction(c.num_vertices, images)


@dataclass(frozen=True)
class CoreData:
    action: PermutationAction
    group_elements: List[Perm]
    element_index: Dict[Perm, int]
    representatives: List[Word]
    core_graph: SubgroupGraph
    tree: SpanningTree
    basis_C: BasisEnumeration

    @property
    def order_G(self):
        return len(self.group_elements)

    @property
    def n(self):
        return len(self.group_elements)

    @property
    def coset_reps(self):
        return self.representatives

    def element(self, w, start=0):
        """Index of the group element ``start * w``."""
        return self.core_graph.trace(w, start)


def enumerate_image(act, cap=DEFAULT_CAP):
    """
    Enumerate the image of ``F`` in ``Sym(degree)`` breadth first.

    Representatives are recorded on discovery, which makes them shortlex
    minimal (letters ordered a < A < b < B < ...).
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    rank = act.rank
    letters = []
    for k in range(rank):
        letters.append((k, 1, act.images[k]))
        letters.append((k, -1, invert_perm(act.images[k])))
    identity = tuple(range(act.degree))
    index = {identity: 0}
    elements = [identity]
    reps = [EMPTY]
    table = [[-1] * rank]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        p = elements[i]
        for k, sign, img in letters:
            q = tuple(img[j] for j in p)
            t = index.get(q)
            if t is None:
                if len(elements) >= cap:
                    raise CapExceeded(len(elements) + 1)
                t = len(elements)
                index[q] = t
                elements.append(q)
                reps.append(Word(reps[i] + (sign * (k + 1),)))
                table.append([-1] * rank)
                queue.append(t)
            if sign > 0:
                table[i][k] = t
            else:
                table[t][k] = i
    core_graph = SubgroupGraph(rank, table)
    tree = spanning_tree(core_graph)
    return CoreData(act, elements, index, reps, core_graph, tree, basis(core_graph, tree))


def normal_core(k, cap=DEFAULT_CAP):
    return enumerate_image(action_from_covering(k), cap)
