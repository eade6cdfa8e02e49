"""
Splitting the core ``C`` as ``(C ∩ H) * J`` inside ``K = H * Q``.

The Schreier graph of ``C`` in ``K`` is drawn over the split basis of ``K``.
Edges labelled by ``H``-letters fall into components; the component of the
basepoint carries ``C ∩ H``.  A maximal tree made of per-component trees joined
by ``Q``-edges turns every other non-tree edge into a free generator of ``J``.
Killing those generators is a retraction ``C -> C ∩ H`` whose kernel is the
normal closure of ``J`` in ``C``.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Tuple

from .core import CoreData
from .hall import FreeFactorization
from .stallings import NotAMember, schreier_rewrite
from .words import EMPTY, Word, invert, product, reduce, substitute


class NotInC(ValueError):
    pass


class DisconnectedJoin(RuntimeError):
    pass


@dataclass(frozen=True)
class SchreierGraphKC:
    """Cayley graph of ``K/C`` on the images of the ``K``-basis (``H`` letters first)."""

    elements: List[int]          # vertex -> index into CoreData.group_elements
    out: List[List[int]]
    inn: List[List[int]]
    num_H: int
    basis_K: List[Word]

    @property
    def num_vertices(self):
        return len(self.elements)

    @property
    def num_letters(self):
        return len(self.basis_K)


def schreier_graph(k: FreeFactorization, core: CoreData):
    letters = k.basis_K.words
    perms = [core.action.of_word(u) for u in letters]
    index = core.element_index
    elems = core.group_elements

    def act(i, p):
        return index[tuple(p[j] for j in elems[i])]

    inv_perms = []
    for p in perms:
        q = [0] * len(p)
        for a, b in enumerate(p):
            q[b] = a
        inv_perms.append(q)

    local = {0: 0}
    vertices = [0]
    out = [[-1] * len(letters)]
    inn = [[-1] * len(letters)]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        gv = vertices[v]
        for l in range(len(letters)):
            for gt, forward in ((act(gv, perms[l]), True), (act(gv, inv_perms[l]), False)):
                t = local.get(gt)
                if t is None:
                    t = len(vertices)
                    local[gt] = t
                    vertices.append(gt)
                    out.append([-1] * len(letters))
                    inn.append([-1] * len(letters))
                    queue.append(t)
                if forward:
                    out[v][l] = t
                    inn[t][l] = v
                else:
                    out[t][l] = v
                    inn[v][l] = t
    return SchreierGraphKC(vertices, out, inn, k.num_H, list(letters))


@dataclass(frozen=True)
class KuroshData:
    factorization: FreeFactorization
    graph: SchreierGraphKC
    component: List[int]
    paths: List[Word]                     # K-letter words from the root
    tree_edges: frozenset
    edge_letter: Dict[Tuple[int, int], int]   # non-tree edge -> C-basis letter index
    k_words: List[Word]                   # C-basis letters as K-letter words
    words: List[Word]                     # ... and as F-words
    tags: List[str]                       # "CH" or "J"
    ch_position: List[int]                # C-letter -> index in basis_CH, or -1

    @property
    def basis_CH(self):
        return [w for w, t in zip(self.words, self.tags) if t == "CH"]

    @property
    def basis_J(self):
        return [w for w, t in zip(self.words, self.tags) if t == "J"]

    @property
    def letter_images(self):
        return [w if t == "CH" else EMPTY for w, t in zip(self.words, self.tags)]


def decompose(s: SchreierGraphKC, k: FreeFactorization):
    n_letters = s.num_letters
    h_letters = range(s.num_H)
    comp = [-1] * s.num_vertices
    paths = [None] * s.num_vertices
    tree = set()
    members = []

    def explore(root, cid):
        comp[root] = cid
        found = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for l in h_letters:
                t = s.out[v][l]
                if comp[t] == -1:
                    comp[t] = cid
                    paths[t] = Word(paths[v] + (l + 1,))
                    tree.add((v, l))
                    found.append(t)
                    queue.append(t)
                t = s.inn[v][l]
                if comp[t] == -1:
                    comp[t] = cid
                    paths[t] = Word(paths[v] + (-(l + 1),))
                    tree.add((t, l))
                    found.append(t)
                    queue.append(t)
        members.append(found)

    paths[0] = EMPTY
    explore(0, 0)
    comp_queue = deque([0])
    while comp_queue:
        c = comp_queue.popleft()
        for v in sorted(members[c]):
            for l in range(s.num_H, n_letters):
                for t, key, sign in ((s.out[v][l], (v, l), 1), (s.inn[v][l], None, -1)):
                    if comp[t] != -1:
                        continue
                    paths[t] = Word(paths[v] + (sign * (l + 1),))
                    tree.add(key if key is not None else (t, l))
                    explore(t, len(members))
                    comp_queue.append(len(members) - 1)
    if any(c == -1 for c in comp):
        raise DisconnectedJoin("Q-edges do not connect the H-components")

    edge_letter, k_words, words, tags, ch_position = {}, [], [], [], []
    n_ch = 0
    kbasis = s.basis_K
    for l in range(n_letters):
        for v in range(s.num_vertices):
            if (v, l) in tree:
                continue
            t = s.out[v][l]
            kw = product((paths[v], (l + 1,), invert(paths[t])))
            edge_letter[(v, l)] = len(words)
            k_words.append(kw)
            words.append(substitute(kw, kbasis))
            if l < s.num_H and comp[v] == 0:
                tags.append("CH")
                ch_position.append(n_ch)
                n_ch += 1
            else:
                tags.append("J")
                ch_position.append(-1)
    return KuroshData(k, s, comp, paths, frozenset(tree), edge_letter, k_words, words, tags, ch_position)


def kurosh(k, core):
    return decompose(schreier_graph(k, core), k)


def rewrite_to_C_letters(kd: KuroshData, w):
    """Express ``w ∈ C`` over the C-basis letters (letter ``i + 1`` = ``kd.words[i]``)."""
    fz = kd.factorization
    try:
        kw = schreier_rewrite(fz.completed, fz.tree, fz.basis_K, w)
    except NotAMember as exc:
        raise NotInC(f"{w} is not in K") from exc
    s = kd.graph
    v = 0
    emitted = []
    edge_letter = kd.edge_letter
    for x in kw:
        if x > 0:
            l = x - 1
            c = edge_letter.get((v, l))
            if c is not None:
                emitted.append(c + 1)
            v = s.out[v][l]
        else:
            l = -x - 1
            u = s.inn[v][l]
            c = edge_letter.get((u, l))
            if c is not None:
                emitted.append(-(c + 1))
            v = u
    if v != 0:
        raise NotInC(f"{w} is in K but not in C")
    return reduce(emitted)


def retract_letters(kd, w):
    """Image of ``w ∈ C`` under the retraction, as a word over ``basis_CH`` letters."""
    pos = kd.ch_position
    out = []
    for x in rewrite_to_C_letters(kd, w):
        p = pos[abs(x) - 1]
        if p < 0:
            continue
        y = p + 1 if x > 0 else -(p + 1)
        if out and out[-1] == -y:
            out.pop()
        else:
            out.append(y)
    return Word(out)


def retract_to_CH(kd, w):
    """Image of ``w ∈ C`` in ``C ∩ H`` (an F-word); trivial exactly when ``w`` lies in ``L``."""
    return substitute(retract_letters(kd, w), kd.basis_CH)
