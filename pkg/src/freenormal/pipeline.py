"""
End-to-end construction for a finitely generated ``H`` of infinite index:
completion ``K = H * Q``, normal core ``C``, and the split ``C = (C ∩ H) * J``.
"""

from dataclasses import dataclass, field
from typing import List

from ._kernels import LabelledCovering
from .core import DEFAULT_CAP, CoreData, normal_core
from .hall import FreeFactorization, complete
from .kurosh import KuroshData, kurosh, retract_letters
from .stallings import Finite, SubgroupGraph, covering_status, from_generators
from .words import Word, check_rank, invert, product


class FiniteIndex(ValueError):
    """The subgroup has finite index, so every nontrivial normal subgroup meets it."""

    def __init__(self, index):
        super().__init__(
            f"H has finite index {index} in F; for finite index every nontrivial "
            "normal subgroup of F intersects H nontrivially, so no witness exists"
        )
        self.index = index


@dataclass
class Context:
    rank: int
    generators: List[Word]
    subgroup: SubgroupGraph
    factorization: FreeFactorization
    core: CoreData
    kurosh: KuroshData
    _labels: LabelledCovering = field(default=None, repr=False)

    @property
    def coset_reps(self):
        return self.core.coset_reps

    @property
    def basis_H(self):
        return self.factorization.basis_H

    @property
    def basis_Q(self):
        return self.factorization.basis_Q

    @property
    def basis_CH(self):
        return self.kurosh.basis_CH

    @property
    def basis_J(self):
        return self.kurosh.basis_J

    @property
    def n(self):
        return self.core.n

    def labels(self):
        """
        The Cayley graph of ``F/C`` with each edge ``g -x-> gx`` labelled by the
        retraction of its Schreier generator ``r_g x r_gx^-1``.  A word ``w ∈ C``
        read from vertex ``g`` then collects the retraction of ``r_g w r_g^-1``.
        """
        if self._labels is None:
            core = self.core
            reps = core.coset_reps
            labels = {}
            for v, k, t in core.core_graph.edges():
                s = product((reps[v], (k + 1,), invert(reps[t])))
                if s:
                    lab = retract_letters(self.kurosh, s)
                    if lab:
                        labels[(v, k)] = tuple(lab)
            self._labels = LabelledCovering(core.core_graph, labels)
        return self._labels


def analyze(generators, rank, cap=DEFAULT_CAP, pairings=None):
    """
    Run every construction step for ``H = <generators>``.

    Raises :class:`FiniteIndex` when ``H`` has finite index and
    :class:`~freenormal.core.CapExceeded` when ``F/C`` is larger than ``cap``.
    """
    gens = [Word(g) for g in generators]
    for g in gens:
        check_rank(g, rank)
    h = from_generators(gens, rank)
    status = covering_status(h)
    if isinstance(status, Finite):
        raise FiniteIndex(status.index)
    fz = complete(h, pairings)
    core = normal_core(fz, cap)
    return Context(rank, gens, h, fz, core, kurosh(fz, core))
