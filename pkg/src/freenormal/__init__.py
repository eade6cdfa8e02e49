"""
Normal subgroups of a free group that meet a given finitely generated
subgroup of infinite index trivially, with checkable certificates.

Typical use::

    from freenormal import analyze, build_witness, verify, parse

    ctx = analyze([parse("a^2", 2), parse("b", 2)], rank=2)
    cert = build_witness(ctx)
    assert verify(cert).overall
"""

from .certificate import MalformedCertificate, dumps, load, loads, save
from .core import CapExceeded, normal_core
from .hall import complete
from .kurosh import kurosh
from .oracle import No, Unknown, Yes, ball, naive_closure_member, naive_member
from .pipeline import Context, FiniteIndex, analyze
from .stallings import (
    SubgroupGraph,
    canonical_form,
    contains,
    covering_status,
    from_generators,
    pullback,
    subgroup_basis,
)
from .verify import VerificationReport, verify
from .witness import (
    SearchExhausted,
    WitnessCertificate,
    WitnessTooLarge,
    build_witness,
    member_of_C,
    member_of_L,
    member_of_N,
)
from .words import Word, commutator, conjugate, invert, multiply, parse, reduce

__version__ = "0.1.0"
