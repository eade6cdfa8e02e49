"""Targeted certificate corruptions, one per verifier check."""

from dataclasses import replace

from freenormal.hall import complete
from freenormal.pipeline import analyze
from freenormal.stallings import from_generators
from freenormal.witness import build_witness
from freenormal.words import EMPTY, multiply, parse


def certificate(*gens):
    return build_witness(analyze([parse(g, 2) for g in gens], 2))


def _alternative_Q():
    # <a^3, b>: vertices 1 and 2 lack b-edges; swapping them instead of
    # adding two loops gives another covering of index 3 with a larger core
    h = from_generators([parse("a^3", 2), parse("b", 2)], 2)
    return complete(h, {1: [(1, 2), (2, 1)]}).basis_Q


def mutate(cid):
    """Return ``(certificate, description)`` for the corruption aimed at ``cid``."""
    if cid == "C4":
        cert = certificate("a^3", "b")
        return replace(cert, basis_Q=_alternative_Q()), "basis_Q from a different completion of H"
    cert = certificate("a^2", "b")
    if cid == "C1":
        return replace(cert, input_generators=[parse("a", 2)]), "input generators replaced by a"
    if cid == "C2":
        return replace(cert, index_FK=cert.index_FK + 1), "index_FK off by one"
    if cid == "C3":
        return replace(cert, basis_J=cert.basis_J + cert.basis_J[:1]), "basis_J element duplicated"
    if cid == "C5":
        return replace(cert, coset_reps=[EMPTY] * len(cert.coset_reps)), "coset representative duplicated"
    if cid == "C6":
        ch = list(cert.basis_CH)
        ch[0] = multiply(ch[0], cert.basis_J[0])
        return replace(cert, basis_CH=ch), "basis_CH[0] multiplied by basis_J[0]"
    if cid == "C7":
        return replace(cert, witness=EMPTY), "witness replaced by the identity"
    if cid == "C8":
        return (
            replace(cert, basis_CH=cert.basis_CH[1:], basis_J=cert.basis_J + cert.basis_CH[:1]),
            "basis_CH[0] moved into basis_J (an element of H placed in L)",
        )
    raise KeyError(cid)


CHECK_IDS = [f"C{i}" for i in range(1, 9)]
