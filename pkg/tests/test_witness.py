import random

import pytest

from freenormal.core import CapExceeded
from freenormal.corpus import random_subgroups, random_word
from freenormal.oracle import Yes, naive_closure_member
from freenormal.pipeline import FiniteIndex, analyze
from freenormal.stallings import contains
from freenormal.witness import (
    WitnessTooLarge,
    build_witness,
    covered_cosets,
    member_of_L,
    member_of_N,
    member_of_N_by_conjugates,
)
from freenormal.words import EMPTY, conjugate, invert, parse, product


def ctx_of(*gens):
    return analyze([parse(g, 2) for g in gens], 2)


def w(t):
    return parse(t, 2)


def test_membership_examples():
    ctx = ctx_of("a")
    assert member_of_L(ctx, EMPTY) and member_of_N(ctx, EMPTY)
    assert member_of_L(ctx, w("b")) and not member_of_L(ctx, w("a"))
    assert member_of_N(ctx, w("b"))
    ctx = ctx_of("a^2", "b")
    assert member_of_N(ctx, w("aBABabAb"))
    assert member_of_L(ctx, w("abA"))
    assert not member_of_N(ctx, w("b"))
    assert not member_of_N(ctx, w("a"))  # not even in C


def test_e1():
    cert = build_witness(ctx_of("a"))
    assert str(cert.witness) == "b" and cert.n == 1 and cert.index_FK == 1
    assert [str(x) for x in cert.basis_Q] == ["b"]


def test_e2():
    cert = build_witness(ctx_of("a^2", "b"))
    assert cert.index_FK == 2 and cert.n == 2
    assert [str(x) for x in cert.coset_reps] == ["", "a"]
    assert [str(x) for x in cert.basis_J] == ["abA"]
    assert [str(x) for x in cert.factors_x] == ["abA", "b"]
    assert str(cert.witness) == "aBABabAb"


def test_trivial_subgroup():
    cert = build_witness(analyze([], 2))
    assert str(cert.witness) == "a" and cert.n == 1


def test_finite_index_rejected():
    with pytest.raises(FiniteIndex) as exc:
        ctx_of("a^2", "b", "abA")
    assert exc.value.index == 2


def test_e2_closure_oracle():
    # aBABabAb = (abA)^-1 (abA)^b: a product of two conjugates of j
    ans = naive_closure_member([w("abA")], [EMPTY, w("b")], w("aBABabAb"), 2)
    assert isinstance(ans, Yes)


def test_too_large():
    ctx = ctx_of("a^2", "b")
    with pytest.raises(WitnessTooLarge):
        build_witness(ctx, max_length=5)


def test_strategies_agree_on_membership():
    ctx = ctx_of("aab", "bA")
    for strategy in ("auto", "left-normed", "cover"):
        cert = build_witness(ctx, strategy=strategy)
        assert cert.witness and member_of_N(ctx, cert.witness)
    with pytest.raises(ValueError):
        build_witness(ctx, strategy="nope")


def _contexts():
    out = []
    for gens in random_subgroups(40, seed=37):
        try:
            out.append(analyze(gens, 2, cap=400))
        except (FiniteIndex, CapExceeded):
            pass
    return out


CTXS = _contexts()


@pytest.mark.parametrize("ctx", CTXS, ids=lambda c: ",".join(map(str, c.generators)))
def test_certificate_invariants(ctx):
    cert = build_witness(ctx)
    wt = cert.witness
    assert wt and member_of_N(ctx, wt)
    assert not contains(ctx.subgroup, wt)
    assert cert.coset_reps[0] == EMPTY and len(cert.coset_reps) == cert.n
    for x in ("a", "b", "A", "B"):
        assert member_of_N(ctx, conjugate(wt, w(x)))
    assert any("member of N confirmed" in line for line in cert.construction_log)


@pytest.mark.parametrize("ctx", CTXS[:10], ids=lambda c: ",".join(map(str, c.generators)))
def test_fast_and_literal_membership_agree(ctx):
    rng = random.Random(4)
    j = ctx.basis_J[0]
    samples = [conjugate(j, b) for b in ctx.coset_reps[:8]]
    samples += [c for c in ctx.core.basis_C.words[:8]]
    samples += [random_word(rng, 2, rng.randint(0, 8)) for _ in range(20)]
    cert = build_witness(ctx)
    if len(cert.witness) < 2000:
        samples.append(cert.witness)
    for s in samples:
        assert member_of_N(ctx, s) == member_of_N_by_conjugates(ctx, s)
    # x_i = j^{b_i} lies in L^{b_i}
    for i, b in enumerate(ctx.coset_reps[:8]):
        assert covered_cosets(ctx, conjugate(j, b))[i]


@pytest.mark.parametrize("ctx", CTXS[:10], ids=lambda c: ",".join(map(str, c.generators)))
def test_sampled_disjointness_and_containment(ctx):
    rng = random.Random(6)
    gens = ctx.generators
    letters = gens + [invert(g) for g in gens]
    for _ in range(200):
        h = product(rng.choice(letters) for _ in range(rng.randint(1, 20)))
        if h:
            assert not member_of_N(ctx, h)
    wt = build_witness(ctx).witness
    for _ in range(50):
        parts = [
            conjugate(wt if rng.random() < 0.5 else invert(wt), random_word(rng, 2, rng.randint(0, 3)))
            for _ in range(rng.randint(1, 3))
        ]
        p = product(parts)
        assert member_of_N(ctx, p)
        assert not p or not contains(ctx.subgroup, p)
