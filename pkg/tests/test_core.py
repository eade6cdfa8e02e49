import random

import pytest

from freenormal.core import CapExceeded, PermutationAction, action_from_covering, enumerate_image, normal_core
from freenormal.corpus import random_subgroups, random_word
from freenormal.hall import complete
from freenormal.stallings import (
    Finite,
    canonical_form,
    conjugate_graph,
    contains,
    covering_status,
    from_edges,
    from_generators,
    pullback,
)
from freenormal.words import EMPTY, conjugate, parse, shortlex_key


def graph(*gens):
    return from_generators([parse(g, 2) for g in gens], 2)


# a -> (1 2), b -> (0 1 2) on three cosets
S3 = PermutationAction(3, ((0, 2, 1), (1, 2, 0)))


def test_action_examples():
    act = action_from_covering(complete(graph("a")))
    assert act.degree == 1 and act.images == ((0,), (0,))
    act = action_from_covering(complete(graph("a^2", "b", "abA")))
    assert act.images == ((1, 0), (0, 1))


def test_enumerate_examples():
    core = normal_core(complete(graph("a")))
    assert core.n == 1 and core.coset_reps == [EMPTY]
    core = enumerate_image(PermutationAction(2, ((1, 0), (0, 1))))
    assert core.order_G == 2 and [str(r) for r in core.coset_reps] == ["", "a"]
    assert canonical_form(core.core_graph) == canonical_form(graph("a^2", "b", "abA"))
    core = enumerate_image(S3)
    assert core.order_G == 6 and core.n == 6
    assert len(core.basis_C.words) == 7


def test_s3_from_covering_graph():
    # same action, entered as a graph whose completion re-adds the a-loop at 0
    h = from_edges(2, 3, [(1, 0, 2), (2, 0, 1), (0, 1, 1), (1, 1, 2), (2, 1, 0)])
    k = complete(h)
    assert k.index_FK == 3 and [str(q) for q in k.basis_Q] == ["a"]
    assert normal_core(k).order_G == 6


def test_cap():
    with pytest.raises(CapExceeded) as exc:
        enumerate_image(S3, cap=5)
    assert exc.value.order_seen == 6
    assert enumerate_image(S3, cap=6).order_G == 6


def _cases():
    out = []
    for gens in random_subgroups(60, seed=23):
        h = from_generators(gens, 2)
        if isinstance(covering_status(h), Finite):
            continue
        k = complete(h)
        try:
            out.append((gens, k, normal_core(k, cap=800)))
        except CapExceeded:
            pass
    return out


CASES = _cases()


def test_enough_cases():
    assert len(CASES) >= 20


@pytest.mark.parametrize("gens,k,core", CASES)
def test_core_invariants(gens, k, core):
    n = core.order_G
    g = core.core_graph
    assert covering_status(g) == Finite(n)
    assert n % k.index_FK == 0
    reps = core.coset_reps
    assert reps[0] == EMPTY and len(reps) == n
    assert len({g.trace(r) for r in reps}) == n
    # shortlex minimal: each rep is the least word reaching its vertex by BFS
    assert reps == sorted(reps, key=shortlex_key)
    assert len(core.basis_C.words) == 1 + n
    for c in core.basis_C.words:
        for x in ("a", "b"):
            assert contains(g, conjugate(c, parse(x, 2)))
    for r in reps:
        kb = conjugate_graph(k.completed, r)
        assert canonical_form(pullback(g, kb)) == canonical_form(g)


@pytest.mark.parametrize("gens,k,core", CASES[:10])
def test_three_way_membership(gens, k, core):
    rng = random.Random(1)
    identity = tuple(range(core.action.degree))
    for _ in range(200):
        w = random_word(rng, 2, rng.randint(0, 12))
        by_perm = core.action.of_word(w) == identity
        assert by_perm == contains(core.core_graph, w)
    # members are rarer; build some from the basis
    for c in core.basis_C.words[:5]:
        assert core.action.of_word(c) == identity


@pytest.mark.parametrize("gens,k,core", CASES[:10])
def test_pullback_route_agrees(gens, k, core):
    acc = None
    for r in core.coset_reps:
        kb = conjugate_graph(k.completed, r)
        acc = kb if acc is None else pullback(acc, kb)
    assert canonical_form(acc) == canonical_form(core.core_graph)
