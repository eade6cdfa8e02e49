import itertools
import random
import struct

import pytest
from hypothesis import given, settings, strategies as st

from freenormal.corpus import random_subgroups, random_word
from freenormal.oracle import MemberTable, No, Yes, ball
from freenormal.stallings import (
    Finite,
    Infinite,
    NotAMember,
    basis,
    canonical_form,
    conjugate_graph,
    contains,
    covering_status,
    expand,
    from_edges,
    from_generators,
    pullback,
    same_subgroup,
    schreier_rewrite,
    spanning_tree,
    trivial,
)
from freenormal.words import EMPTY, Word, conjugate, parse, reduce


def w(t):
    return parse(t, 2)


def graph(*gens):
    return from_generators([w(g) for g in gens], 2)


def test_from_generators_examples():
    g = graph("a")
    assert g.num_vertices == 1 and g.out == ((0, -1),)
    g = graph("a^2", "b")
    assert g.out == ((1, 0), (0, -1))
    g = graph("a^2", "ab")
    assert g.out == ((1, -1), (0, 0))


def test_empty_generators_are_ignored():
    assert canonical_form(graph("a", "", "aA")) == canonical_form(graph("a"))
    assert canonical_form(graph()) == canonical_form(trivial(2))
    assert trivial(2).num_vertices == 1 and trivial(2).num_edges == 0


def test_contains_examples():
    assert not contains(graph("a"), w("b"))
    assert contains(graph("a^2", "b"), w("a^2ba^2"))
    assert not contains(graph("a^2", "b"), w("aBABabAb"))
    assert contains(graph("a"), EMPTY)


def test_covering_status_examples():
    s = covering_status(graph("a"))
    assert isinstance(s, Infinite)
    assert (0, 1, "out") in s.deficiencies and (0, 1, "in") in s.deficiencies
    assert covering_status(graph("a^2", "b", "abA")) == Finite(2)
    s = covering_status(graph("a^2", "b"))
    assert sorted(s.deficiencies) == [(1, 1, "in"), (1, 1, "out")]


def test_tree_and_basis_examples():
    g = graph("a")
    assert [str(x) for x in basis(g, spanning_tree(g)).words] == ["a"]
    g = graph("a^2", "b")
    t = spanning_tree(g)
    assert t.parent == {1: (0, 0, 1)}
    assert [str(x) for x in basis(g, t).words] == ["aa", "b"]


def test_schreier_rewrite_examples():
    g = graph("a")
    t = spanning_tree(g)
    assert schreier_rewrite(g, t, basis(g, t), w("aaa")) == Word((1, 1, 1))
    g = graph("a^2", "b", "abA")
    t = spanning_tree(g)
    be = basis(g, t)
    assert [str(x) for x in be.words] == ["aa", "b", "abA"]
    q, b = 3, 2
    assert schreier_rewrite(g, t, be, w("aBABabAb")) == Word((-q, -b, q, b))
    assert schreier_rewrite(g, t, be, EMPTY) == EMPTY
    with pytest.raises(NotAMember):
        schreier_rewrite(graph("a"), spanning_tree(graph("a")), basis(graph("a"), spanning_tree(graph("a"))), w("b"))


def test_pullback_examples():
    g = graph("a^2", "ab")
    assert canonical_form(pullback(g, g)) == canonical_form(g)
    p = pullback(graph("a"), graph("b"))
    assert p.num_vertices == 1 and p.num_edges == 0
    assert canonical_form(pullback(graph("a"), graph("a^2", "b"))) == canonical_form(graph("a^2"))


def test_pullback_intersection_against_oracle():
    # <a> ∩ <a^2, b> = <a^2>, confirmed on the ball of radius 6
    p = pullback(graph("a"), graph("a^2", "b"))
    t1, t2 = MemberTable([w("a")], 6), MemberTable([w("a^2"), w("b")], 6)
    for x in ball(2, 6):
        a1, a2 = t1(x), t2(x)
        if isinstance(a1, (Yes, No)) and isinstance(a2, (Yes, No)):
            assert contains(p, x) == (isinstance(a1, Yes) and isinstance(a2, Yes))


def test_conjugate_graph_examples():
    g = graph("a^2", "ab")
    assert canonical_form(conjugate_graph(g, EMPTY)) == canonical_form(g)
    h = conjugate_graph(graph("a"), w("b"))
    assert contains(h, w("Bab"))
    assert not contains(h, w("a"))


def test_canonical_form_layout():
    g = graph("a^2", "b")
    data = canonical_form(g)
    vals = struct.unpack("<" + "i" * (len(data) // 4), data)
    assert vals[:3] == (2, 2, 3)
    assert vals[3:] == (0, 0, 1, 0, 1, 0, 1, 0, 0)


def test_from_edges_renumbers():
    # same graph as <a^2, b> with the vertices listed in the other order
    g = from_edges(2, 2, [(1, 0, 0), (0, 0, 1), (1, 1, 1)], basepoint=1)
    assert canonical_form(g) == canonical_form(graph("a^2", "b"))


def test_membership_agrees_with_oracle():
    radius = 6
    words = ball(2, radius)
    conclusive = 0
    for gens in random_subgroups(50, seed=2024):
        g = from_generators(gens, 2)
        table = MemberTable(gens, radius)
        for x in words:
            ans = table(x)
            if isinstance(ans, Yes):
                assert contains(g, x), (gens, x)
                conclusive += 1
            elif isinstance(ans, No):
                assert not contains(g, x), (gens, x)
                conclusive += 1
    assert conclusive > len(words) * 10


gen_lists = st.lists(
    st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=8).map(reduce),
    min_size=1,
    max_size=4,
)


@settings(max_examples=60, deadline=None)
@given(gen_lists, st.randoms(use_true_random=False))
def test_folding_confluence(gens, rnd):
    perm = list(gens)
    rnd.shuffle(perm)
    assert canonical_form(from_generators(gens, 2)) == canonical_form(from_generators(perm, 2))


@settings(max_examples=60, deadline=None)
@given(gen_lists, gen_lists)
def test_pullback_symmetry(g1, g2):
    a, b = from_generators(g1, 2), from_generators(g2, 2)
    assert canonical_form(pullback(a, b)) == canonical_form(pullback(b, a))


@settings(max_examples=60, deadline=None)
@given(gen_lists)
def test_basis_generates_same_subgroup(gens):
    g = from_generators(gens, 2)
    be = basis(g, spanning_tree(g))
    assert len(be.words) == g.num_edges - g.num_vertices + 1
    assert all(x and reduce(x) == x for x in be.words)
    assert same_subgroup(g, from_generators(be.words, 2))


def test_rewrite_round_trip():
    rng = random.Random(5)
    for gens in random_subgroups(30, seed=11):
        g = from_generators(gens, 2)
        t = spanning_tree(g)
        be = basis(g, t)
        for _ in range(20):
            h = reduce(itertools.chain.from_iterable(
                rng.choice(gens) if rng.random() < 0.5 else tuple(-x for x in reversed(rng.choice(gens)))
                for _ in range(rng.randint(0, 6))
            ))
            letters = schreier_rewrite(g, t, be, h)
            assert expand(be, letters) == h


def test_nielsen_schreier_on_coverings():
    rng = random.Random(3)
    seen = 0
    for _ in range(200):
        gens = [random_word(rng, 2, rng.randint(1, 4)) for _ in range(rng.randint(2, 4))]
        g = from_generators(gens, 2)
        s = covering_status(g)
        if isinstance(s, Finite):
            seen += 1
            assert s.index == g.num_vertices
            assert len(basis(g, spanning_tree(g)).words) == 1 + s.index * (2 - 1)
    assert seen > 0


def test_conjugate_graph_accepts_conjugates():
    rng = random.Random(9)
    for gens in random_subgroups(20, seed=3):
        b = random_word(rng, 2, 4)
        h = conjugate_graph(from_generators(gens, 2), b)
        for x in gens:
            assert contains(h, conjugate(x, b))
