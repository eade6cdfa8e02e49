from dataclasses import replace

import pytest

from freenormal import certificate as certio
from freenormal.corpus import random_subgroups
from freenormal.core import CapExceeded
from freenormal.pipeline import FiniteIndex, analyze
from freenormal.stallings import canonical_form, from_generators
from freenormal.verify import SplitMembership, labelled_graph, verify
from freenormal.witness import build_witness, member_of_L, member_of_N
from freenormal.words import parse

from mutations import CHECK_IDS, certificate, mutate


def w(t):
    return parse(t, 2)


@pytest.mark.parametrize("gens", [("a",), ("a^2", "b"), (), ("aab", "bA")])
def test_valid_certificates_pass(gens):
    report = verify(certificate(*gens))
    assert report.overall, report.failed()
    assert [c.id for c in report.checks] == CHECK_IDS


def test_labelled_graph_matches_folding():
    for gens in random_subgroups(40, seed=41):
        g, labels, rel = labelled_graph(gens, 2)
        assert canonical_form(g) == canonical_form(from_generators(gens, 2))


def test_labelled_graph_spells_members():
    from freenormal.words import substitute

    gens = [w("aa"), w("b"), w("abA")]
    g, labels, rel = labelled_graph(gens, 2)
    assert rel == []
    for text in ("aBABabAb", "aab", "abbA", "baaB"):
        word = w(text)
        v, spelled = g.basepoint, []
        for x in word:
            if x > 0:
                lab = labels.get((v, x - 1), ())
                spelled.extend(lab)
                v = g.out[v][x - 1]
            else:
                u = g.inn[v][-x - 1]
                spelled.extend(-y for y in reversed(labels.get((u, -x - 1), ())))
                v = u
        assert v == g.basepoint
        assert substitute(spelled, gens) == word


def test_labelled_graph_finds_relations():
    _, _, rel = labelled_graph([w("a"), w("aa")], 2)
    assert rel
    _, _, rel = labelled_graph([w("ab"), w("b"), w("a")], 2)
    assert rel


def test_split_membership_agrees_with_builder():
    for gens in random_subgroups(30, seed=43):
        try:
            ctx = analyze(gens, 2, cap=300)
        except (FiniteIndex, CapExceeded):
            continue
        split = SplitMembership(ctx.basis_CH, ctx.basis_J, 2)
        samples = list(ctx.core.basis_C.words[:10]) + [build_witness(ctx).witness] + list(gens)
        for s in samples:
            assert split.in_L(s) == member_of_L(ctx, s)
            assert split.in_N(s) == member_of_N(ctx, s)


@pytest.mark.parametrize("cid", CHECK_IDS)
def test_mutation_fails_target_check(cid):
    cert, _ = mutate(cid)
    assert cid in verify(cert).failed()


def test_witness_in_h_fails_c7():
    cert = replace(certificate("a"), witness=w("a"))
    assert "C7" in verify(cert).failed()


def test_duplicated_rep_fails_c5():
    cert = certificate("a^2", "b")
    cert = replace(cert, coset_reps=[cert.coset_reps[0], cert.coset_reps[0]])
    assert "C5" in verify(cert).failed()


def test_round_trip_json(tmp_path):
    cert = certificate("a^2", "b")
    path = tmp_path / "c.json"
    certio.save(cert, path)
    back = certio.load(path)
    assert back == cert
    assert certio.dumps(back) == certio.dumps(cert)
    assert verify(back).overall


def test_malformed_certificates():
    d = certio.to_dict(certificate("a"))
    for key, bad in [("rank", "2"), ("witness", 3), ("basis_J", "b"), ("basis_H", ["c"]), ("rank", 0)]:
        broken = dict(d, **{key: bad})
        with pytest.raises(certio.MalformedCertificate):
            certio.from_dict(broken)
    broken = dict(d)
    del broken["witness"]
    with pytest.raises(certio.MalformedCertificate):
        certio.from_dict(broken)
    with pytest.raises(certio.MalformedCertificate):
        certio.loads("{not json")


def test_report_shape():
    d = certio.report_to_dict(verify(certificate("a")))
    assert set(d) == {"checks", "overall"}
    assert all(set(c) == {"id", "description", "pass", "details"} for c in d["checks"])
    assert d["overall"] is True
