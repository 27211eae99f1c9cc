from itertools import product

import pytest

from lcospan import cospan, finset, levelgraph as L, properad, slcc
from lcospan.envelope import from_decoration
from lcospan.finset import FinMap
from lcospan.properad import CayleyMonoid, Decoration, Naturals, Op
from lcospan.slcc import Report
from mutants import IdempotentClosed, NoHomSets, TrivialSymmetry

BUILT_INS = [properad.terminal(1), properad.discrete(2), properad.monoid_weighted(CayleyMonoid.cyclic(2))]


def test_report_lines():
    r = Report()
    r.record("a", cases=3)
    r.record("b", "witness here", 5)
    r.skip("c", "not evaluated: reason")
    assert r.lines() == ["PASS a (3 cases)", "FAIL b witness here", "SKIP c not evaluated: reason"]
    assert not r.ok and r.status("c") == "SKIP"
    with pytest.raises(KeyError):
        r.status("d")


def test_adapter_objects():
    C = slcc.envelope_as_slcc(properad.terminal(2))
    assert C.connected_objects() == [(0,), (1,)]
    assert C.object_tensor([(0,), (1,), (1,)]) == (0, 1, 1)
    assert C.decompose_object((1, 0)) == ((1,), (0,))
    assert C.project(C.symmetry((0,), (1, 1))) == cospan.symmetry(1, 2)
    assert len(C.connected_hom_enum(((0,),), ((1,), (1,)), 2)) == 1


@pytest.mark.parametrize("P", BUILT_INS, ids=repr)
def test_built_in_envelopes_satisfy_the_axioms(P):
    report = slcc.check_axioms(slcc.envelope_as_slcc(P), 2)
    assert report.ok, str(report)
    assert [r.law for r in report.records] == ["objects-free-monoid", "project-strict-functor",
                                               "closed-endos-free-abelian", "reduced-closed-split",
                                               "reduced-tensor-pullback"]


def test_idempotent_closed_vertices_are_caught():
    report = slcc.check_axioms(IdempotentClosed(properad.terminal(1)), 2)
    assert report.status("closed-endos-free-abelian") == "FAIL"


def test_trivial_symmetry_is_caught():
    report = slcc.check_axioms(TrivialSymmetry(properad.terminal(1)), 2)
    assert report.status("project-strict-functor") == "FAIL"


def test_non_enumerable_hom_sets_are_not_evaluated():
    report = slcc.mu_bar_check(NoHomSets(properad.terminal(1)), 2)
    assert report.lines() == ["SKIP mu-bar-bijective not evaluated: hom-sets of this category are not enumerable"]
    assert report.ok


def test_hat_examples():
    C = slcc.envelope_as_slcc(properad.terminal(3))
    w = [(0,), (1,), (2,)]
    assert slcc.hat(C, w, finset.identity(3)) == C.id((0, 1, 2))
    swap = slcc.hat(C, w[:2], FinMap.of(2, 2, (2, 1)))
    assert swap == C.symmetry((0,), (1,))
    cyc = slcc.hat(C, w, FinMap.of(3, 3, (2, 3, 1)))
    assert C.target(cyc) == (2, 0, 1)
    with pytest.raises(ValueError):
        slcc.hat(C, w, FinMap.of(3, 3, (1, 1, 2)))


def test_hat_is_functorial_and_projects_to_the_permutation():
    C = slcc.envelope_as_slcc(properad.terminal(2))
    for n in range(5):
        perms = list(finset.all_permutations(n))
        for w in product(C.connected_objects(), repeat=n):
            for s in perms:
                hs = slcc.hat(C, w, s)
                assert C.project(hs) == cospan.normalize(finset.identity(n), finset.inverse(s))
                if n > 3:
                    continue
                moved = [None] * n
                for i, x in enumerate(w, 1):
                    moved[s(i) - 1] = x
                for t in perms:
                    assert C.compose(hs, slcc.hat(C, moved, t)) == slcc.hat(C, w, finset.compose_map(s, t))


@pytest.mark.parametrize("P", BUILT_INS, ids=repr)
def test_mu_agrees_with_the_envelope(P):
    C = slcc.envelope_as_slcc(P)
    Q = slcc.extract_properad(C)
    for g in L.all_graphs(1, 2, 3):
        for d in properad.decorations_enum(g, P, 1):
            dq = slcc._corolla_decoration(d, C)
            assert slcc.mu(C, dq, Q) == from_decoration(d)


def test_mu_examples():
    P = properad.monoid_weighted(Naturals())
    C = slcc.envelope_as_slcc(P)
    env = C.env
    p = Op((0, 0), (0,), 2)
    single = Decoration(L.from_cospans([cospan.corolla(2, 1)]), (((0,), (0,)), ((0,),)), ((env.corolla(p),),))
    assert slcc.mu(C, single) == env.corolla(p)
    # two crossing lines give the symmetry conjugated around the two operations
    one, two = env.corolla(Op((0,), (0,), 1)), env.corolla(Op((0,), (0,), 2))
    g = L.from_cospans([cospan.make(2, 2, 2, [1, 2], [2, 1])])
    d = Decoration(g, (((0,), (0,)), ((0,), (0,))), ((one, two),))
    want = env.compose(env.tensor(one, two), env.symmetry((0,), (0,)))
    assert slcc.mu(C, d) == want
    with pytest.raises(ValueError):
        slcc.mu(C, Decoration(L.edges(0), ((),), ()))
    bad = Decoration(g, (((0,), (0,)), ((0,), (0,))), ((one, env.corolla(Op((0, 0), (0,), 1))),))
    with pytest.raises(ValueError):
        slcc.mu(C, bad, slcc.extract_properad(C))


def test_extracted_properad():
    C = slcc.envelope_as_slcc(properad.terminal(1))
    Q = slcc.extract_properad(C)
    assert Q.colors() == [(0,)]
    op = Q.ops(((0,), (0,)), ((0,),), 2)[0]
    assert Q.profile(op) == (((0,), (0,)), ((0,),))
    assert Q.identity((0,)) == C.id((0,))
    assert Q.act(FinMap.of(2, 2, (2, 1)), finset.identity(1), op) == op


@pytest.mark.parametrize("P", BUILT_INS, ids=repr)
def test_roundtrip_small(P):
    report = slcc.roundtrip_check(P, 2)
    assert report.ok, str(report)
    assert [r.law for r in report.records] == ["colors", "operations", "action", "compose2",
                                               "mu-bar-bijective", "mu-bar-monoidal"]


def test_nat_trans():
    P = properad.monoid_weighted(CayleyMonoid.cyclic(4))
    F = properad.identity_map(P)
    ok, failures = slcc.check_nat_trans(F, F, {0: P.identity(0)}, 3)
    assert ok and failures == []
    ok, failures = slcc.check_nat_trans(F, F, {0: Op((0,), (0,), 1)}, 3)
    assert not ok
    # weight n + w against w + m fails exactly when n and m differ mod 4
    assert all(f.split()[0] in {f"({n};{m})" for n in range(4) for m in range(4) if n != m} for f in failures)
    assert any(f.startswith("(2;1) ") for f in failures)
    with pytest.raises(ValueError):
        slcc.check_nat_trans(F, F, {0: Op((0, 0), (0,), 1)}, 1)
    with pytest.raises(ValueError):
        slcc.check_nat_trans(F, F, {}, 1)


def test_nat_trans_terminal_always_natural():
    P = properad.terminal(2)
    F = properad.identity_map(P)
    ok, _ = slcc.check_nat_trans(F, F, {c: P.identity(c) for c in P.colors()}, 2)
    assert ok


def test_presheaf_relations_small():
    for P in BUILT_INS:
        report = slcc.presheaf_relations_check(slcc.envelope_as_slcc(P), 2)
        assert report.ok, str(report)


def test_relation_failures_example():
    P = properad.monoid_weighted(Naturals())
    C = slcc.envelope_as_slcc(P)
    Q = slcc.extract_properad(C)
    env = C.env
    g = L.from_cospans([cospan.identity(1), cospan.identity(1)])
    ops = tuple((env.corolla(Op((0,), (0,), w)),) for w in (1, 2))
    d = Decoration(g, (((0,),),) * 3, ops)
    assert slcc.relation_failures(d, Q) == []
    assert properad.face(d, 1, Q).vertex_ops == ((env.corolla(Op((0,), (0,), 3)),),)
