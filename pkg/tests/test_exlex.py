import itertools

import pytest

from realizability.dco import catalog, trivial_dco
from realizability.exlex import (
    ExCompletion,
    audit_without_limits,
    equivalence_relations,
    non_closed_relation,
    rt,
    verify_equivalence_relation,
)
from realizability.pasm import PAsm, obj
from realizability.pca import SKPca
from realizability.report import Verdict

SK = SKPca()


@pytest.fixture(scope="module")
def ex():
    return ExCompletion(PAsm.over_finite(trivial_dco()))


def bell(n):
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def test_equivalence_relations_count():
    for n in range(6):
        rels = equivalence_relations(range(n))
        assert len(rels) == len(set(rels)) == bell(n)


def test_completion_requires_limits():
    with pytest.raises(ValueError):
        ExCompletion(PAsm.over_finite(catalog()["two_c0"]))
    rep = audit_without_limits(PAsm.over_finite(catalog()["two_c0"]), 2)
    assert rep.overall is Verdict.FAIL and all("no finite limits" in c.witness for c in rep.checks)


def test_homs_are_functions_between_quotients(ex):
    # over the trivial base the completion at bound 3 is finite sets and their quotients
    X = obj({0: "*", 1: "*", 2: "*"})
    E = ex.embed(X)
    for eq in equivalence_relations(X.index):
        Q = ex.relation_object(X, eq)
        n_classes = len({frozenset(y for y in X.index if (x, y) in eq) for x in X.index})
        assert len(ex.points(Q)) == n_classes
        assert len(ex.gamma_coequalizer(Q)) == n_classes
        assert len(ex.hom(Q, E)) == 3 ** n_classes
        assert len(ex.hom(E, Q)) == n_classes ** 3
        assert verify_equivalence_relation(ex.base, Q).passed


def test_factorize_two_to_one_collapse(ex):
    X, Y = obj({0: "*", 1: "*"}), obj({0: "*"})
    a = ex.morphism(ex.embed(X), ex.embed(Y), ex.base.morphism(X, Y, (0, 0)))
    assert ex.is_mono(a) is Verdict.FAIL
    assert ex.is_regular_epi(a) is Verdict.PASS
    e, m = ex.factorize_regular(a)
    assert ex.is_regular_epi(e) is Verdict.PASS and ex.is_mono(m) is Verdict.PASS
    assert ex.equal(ex.compose(e, m), a) is Verdict.PASS
    assert ex.is_iso(m)
    assert len(ex.points(e.target)) == 1


def test_limits_in_completion(ex):
    X = obj({0: "*", 1: "*"})
    full = ex.relation_object(X, set(itertools.product(X.index, repeat=2)))
    E = ex.embed(X)
    P, p1, p2 = ex.product(E, full)
    assert len(ex.points(P)) == 2
    a, b = ex.hom(E, E)[0], ex.hom(E, E)[-1]
    assert len(ex.points(ex.equalizer(a, b).source)) == sum(a(x) == b(x) for x in X.index)


def test_unit_and_projectives(ex):
    assert ex.unit_full_faithful(2).passed
    assert all(c.passed for c in ex.enough_projectives(2))
    assert ex.projectives_closed(2).passed
    assert ex.pushout_check(2).passed


def test_discreteness_agrees_with_base(ex):
    for c in ex.discrete_lift_check(2):
        assert c.passed, c


def test_audit_over_trivial_base(ex):
    rep = ex.audit_theorem_4_6(2)
    assert [c.verdict for c in rep.checks] == [Verdict.PASS] * 5
    assert rep.overall is Verdict.PASS


@pytest.fixture(scope="module")
def topos():
    return rt(SK, fuel=10_000)


def test_facade_basics(topos):
    one = topos.terminal()
    reps, v = topos.hom_search(one, one)
    assert v is Verdict.PASS and len(reps) == 1
    assert topos.equal(reps[0], topos.identity(one)) is Verdict.PASS
    n2 = topos.embed(topos.base.nabla((0, 1)))
    assert len(topos.points(n2)) == 2
    with pytest.raises(ValueError):
        topos.objects(1)


def test_facade_quotient_has_one_point(topos):
    T, F = SK.k, SK.apply(SK.k, SK.i)
    X = obj({0: T, 1: F})
    Q = topos.relation_object(X, set(itertools.product((0, 1), repeat=2)))
    assert verify_equivalence_relation(topos.base, Q).verdict is not Verdict.FAIL
    assert len(topos.points(Q)) == 1
    reps, v = topos.hom_search(topos.embed(X), topos.nabla((0, 1)))
    assert v is Verdict.PASS and len(reps) == 4


def test_non_closed_relation_over_sk(topos):
    E, verified, closed = non_closed_relation(topos)
    assert verified.passed
    assert closed is Verdict.FAIL


def test_diagonal_is_kernel_pair_of_identity(ex):
    X = obj({0: "*", 1: "*"})
    K, k1, k2 = ex.kernel(ex.identity(ex.embed(X)))
    assert {(k1(s), k2(s)) for s in K.index} == {(0, 0), (1, 1)}


def test_discreteness_transported(ex):
    G = ex.embed(ex.base.generic_candidate())
    assert ex.is_discrete(G, 2).passed
    two = obj({0: "*", 1: "*"})
    assert not ex.base.is_discrete_object(two, 2).passed
    assert not ex.is_discrete(ex.embed(two), 2).passed
