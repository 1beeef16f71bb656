import itertools
import random

import pytest

from realizability.dco import (
    FiniteDco,
    FunctionalCompleteness,
    Graph,
    Outcome,
    PcaDco,
    Phi,
    below,
    cartesian_witnesses_from_pca,
    catalog,
    check_cartesian_samples,
    check_cartesian_shallow,
    check_dco_axioms,
    check_functional_completeness,
    check_functional_completeness_samples,
    constant_graph,
    dco_morphisms,
    dco_product,
    find_cartesian_structure,
    functional_completeness_from_pca,
    generated_family,
    identity_graph,
    is_shallow,
    leq,
    make_morphism,
    morphism_witnesses,
    poly_to_realizer,
    realizer_to_element,
    reconstruct_pca,
    saturate,
    trivial_dco,
    trivial_structures,
)
from realizability.pca import Polynomial, SKPca, compile_polynomial, parse_polynomial
from realizability.terms import Exhausted

from oracles import all_partial_functions, saturated

SK = SKPca()
CAT = catalog()


def g(mapping, name=""):
    return Graph.of(mapping, name)


def test_graph_must_be_functional():
    with pytest.raises(ValueError):
        Graph(frozenset({(0, 0), (0, 1)}))


def test_axioms():
    assert all(c.passed for c in check_dco_axioms(trivial_dco()))
    assert all(c.passed for c in check_dco_axioms(CAT["two_c0"]))
    swap_only = FiniteDco([0, 1], [g({0: 1, 1: 0}, "swap")])
    checks = check_dco_axioms(swap_only)
    assert not checks[0].passed and checks[0].witness == "identity missing"


def test_two_c0_compositions_by_hand():
    d = CAT["two_c0"]
    ident, c0 = d.member_named("id"), d.member_named("c0")
    assert d.compose(c0, c0) == c0
    assert d.compose(ident, c0) == c0
    assert d.compose(c0, ident) == c0
    assert d.compose(ident, ident) == ident


def test_products():
    t = dco_product(trivial_dco(), trivial_dco())
    assert len(t.carrier) == 1 and len(t.family) == 1
    d = CAT["two_c0"]
    p = dco_product(d, d)
    assert len(p.carrier) == 4 and len(set(p.family)) == 4
    one_times = dco_product(trivial_dco(), d)
    proj = make_morphism(one_times, d, [b for _, b in one_times.carrier])
    back = make_morphism(d, one_times, [("*", b) for b in d.carrier])
    assert proj and back


def test_saturation_membership_matches_oracle():
    for d in list(generated_family(2, 3))[:40]:
        members = [dict(m.pairs) for m in d.members()]
        sat = saturate(d)
        for pf in all_partial_functions(list(d.carrier)):
            assert sat.contains(Graph.of(pf)) == saturated(members, pf)


def test_saturation_examples():
    ident = saturate(FiniteDco([0, 1, 2], [identity_graph([0, 1, 2])]))
    for pf in all_partial_functions([0, 1, 2]):
        assert ident.contains(Graph.of(pf)) == all(x == y for x, y in pf.items())
    assert saturate(CAT["two_c0"]).contains(Graph(frozenset()))
    d = CAT["two_c0"]
    ident_fn = tuple(d.carrier)
    assert morphism_witnesses(d, saturate(d), ident_fn) is not None
    assert morphism_witnesses(saturate(d), d, ident_fn) is not None


def test_leq_examples():
    d = CAT["two_c0"]
    one = trivial_dco()
    const1, const0 = make_morphism(one, d, [1]), make_morphism(one, d, [0])
    assert leq(const1, const1).name == "id"
    assert leq(const1, const0).name == "c0"
    assert leq(const0, const1) is None


def test_morphisms_compose_and_include_identity():
    for d in CAT.values():
        ms = dco_morphisms(d, d)
        assert tuple(d.carrier) in [m.fn for m in ms]


def test_cartesian_finite_examples():
    trivial = trivial_dco()
    cs, _ = trivial_structures(trivial)
    assert all(c.passed for c in check_cartesian_shallow(trivial, cs))
    checks = check_cartesian_shallow(CAT["two_c0"], None)
    bad = [c for c in checks if not c.passed]
    assert bad[0].name == "constants in sat(F)" and bad[0].witness == "c_1 not in sat(F)"


def test_only_trivial_finite_dco_is_cartesian():
    for d in generated_family(3, 4):
        found = find_cartesian_structure(d)
        assert (found is not None) == (len(d.carrier) == 1), d.name


def test_functional_completeness_finite():
    d = trivial_dco()
    cs, fc = trivial_structures(d)
    assert all(c.passed for c in check_functional_completeness(d, cs, fc))
    wrong = FunctionalCompleteness(Graph(frozenset()), lambda alpha: d.identity)
    assert not all(c.passed for c in check_functional_completeness(d, cs, wrong))
    empty = Graph(frozenset(), "empty")
    with_empty = FiniteDco(["*"], [identity_graph(["*"]), empty])
    fc2 = FunctionalCompleteness.from_table(with_empty.identity, {with_empty.identity: with_empty.identity,
                                                                  empty: empty})
    checks = check_functional_completeness(with_empty, cs, fc2)
    assert not checks[0].passed and "empty" in checks[0].witness


def test_pca_dco_basics():
    d = PcaDco(SK)
    rng = random.Random(0)
    probes = [SK.random_element(rng) for _ in range(20)]
    for b in probes:
        assert d.call(d.identity, b) == b
        d.call(Phi(SK.k), b)
    gamma = d.compose(d.identity, d.identity)
    oracle = compile_polynomial(SK, parse_polynomial(f"[c:S K K] ([c:S K K] x1)"))
    for b in probes:
        assert d.call(gamma, b) == b == SK.apply(oracle, b)
    assert d.find_extension([("K", "S"), ("K", "K")]) is None
    assert d.find_extension([]) == d.identity
    assert d.find_extension([("K", "S")]) == d.constant("S")


def test_pca_dco_search_exhausts_rather_than_refutes():
    d = PcaDco(SK)
    hard = [("K", "S"), ("S", "K"), (("K", "K"), ("S", "S"))]
    with pytest.raises(Exhausted):
        d.find_extension(hard, fuel=200, depth=2)


def test_induced_cartesian_and_completeness_samples():
    d = PcaDco(SK)
    cs = cartesian_witnesses_from_pca(SK)
    fc = functional_completeness_from_pca(SK)
    rng = random.Random(2)
    for c in check_cartesian_samples(d, cs, rng, samples=30):
        assert c.passed, c
    alphas = [Phi(SK.k), d.identity, Phi(SK.random_element(rng))]
    for c in check_functional_completeness_samples(d, cs, fc, alphas, rng, samples=30):
        assert c.passed, c
    for a, b in [(SK.random_element(rng), SK.random_element(rng)) for _ in range(20)]:
        outcome, _ = below(lambda: SK.apply(a, b, 10_000), lambda: d.call(fc.at, cs.meet(a, b)))
        assert outcome in (Outcome.HOLDS, Outcome.EXHAUSTED)


def test_polynomial_realizers():
    d = PcaDco(SK)
    cs = cartesian_witnesses_from_pca(SK)
    fc = functional_completeness_from_pca(SK)
    rng = random.Random(5)
    a, b = SK.random_element(rng), SK.random_element(rng)
    alpha = poly_to_realizer(parse_polynomial("x1", 1), d, cs, fc)
    assert alpha == cs.rho
    assert d.call(alpha, cs.meet(cs.top, a)) == a
    first = poly_to_realizer(parse_polynomial("x1", 2), d, cs, fc)
    assert d.call(first, cs.meet_all([a, b])) == a
    app = poly_to_realizer(parse_polynomial("x1 x2"), d, cs, fc)
    for _ in range(20):
        a, b = SK.random_element(rng), SK.random_element(rng)
        try:
            expected = SK.apply(a, b, 10_000)
        except Exhausted:
            continue
        assert d.call(app, cs.meet_all([a, b])) == expected


def test_realizer_to_element():
    d = PcaDco(SK)
    cs = cartesian_witnesses_from_pca(SK)
    fc = functional_completeness_from_pca(SK)
    rng = random.Random(6)
    e1 = realizer_to_element(cs.rho, 1, d, cs, fc)
    k_like = realizer_to_element(poly_to_realizer(parse_polynomial("x1", 2), d, cs, fc), 2, d, cs, fc)
    flip = realizer_to_element(poly_to_realizer(parse_polynomial("x2 x1"), d, cs, fc), 2, d, cs, fc)
    for _ in range(20):
        a, b = SK.random_element(rng), SK.random_element(rng)
        assert SK.apply(e1, a) == a
        assert SK.apply_all(k_like, [a, b]) == a
        try:
            expected = SK.apply(b, a, 10_000)
        except Exhausted:
            continue
        assert SK.apply_all(flip, [a, b]) == expected


def test_reconstruction_over_trivial_dco():
    d = trivial_dco()
    cs, fc = trivial_structures(d)
    pca = reconstruct_pca(d, cs, fc)
    assert pca.apply(pca.k, "*") == "*"
    assert pca.apply_all(pca.s, ["*", "*", "*"]) == "*"


def test_shallow_catalog():
    assert [n for n, d in CAT.items() if is_shallow(d)] == ["trivial", "two_consts", "two_full", "three_consts"]


def test_generated_family_size():
    fam = list(generated_family(3, 4))
    assert len(fam) == len({(d.carrier, frozenset(d.family)) for d in fam})
    for d in fam:
        assert all(c.passed for c in check_dco_axioms(d))
