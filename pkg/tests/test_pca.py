import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realizability.pca import (
    Const,
    NatPca,
    PApp,
    Polynomial,
    SKPca,
    Var,
    bracket_abstract,
    compile_polynomial,
    count_normal_forms,
    decode,
    encode,
    eval_polynomial,
    format_polynomial,
    normal_forms,
    parse_polynomial,
    papp,
)
from realizability.pcalaws import check_basic_laws, check_combinatory_completeness, random_polynomial
from realizability.terms import Exhausted, TermSyntaxError, is_normal, parse_term

from oracles import has_redex, innermost_normal_form
from test_terms import all_terms

SK = SKPca()
I = parse_term("S K K")


def samples(n, seed=0):
    rng = random.Random(seed)
    return [SK.random_element(rng) for _ in range(n)]


def test_pairing_projections():
    for a, b in zip(samples(30), samples(30, 1)):
        pair = SK.apply_all(SK.p, [a, b])
        assert SK.apply(SK.p0, pair) == a
        assert SK.apply(SK.p1, pair) == b


def test_identity_and_k_definedness():
    assert SK.apply(SK.i, SK.i) == SK.i
    for a in samples(20):
        assert SK.apply(SK.i, a) == a
        assert is_normal(SK.apply(SK.k, a))


def test_bracket_abstraction_cases():
    assert bracket_abstract(SK, Polynomial(Var(1), 1)).body == Const(SK.i)
    c = Const(parse_term("S K"))
    assert bracket_abstract(SK, Polynomial(c, 1)).body == PApp(Const("K"), c)
    self_app = bracket_abstract(SK, Polynomial(PApp(Var(1), Var(1)), 1)).body
    assert self_app == papp(Const("S"), Const(SK.i), Const(SK.i))
    e = compile_polynomial(SK, Polynomial(PApp(Var(1), Var(1)), 1))
    for a in samples(20):
        try:
            expected = SK.apply(a, a, 10_000)
        except Exhausted:
            continue
        assert SK.apply(e, a) == expected


def test_compile_projection_behaves_as_k():
    e = compile_polynomial(SK, parse_polynomial("x1", 2))
    for a, b in zip(samples(20), samples(20, 5)):
        assert SK.apply_all(e, [a, b]) == SK.apply_all("K", [a, b]) == a


def test_compile_pairing_polynomial_behaves_as_p():
    e = compile_polynomial(SK, parse_polynomial("x3 x1 x2"))
    for a, b, z in zip(samples(20), samples(20, 1), samples(20, 2)):
        try:
            direct = innermost_normal_form(((z, a), b), 5000)
        except Exception:
            continue
        assert SK.apply_all(e, [a, b, z]) == direct


def test_k_rule_is_restricted_to_total_forms():
    # t = k x1 x2: the partial instance e a must be defined and e a b = a
    p = Polynomial(papp(PApp(Const(SK.k), Var(1)), Var(2)), 2)
    inner = bracket_abstract(SK, p)
    assert inner.arity == 1
    e = compile_polynomial(SK, p)
    for a, b in zip(samples(10), samples(10, 3)):
        assert SK.apply_all(e, [a, b]) == a


@pytest.mark.parametrize("text", ["x1", "x2 x1", "S (K x1) [c:S K K]", "x1 (x2 x3) [c:K (S K)]", "K"])
def test_polynomial_roundtrip(text):
    p = parse_polynomial(text)
    assert parse_polynomial(format_polynomial(p), p.arity) == p


def test_polynomial_errors():
    with pytest.raises(TermSyntaxError):
        parse_polynomial("x1 y")
    with pytest.raises(TermSyntaxError):
        parse_polynomial("[c:S a]")
    with pytest.raises(TermSyntaxError):
        parse_polynomial("[d:S]")


def test_normal_form_counts_match_brute_force():
    for n in range(1, 7):
        brute = sorted({t for t in all_terms(n) if not has_redex(t)}, key=repr)
        assert count_normal_forms(n) == len(brute)
        assert sorted(normal_forms(n), key=repr) == brute


def test_encode_decode_bijection():
    codes = []
    for n in range(1, 6):
        for t in normal_forms(n):
            codes.append(encode(t))
            assert decode(encode(t)) == t
    assert codes == list(range(len(codes)))


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=50_000))
def test_decode_encode(code):
    assert encode(decode(code)) == code


def test_nat_pca():
    nat = NatPca()
    assert nat.apply(nat.i, 7) == 7
    for n in range(30):
        nat.apply(nat.k, n)
    assert nat.apply_all(nat.k, [3, 9]) == 3
    assert decode(nat.i) == I


def test_eval_polynomial_matches_oracle():
    rng = random.Random(11)
    for _ in range(50):
        t = random_polynomial(SK, rng, 2, 6)
        args = samples(2, rng.randint(0, 1000))
        try:
            got = eval_polynomial(SK, t.body, args, 20_000)
        except Exhausted:
            continue

        def to_term(u):
            if isinstance(u, Var):
                return args[u.index - 1]
            if isinstance(u, Const):
                return u.value
            return (to_term(u.fun), to_term(u.arg))

        try:
            expected = innermost_normal_form(to_term(t.body), 20_000)
        except Exception:
            continue
        assert got == expected


def test_small_law_samples_pass():
    rng = random.Random(3)
    for c in check_combinatory_completeness(SK, rng, polynomials=15, tuples=5):
        assert c.passed, c
    for c in check_basic_laws(SK, random.Random(4), samples=30):
        assert c.passed, c
