import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realizability.terms import (
    Exhausted,
    TermSyntaxError,
    app,
    evaluate,
    expand_i,
    format_term,
    is_normal,
    normalize,
    parse_term,
    size,
)

from oracles import OutOfFuel, innermost_normal_form

atoms = st.sampled_from(["S", "K", "I"])
sk_terms = st.recursive(atoms, lambda sub: st.tuples(sub, sub), max_leaves=12)
named_terms = st.recursive(st.sampled_from(["S", "K", "I", "a", "b", "foo"]),
                           lambda sub: st.tuples(sub, sub), max_leaves=10)


def all_terms(leaves, alphabet=("S", "K")):
    if leaves == 1:
        yield from alphabet
        return
    for left in range(1, leaves):
        for f in all_terms(left, alphabet):
            for x in all_terms(leaves - left, alphabet):
                yield (f, x)


def test_k_returns_first_argument():
    for a, b in [("S", "K"), (("K", "S"), "S"), (("S", "K"), ("K", "K"))]:
        assert evaluate(app("K", a, b), 10) == a


def test_skk_is_identity():
    for x in ["S", "K", ("K", "S")]:
        assert evaluate(app("S", "K", "K", x), 10) == x


def test_self_application_cycles():
    omega = parse_term("(S I I)(S I I)")
    with pytest.raises(Exhausted) as info:
        evaluate(omega, 1000)
    assert info.value.spent == 1000


def test_free_constants_are_inert():
    assert evaluate(parse_term("K a b"), 10) == "a"
    assert evaluate(parse_term("S a b c"), 10) == (("a", "c"), ("b", "c"))


def test_fuel_counts_contractions():
    assert normalize(parse_term("K K K"), 1) == ("K", 1)
    with pytest.raises(Exhausted):
        normalize(parse_term("K (K K K) K"), 1)
    assert normalize(parse_term("S K K S"), 10) == ("S", 2)


def test_shared_subterms_are_charged_each_time():
    # z is duplicated by S; its redex must be paid for at both occurrences
    z = parse_term("K K K")
    t = app("S", "K", "K", z)
    assert normalize(t, 100)[1] == 3
    t = app("S", "S", "S", z)
    _, steps = normalize(t, 100)
    naive = app(app("S", z), app("S", z))
    assert normalize(naive, 100)[1] + 1 == steps


@settings(max_examples=300, deadline=None)
@given(sk_terms)
def test_agrees_with_innermost_oracle(t):
    try:
        expected = innermost_normal_form(t, 500)
    except (OutOfFuel, RecursionError):
        return
    assert evaluate(t, 100_000) == expected


def test_normal_forms_are_normal_exhaustively():
    for n in range(1, 7):
        for t in all_terms(n):
            try:
                nf = evaluate(t, 10_000)
            except Exhausted:
                continue
            assert is_normal(nf)
            assert nf == innermost_normal_form(t, 10_000)


@given(named_terms)
def test_print_parse_roundtrip(t):
    assert parse_term(format_term(t)) == t


def test_parse_is_left_associative():
    assert parse_term("S K K") == (("S", "K"), "K")
    assert parse_term("S (K K)") == ("S", ("K", "K"))
    assert format_term((("S", "K"), ("K", "K"))) == "S K (K K)"


@pytest.mark.parametrize("text, line, column", [
    ("S (K", 1, 5),
    ("S )", 1, 3),
    ("S\n  K $", 2, 5),
    ("", 1, 1),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(TermSyntaxError) as info:
        parse_term(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_expand_i():
    assert expand_i(parse_term("I (K I)")) == parse_term("S K K (K (S K K))")
    assert size(expand_i("I")) == 3
