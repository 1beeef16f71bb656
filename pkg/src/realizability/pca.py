"""Partial combinatory algebras: polynomials, bracket abstraction, instances.

Application in a PCA is partial and only semi-decidable, so ``apply`` takes a
fuel budget and raises :class:`~realizability.terms.Exhausted` when the
budget runs out.  The closed-term algebra :class:`SKPca` has as carrier the
normal forms of closed S/K terms; :class:`NatPca` transports it to the
natural numbers along a size-then-lexicographic numbering.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import islice
from typing import Any, Hashable, Iterator, Sequence, Union

from . import terms
from .terms import K, S, Exhausted, Term, TermSyntaxError, app

DEFAULT_FUEL = 100_000


# ---------------------------------------------------------------------------
# Polynomials


@dataclass(frozen=True)
class Var:
    index: int  # 1-based

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices start at 1")


@dataclass(frozen=True)
class Const:
    value: Any


@dataclass(frozen=True)
class PApp:
    fun: "PolyTerm"
    arg: "PolyTerm"


PolyTerm = Union[Var, Const, PApp]


@dataclass(frozen=True)
class Polynomial:
    """A polynomial ``t[x_1, ..., x_arity]`` over some carrier."""

    body: PolyTerm
    arity: int

    def __post_init__(self):
        used = max(variables(self.body), default=0)
        if used > self.arity:
            raise ValueError(f"variable x{used} exceeds arity {self.arity}")


def papp(*parts: PolyTerm) -> PolyTerm:
    result = parts[0]
    for p in parts[1:]:
        result = PApp(result, p)
    return result


def variables(t: PolyTerm) -> set:
    if isinstance(t, Var):
        return {t.index}
    if isinstance(t, PApp):
        return variables(t.fun) | variables(t.arg)
    return set()


def poly_size(t: PolyTerm) -> int:
    if isinstance(t, PApp):
        return poly_size(t.fun) + poly_size(t.arg)
    return 1


def parse_polynomial(text: str, arity: int | None = None) -> Polynomial:
    """Parse ``x1 .. xn``, ``S``/``K``/``I`` and ``[c:<term>]`` constants.

    Constants are closed S/K terms (``I`` is expanded); the arity defaults to
    the largest variable index that occurs.
    """
    import re

    var_name = re.compile(r"x([1-9][0-9]*)$")

    class PolyParser(terms._Parser):
        def combine(self, f, x):
            return PApp(f, x)

        def parse_primary(self):
            tok = self.peek()
            if tok is not None and tok[0] == "[":
                self.pos += 1
                tag = self.expect("name")
                if tag[1] != "c":
                    raise TermSyntaxError(f"unknown bracket tag {tag[1]!r}", tag[2], tag[3])
                self.expect(":")
                inner = _TermParser(self.tokens, self.pos, self.text)
                term = inner.parse_sequence()
                self.pos = inner.pos
                self.expect("]")
                return Const(normal_constant(term, tag))
            return super().parse_primary()

    def atom(tok):
        m = var_name.match(tok[1])
        if m:
            return Var(int(m.group(1)))
        if tok[1] in (S, K, terms.I):
            return Const(terms.expand_i(tok[1]))
        raise TermSyntaxError(f"unknown atom {tok[1]!r} in polynomial", tok[2], tok[3])

    body = PolyParser(text, atom).parse_all()
    if arity is None:
        arity = max(variables(body), default=0)
    return Polynomial(body, arity)


class _TermParser(terms._Parser):
    def __init__(self, tokens, pos, text):
        self.tokens = tokens
        self.pos = pos
        self.text = text
        self.atom = lambda tok: tok[1]


def normal_constant(term: Term, tok) -> Term:
    bad = terms.atoms(term) - {S, K, terms.I}
    if bad:
        raise TermSyntaxError(f"constant mentions unknown atom {sorted(bad)[0]!r}", tok[2], tok[3])
    return terms.expand_i(term)


def format_polynomial(p: Polynomial | PolyTerm) -> str:
    """Print a polynomial whose constants are S/K terms."""
    body = p.body if isinstance(p, Polynomial) else p
    head, args = _poly_unwind(body)
    parts = [_format_atom(head)]
    for a in args:
        s = format_polynomial(a)
        parts.append(f"({s})" if isinstance(a, PApp) else s)
    return " ".join(parts)


def _poly_unwind(t):
    args = []
    while isinstance(t, PApp):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def _format_atom(t) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if t.value in (S, K):
        return t.value
    return f"[c:{terms.format_term(t.value)}]"


# ---------------------------------------------------------------------------
# PCAs


class Pca:
    """A carrier with fuel-bounded partial application.

    Subclasses provide :meth:`apply` and the elements ``k``, ``s`` and ``i``;
    pairing combinators are compiled from those.
    """

    k: Hashable
    s: Hashable
    i: Hashable

    def apply(self, a, b, fuel: int = DEFAULT_FUEL):
        raise NotImplementedError

    def apply_all(self, head, args: Sequence, fuel: int = DEFAULT_FUEL):
        """``head . a1 . ... . an``; the budget applies to each application."""
        result = head
        for a in args:
            result = self.apply(result, a, fuel)
        return result

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def enumerate_elements(self, max_size: int) -> Iterator:
        """Elements in a canonical order, used by realizer searches."""
        raise NotImplementedError

    @cached_property
    def combinators(self):
        return standard_combinators(self)

    @property
    def p(self):
        return self.combinators[3]

    @property
    def p0(self):
        return self.combinators[4]

    @property
    def p1(self):
        return self.combinators[5]

    def is_total_form(self, t: PolyTerm) -> bool:
        """Syntactic check that every instance of ``t`` is defined.

        Variables, constants and partial applications ``k u``, ``s u``,
        ``s u v`` of such forms qualify.
        """
        head, args = _poly_unwind(t)
        if not args:
            return True
        if not isinstance(head, Const):
            return False
        if head.value == self.k and len(args) == 1:
            return self.is_total_form(args[0])
        if head.value == self.s and len(args) <= 2:
            return all(self.is_total_form(a) for a in args)
        return False


def eval_polynomial(pca: Pca, t: PolyTerm, env: Sequence, fuel: int = DEFAULT_FUEL):
    """Value of ``t`` with ``x_i := env[i-1]``, evaluated innermost first."""
    if isinstance(t, Var):
        return env[t.index - 1]
    if isinstance(t, Const):
        return t.value
    f = eval_polynomial(pca, t.fun, env, fuel)
    x = eval_polynomial(pca, t.arg, env, fuel)
    return pca.apply(f, x, fuel)


def bracket_abstract(pca: Pca, t: Polynomial) -> Polynomial:
    """Abstract the last variable of ``t``.

    ``\\x.x = i``; ``\\x.u = k u`` when ``x`` is absent and ``u`` is either
    closed or of a total form; ``\\x.(u v) = s (\\x.u) (\\x.v)`` otherwise.
    The restriction on the ``k`` rule keeps every partial instance of the
    result defined.
    """
    if t.arity < 1:
        raise ValueError("nothing to abstract from a closed polynomial")
    x = t.arity
    return Polynomial(_abstract(pca, t.body, x), x - 1)


def _abstract(pca: Pca, t: PolyTerm, x: int) -> PolyTerm:
    if t == Var(x):
        return Const(pca.i)
    fv = variables(t)
    if x not in fv and (not fv or pca.is_total_form(t)):
        return PApp(Const(pca.k), t)
    if isinstance(t, PApp):
        return papp(Const(pca.s), _abstract(pca, t.fun, x), _abstract(pca, t.arg, x))
    return PApp(Const(pca.k), t)


def compile_polynomial(pca: Pca, t: Polynomial, fuel: int = DEFAULT_FUEL):
    """An element ``e`` with ``t[a1..an] <= e a1 ... an`` and ``e a1 ... a(n-1)`` defined."""
    p = t
    while p.arity > 0:
        p = bracket_abstract(pca, p)
    return eval_polynomial(pca, p.body, (), fuel)


def standard_combinators(pca: Pca, fuel: int = DEFAULT_FUEL):
    """``(k, s, i, p, p0, p1)`` with ``p = \\xyz.z x y``, ``p0 = \\u.u k``, ``p1 = \\u.u (k i)``."""
    k, s, i = pca.k, pca.s, pca.i
    p = compile_polynomial(pca, Polynomial(papp(Var(3), Var(1), Var(2)), 3), fuel)
    p0 = compile_polynomial(pca, Polynomial(PApp(Var(1), Const(k)), 1), fuel)
    ki = pca.apply(k, i, fuel)
    p1 = compile_polynomial(pca, Polynomial(PApp(Var(1), Const(ki)), 1), fuel)
    return k, s, i, p, p0, p1


# ---------------------------------------------------------------------------
# The closed S/K term algebra

SK_I = app(S, K, K)


class SKPca(Pca):
    """Closed S/K normal forms under application-then-normalize."""

    k = K
    s = S
    i = SK_I

    def __init__(self, sample_size: int = 5, sample_fuel: int = 200):
        self.sample_size = sample_size
        self.sample_fuel = sample_fuel

    def apply(self, a: Term, b: Term, fuel: int = DEFAULT_FUEL) -> Term:
        return terms.evaluate((a, b), fuel)

    def evaluate(self, t: Term, fuel: int = DEFAULT_FUEL) -> Term:
        return terms.evaluate(terms.expand_i(t), fuel)

    def random_element(self, rng: random.Random) -> Term:
        while True:
            t = random_term(rng, rng.randint(1, self.sample_size))
            try:
                return terms.evaluate(t, self.sample_fuel)
            except Exhausted:
                continue

    def enumerate_elements(self, max_size: int) -> Iterator[Term]:
        for n in range(1, max_size + 1):
            yield from normal_forms(n)

    def __repr__(self):
        return "SKPca()"


def random_term(rng: random.Random, leaves: int) -> Term:
    """A uniformly shaped random closed S/K term with the given leaf count."""
    if leaves == 1:
        return rng.choice((S, K))
    left = rng.randint(1, leaves - 1)
    return (random_term(rng, left), random_term(rng, leaves - left))


# normal forms: K | K a | S | S a | S a b, ordered by (size, shape, parts)


@lru_cache(maxsize=None)
def count_normal_forms(n: int) -> int:
    """Number of closed S/K normal forms with ``n`` leaves."""
    if n < 1:
        return 0
    total = 0
    for shape in range(5):
        total += _count_shape(shape, n)
    return total


def _count_shape(shape: int, n: int) -> int:
    if shape in (0, 2):  # K, S
        return 1 if n == 1 else 0
    if shape in (1, 3):  # K a, S a
        return count_normal_forms(n - 1)
    return sum(count_normal_forms(i) * count_normal_forms(n - 1 - i) for i in range(1, n - 1))


def _splits(n: int):
    return [(i, n - 1 - i) for i in range(1, n - 1)]


def unrank_normal_form(n: int, r: int) -> Term:
    """The ``r``-th normal form with ``n`` leaves."""
    for shape in range(5):
        c = _count_shape(shape, n)
        if r < c:
            break
        r -= c
    else:
        raise IndexError("rank out of range")
    if shape == 0:
        return K
    if shape == 2:
        return S
    if shape in (1, 3):
        return ((K if shape == 1 else S), unrank_normal_form(n - 1, r))
    for i, j in _splits(n):
        block = count_normal_forms(i) * count_normal_forms(j)
        if r < block:
            a, b = divmod(r, count_normal_forms(j))
            return ((S, unrank_normal_form(i, a)), unrank_normal_form(j, b))
        r -= block
    raise AssertionError("unreachable")


def rank_normal_form(t: Term) -> tuple[int, int]:
    """``(leaves, rank)`` of a normal form within its size class."""
    head, args = terms.unwind(t)
    n = terms.size(t)
    offset = 0
    if head == K and not args:
        return 1, 0
    if head == S and not args:
        return 1, _count_shape(0, 1) + _count_shape(1, 1)
    if head == K and len(args) == 1:
        shape = 1
    elif head == S and len(args) == 1:
        shape = 3
    elif head == S and len(args) == 2:
        shape = 4
    else:
        raise ValueError(f"not a closed S/K normal form: {terms.format_term(t)}")
    for sh in range(shape):
        offset += _count_shape(sh, n)
    if shape in (1, 3):
        return n, offset + rank_normal_form(args[0])[1]
    a, b = args
    na, ra = rank_normal_form(a)
    nb, rb = rank_normal_form(b)
    for i, j in _splits(n):
        if i == na:
            return n, offset + ra * count_normal_forms(j) + rb
        offset += count_normal_forms(i) * count_normal_forms(j)
    raise AssertionError("unreachable")


def normal_forms(n: int) -> Iterator[Term]:
    for r in range(count_normal_forms(n)):
        yield unrank_normal_form(n, r)


def encode(t: Term) -> int:
    """Bijective numbering of closed S/K normal forms (``I`` is expanded first)."""
    t = terms.expand_i(t)
    n, r = rank_normal_form(t)
    return sum(count_normal_forms(m) for m in range(1, n)) + r


def decode(code: int) -> Term:
    if code < 0:
        raise ValueError("codes are natural numbers")
    n = 1
    while code >= count_normal_forms(n):
        code -= count_normal_forms(n)
        n += 1
    return unrank_normal_form(n, code)


class NatPca(Pca):
    """The S/K algebra transported to the natural numbers by :func:`encode`."""

    def __init__(self, sample_size: int = 5):
        self.sk = SKPca(sample_size=sample_size)
        self.k = encode(K)
        self.s = encode(S)
        self.i = encode(SK_I)

    def apply(self, a: int, b: int, fuel: int = DEFAULT_FUEL) -> int:
        return encode(self.sk.apply(decode(a), decode(b), fuel))

    def random_element(self, rng: random.Random) -> int:
        return encode(self.sk.random_element(rng))

    def enumerate_elements(self, max_size: int) -> Iterator[int]:
        total = sum(count_normal_forms(m) for m in range(1, max_size + 1))
        return iter(range(total))

    def __repr__(self):
        return "NatPca()"


def nat_pca() -> NatPca:
    return NatPca()


def first_elements(pca: Pca, count: int, max_size: int = 12) -> list:
    return list(islice(pca.enumerate_elements(max_size), count))
