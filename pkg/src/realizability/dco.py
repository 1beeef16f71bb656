"""Discrete combinatory objects and their translations to and from PCAs.

A DCO is a carrier with a family of partial endofunctions that contains the
identity and is weakly closed under composition.  Finite DCOs
(:class:`FiniteDco`) are handled by exhaustive search; a PCA induces the
infinite DCO :class:`PcaDco` whose members are the computable functions
``phi_a(b) = a . b``, and there every extensional question is answered on
finite probe sets under a fuel budget.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .pca import (
    DEFAULT_FUEL,
    Const,
    Pca,
    PApp,
    Polynomial,
    Var,
    compile_polynomial,
    papp,
)
from .report import Check, Verdict, check
from .terms import Exhausted

SEARCH_FUEL = 2_000
SEARCH_DEPTH = 6


class Undefined(Exception):
    """A finite partial function was applied outside its domain."""


# ---------------------------------------------------------------------------
# Partial endofunctions


@dataclass(frozen=True)
class Graph:
    """A finite partial function given by its graph."""

    pairs: frozenset
    name: str = field(default="", compare=False)

    def __post_init__(self):
        seen = {}
        for x, y in self.pairs:
            if x in seen and seen[x] != y:
                raise ValueError(f"graph {self.name or '?'} is not functional at {x!r}")
            seen[x] = y

    @classmethod
    def of(cls, mapping: Mapping | Iterable, name: str = "") -> "Graph":
        items = mapping.items() if isinstance(mapping, Mapping) else mapping
        return cls(frozenset(items), name)

    @cached_property
    def mapping(self) -> dict:
        return dict(self.pairs)

    @property
    def domain(self) -> frozenset:
        return frozenset(self.mapping)

    def __call__(self, x):
        try:
            return self.mapping[x]
        except KeyError:
            raise Undefined(f"{self.label} undefined at {x!r}") from None

    def defined_at(self, x) -> bool:
        return x in self.mapping

    def issubset(self, other: "Graph") -> bool:
        return self.pairs <= other.pairs

    def then(self, other: "Graph") -> "Graph":
        """``other o self`` as a graph."""
        m = other.mapping
        return Graph(frozenset((x, m[y]) for x, y in self.pairs if y in m))

    def named(self, name: str) -> "Graph":
        return Graph(self.pairs, name)

    @property
    def label(self) -> str:
        return self.name or describe_graph(self)

    def __repr__(self):
        return f"Graph({self.label})"


def describe_graph(g: Graph) -> str:
    body = " ".join(f"{x}->{y}" for x, y in sorted(g.pairs, key=repr))
    return "{" + body + "}"


def identity_graph(carrier: Iterable, name: str = "id") -> Graph:
    return Graph(frozenset((x, x) for x in carrier), name)


def constant_graph(carrier: Iterable, value, name: str | None = None) -> Graph:
    return Graph(frozenset((x, value) for x in carrier), name or f"c_{value}")


def all_partial_functions(carrier: Sequence) -> Iterator[Graph]:
    """Every partial endofunction of a finite carrier, in a fixed order."""
    carrier = list(carrier)
    for choice in itertools.product([None, *carrier], repeat=len(carrier)):
        yield Graph(frozenset((x, y) for x, y in zip(carrier, choice) if y is not None))


def all_functions(domain: Sequence, codomain: Sequence) -> Iterator[tuple]:
    """Total functions as tuples aligned with ``domain``."""
    return itertools.product(codomain, repeat=len(domain))


@dataclass(frozen=True)
class Phi:
    """The computable function ``b |-> a . b`` of a PCA element ``a``."""

    element: Any

    def __repr__(self):
        from .terms import format_term

        e = self.element
        return f"phi[{format_term(e) if isinstance(e, (str, tuple)) else e}]"


# ---------------------------------------------------------------------------
# DCOs


class Dco:
    """Interface shared by finite and PCA-induced DCOs."""

    is_finite = False

    def call(self, alpha, x, fuel: int = DEFAULT_FUEL):
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    def compose(self, alpha, beta):
        """A member containing ``beta o alpha``."""
        raise NotImplementedError

    def constant(self, a):
        """A member containing the constant function with value ``a``."""
        raise NotImplementedError

    def find_extension(self, pairs: Iterable[tuple], fuel: int = SEARCH_FUEL, depth: int = SEARCH_DEPTH):
        """A member ``alpha`` with ``alpha(x) = y`` for every pair, or None."""
        raise NotImplementedError

    def random_element(self, rng: random.Random):
        raise NotImplementedError


class FiniteDco(Dco):
    is_finite = True

    def __init__(self, carrier: Sequence, family: Sequence[Graph], name: str = ""):
        self.carrier = tuple(carrier)
        self.family = tuple(family)
        self.name = name
        elements = set(self.carrier)
        for g in self.family:
            for x, y in g.pairs:
                if x not in elements or y not in elements:
                    raise ValueError(f"{g.label} leaves the carrier")

    def __repr__(self):
        return f"FiniteDco({self.name or list(self.carrier)})"

    def members(self) -> Iterator[Graph]:
        return iter(self.family)

    def contains(self, g: Graph) -> bool:
        return g in self.family

    def call(self, alpha: Graph, x, fuel: int = DEFAULT_FUEL):
        return alpha(x)

    @property
    def identity(self) -> Graph:
        ident = identity_graph(self.carrier)
        for g in self.members():
            if g == ident:
                return g
        raise ValueError(f"{self!r} has no identity member")

    def compose(self, alpha: Graph, beta: Graph) -> Graph:
        target = alpha.then(beta)
        found = self.find_extension(target.pairs)
        if found is None:
            raise ValueError(f"no member contains {beta.label} o {alpha.label}")
        return found

    def constant(self, a) -> Graph:
        found = self.find_extension((x, a) for x in self.carrier)
        if found is None:
            raise ValueError(f"no member contains the constant {a!r}")
        return found

    def find_extension(self, pairs, fuel: int = 0, depth: int = 0):
        pairs = frozenset(pairs)
        for g in self.members():
            if pairs <= g.pairs:
                return g
        return None

    def random_element(self, rng: random.Random):
        return rng.choice(self.carrier)

    def member_named(self, name: str) -> Graph:
        for g in self.family:
            if g.name == name:
                return g
        raise KeyError(name)


class SaturatedDco(FiniteDco):
    """The down-closure of a finite DCO, given by a membership predicate."""

    def __init__(self, base: FiniteDco):
        self.base = base
        self.carrier = base.carrier
        self.name = f"sat({base.name})" if base.name else "sat"

    @property
    def family(self):
        return tuple(self.members())

    def contains(self, g: Graph) -> bool:
        return any(g.pairs <= b.pairs for b in self.base.members())

    def members(self) -> Iterator[Graph]:
        return (g for g in all_partial_functions(self.carrier) if self.contains(g))

    def find_extension(self, pairs, fuel: int = 0, depth: int = 0):
        g = Graph(frozenset(pairs))
        return g if self.contains(g) else None

    def compose(self, alpha: Graph, beta: Graph) -> Graph:
        return alpha.then(beta)


def trivial_dco() -> FiniteDco:
    return FiniteDco(["*"], [identity_graph(["*"])], name="trivial")


def saturate(d: FiniteDco) -> SaturatedDco:
    return SaturatedDco(d)


def dco_product(d1: FiniteDco, d2: FiniteDco) -> FiniteDco:
    """Carrier ``A x B`` with family ``{alpha x beta}``."""
    carrier = [(a, b) for a in d1.carrier for b in d2.carrier]
    family = []
    for alpha in d1.members():
        for beta in d2.members():
            pairs = frozenset(
                ((a, b), (alpha.mapping[a], beta.mapping[b]))
                for a in alpha.mapping
                for b in beta.mapping
            )
            family.append(Graph(pairs, f"{alpha.label}x{beta.label}"))
    name = f"{d1.name}x{d2.name}" if d1.name and d2.name else ""
    return FiniteDco(carrier, family, name=name)


def check_dco_axioms(d: FiniteDco) -> list[Check]:
    """Identity membership and weak closure under composition, exhaustively."""
    ident = identity_graph(d.carrier)
    has_id = any(g == ident for g in d.members())
    out = [check("identity in family", has_id, None if has_id else "identity missing")]
    members = list(d.members())
    bad = None
    for alpha in members:
        for beta in members:
            if d.find_extension(alpha.then(beta).pairs) is None:
                bad = f"no gamma contains {beta.label} o {alpha.label}"
                break
        if bad:
            break
    out.append(check("weak composition closure", bad is None, bad))
    return out


def check_strong_closure(d: FiniteDco) -> Check:
    """For a saturated DCO, ``beta o alpha`` is itself a member."""
    members = list(d.members())
    for alpha in members:
        for beta in members:
            if not d.contains(alpha.then(beta)):
                return check("strong composition closure", False, f"{beta.label} o {alpha.label}")
    return check("strong composition closure", True)


# ---------------------------------------------------------------------------
# Morphisms and the order on them


@dataclass(frozen=True)
class DcoMorphism:
    """A total function between carriers, with witnesses ``f o alpha <= beta o f``."""

    source: FiniteDco
    target: FiniteDco
    fn: tuple  # aligned with source.carrier
    witness: tuple = field(default=(), compare=False)

    @cached_property
    def mapping(self) -> dict:
        return dict(zip(self.source.carrier, self.fn))

    def __call__(self, x):
        return self.mapping[x]


def morphism_witnesses(source: FiniteDco, target: FiniteDco, fn: Sequence):
    """The witness map for ``fn``, or None if ``fn`` is not a DCO morphism."""
    f = dict(zip(source.carrier, fn))
    witness = []
    for alpha in source.members():
        needed = frozenset((f[x], f[y]) for x, y in alpha.pairs)
        try:
            beta = target.find_extension(needed)
        except ValueError:
            beta = None
        if beta is None:
            return None
        witness.append((alpha, beta))
    return tuple(witness)


def make_morphism(source: FiniteDco, target: FiniteDco, fn: Sequence) -> DcoMorphism:
    w = morphism_witnesses(source, target, fn)
    if w is None:
        raise ValueError("not a DCO morphism")
    return DcoMorphism(source, target, tuple(fn), w)


def dco_morphisms(source: FiniteDco, target: FiniteDco) -> list[DcoMorphism]:
    out = []
    for fn in all_functions(source.carrier, target.carrier):
        w = morphism_witnesses(source, target, fn)
        if w is not None:
            out.append(DcoMorphism(source, target, fn, w))
    return out


def check_morphism(m: DcoMorphism) -> bool:
    f = m.mapping
    for alpha, beta in m.witness:
        for x, y in alpha.pairs:
            if beta.mapping.get(f[x]) != f[y]:
                return False
    return {a for a, _ in m.witness} == set(m.source.members())


def compose_morphisms(f: DcoMorphism, g: DcoMorphism) -> DcoMorphism:
    """``g o f``."""
    fn = tuple(g(f(x)) for x in f.source.carrier)
    return make_morphism(f.source, g.target, fn)


def leq(f: DcoMorphism, g: DcoMorphism):
    """A realizer ``beta`` with ``beta o f = g``, or None when none exists."""
    target = f.target
    for beta in target.members():
        if all(beta.mapping.get(f(x)) == g(x) for x in f.source.carrier):
            return beta
    return None


def leq_pca(pca: Pca, f: Callable, g: Callable, probes: Sequence, fuel: int = SEARCH_FUEL,
            depth: int = SEARCH_DEPTH):
    """Realizer search for ``f <= g`` between PCA-induced DCOs on a probe set.

    Raises :class:`Exhausted` when the search budget runs out; a PCA search
    never refutes.
    """
    d = PcaDco(pca)
    found = d.find_extension([(f(x), g(x)) for x in probes], fuel, depth)
    if found is None:
        raise Exhausted(depth, "realizer search")
    return found


# ---------------------------------------------------------------------------
# PCA-induced DCOs


class PcaDco(Dco):
    """The DCO of computable functions of a PCA."""

    def __init__(self, pca: Pca, fuel: int = DEFAULT_FUEL):
        self.pca = pca
        self.fuel = fuel

    def __repr__(self):
        return f"PcaDco({self.pca!r})"

    def call(self, alpha: Phi, x, fuel: int | None = None):
        return self.pca.apply(alpha.element, x, self.fuel if fuel is None else fuel)

    @property
    def identity(self) -> Phi:
        return Phi(self.pca.i)

    def compose(self, alpha: Phi, beta: Phi) -> Phi:
        body = PApp(Const(beta.element), PApp(Const(alpha.element), Var(1)))
        return Phi(compile_polynomial(self.pca, Polynomial(body, 1), self.fuel))

    def constant(self, a) -> Phi:
        return Phi(self.pca.apply(self.pca.k, a, self.fuel))

    def find_extension(self, pairs, fuel: int = SEARCH_FUEL, depth: int = SEARCH_DEPTH):
        """Constant and identity candidates first, then elements by size.

        Raises :class:`Exhausted` if nothing is found; a mismatched pair
        (one input, two outputs) is refuted with ``None``.
        """
        pairs = list(dict.fromkeys(pairs))
        graph = {}
        for x, y in pairs:
            if x in graph and graph[x] != y:
                return None
            graph[x] = y
        if not pairs:
            return self.identity
        candidates = []
        outputs = {y for _, y in pairs}
        if len(outputs) == 1:
            candidates.append(self.constant(next(iter(outputs))).element)
        if all(x == y for x, y in pairs):
            candidates.append(self.pca.i)
        unknown = False
        for e in itertools.chain(candidates, self.pca.enumerate_elements(depth)):
            try:
                if all(self.pca.apply(e, x, fuel) == y for x, y in pairs):
                    return Phi(e)
            except Exhausted:
                unknown = True
        raise Exhausted(depth, "realizer search" + (" (some candidates ran out of fuel)" if unknown else ""))

    def random_element(self, rng: random.Random):
        return self.pca.random_element(rng)


def induced_dco(pca: Pca, fuel: int = DEFAULT_FUEL) -> PcaDco:
    return PcaDco(pca, fuel)


# ---------------------------------------------------------------------------
# Cartesian structure and functional completeness


@dataclass
class CartesianStructure:
    """Top element, meet, projections and a choice of pairing witnesses."""

    top: Any
    meet: Callable  # (a, b, fuel) -> a ^ b
    lam: Any
    rho: Any
    gamma: Callable | None = None  # (alpha, beta) -> member containing meet o <alpha, beta>
    table: dict | None = None

    @classmethod
    def from_table(cls, top, table: Mapping, lam, rho) -> "CartesianStructure":
        table = dict(table)

        def meet(a, b, fuel=None):
            return table[(a, b)]

        return cls(top, meet, lam, rho, None, table)

    def pairing_witness(self, d: Dco, alpha, beta):
        if self.gamma is not None:
            return self.gamma(alpha, beta)
        if not d.is_finite:
            raise ValueError("pairing witnesses must be supplied for infinite DCOs")
        needed = set()
        for x in d.carrier:
            try:
                needed.add((x, self.meet(d.call(alpha, x), d.call(beta, x))))
            except Undefined:
                pass
        found = d.find_extension(needed)
        if found is None:
            raise ValueError(f"no pairing witness for ({alpha.label}, {beta.label})")
        return found

    def meet_all(self, values: Sequence, fuel: int = DEFAULT_FUEL):
        """``top ^ v1 ^ ... ^ vn`` associated to the left."""
        acc = self.top
        for v in values:
            acc = self.meet(acc, v, fuel)
        return acc


@dataclass
class FunctionalCompleteness:
    """A universal function ``at`` and the totalizing map ``alpha |-> tilde(alpha)``."""

    at: Any
    tilde: Callable

    @classmethod
    def from_table(cls, at, table: Mapping) -> "FunctionalCompleteness":
        table = dict(table)
        return cls(at, lambda alpha: table[alpha])


def cartesian_witnesses_from_pca(pca: Pca, fuel: int = DEFAULT_FUEL) -> CartesianStructure:
    p, p0, p1 = pca.p, pca.p0, pca.p1

    def meet(a, b, fuel=fuel):
        return pca.apply_all(p, (a, b), fuel)

    def gamma(alpha: Phi, beta: Phi) -> Phi:
        body = papp(Const(p), PApp(Const(alpha.element), Var(1)), PApp(Const(beta.element), Var(1)))
        return Phi(compile_polynomial(pca, Polynomial(body, 1), fuel))

    return CartesianStructure(pca.i, meet, Phi(p0), Phi(p1), gamma)


def functional_completeness_from_pca(pca: Pca, fuel: int = DEFAULT_FUEL) -> FunctionalCompleteness:
    p, p0, p1 = pca.p, pca.p0, pca.p1
    e = compile_polynomial(
        pca, Polynomial(PApp(PApp(Const(p0), Var(1)), PApp(Const(p1), Var(1))), 1), fuel
    )

    def tilde(alpha: Phi) -> Phi:
        body = PApp(Const(alpha.element), papp(Const(p), Var(1), Var(2)))
        return Phi(compile_polynomial(pca, Polynomial(body, 2), fuel))

    return FunctionalCompleteness(Phi(e), tilde)


# ---------------------------------------------------------------------------
# Partial-term comparison on samples


class Outcome:
    HOLDS = "holds"
    VACUOUS = "vacuous"  # left side undefined (decided, finite case)
    EXHAUSTED = "exhausted"
    REFUTED = "refuted"


def below(lhs: Callable[[], Any], rhs: Callable[[], Any]) -> tuple[str, str | None]:
    """Evaluate ``lhs <= rhs`` (if the left side is defined, both agree)."""
    try:
        left = lhs()
    except Undefined:
        return Outcome.VACUOUS, None
    except Exhausted:
        return Outcome.EXHAUSTED, None
    try:
        right = rhs()
    except Undefined:
        return Outcome.REFUTED, f"right side undefined where left = {left!r}"
    except Exhausted:
        return Outcome.EXHAUSTED, None
    if left != right:
        return Outcome.REFUTED, f"{left!r} != {right!r}"
    return Outcome.HOLDS, None


def defined(thunk: Callable[[], Any]) -> str:
    try:
        thunk()
    except Undefined:
        return Outcome.REFUTED
    except Exhausted:
        return Outcome.EXHAUSTED
    return Outcome.HOLDS


def tally(name: str, outcomes: Iterable[tuple[str, str | None]]) -> Check:
    """Fold sample outcomes into one check; exhausted samples never refute."""
    counts = {Outcome.HOLDS: 0, Outcome.VACUOUS: 0, Outcome.EXHAUSTED: 0, Outcome.REFUTED: 0}
    first_bad = None
    for o, why in outcomes:
        counts[o] += 1
        if o == Outcome.REFUTED and first_bad is None:
            first_bad = why or "refuted"
    total = sum(counts.values())
    summary = (
        f"{counts[Outcome.HOLDS]} hold, {counts[Outcome.VACUOUS]} vacuous, "
        f"{counts[Outcome.EXHAUSTED]}/{total} exhausted"
    )
    if counts[Outcome.REFUTED]:
        return Check(name, Verdict.FAIL, f"{counts[Outcome.REFUTED]} refuted: {first_bad}")
    if counts[Outcome.HOLDS] == 0 and counts[Outcome.EXHAUSTED]:
        return Check(name, Verdict.UNKNOWN, summary)
    return Check(name, Verdict.PASS, summary)


def check_cartesian_samples(d: Dco, cs: CartesianStructure, rng: random.Random, samples: int = 100,
                            fuel: int = DEFAULT_FUEL) -> list[Check]:
    """Projection laws, totality of meet and pairing containment on samples."""
    pairs = [(d.random_element(rng), d.random_element(rng)) for _ in range(samples)]
    lam_out, rho_out, total = [], [], []
    for a, b in pairs:
        total.append((defined(lambda: cs.meet(a, b, fuel)), None))
        lam_out.append(below(lambda: a, lambda: d.call(cs.lam, cs.meet(a, b, fuel), fuel)))
        rho_out.append(below(lambda: b, lambda: d.call(cs.rho, cs.meet(a, b, fuel), fuel)))
    members = [d.constant(d.random_element(rng)) for _ in range(3)] + [d.identity, cs.lam, cs.rho]
    gamma_out = []
    for alpha, beta in itertools.islice(itertools.product(members, members), 12):
        gamma = cs.pairing_witness(d, alpha, beta)
        for _ in range(max(1, samples // 12)):
            x = d.random_element(rng)
            gamma_out.append(below(
                lambda: cs.meet(d.call(alpha, x, fuel), d.call(beta, x, fuel), fuel),
                lambda: d.call(gamma, x, fuel),
            ))
    return [
        tally("meet total", total),
        tally("lambda(a ^ b) = a", lam_out),
        tally("rho(a ^ b) = b", rho_out),
        tally("meet o <alpha, beta> <= gamma", gamma_out),
    ]


def check_functional_completeness_samples(d: Dco, cs: CartesianStructure, fc: FunctionalCompleteness,
                                          alphas: Sequence, rng: random.Random, samples: int = 100,
                                          fuel: int = DEFAULT_FUEL) -> list[Check]:
    """``alpha(a ^ b) <= at(tilde(alpha)(a) ^ b)`` and totality of ``tilde(alpha)``."""
    tildes = [fc.tilde(alpha) for alpha in alphas]
    law, totality = [], []
    for n in range(samples):
        j = n % len(alphas)
        alpha, talpha = alphas[j], tildes[j]
        a, b = d.random_element(rng), d.random_element(rng)
        totality.append((defined(lambda: d.call(talpha, a, fuel)), None))
        law.append(below(
            lambda: d.call(alpha, cs.meet(a, b, fuel), fuel),
            lambda: d.call(fc.at, cs.meet(d.call(talpha, a, fuel), b, fuel), fuel),
        ))
    return [tally("tilde(alpha) total", totality), tally("alpha(a ^ b) <= at(tilde(alpha)(a) ^ b)", law)]


def check_cartesian_shallow(d: FiniteDco, cs: CartesianStructure | None) -> list[Check]:
    """Exhaustive shallow-cartesian conditions for a finite DCO."""
    out = []
    sat = saturate(d)
    inhabited = bool(d.carrier)
    out.append(check("carrier inhabited", inhabited, None if inhabited else "empty carrier"))
    missing = [a for a in d.carrier if not sat.contains(constant_graph(d.carrier, a))]
    out.append(check("constants in sat(F)", not missing,
                     f"c_{missing[0]} not in sat(F)" if missing else None))
    shallow_bad = None
    for a in d.carrier:
        for b in d.carrier:
            if not any(g.mapping.get(a) == b for g in d.members()):
                shallow_bad = f"no member sends {a} to {b}"
                break
        if shallow_bad:
            break
    out.append(check("shallow", shallow_bad is None, shallow_bad))
    if cs is None:
        out.append(check("cartesian structure supplied", False, "no top/meet/lambda/rho given"))
        return out
    proj_bad = None
    for a in d.carrier:
        for b in d.carrier:
            m = cs.meet(a, b)
            if cs.lam.mapping.get(m) != a or cs.rho.mapping.get(m) != b:
                proj_bad = f"projections fail at ({a}, {b}) with a ^ b = {m}"
                break
        if proj_bad:
            break
    out.append(check("projection laws", proj_bad is None, proj_bad))
    gamma_bad = None
    for alpha in d.members():
        for beta in d.members():
            try:
                cs.pairing_witness(d, alpha, beta)
            except ValueError as exc:
                gamma_bad = str(exc)
                break
        if gamma_bad:
            break
    out.append(check("pairing witnesses", gamma_bad is None, gamma_bad))
    return out


def find_cartesian_structure(d: FiniteDco) -> CartesianStructure | None:
    """Search for top, meet and projections satisfying the shallow-cartesian conditions."""
    if not d.carrier:
        return None
    members = list(d.members())
    for lam in members:
        for rho in members:
            table = {}
            for a in d.carrier:
                for b in d.carrier:
                    m = next((m for m in d.carrier
                              if lam.mapping.get(m) == a and rho.mapping.get(m) == b), None)
                    if m is None:
                        break
                    table[(a, b)] = m
                else:
                    continue
                break
            else:
                cs = CartesianStructure.from_table(d.carrier[0], table, lam, rho)
                if all(c.passed for c in check_cartesian_shallow(d, cs)):
                    return cs
    return None


def check_functional_completeness(d: FiniteDco, cs: CartesianStructure,
                                  fc: FunctionalCompleteness) -> list[Check]:
    law_bad = total_bad = None
    for alpha in d.members():
        t = fc.tilde(alpha)
        if total_bad is None and any(not t.defined_at(a) for a in d.carrier):
            total_bad = f"tilde({alpha.label}) = {t.label} is not total"
        for a in d.carrier:
            for b in d.carrier:
                if law_bad is not None:
                    break
                outcome, why = below(
                    lambda: alpha(cs.meet(a, b)),
                    lambda: fc.at(cs.meet(t(a), b)),
                )
                if outcome == Outcome.REFUTED:
                    law_bad = f"alpha={alpha.label}, a={a}, b={b}: {why}"
    return [
        check("tilde(alpha) total", total_bad is None, total_bad),
        check("alpha(a ^ b) <= at(tilde(alpha)(a) ^ b)", law_bad is None, law_bad),
    ]


# ---------------------------------------------------------------------------
# From a functionally complete DCO back to a PCA


def poly_to_realizer(t: Polynomial, d: Dco, cs: CartesianStructure, fc: FunctionalCompleteness):
    """A member ``alpha`` with ``t[a1..an] <= alpha(top ^ a1 ^ ... ^ an)``."""
    n = t.arity

    def go(u):
        if isinstance(u, Var):
            acc = cs.rho
            for _ in range(n - u.index):
                acc = d.compose(cs.lam, acc)
            return acc
        if isinstance(u, Const):
            return d.constant(u.value)
        gamma = cs.pairing_witness(d, go(u.fun), go(u.arg))
        return d.compose(gamma, fc.at)

    return go(t.body)


def realizer_to_element(alpha, n: int, d: Dco, cs: CartesianStructure, fc: FunctionalCompleteness,
                        fuel: int = DEFAULT_FUEL):
    """``e = tilde^n(alpha)(top)``, so that ``alpha(top ^ a1 ^ ... ^ an) <= e a1 ... an``."""
    if n <= 0:
        raise ValueError("n must be positive")
    acc = alpha
    for _ in range(n):
        acc = fc.tilde(acc)
    return d.call(acc, cs.top, fuel)


class ReconstructedPca(Pca):
    """``a . b = at(a ^ b)`` on the carrier of a functionally complete DCO."""

    def __init__(self, d: Dco, cs: CartesianStructure, fc: FunctionalCompleteness,
                 fuel: int = DEFAULT_FUEL):
        self.d, self.cs, self.fc, self.fuel = d, cs, fc, fuel

    def apply(self, a, b, fuel: int = DEFAULT_FUEL):
        return self.d.call(self.fc.at, self.cs.meet(a, b, fuel), fuel)

    def _element(self, text_body, arity):
        alpha = poly_to_realizer(Polynomial(text_body, arity), self.d, self.cs, self.fc)
        return realizer_to_element(alpha, arity, self.d, self.cs, self.fc, self.fuel)

    @cached_property
    def k(self):
        return self._element(Var(1), 2)

    @cached_property
    def s(self):
        return self._element(papp(Var(1), Var(3), PApp(Var(2), Var(3))), 3)

    @cached_property
    def i(self):
        return self._element(Var(1), 1)

    def random_element(self, rng: random.Random):
        return self.d.random_element(rng)

    def enumerate_elements(self, max_size: int):
        if self.d.is_finite:
            return iter(self.d.carrier)
        return self.d.pca.enumerate_elements(max_size)

    def representing_element(self, alpha):
        """``tilde(alpha o rho)(top)``, an element ``e`` with ``alpha <= phi_e``."""
        return self.d.call(self.fc.tilde(self.d.compose(self.cs.rho, alpha)), self.cs.top, self.fuel)

    def as_member(self, e):
        """``at o <c_e, id>``, the family member representing ``phi_e``."""
        gamma = self.cs.pairing_witness(self.d, self.d.constant(e), self.d.identity)
        return self.d.compose(gamma, self.fc.at)


def reconstruct_pca(d: Dco, cs: CartesianStructure, fc: FunctionalCompleteness,
                    fuel: int = DEFAULT_FUEL) -> ReconstructedPca:
    return ReconstructedPca(d, cs, fc, fuel)


def trivial_structures(d: FiniteDco):
    """Cartesian and functional-completeness data of the one-point DCO."""
    (pt,) = d.carrier
    ident = d.identity
    cs = CartesianStructure.from_table(pt, {(pt, pt): pt}, ident, ident)
    fc = FunctionalCompleteness(ident, lambda alpha: ident)
    return cs, fc


def catalog() -> dict[str, FiniteDco]:
    """Small finite DCOs used throughout the checks."""

    def fam(carrier, members):
        out = []
        for name, fn in members:
            out.append(Graph.of(fn, name))
        return FiniteDco(carrier, out)

    two = [0, 1]
    result = {
        "trivial": trivial_dco(),
        "two_id": fam(two, [("id", {0: 0, 1: 1})]),
        "two_c0": fam(two, [("id", {0: 0, 1: 1}), ("c0", {0: 0, 1: 0})]),
        "two_consts": fam(two, [("id", {0: 0, 1: 1}), ("c0", {0: 0, 1: 0}), ("c1", {0: 1, 1: 1})]),
        "two_full": fam(two, [("id", {0: 0, 1: 1}), ("swap", {0: 1, 1: 0}),
                              ("c0", {0: 0, 1: 0}), ("c1", {0: 1, 1: 1})]),
        "three_consts": fam([0, 1, 2], [("id", {0: 0, 1: 1, 2: 2}), ("c0", {0: 0, 1: 0, 2: 0}),
                                        ("c1", {0: 1, 1: 1, 2: 1}), ("c2", {0: 2, 1: 2, 2: 2})]),
    }
    for name, d in result.items():
        d.name = name
    return result


def is_shallow(d: FiniteDco) -> bool:
    return all(any(g.mapping.get(a) == b for g in d.members()) for a in d.carrier for b in d.carrier)


def generated_family(max_carrier: int = 3, max_family: int = 4) -> Iterator[FiniteDco]:
    """Every DCO on ``{0..n-1}`` (``n <= max_carrier``) whose family has at most
    ``max_family`` members drawn from the total functions plus the empty function,
    always including the identity.
    """
    for n in range(1, max_carrier + 1):
        carrier = list(range(n))
        ident = identity_graph(carrier)
        gens = [Graph(frozenset(zip(carrier, fn))) for fn in all_functions(carrier, carrier)]
        gens = [g for g in gens if g != ident] + [Graph(frozenset())]
        for extra in range(0, max_family):
            for combo in itertools.combinations(gens, extra):
                d = FiniteDco(carrier, (ident.named("id"),) + tuple(
                    g.named(f"f{k}") for k, g in enumerate(combo)))
                if all(c.passed for c in check_dco_axioms(d)):
                    d.name = f"n{n}:" + ",".join(describe_graph(g) for g in combo)
                    yield d
