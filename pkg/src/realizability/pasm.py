"""Partitioned assemblies over a DCO.

Objects are predicates ``(I, phi)`` on finite index sets; a morphism
``(I, phi) -> (J, psi)`` is a function ``f: I -> J`` together with a
realizer ``alpha`` satisfying ``alpha o phi = psi o f``.  Morphisms are equal
when their functions are; the realizer is a certificate.

Over a finite DCO everything is decided by exhaustive search.  Over a
PCA-induced DCO realizer searches may run out of budget, and the answers
are three-valued.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator, Sequence

from .dco import (
    CartesianStructure,
    Dco,
    FiniteDco,
    FunctionalCompleteness,
    Outcome,
    SEARCH_DEPTH,
    SEARCH_FUEL,
    Undefined,
    check_cartesian_shallow,
    constant_graph,
    find_cartesian_structure,
    is_shallow,
    saturate,
    trivial_structures,
)
from .fam import Predicate, check_discrete, check_generic, equivalent, fiber_leq
from .pca import DEFAULT_FUEL
from .report import Check, Report, Verdict, check
from .terms import Exhausted

POINT = "*"


@dataclass(frozen=True)
class PAsmObj(Predicate):
    """A partitioned assembly ``(I, phi)``."""

    def __repr__(self):
        body = ", ".join(f"{i}:{v}" for i, v in zip(self.index, self.values))
        return f"({body})"


def obj(mapping: dict) -> PAsmObj:
    return PAsmObj(tuple(mapping), tuple(mapping.values()))


@dataclass(frozen=True)
class PAsmMor:
    source: PAsmObj
    target: PAsmObj
    fn: tuple  # aligned with source.index
    realizer: Any = field(default=None, compare=False)

    @cached_property
    def mapping(self) -> dict:
        return dict(zip(self.source.index, self.fn))

    def __call__(self, i):
        return self.mapping[i]

    def __repr__(self):
        pairs = ", ".join(f"{i}->{j}" for i, j in zip(self.source.index, self.fn))
        return f"PAsmMor({pairs})"


@dataclass(frozen=True)
class Factorization:
    dense: PAsmMor
    closed: PAsmMor


class PAsm:
    """The category of partitioned assemblies over ``dco``.

    ``cs`` and ``fc`` supply cartesian and functional-completeness data; for a
    finite DCO without ``cs`` the terminal object and ``nabla`` still exist
    whenever some constant function lies in the saturation.
    """

    def __init__(self, dco: Dco, cs: CartesianStructure | None = None,
                 fc: FunctionalCompleteness | None = None, fuel: int = DEFAULT_FUEL,
                 search_fuel: int = SEARCH_FUEL, depth: int = SEARCH_DEPTH):
        self.dco = dco
        self.cs = cs
        self.fc = fc
        self.fuel = fuel
        self.search = {"fuel": search_fuel, "depth": depth}
        self._hom_cache: dict = {}

    @classmethod
    def over_finite(cls, d: FiniteDco) -> "PAsm":
        """Structures found by search; only the one-point DCO is functionally complete here."""
        if len(d.carrier) == 1:
            cs, fc = trivial_structures(d)
            return cls(d, cs, fc)
        return cls(d, find_cartesian_structure(d), None)

    @property
    def finite(self) -> bool:
        return self.dco.is_finite

    @cached_property
    def top(self):
        if self.cs is not None:
            return self.cs.top
        if self.finite:
            sat = saturate(self.dco)
            for a in self.dco.carrier:
                if sat.contains(constant_graph(self.dco.carrier, a)):
                    return a
        return None

    @cached_property
    def shallow(self) -> bool:
        return self.finite and is_shallow(self.dco)

    # -- morphisms ---------------------------------------------------------

    def realizer(self, X: PAsmObj, Y: PAsmObj, fn: Sequence):
        """A realizer for ``fn`` or None; PCA searches may raise Exhausted."""
        pairs = [(X.values[k], Y(j)) for k, j in enumerate(fn)]
        return self.dco.find_extension(pairs, **self.search) if not self.finite \
            else self.dco.find_extension(pairs)

    def morphism(self, X: PAsmObj, Y: PAsmObj, fn: Sequence) -> PAsmMor | None:
        r = self.realizer(X, Y, fn)
        return None if r is None else PAsmMor(X, Y, tuple(fn), r)

    def hom(self, X: PAsmObj, Y: PAsmObj) -> list[PAsmMor]:
        """All morphisms, in lexicographic order of the underlying function."""
        if not self.finite:
            raise ValueError("hom is exhaustive only over finite DCOs; use hom_search")
        key = (X, Y)
        if key not in self._hom_cache:
            out = []
            for fn in itertools.product(Y.index, repeat=len(X.index)):
                m = self.morphism(X, Y, fn)
                if m is not None:
                    out.append(m)
            self._hom_cache[key] = out
        return self._hom_cache[key]

    def hom_search(self, X: PAsmObj, Y: PAsmObj) -> list[tuple[tuple, Verdict, Any]]:
        """Every function ``|X| -> |Y|`` with a verdict: pass (realized), fail or unknown."""
        out = []
        for fn in itertools.product(Y.index, repeat=len(X.index)):
            try:
                r = self.realizer(X, Y, fn)
            except Exhausted:
                out.append((fn, Verdict.UNKNOWN, None))
                continue
            out.append((fn, Verdict.FAIL, None) if r is None else (fn, Verdict.PASS, r))
        return out

    def verify(self, m: PAsmMor) -> str:
        """Evaluate ``realizer(phi(i)) = psi(f(i))`` for every index."""
        status = Outcome.HOLDS
        for i, j in zip(m.source.index, m.fn):
            try:
                if self.dco.call(m.realizer, m.source(i), self.fuel) != m.target(j):
                    return Outcome.REFUTED
            except Undefined:
                return Outcome.REFUTED
            except Exhausted:
                status = Outcome.EXHAUSTED
        return status

    def identity(self, X: PAsmObj) -> PAsmMor:
        return PAsmMor(X, X, X.index, self.dco.identity)

    def compose(self, f: PAsmMor, g: PAsmMor) -> PAsmMor:
        """``g o f`` with the composite realizer from weak closure."""
        if f.target != g.source:
            raise ValueError("morphisms are not composable")
        fn = tuple(g(f(i)) for i in f.source.index)
        return PAsmMor(f.source, g.target, fn, self.dco.compose(f.realizer, g.realizer))

    def objects(self, bound: int) -> Iterator[PAsmObj]:
        """All objects ``({0..n-1}, phi)`` with ``n <= bound``."""
        if not self.finite:
            raise ValueError("objects can only be enumerated over finite DCOs")
        for n in range(bound + 1):
            for values in itertools.product(self.dco.carrier, repeat=n):
                yield PAsmObj(tuple(range(n)), values)

    def is_iso(self, f: PAsmMor) -> bool:
        if len(set(f.fn)) != len(f.fn) or len(f.fn) != len(f.target.index):
            return False
        inverse = {j: i for i, j in zip(f.source.index, f.fn)}
        return self.realizer(f.target, f.source, [inverse[j] for j in f.target.index]) is not None

    # -- finite limits -----------------------------------------------------

    def _need_cs(self):
        if self.cs is None:
            raise ValueError("this construction needs a cartesian structure")

    def terminal(self) -> PAsmObj:
        if self.top is None:
            raise ValueError("no terminal object: no constant function is realized")
        return PAsmObj((POINT,), (self.top,))

    def to_terminal(self, X: PAsmObj) -> PAsmMor:
        return PAsmMor(X, self.terminal(), tuple(POINT for _ in X.index), self.dco.constant(self.top))

    def product(self, X: PAsmObj, Y: PAsmObj) -> tuple[PAsmObj, PAsmMor, PAsmMor]:
        """``(I x J, pi1* phi ^ pi2* psi)`` with projections realized by lambda and rho."""
        self._need_cs()
        index = tuple((i, j) for i in X.index for j in Y.index)
        values = tuple(self.cs.meet(X(i), Y(j), self.fuel) for i, j in index)
        P = PAsmObj(index, values)
        p1 = PAsmMor(P, X, tuple(i for i, _ in index), self.cs.lam)
        p2 = PAsmMor(P, Y, tuple(j for _, j in index), self.cs.rho)
        return P, p1, p2

    def pair(self, f: PAsmMor, g: PAsmMor, P: PAsmObj | None = None) -> PAsmMor:
        if f.source != g.source:
            raise ValueError("pairing needs a common source")
        if P is None:
            P = self.product(f.target, g.target)[0]
        fn = tuple((f(i), g(i)) for i in f.source.index)
        return PAsmMor(f.source, P, fn, self.cs.pairing_witness(self.dco, f.realizer, g.realizer))

    def equalizer(self, f: PAsmMor, g: PAsmMor) -> PAsmMor:
        """The inclusion ``(U, m* phi) -> (I, phi)`` of ``U = {i | f i = g i}``."""
        if f.source != g.source or f.target != g.target:
            raise ValueError("equalizer needs a parallel pair")
        X = f.source
        return self.restrict(X, [i for i in X.index if f(i) == g(i)])

    def restrict(self, X: PAsmObj, subset: Sequence) -> PAsmMor:
        """The closed inclusion of a subset of indices."""
        keep = set(subset)
        index = tuple(i for i in X.index if i in keep)
        U = PAsmObj(index, tuple(X(i) for i in index))
        return PAsmMor(U, X, index, self.dco.identity)

    def lift(self, m: PAsmMor, h: PAsmMor) -> PAsmMor:
        """Factor ``h`` through the inclusion ``m``."""
        if not set(h.fn) <= set(m.fn):
            raise ValueError("morphism does not factor through the inclusion")
        back = {j: i for i, j in zip(m.source.index, m.fn)}
        return PAsmMor(h.source, m.source, tuple(back[j] for j in h.fn), h.realizer)

    def pullback(self, f: PAsmMor, g: PAsmMor) -> tuple[PAsmObj, PAsmMor, PAsmMor]:
        """Pullback of a cospan ``X -f-> Z <-g- Y`` as product plus equalizer."""
        P, p1, p2 = self.product(f.source, g.source)
        m = self.equalizer(self.compose(p1, f), self.compose(p2, g))
        return m.source, self.compose(m, p1), self.compose(m, p2)

    # -- Gamma and nabla ---------------------------------------------------

    def nabla(self, index: Sequence) -> PAsmObj:
        if self.top is None:
            raise ValueError("nabla needs a realized constant function")
        index = tuple(index)
        return PAsmObj(index, tuple(self.top for _ in index))

    def eta(self, X: PAsmObj) -> PAsmMor:
        return PAsmMor(X, self.nabla(X.index), X.index, self.dco.constant(self.top))

    def points(self, X: PAsmObj) -> list:
        """Global sections ``hom(1, X)`` as the indices they pick."""
        one = self.terminal()
        return [m.fn[0] for m in self.hom(one, X)]

    def gamma_map(self, f: PAsmMor) -> dict:
        """``Gamma f`` on points."""
        return {x: f(x) for x in self.points(f.source)}

    # -- dense and closed maps --------------------------------------------

    @staticmethod
    def is_dense(m: PAsmMor) -> bool:
        """Underlying function bijective."""
        return len(set(m.fn)) == len(m.fn) == len(m.target.index)

    def is_closed(self, m: PAsmMor) -> bool:
        """``phi`` equivalent to ``m* psi``."""
        pulled = Predicate(m.source.index, tuple(m.target(j) for j in m.fn))
        return equivalent(self.dco, Predicate(m.source.index, m.source.values), pulled, **self._search())

    def _search(self):
        return {} if self.finite else self.search

    def factorize(self, m: PAsmMor) -> Factorization:
        """Dense part ``(I, phi) -> (I, psi o f)``, closed part ``(I, psi o f) -> (J, psi)``."""
        X = m.source
        mid = PAsmObj(X.index, tuple(m.target(j) for j in m.fn))
        dense = PAsmMor(X, mid, X.index, m.realizer)
        closed = PAsmMor(mid, m.target, m.fn, self.dco.identity)
        return Factorization(dense, closed)

    def dense_by_definition(self, m: PAsmMor) -> bool:
        """``Gamma m`` bijective, with Gamma computed as global sections."""
        g = self.gamma_map(m)
        return len(set(g.values())) == len(g) and set(g.values()) == set(self.points(m.target))

    def closed_by_definition(self, m: PAsmMor, bound: int) -> bool:
        """The square ``m``, ``eta``, ``nabla Gamma m``, ``eta`` is a pullback against
        every test object at ``bound``.  Maps into ``nabla`` are arbitrary functions
        and ``eta`` is the identity on indices, so a cone is a function
        ``t: |T| -> |B|`` with ``m o t`` realized; the unique mediator is ``t``
        itself and exists iff ``t`` is realized."""
        B, A = m.source, m.target
        for T in self.objects(bound):
            for t in itertools.product(B.index, repeat=len(T.index)):
                if self.morphism(T, A, [m(x) for x in t]) is not None and self.morphism(T, B, t) is None:
                    return False
        return True

    def is_mono(self, m: PAsmMor, bound: int) -> bool:
        for T in self.objects(bound):
            seen = {}
            for a in self.hom(T, m.source):
                key = tuple(m(x) for x in a.fn)
                if key in seen and seen[key] != a:
                    return False
                seen[key] = a
        return True

    def is_epi(self, m: PAsmMor, bound: int) -> bool:
        for T in self.objects(bound):
            seen = {}
            for a in self.hom(m.target, T):
                key = tuple(a(x) for x in m.fn)
                if key in seen and seen[key] != a:
                    return False
                seen[key] = a
        return True

    # -- objects -----------------------------------------------------------

    def generic_candidate(self) -> PAsmObj:
        """``(A, id_A)``."""
        return PAsmObj(tuple(self.dco.carrier), tuple(self.dco.carrier))

    def is_discrete_object(self, G: PAsmObj, bound: int) -> Check:
        """Right orthogonality to closed maps with surjective underlying function."""
        for C in self.objects(bound):
            for D in self.objects(bound):
                for e in self.hom(D, C):
                    if set(e.fn) != set(C.index) or not self.is_closed(e):
                        continue
                    for f in self.hom(D, G):
                        count = sum(1 for g in self.hom(C, G) if tuple(g(x) for x in e.fn) == f.fn)
                        if count != 1:
                            return check("discrete", False, f"C={C}, D={D}, e={e.fn}, f={f.fn}: {count} fillers")
        return check("discrete", True)

    def is_generic_object(self, G: PAsmObj, bound: int) -> Check:
        for C in self.objects(bound):
            if not any(self.is_closed(c) for c in self.hom(C, G)):
                return check("generic", False, f"no closed map {C} -> G")
        return check("generic", True)

    def is_separated_object(self, G: PAsmObj, bound: int) -> Check:
        if self.top is None:
            return check("separated", False, "no nabla: no constant function is realized")
        ok = self.is_mono(self.eta(G), bound)
        return check("separated", ok, None if ok else "eta_G is not monic")

    def classify_object(self, G: PAsmObj, bound: int) -> dict[str, Check]:
        return {
            "separated": self.is_separated_object(G, bound),
            "discrete": self.is_discrete_object(G, bound),
            "generic": self.is_generic_object(G, bound),
        }

    def classify_predicate(self, G: PAsmObj, bound: int) -> dict[str, Check]:
        """The same questions asked of ``G``'s predicate in the family fibration."""
        mu = Predicate(G.index, G.values)
        return {"discrete": check_discrete(self.dco, mu, bound), "generic": check_generic(self.dco, mu, bound)}

    # -- adjunction and pointedness ----------------------------------------

    def adjunction_check(self, bound: int) -> list[Check]:
        """``hom(X, nabla J)`` is all functions ``Gamma X -> J`` and ``Gamma nabla I = I``."""
        if self.top is None:
            return [check("Gamma -| nabla", False, "no terminal object")]
        gamma_ok, adj_bad, unit_bad = None, None, None
        for X in self.objects(bound):
            if sorted(self.points(X), key=repr) != sorted(X.index, key=repr):
                gamma_ok = f"Gamma{X} = {self.points(X)} differs from its index set"
                break
        for X in self.objects(bound):
            for n in range(bound + 1):
                J = self.nabla(range(n))
                if len(self.hom(X, J)) != n ** len(X.index):
                    adj_bad = f"|hom({X}, nabla {n})| = {len(self.hom(X, J))}"
                    break
            if adj_bad:
                break
        for n in range(bound + 1):
            if len(self.points(self.nabla(range(n)))) != n:
                unit_bad = f"Gamma nabla {n} has {len(self.points(self.nabla(range(n))))} points"
        return [
            check("Gamma = |-|", gamma_ok is None, gamma_ok),
            check("hom(X, nabla J) = functions(Gamma X, J)", adj_bad is None, adj_bad),
            check("Gamma nabla I = I", unit_bad is None, unit_bad),
        ]

    def well_pointed(self, bound: int) -> Check:
        """Gamma faithful: distinct parallel maps differ on some global section."""
        if self.top is None:
            return check("well-pointed", False, "no terminal object")
        for X in self.objects(bound):
            pts = self.points(X)
            for Y in self.objects(bound):
                for f, g in itertools.combinations(self.hom(X, Y), 2):
                    if all(f(x) == g(x) for x in pts):
                        return check("well-pointed", False, f"{f} and {g} agree on points of {X}")
        return check("well-pointed", True)

    def all_dense_monic(self, bound: int) -> Check:
        for X in self.objects(bound):
            for Y in self.objects(bound):
                for m in self.hom(X, Y):
                    if self.dense_by_definition(m) and not self.is_mono(m, bound):
                        return check("dense maps are monic", False, f"{m}: {X} -> {Y}")
        return check("dense maps are monic", True)

    def all_separated(self, bound: int) -> Check:
        for X in self.objects(bound):
            c = self.is_separated_object(X, bound)
            if not c.passed:
                return check("all objects separated", False, f"{X}: {c.witness}")
        return check("all objects separated", True)

    def lemma_equivalences(self, bound: int) -> list[Check]:
        parts = [self.well_pointed(bound), self.all_dense_monic(bound), self.all_separated(bound)]
        verdicts = {c.verdict for c in parts}
        agree = check("well-pointed, dense-monic and separated agree", len(verdicts) == 1,
                      None if len(verdicts) == 1 else ", ".join(f"{c.name}={c.verdict.value}" for c in parts))
        return parts + [agree]

    # -- weak dependent products -------------------------------------------

    def weak_dependent_product(self, b: PAsmMor, u: PAsmMor, pool: Sequence | None = None):
        """``p: (K, theta) -> (I, iota)`` together with the membership log.

        ``K`` holds ``(i, f, a)`` with ``f`` a section of ``b`` over the fiber
        ``J_i`` and ``@(a ^ phi j) = psi(f j)`` for every ``j`` in ``J_i``.
        The log records ``(i, f, a, verdict)`` for every candidate; unknown
        candidates are left out of ``K``.
        """
        if self.cs is None or self.fc is None:
            raise ValueError("weak dependent products need cartesian and completeness data")
        B, J, I = b.source, b.target, u.target
        if u.source != J:
            raise ValueError("b and u are not composable")
        if pool is None:
            if not self.finite:
                raise ValueError("a candidate pool is required over an infinite carrier")
            pool = self.dco.carrier
        members, log = [], []
        for i in I.index:
            fiber = [j for j in J.index if u(j) == i]
            options = [[x for x in B.index if b(x) == j] for j in fiber]
            for choice in itertools.product(*options):
                section = tuple(zip(fiber, choice))
                for a in pool:
                    verdict = self._section_realized(a, section, J, B)
                    log.append((i, section, a, verdict))
                    if verdict is Verdict.PASS:
                        members.append((i, section, a))
        K = PAsmObj(tuple(members), tuple(self.cs.meet(I(i), a, self.fuel) for i, _, a in members))
        p = PAsmMor(K, I, tuple(i for i, _, _ in members), self.cs.lam)
        return K, p, log

    def _section_realized(self, a, section, J: PAsmObj, B: PAsmObj) -> Verdict:
        unknown = False
        for j, x in section:
            try:
                value = self.dco.call(self.fc.at, self.cs.meet(a, J(j), self.fuel), self.fuel)
            except Undefined:
                return Verdict.FAIL
            except Exhausted:
                unknown = True
                continue
            if value != B(x):
                return Verdict.FAIL
        return Verdict.UNKNOWN if unknown else Verdict.PASS

    def evaluation(self, K: PAsmObj, p: PAsmMor, u: PAsmMor, b: PAsmMor):
        """``ev: K x_I J -> B`` sending ``((i, f, a), j)`` to ``f(j)``."""
        P, q1, q2 = self.pullback(p, u)
        legs = [(q1(x), q2(x)) for x in P.index]
        fn = tuple(dict(k[1])[j] for k, j in legs)
        return P, q1, q2, self.morphism(P, b.source, fn)

    def check_weak_dependent_product(self, b: PAsmMor, u: PAsmMor, bound: int) -> Check:
        """Weak universal property at ``bound``: every ``c: C -> I`` with a map
        ``h: C x_I J -> B`` over ``J`` factors through ``p`` compatibly with evaluation."""
        K, p, _ = self.weak_dependent_product(b, u)
        P, q1, q2, ev = self.evaluation(K, p, u, b)
        if ev is None:
            return check("weak dependent product", False, "evaluation map is not realized")
        I, J, B = u.target, u.source, b.source
        for C in self.objects(bound):
            for c in self.hom(C, I):
                CP, c1, c2 = self.pullback(c, u)
                for h in self.hom(CP, B):
                    if any(b(h(x)) != c2(x) for x in CP.index):
                        continue
                    found = False
                    for m in self.hom(C, K):
                        if any(p(m(x)) != c(x) for x in C.index):
                            continue
                        if all(dict(m(c1(x))[1])[c2(x)] == h(x) for x in CP.index):
                            found = True
                            break
                    if not found:
                        return check("weak dependent product", False, f"no factorization for C={C}, c={c.fn}, h={h.fn}")
        return check("weak dependent product", True)

    # -- the fiber reconstruction ------------------------------------------

    def reconstruct_fiber(self, index: Sequence, bound: int) -> list[Check]:
        """Dense maps into ``nabla I`` versus the fiber of the family fibration over ``I``."""
        index = tuple(index)
        G = self.generic_candidate()
        nI = self.nabla(index)
        dense = []
        for U in self.objects(bound):
            if len(U.index) != len(index):
                continue
            for u in self.hom(U, nI):
                if self.dense_by_definition(u):
                    dense.append(u)
        chis, roundtrip_bad = [], None
        for u in dense:
            back = {j: x for x, j in zip(u.source.index, u.fn)}
            chi = Predicate(index, tuple(u.source(back[i]) for i in index))
            chis.append(chi)
            V = PAsmObj(index, chi.values)
            to_v = self.morphism(u.source, V, u.fn)
            from_v = self.morphism(V, u.source, [back[i] for i in index])
            c = self.morphism(V, G, chi.values)
            if to_v is None or from_v is None or c is None or not self.is_closed(c) \
                    or not self.closed_by_definition(c, bound):
                roundtrip_bad = f"u={u} is not recovered from chi_u={chi.values}"
                break
        order_bad = None
        for (u1, x1), (u2, x2) in itertools.product(list(zip(dense, chis)), repeat=2):
            over = any(all(u2(v(x)) == u1(x) for x in u1.source.index) for v in self.hom(u1.source, u2.source))
            if over != (fiber_leq(self.dco, x1, x2) is not None):
                order_bad = f"{u1} vs {u2}"
                break
        reached = {x.values for x in chis}
        all_preds = set(itertools.product(self.dco.carrier, repeat=len(index)))
        return [
            check("u recovered from chi_u", roundtrip_bad is None, roundtrip_bad),
            check("inclusion order matches fiber order", order_bad is None, order_bad),
            check("every predicate is some chi_u", reached == all_preds,
                  None if reached == all_preds else f"{len(all_preds - reached)} predicates missed"),
        ]

    # -- the audit ---------------------------------------------------------

    def audit_characterization(self, bound: int) -> Report:
        """Well-pointed local, discrete generic object and weak dependent products, at ``bound``."""
        report = Report("pasm-audit", params={"bound": bound})
        if self.top is None:
            report.add(check("terminal object", False, "no constant function is realized"))
        else:
            report.add(check("terminal object", True))
        if self.cs is None:
            failed = [c for c in check_cartesian_shallow(self.dco, None) if not c.passed]
            report.add(check("finite limits (cartesian structure)", False,
                             f"{failed[0].name}: {failed[0].witness}" if failed else None))
        else:
            report.extend(limit_checks(self, bound))
        if self.top is not None:
            report.extend(self.adjunction_check(bound))
            report.extend(self.lemma_equivalences(bound))
        else:
            report.add(check("local", False, "no terminal object, so no global sections functor"))
        G = self.generic_candidate()
        flags = self.classify_object(G, bound)
        for name, c in flags.items():
            report.add(Check(f"(A, id) {name}", c.verdict, c.witness))
        if self.cs is None or self.fc is None:
            report.add(check("weak dependent products", False,
                             "not cartesian" if self.cs is None else "no universal function"))
        else:
            report.add(wlcc_check(self, min(bound, 2)))
        return report


# ---------------------------------------------------------------------------
# Universal-property checks at a bound


def limit_checks(C: PAsm, bound: int) -> list[Check]:
    """Terminal, product and equalizer universal properties at ``bound``."""
    objs = list(C.objects(bound))
    one = C.terminal()
    term_bad = next((f"{X}" for X in objs if len(C.hom(X, one)) != 1), None)
    prod_bad = eq_bad = None
    for X, Y in itertools.product(objs, repeat=2):
        P, p1, p2 = C.product(X, Y)
        for T in objs:
            pairs = {(tuple(p1(x) for x in m.fn), tuple(p2(x) for x in m.fn)) for m in C.hom(T, P)}
            expected = {(a.fn, b.fn) for a in C.hom(T, X) for b in C.hom(T, Y)}
            if len(C.hom(T, P)) != len(expected) or pairs != expected:
                prod_bad = f"T={T}, X={X}, Y={Y}"
                break
        if prod_bad:
            break
    for X, Y in itertools.product(objs, repeat=2):
        for f, g in itertools.product(C.hom(X, Y), repeat=2):
            m = C.equalizer(f, g)
            for T in objs:
                for h in C.hom(T, X):
                    if any(f(h(t)) != g(h(t)) for t in T.index):
                        continue
                    lifts = [k for k in C.hom(T, m.source) if tuple(m(x) for x in k.fn) == h.fn]
                    if len(lifts) != 1:
                        eq_bad = f"f={f.fn}, g={g.fn}, h={h.fn}: {len(lifts)} lifts"
                        break
                if eq_bad:
                    break
            if eq_bad:
                break
        if eq_bad:
            break
    return [
        check("terminal universal property", term_bad is None, term_bad),
        check("product universal property", prod_bad is None, prod_bad),
        check("equalizer universal property", eq_bad is None, eq_bad),
    ]


def wlcc_check(C: PAsm, bound: int) -> Check:
    """Weak dependent products along every composable pair at ``bound``."""
    objs = list(C.objects(bound))
    for B, J, I in itertools.product(objs, repeat=3):
        for b in C.hom(B, J):
            for u in C.hom(J, I):
                c = C.check_weak_dependent_product(b, u, bound)
                if not c.passed:
                    return check("weak dependent products", False, f"b={b.fn}, u={u.fn}: {c.witness}")
    return check("weak dependent products", True)


def category_law_checks(C: PAsm, bound: int) -> list[Check]:
    """Identity and associativity on all composable triples, plus realizer coherence."""
    objs = list(C.objects(bound))
    ident_bad = assoc_bad = coherence_bad = None
    for X, Y in itertools.product(objs, repeat=2):
        for f in C.hom(X, Y):
            if C.compose(C.identity(X), f) != f or C.compose(f, C.identity(Y)) != f:
                ident_bad = f"{f}"
    for X, Y, Z in itertools.product(objs, repeat=3):
        for f in C.hom(X, Y):
            for g in C.hom(Y, Z):
                gf = C.compose(f, g)
                if C.verify(gf) != Outcome.HOLDS:
                    coherence_bad = f"{g} o {f}"
                for W in objs:
                    for h in C.hom(Z, W):
                        if C.compose(gf, h) != C.compose(f, C.compose(g, h)):
                            assoc_bad = f"{h} o {g} o {f}"
    return [
        check("identity laws", ident_bad is None, ident_bad),
        check("associativity", assoc_bad is None, assoc_bad),
        check("composite realizers verify", coherence_bad is None, coherence_bad),
    ]


def factorization_checks(C: PAsm, bound: int) -> list[Check]:
    """Dense-closed factorization, its characterizations and 3-for-2 at ``bound``."""
    objs = list(C.objects(bound))
    fact_bad = dense_bad = closed_bad = three_bad = None
    # the dense characterization reads Gamma as hom(1, -), which is the
    # underlying set only over a shallow base with a terminal object
    definitional = C.top is not None and C.shallow
    for X, Y in itertools.product(objs, repeat=2):
        for m in C.hom(X, Y):
            fz = C.factorize(m)
            if C.compose(fz.dense, fz.closed) != m or C.verify(fz.dense) != Outcome.HOLDS \
                    or not C.is_dense(fz.dense) or not C.is_closed(fz.closed):
                fact_bad = f"{m}"
            if definitional and C.is_dense(m) != C.dense_by_definition(m):
                dense_bad = f"{m}: {X} -> {Y}"
            if C.is_closed(m) != C.closed_by_definition(m, bound):
                closed_bad = f"{m}: {X} -> {Y}"
    for X, Y, Z in itertools.product(objs, repeat=3):
        for f in C.hom(X, Y):
            for g in C.hom(Y, Z):
                flags = (C.is_dense(f), C.is_dense(g), C.is_dense(C.compose(f, g)))
                if sum(flags) == 2:
                    three_bad = f"f={f}, g={g}: dense flags {flags}"
    out = [check("dense-then-closed factorization", fact_bad is None, fact_bad)]
    if definitional:
        out.append(check("dense iff bijective", dense_bad is None, dense_bad))
    out.append(check("closed iff predicate equivalent", closed_bad is None, closed_bad))
    out.append(check("dense maps satisfy 3-for-2", three_bad is None, three_bad))
    return out


def gamma_preserves_epis(C: PAsm, bound: int) -> Check:
    objs = list(C.objects(bound))
    for X, Y in itertools.product(objs, repeat=2):
        for m in C.hom(X, Y):
            if C.is_epi(m, bound) and set(C.gamma_map(m).values()) != set(C.points(Y)):
                return check("Gamma preserves epis", False, f"{m}: {X} -> {Y}")
    return check("Gamma preserves epis", True)


def dense_stable_under_pullback(C: PAsm, bound: int) -> Check:
    objs = list(C.objects(bound))
    for X, Y, Z in itertools.product(objs, repeat=3):
        for f in C.hom(X, Z):
            if not C.is_dense(f):
                continue
            for g in C.hom(Y, Z):
                _, q1, q2 = C.pullback(f, g)
                if not C.is_dense(q2):
                    return check("dense maps pullback-stable", False, f"f={f}, g={g}")
    return check("dense maps pullback-stable", True)


def set_product(I: Sequence, J: Sequence) -> list:
    return [(i, j) for i in I for j in J]


def set_dependent_product(b: dict, u: dict, I: Sequence, J: Sequence, B: Sequence) -> set:
    """``{(i, section)}`` for functions ``b: B -> J`` and ``u: J -> I`` given as dicts."""
    out = set()
    for i in I:
        fiber = [j for j in J if u[j] == i]
        options = [[x for x in B if b[x] == j] for j in fiber]
        for choice in itertools.product(*options):
            out.add((i, tuple(zip(fiber, choice))))
    return out
