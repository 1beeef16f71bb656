"""The exact completion of a category of partitioned assemblies.

An object of the completion is a pseudo-equivalence relation: a base object
``X`` with a relation ``r1, r2: R -> X`` and witnesses for reflexivity
(``rho``), symmetry (``sigma``) and transitivity (``tau``).  A morphism is a
base map ``f: X -> X'`` that carries related points to related points;
``f ~ g`` when some ``h: X -> R'`` has ``r1' h = f`` and ``r2' h = g``.

The base is a :class:`~realizability.pasm.PAsm` with a cartesian structure.
Over a finite DCO every question is decided by search; over a PCA-induced
DCO (the realizability-topos facade) answers are three-valued.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .dco import CartesianStructure, Outcome, PcaDco, cartesian_witnesses_from_pca, \
    functional_completeness_from_pca
from .pasm import PAsm, PAsmMor, PAsmObj, wlcc_check
from .pca import DEFAULT_FUEL, Pca
from .report import Check, Report, Verdict, check, combine
from .terms import Exhausted


@dataclass(frozen=True)
class ExObj:
    X: PAsmObj
    R: PAsmObj
    r1: PAsmMor
    r2: PAsmMor
    rho: PAsmMor = field(compare=False)
    sigma: PAsmMor = field(compare=False)
    tau: PAsmMor = field(compare=False)
    label: str = field(default="", compare=False)

    def __repr__(self):
        return self.label or f"Ex({self.X}, |R|={len(self.R.index)})"


@dataclass(frozen=True)
class ExMor:
    source: ExObj
    target: ExObj
    f: PAsmMor
    tracking: PAsmMor | None = field(default=None, compare=False)

    def __call__(self, x):
        return self.f(x)

    def __repr__(self):
        return f"ExMor({', '.join(f'{i}->{j}' for i, j in zip(self.f.source.index, self.f.fn))})"


def _verdict(found: bool, unknown: bool) -> Verdict:
    if found:
        return Verdict.PASS
    return Verdict.UNKNOWN if unknown else Verdict.FAIL


class ExCompletion:
    """The completion of ``base``, materialized lazily."""

    def __init__(self, base: PAsm):
        if base.cs is None:
            raise ValueError("the base has no finite limits (no cartesian structure)")
        self.base = base
        self._embedded: dict = {}

    # -- searching in the base ----------------------------------------------

    def solve(self, X: PAsmObj, Y: PAsmObj, candidates: Sequence[Sequence]) -> tuple[Verdict, PAsmMor | None]:
        """A realized map ``X -> Y`` choosing ``fn[k]`` from ``candidates[k]``."""
        unknown = False
        for fn in itertools.product(*candidates):
            try:
                m = self.base.morphism(X, Y, fn)
            except Exhausted:
                unknown = True
                continue
            if m is not None:
                return Verdict.PASS, m
        return _verdict(False, unknown), None

    def base_maps(self, X: PAsmObj, Y: PAsmObj) -> tuple[list[PAsmMor], bool]:
        """Realized maps and whether the list is certainly complete."""
        if self.base.finite:
            return self.base.hom(X, Y), True
        out, complete = [], True
        for fn, verdict, r in self.base.hom_search(X, Y):
            if verdict is Verdict.PASS:
                out.append(PAsmMor(X, Y, fn, r))
            elif verdict is Verdict.UNKNOWN:
                complete = False
        return out, complete

    # -- building objects ----------------------------------------------------

    def square(self, Y: PAsmObj):
        return self.base.product(Y, Y)

    def relation_pullback(self, Z: PAsmObj, h1: PAsmMor, h2: PAsmMor, S: PAsmObj, s1: PAsmMor, s2: PAsmMor):
        """``{(z, s) | s1 s = h1 z, s2 s = h2 z}`` with its two legs."""
        YY = self.square(h1.target)[0]
        return self.base.pullback(self.base.pair(h1, h2, YY), self.base.pair(s1, s2, YY))

    def complete_relation(self, X: PAsmObj, R: PAsmObj, r1: PAsmMor, r2: PAsmMor, label: str = "") -> ExObj:
        """Find reflexivity, symmetry and transitivity witnesses by search."""
        v, rho = self.solve(X, R, [[s for s in R.index if r1(s) == x and r2(s) == x] for x in X.index])
        if rho is None:
            raise ValueError(f"no reflexivity witness ({v.value})")
        v, sigma = self.solve(R, R, [[t for t in R.index if r1(t) == r2(s) and r2(t) == r1(s)] for s in R.index])
        if sigma is None:
            raise ValueError(f"no symmetry witness ({v.value})")
        P, q1, q2 = self.base.pullback(r2, r1)
        cands = [[t for t in R.index if r1(t) == r1(q1(p)) and r2(t) == r2(q2(p))] for p in P.index]
        v, tau = self.solve(P, R, cands)
        if tau is None:
            raise ValueError(f"no transitivity witness ({v.value})")
        return ExObj(X, R, r1, r2, rho, sigma, tau, label)

    def embed(self, X: PAsmObj) -> ExObj:
        if X not in self._embedded:
            ident = self.base.identity(X)
            P, q1, _ = self.base.pullback(ident, ident)
            self._embedded[X] = ExObj(X, X, ident, ident, ident, ident, q1, f"embed{X}")
        return self._embedded[X]

    def relation_object(self, X: PAsmObj, pairs, label: str = "") -> ExObj:
        """``X`` with the closed relation on the given pairs (an equivalence relation)."""
        XX, p1, p2 = self.square(X)
        m = self.base.restrict(XX, [pair for pair in XX.index if pair in set(pairs)])
        return self.complete_relation(X, m.source, self.base.compose(m, p1), self.base.compose(m, p2),
                                      label or f"{X}/{sorted(set(pairs))}")

    def terminal(self) -> ExObj:
        return self.embed(self.base.terminal())

    def nabla(self, index: Sequence) -> ExObj:
        return self.embed(self.base.nabla(index))

    def objects(self, bound: int) -> list[ExObj]:
        """Embedded objects at ``bound`` and their quotients by non-trivial equivalence relations."""
        out = []
        for X in self.base.objects(bound):
            out.append(self.embed(X))
        for X in self.base.objects(bound):
            for eq in equivalence_relations(X.index):
                if len(eq) > len(X.index):
                    out.append(self.relation_object(X, eq))
        return out

    # -- morphisms -------------------------------------------------------------

    def tracked(self, E: ExObj, F: ExObj, f: PAsmMor) -> tuple[Verdict, PAsmMor | None]:
        cands = [[t for t in F.R.index if F.r1(t) == f(E.r1(s)) and F.r2(t) == f(E.r2(s))] for s in E.R.index]
        return self.solve(E.R, F.R, cands)

    def morphism(self, E: ExObj, F: ExObj, f: PAsmMor) -> ExMor | None:
        v, t = self.tracked(E, F, f)
        return ExMor(E, F, f, t) if t is not None else None

    def equal(self, a: ExMor, b: ExMor) -> Verdict:
        F = a.target
        cands = [[s for s in F.R.index if F.r1(s) == a(x) and F.r2(s) == b(x)] for x in a.source.X.index]
        return self.solve(a.source.X, F.R, cands)[0]

    def identity(self, E: ExObj) -> ExMor:
        return ExMor(E, E, self.base.identity(E.X), self.base.identity(E.R))

    def compose(self, a: ExMor, b: ExMor) -> ExMor:
        """``b o a``."""
        t = self.base.compose(a.tracking, b.tracking) if a.tracking and b.tracking else None
        return ExMor(a.source, b.target, self.base.compose(a.f, b.f), t)

    def hom_search(self, E: ExObj, F: ExObj) -> tuple[list[ExMor], Verdict]:
        """Class representatives in canonical order, and whether the answer is exact
        (pass) or possibly incomplete or over-counted (unknown).

        Tracking and equality only look at the underlying function, so a
        function whose realizer search ran out of budget still leaves the
        answer exact when it cannot be tracked or equals a known class.
        """
        if self.base.finite:
            candidates = [(m.fn, Verdict.PASS, m.realizer) for m in self.base.hom(E.X, F.X)]
        else:
            candidates = self.base.hom_search(E.X, F.X)
        reps, exact = [], True
        for fn, verdict, r in candidates:
            if verdict is Verdict.FAIL:
                continue
            f = PAsmMor(E.X, F.X, fn, r)
            v, t = self.tracked(E, F, f)
            if v is Verdict.FAIL:
                continue
            m = ExMor(E, F, f, t)
            verdicts = [self.equal(m, rep) for rep in reps]
            if Verdict.PASS in verdicts:
                continue
            if verdict is Verdict.UNKNOWN or v is Verdict.UNKNOWN or Verdict.UNKNOWN in verdicts:
                exact = False
            if verdict is Verdict.PASS and v is Verdict.PASS:
                reps.append(m)
        return reps, Verdict.PASS if exact else Verdict.UNKNOWN

    def hom(self, E: ExObj, F: ExObj) -> list[ExMor]:
        reps, v = self.hom_search(E, F)
        if v is not Verdict.PASS:
            raise Exhausted(0, "hom computation")
        return reps

    def is_iso(self, a: ExMor) -> bool:
        return any(self.equal(self.compose(a, b), self.identity(a.source)) is Verdict.PASS
                   and self.equal(self.compose(b, a), self.identity(a.target)) is Verdict.PASS
                   for b in self.hom(a.target, a.source))

    # -- kernels, epis and monos ---------------------------------------------

    def kernel(self, a: ExMor):
        """Base relation ``K_a`` on the source identifying points ``a`` relates."""
        E, F = a.source, a.target
        XX, p1, p2 = self.square(E.X)
        P, q, _ = self.relation_pullback(XX, self.base.compose(p1, a.f), self.base.compose(p2, a.f), F.R, F.r1, F.r2)
        return P, self.base.compose(q, p1), self.base.compose(q, p2)

    def is_mono(self, a: ExMor) -> Verdict:
        K, k1, k2 = self.kernel(a)
        E = a.source
        cands = [[t for t in E.R.index if E.r1(t) == k1(x) and E.r2(t) == k2(x)] for x in K.index]
        return self.solve(K, E.R, cands)[0]

    def is_regular_epi(self, a: ExMor) -> Verdict:
        """Some base ``k`` has ``a k ~ id``; then ``a`` is split, hence regular."""
        E, F = a.source, a.target
        maps, complete = self.base_maps(F.X, E.X)
        unknown = not complete
        for k in maps:
            cands = [[s for s in F.R.index if F.r1(s) == a(k(y)) and F.r2(s) == y] for y in F.X.index]
            v, _ = self.solve(F.X, F.R, cands)
            if v is Verdict.PASS:
                return v
            unknown = unknown or v is Verdict.UNKNOWN
        return _verdict(False, unknown)

    def factorize_regular(self, a: ExMor) -> tuple[ExMor, ExMor]:
        """``(X, R) -id-> (X, K_a) -a-> (Y, S)``."""
        K, k1, k2 = self.kernel(a)
        Q = self.complete_relation(a.source.X, K, k1, k2, f"image of {a}")
        e = self.morphism(a.source, Q, self.base.identity(a.source.X))
        m = self.morphism(Q, a.target, a.f)
        if e is None or m is None:
            raise ValueError("factorization parts are not tracked")
        return e, m

    # -- limits in the completion ----------------------------------------------

    def induced(self, P: PAsmObj, q: PAsmMor, E: ExObj, label: str = "") -> ExObj:
        """``P`` with the relation pulled back from ``E`` along ``q``."""
        PP, p1, p2 = self.square(P)
        RP, t, _ = self.relation_pullback(PP, self.base.compose(p1, q), self.base.compose(p2, q), E.R, E.r1, E.r2)
        return self.complete_relation(P, RP, self.base.compose(t, p1), self.base.compose(t, p2), label)

    def product(self, A: ExObj, B: ExObj) -> tuple[ExObj, ExMor, ExMor]:
        X, p1, p2 = self.base.product(A.X, B.X)
        R, s1, s2 = self.base.product(A.R, B.R)
        l1 = self.base.pair(self.base.compose(s1, A.r1), self.base.compose(s2, B.r1), X)
        l2 = self.base.pair(self.base.compose(s1, A.r2), self.base.compose(s2, B.r2), X)
        P = self.complete_relation(X, R, l1, l2, f"{A} x {B}")
        return P, self.morphism(P, A, p1), self.morphism(P, B, p2)

    def pullback(self, a: ExMor, b: ExMor) -> tuple[ExObj, ExMor, ExMor]:
        C = a.target
        AB, pa, pb = self.product(a.source, b.source)
        P, q, _ = self.relation_pullback(AB.X, self.base.compose(pa.f, a.f), self.base.compose(pb.f, b.f),
                                         C.R, C.r1, C.r2)
        PE = self.induced(P, q, AB, f"pullback of {a}, {b}")
        return PE, self.morphism(PE, a.source, self.base.compose(q, pa.f)), \
            self.morphism(PE, b.source, self.base.compose(q, pb.f))

    def equalizer(self, a: ExMor, b: ExMor) -> ExMor:
        F = a.target
        U, q, _ = self.relation_pullback(a.source.X, a.f, b.f, F.R, F.r1, F.r2)
        UE = self.induced(U, q, a.source, f"equalizer of {a}, {b}")
        return self.morphism(UE, a.source, q)

    # -- global sections -------------------------------------------------------

    def points(self, E: ExObj) -> list[ExMor]:
        """``Gamma E`` as classes of maps from the terminal object."""
        return self.hom(self.terminal(), E)

    def gamma_coequalizer(self, E: ExObj) -> list[frozenset]:
        """``Gamma X`` divided by the image of ``Gamma R``: classes of base points."""
        pts = self.base_points(E.X)
        parent = {x: x for x in pts}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for s in self.base_points(E.R):
            parent[find(E.r1(s))] = find(E.r2(s))
        classes = {}
        for x in pts:
            classes.setdefault(find(x), set()).add(x)
        return [frozenset(c) for c in classes.values()]

    def base_points(self, X: PAsmObj) -> list:
        if self.base.finite:
            return self.base.points(X)
        one = self.base.terminal()
        out = []
        for x in X.index:
            # a point picking x is realized by the constant at phi(x)
            out.append(x) if self.base.dco.constant(X(x)) is not None else None
        return out

    def gamma_map(self, a: ExMor) -> dict:
        """``Gamma a`` as a map between point indices of ``points``."""
        src, tgt = self.points(a.source), self.points(a.target)
        out = {}
        for k, x in enumerate(src):
            image = self.compose(x, a)
            out[k] = next(j for j, y in enumerate(tgt) if self.equal(image, y) is Verdict.PASS)
        return out

    # -- closed maps and discreteness --------------------------------------------

    def is_closed(self, a: ExMor, bound: int) -> bool:
        """Pullback square against ``eta``, tested on objects at ``bound``.

        Cones into ``nabla Gamma B`` are read through the adjunction as
        functions ``Gamma T -> Gamma B``.
        """
        B, A = a.source, a.target
        gB = len(self.points(B))
        ga = self.gamma_map(a)
        for T in self.objects(bound):
            gT = len(self.points(T))
            for t1 in self.hom(T, A):
                gt1 = self.gamma_map(t1)
                for tau in itertools.product(range(gB), repeat=gT):
                    if any(ga[tau[k]] != gt1[k] for k in range(gT)):
                        continue
                    count = sum(1 for u in self.hom(T, B)
                                if self.equal(self.compose(u, a), t1) is Verdict.PASS
                                and all(self.gamma_map(u)[k] == tau[k] for k in range(gT)))
                    if count != 1:
                        return False
        return True

    def is_discrete(self, D: ExObj, bound: int) -> Check:
        for C in self.objects(bound):
            for Dp in self.objects(bound):
                for e in self.hom(Dp, C):
                    if set(self.gamma_map(e).values()) != set(range(len(self.points(C)))):
                        continue
                    if not self.is_closed(e, bound):
                        continue
                    for f in self.hom(Dp, D):
                        count = sum(1 for g in self.hom(C, D)
                                    if self.equal(self.compose(e, g), f) is Verdict.PASS)
                        if count != 1:
                            return check("discrete in completion", False,
                                         f"C={C}, D'={Dp}, e={e}, f={f}: {count} fillers")
        return check("discrete in completion", True)

    def eta(self, E: ExObj) -> ExMor:
        """``E -> nabla Gamma E``; on an embedded object this is the embedded unit."""
        return self.morphism(E, self.embed(self.base.nabla(E.X.index)), self.base.eta(E.X))

    # -- checks ----------------------------------------------------------------

    def unit_full_faithful(self, bound: int) -> Check:
        objs = list(self.base.objects(bound))
        for X, Y in itertools.product(objs, repeat=2):
            n_base, n_ex = len(self.base.hom(X, Y)), len(self.hom(self.embed(X), self.embed(Y)))
            if n_base != n_ex:
                return check("unit full and faithful", False, f"|hom({X}, {Y})| = {n_base} but {n_ex} in the completion")
        return check("unit full and faithful", True)

    def is_projective(self, P: ExObj, bound: int) -> Check:
        objs = self.objects(bound)
        for Y, X in itertools.product(objs, repeat=2):
            for e in self.hom(Y, X):
                if self.is_regular_epi(e) is not Verdict.PASS:
                    continue
                for f in self.hom(P, X):
                    if not any(self.equal(self.compose(g, e), f) is Verdict.PASS for g in self.hom(P, Y)):
                        return check("projective", False, f"{P}: no lift of {f} through {e}")
        return check("projective", True)

    def enough_projectives(self, bound: int) -> list[Check]:
        cover_bad = proj_bad = None
        for E in self.objects(bound):
            cover = self.morphism(self.embed(E.X), E, self.base.identity(E.X))
            if cover is None or self.is_regular_epi(cover) is not Verdict.PASS:
                cover_bad = f"{E}"
        for X in self.base.objects(bound):
            c = self.is_projective(self.embed(X), bound)
            if not c.passed:
                proj_bad = c.witness
        return [check("every object covered by an embedded object", cover_bad is None, cover_bad),
                check("embedded objects projective", proj_bad is None, proj_bad)]

    def projectives_closed(self, bound: int) -> Check:
        """Terminal, binary products and equalizers of embedded objects are projective."""
        one = self.terminal()
        if not self.is_projective(one, bound).passed:
            return check("projectives closed under finite limits", False, "terminal")
        embedded = [self.embed(X) for X in self.base.objects(bound)]
        for A, B in itertools.product(embedded, repeat=2):
            P, _, _ = self.product(A, B)
            if len(P.X.index) <= bound and not self.is_projective(P, bound).passed:
                return check("projectives closed under finite limits", False, f"{A} x {B}")
            for a, b in itertools.product(self.hom(A, B), repeat=2):
                m = self.equalizer(a, b)
                if not self.is_projective(m.source, bound).passed:
                    return check("projectives closed under finite limits", False, f"equalizer of {a}, {b}")
        return check("projectives closed under finite limits", True)

    def check_exactness(self, bound: int) -> list[Check]:
        objs = self.objects(bound)
        fact_bad = stable_bad = kp_bad = None
        for E, F in itertools.product(objs, repeat=2):
            for a in self.hom(E, F):
                e, m = self.factorize_regular(a)
                if self.is_regular_epi(e) is not Verdict.PASS or self.is_mono(m) is not Verdict.PASS \
                        or self.equal(self.compose(e, m), a) is not Verdict.PASS:
                    fact_bad = f"{a}: {E} -> {F}"
        for Y, X, Z in itertools.product(objs, repeat=3):
            for e in self.hom(Y, X):
                if self.is_regular_epi(e) is not Verdict.PASS:
                    continue
                for g in self.hom(Z, X):
                    _, _, pz = self.pullback(e, g)
                    if self.is_regular_epi(pz) is not Verdict.PASS:
                        stable_bad = f"pullback of {e} along {g}"
        for E in objs:
            for eq in equivalence_relations(E.X.index):
                if not all((E.r1(s), E.r2(s)) in eq for s in E.R.index):
                    continue
                Q = self.relation_object(E.X, eq)
                q = self.morphism(E, Q, self.base.identity(E.X))
                K, k1, k2 = self.kernel(q)
                if {(k1(x), k2(x)) for x in K.index} != set(eq):
                    kp_bad = f"{E} with relation {sorted(eq)}"
        return [
            check("regular epi / mono factorizations", fact_bad is None, fact_bad),
            check("regular epis pullback-stable", stable_bad is None, stable_bad),
            check("equivalence relations are kernel pairs", kp_bad is None, kp_bad),
        ]

    def gamma_nabla_completion(self, bound: int) -> list[Check]:
        coeq_bad = adj_bad = reg_bad = None
        objs = self.objects(bound)
        for E in objs:
            classes = self.gamma_coequalizer(E)
            pts = self.points(E)
            # each point class must be exactly one coequalizer class
            seen = set()
            for x in pts:
                cls = next(c for c in classes if x.f.fn[0] in c)
                seen.add(cls)
            if len(seen) != len(pts) or len(classes) != len(pts):
                coeq_bad = f"{E}: {len(pts)} global sections, {len(classes)} coequalizer classes"
            for n in range(bound + 1):
                if len(self.hom(E, self.nabla(range(n)))) != n ** len(pts):
                    adj_bad = f"hom({E}, nabla {n})"
        for Y, X in itertools.product(objs, repeat=2):
            for e in self.hom(Y, X):
                if self.is_regular_epi(e) is Verdict.PASS and \
                        set(self.gamma_map(e).values()) != set(range(len(self.points(X)))):
                    reg_bad = f"{e}"
        return [
            check("Gamma via coequalizer = global sections", coeq_bad is None, coeq_bad),
            check("hom(X, nabla I) = functions(Gamma X, I)", adj_bad is None, adj_bad),
            check("Gamma preserves regular epis", reg_bad is None, reg_bad),
        ]

    def discrete_lift_check(self, bound: int) -> list[Check]:
        """Discreteness of embedded objects agrees between the base and the completion."""
        out = []
        for X in self.base.objects(bound):
            base_v = self.base.is_discrete_object(X, bound).verdict
            ex_v = self.is_discrete(self.embed(X), bound).verdict
            out.append(check(f"discreteness of {X} agrees", base_v is ex_v,
                             f"base {base_v.value}, completion {ex_v.value}"))
        return out

    def pushout_check(self, bound: int) -> Check:
        """A pullback of two regular epis is a pushout, against test objects at ``bound``."""
        objs = self.objects(bound)
        for A, B, C in itertools.product(objs, repeat=3):
            for e in self.hom(A, C):
                if self.is_regular_epi(e) is not Verdict.PASS:
                    continue
                for u in self.hom(B, C):
                    if self.is_regular_epi(u) is not Verdict.PASS:
                        continue
                    P, pa, pb = self.pullback(e, u)
                    for T in objs:
                        for x in self.hom(A, T):
                            for y in self.hom(B, T):
                                if self.equal(self.compose(pa, x), self.compose(pb, y)) is not Verdict.PASS:
                                    continue
                                n = sum(1 for h in self.hom(C, T)
                                        if self.equal(self.compose(e, h), x) is Verdict.PASS
                                        and self.equal(self.compose(u, h), y) is Verdict.PASS)
                                if n != 1:
                                    return check("pullback of regular epis is a pushout", False,
                                                 f"e={e}, u={u}, T={T}: {n} mediators")
        return check("pullback of regular epis is a pushout", True)

    def audit_theorem_4_6(self, bound: int) -> Report:
        report = Report("exlex-audit", params={"bound": bound})
        exact = self.check_exactness(bound)
        lcc = wlcc_check(self.base, bound) if self.base.fc is not None else \
            check("weak dependent products", False, "no universal function")
        report.add(Check("1. exact", combine(c.verdict for c in exact), "; ".join(
            f"{c.name}: {c.witness}" for c in exact if not c.passed) or None))
        report.add(Check("1. locally cartesian closed (projectives w.l.c.c.)", lcc.verdict, lcc.witness))
        enough = self.enough_projectives(bound) + [self.projectives_closed(bound)]
        report.add(Check("2. enough projectives, closed under finite limits",
                         combine(c.verdict for c in enough),
                         "; ".join(f"{c.name}: {c.witness}" for c in enough if not c.passed) or None))
        gn = self.gamma_nabla_completion(bound)
        nabla_proj = [self.is_projective(self.nabla(range(n)), bound) for n in range(bound + 1)]
        report.add(Check("3. Gamma has a right adjoint through projectives",
                         combine(c.verdict for c in gn + nabla_proj),
                         "; ".join(f"{c.name}: {c.witness}" for c in gn + nabla_proj if not c.passed) or None))
        G = self.embed(self.base.generic_candidate())
        parts = [self.is_discrete(G, bound), self.is_projective(G, bound)]
        eta = self.eta(G)
        parts.append(check("separated", eta is not None and self.is_mono(eta) is Verdict.PASS))
        closed_from = None
        for X in self.base.objects(bound):
            P = self.embed(X)
            if not any(self.is_closed(c, bound) for c in self.hom(P, G)):
                closed_from = f"no closed map {P} -> G"
                break
        parts.append(check("closed map from every projective", closed_from is None, closed_from))
        report.add(Check("4. discrete separated projective generic G", combine(c.verdict for c in parts),
                         "; ".join(f"{c.name}: {c.witness}" for c in parts if not c.passed) or None))
        return report


def equivalence_relations(index: Sequence) -> list[frozenset]:
    """Every equivalence relation on ``index`` as a set of pairs, via set partitions."""
    items = list(index)

    def partitions(rest):
        if not rest:
            yield []
            return
        first, tail = rest[0], rest[1:]
        for p in partitions(tail):
            yield [[first]] + p
            for k in range(len(p)):
                yield p[:k] + [[first] + p[k]] + p[k + 1:]

    out = []
    for p in partitions(items):
        out.append(frozenset((x, y) for block in p for x in block for y in block))
    return sorted(out, key=len)


def audit_without_limits(base: PAsm, bound: int) -> Report:
    """The audit for a base lacking finite limits: every condition fails with the reason."""
    report = Report("exlex-audit", params={"bound": bound})
    reason = "base has no finite limits, so the completion is undefined"
    pasm = base.audit_characterization(bound)
    first = next((c for c in pasm.checks if not c.passed), None)
    if first is not None:
        reason += f" ({first.name}: {first.witness})"
    for name in ("1. exact", "1. locally cartesian closed (projectives w.l.c.c.)",
                 "2. enough projectives, closed under finite limits",
                 "3. Gamma has a right adjoint through projectives",
                 "4. discrete separated projective generic G"):
        report.add(check(name, False, reason))
    return report


# ---------------------------------------------------------------------------
# Base-level kernel pairs


def is_closed_relation(base: PAsm, X: PAsmObj, R: PAsmObj, r1: PAsmMor, r2: PAsmMor) -> Verdict:
    """``<r1, r2>: R -> X x X`` is closed; kernel pairs in the base always are."""
    XX, _, _ = base.product(X, X)
    incl = PAsmMor(R, XX, tuple((r1(s), r2(s)) for s in R.index))
    try:
        return Verdict.PASS if base.is_closed(incl) else Verdict.FAIL
    except Exhausted:
        return Verdict.UNKNOWN


def verify_equivalence_relation(base: PAsm, E: ExObj) -> Check:
    """Evaluate the witness realizers and their leg equations."""
    outcomes = [base.verify(m) for m in (E.rho, E.sigma, E.tau, E.r1, E.r2)]
    legs = all(E.r1(E.rho(x)) == x == E.r2(E.rho(x)) for x in E.X.index) and \
        all(E.r1(E.sigma(s)) == E.r2(s) and E.r2(E.sigma(s)) == E.r1(s) for s in E.R.index)
    if Outcome.REFUTED in outcomes or not legs:
        return check("equivalence relation", False, f"realizer outcomes {outcomes}")
    if Outcome.EXHAUSTED in outcomes:
        return Check("equivalence relation", Verdict.UNKNOWN, "some realizer ran out of fuel")
    return check("equivalence relation", True)


# ---------------------------------------------------------------------------
# The realizability-topos facade


class RealizabilityTopos(ExCompletion):
    """The completion of partitioned assemblies over a PCA; answers are
    three-valued under the search budget."""

    def __init__(self, pca: Pca, fuel: int = DEFAULT_FUEL, search_fuel: int = 2_000, depth: int = 5):
        d = PcaDco(pca, fuel)
        super().__init__(PAsm(d, cartesian_witnesses_from_pca(pca, fuel), functional_completeness_from_pca(pca, fuel),
                              fuel=fuel, search_fuel=search_fuel, depth=depth))
        self.pca = pca

    def objects(self, bound: int):
        raise ValueError("the realizability topos is not enumerable; build objects explicitly")

    def embed(self, X: PAsmObj) -> ExObj:
        """Witnesses are built from the pairing structure rather than searched."""
        if X not in self._embedded:
            ident = self.base.identity(X)
            P, q1, _ = self.base.pullback(ident, ident)
            self._embedded[X] = ExObj(X, X, ident, ident, ident, ident, q1, f"embed{X}")
        return self._embedded[X]

    def relation_object(self, X: PAsmObj, pairs, label: str = "") -> ExObj:
        """Closed relation with constructed witnesses (lifts of pairings)."""
        base = self.base
        pairs = set(pairs)
        XX, p1, p2 = self.square(X)
        m = base.restrict(XX, [pr for pr in XX.index if pr in pairs])
        R = m.source
        r1, r2 = base.compose(m, p1), base.compose(m, p2)
        rho = base.lift(m, base.pair(base.identity(X), base.identity(X), XX))
        sigma = base.lift(m, base.pair(r2, r1, XX))
        P, q1, q2 = base.pullback(r2, r1)
        tau = base.lift(m, base.pair(base.compose(q1, r1), base.compose(q2, r2), XX))
        return ExObj(X, R, r1, r2, rho, sigma, tau, label or f"{X}/{sorted(pairs)}")

    def points(self, E: ExObj) -> list[ExMor]:
        """Global sections: base points (constants are realized) modulo the relation."""
        one = self.terminal()
        out = []
        for cls in self.gamma_coequalizer(E):
            x = sorted(cls, key=repr)[0]
            f = PAsmMor(one.X, E.X, (x,), self.base.dco.constant(E.X(x)))
            out.append(ExMor(one, E, f, self.base.dco.constant(E.R(E.rho(x)))))
        return out


def rt(pca: Pca, fuel: int = DEFAULT_FUEL, depth: int = 5) -> RealizabilityTopos:
    return RealizabilityTopos(pca, fuel=fuel, depth=depth)


def sk_booleans(pca: Pca):
    """``T = k`` and ``F = k i``: ``T a b = a`` and ``F a b = b``."""
    return pca.k, pca.apply(pca.k, pca.i)


def non_closed_relation(topos: RealizabilityTopos) -> tuple[ExObj, Check, Verdict]:
    """The full relation on ``nabla 2`` whose predicate is ``T`` on the diagonal
    and ``F`` off it.  It is an equivalence relation in the base but not closed,
    hence not a kernel pair there.

    Returns the object, the verification of its witnesses and the closedness verdict.
    """
    from .pca import Const, PApp, Polynomial, Var, compile_polynomial, papp

    pca, base = topos.pca, topos.base
    T, F = sk_booleans(pca)
    X = base.nabla((0, 1))
    index = tuple((i, j) for i in (0, 1) for j in (0, 1))
    R = PAsmObj(index, tuple(T if i == j else F for i, j in index))
    r1 = PAsmMor(R, X, tuple(i for i, _ in index), base.dco.constant(base.top))
    r2 = PAsmMor(R, X, tuple(j for _, j in index), base.dco.constant(base.top))
    rho = PAsmMor(X, R, ((0, 0), (1, 1)), base.dco.constant(T))
    sigma = PAsmMor(R, R, tuple((j, i) for i, j in index), base.dco.identity)
    P, q1, q2 = base.pullback(r2, r1)
    # (p0 x) (p1 x) ((p1 x) F T): T then copy the second flag, F then negate it
    u, v = PApp(Const(pca.p0), Var(1)), PApp(Const(pca.p1), Var(1))
    body = papp(u, v, papp(v, Const(F), Const(T)))
    from .dco import Phi

    tau_realizer = Phi(compile_polynomial(pca, Polynomial(body, 1), topos.base.fuel))
    tau_fn = tuple((q1(p)[0], q2(p)[1]) for p in P.index)
    tau = PAsmMor(P, R, tau_fn, tau_realizer)
    E = ExObj(X, R, r1, r2, rho, sigma, tau, "nabla 2 with the T/F relation")
    return E, verify_equivalence_relation(base, E), is_closed_relation(base, X, R, r1, r2)
