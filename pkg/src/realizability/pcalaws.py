"""Sampled checks of the PCA axioms on a concrete instance."""

from __future__ import annotations

import random

from .dco import Outcome, below, defined, tally
from .pca import DEFAULT_FUEL, Const, PApp, Pca, Polynomial, Var, compile_polynomial, eval_polynomial, poly_size
from .report import Check
from .terms import Exhausted


def random_polynomial(pca: Pca, rng: random.Random, arity: int, max_size: int) -> Polynomial:
    """A random polynomial over ``x1..x_arity`` with at most ``max_size`` leaves.

    Leaves are variables (favoured) or combinator constants.
    """
    constants = [pca.k, pca.s, pca.i]

    def leaf():
        if arity and rng.random() < 0.6:
            return Var(rng.randint(1, arity))
        return Const(rng.choice(constants))

    def build(n):
        if n == 1:
            return leaf()
        left = rng.randint(1, n - 1)
        return PApp(build(left), build(n - left))

    return Polynomial(build(rng.randint(1, max_size)), arity)


def check_combinatory_completeness(pca: Pca, rng: random.Random, polynomials: int = 100, tuples: int = 20,
                                   max_arity: int = 3, max_size: int = 8,
                                   fuel: int = DEFAULT_FUEL) -> list[Check]:
    """``e a1 ... a(n-1)`` is defined and ``t[a] <= e a`` for ``e = compile(t)``."""
    prefix, law = [], []
    exhausted_compile = 0
    for _ in range(polynomials):
        t = random_polynomial(pca, rng, rng.randint(1, max_arity), max_size)
        try:
            e = compile_polynomial(pca, t, fuel)
        except Exhausted:
            exhausted_compile += 1
            continue
        for _ in range(tuples):
            args = [pca.random_element(rng) for _ in range(t.arity)]
            prefix.append((defined(lambda: pca.apply_all(e, args[:-1], fuel)), None))
            law.append(below(lambda: eval_polynomial(pca, t.body, args, fuel),
                             lambda: pca.apply_all(e, args, fuel)))
    out = [tally("e a1 ... a(n-1) defined", prefix), tally("t[a] <= e a", law)]
    if exhausted_compile:
        out[1].witness = f"{out[1].witness}; {exhausted_compile} polynomials did not compile within fuel"
    return out


def exhausted_rate(check: Check) -> float:
    """The exhausted fraction recorded in a tally summary, or 0 if absent."""
    witness = check.witness or ""
    for part in witness.split(","):
        if "exhausted" in part and "/" in part:
            num, den = part.strip().split()[0].split("/")
            return int(num) / int(den) if int(den) else 0.0
    return 0.0


def check_basic_laws(pca: Pca, rng: random.Random, samples: int = 200, fuel: int = DEFAULT_FUEL) -> list[Check]:
    """``k a b = a``, ``s a b c <= a c (b c)``, ``p0 (p a b) = a``, ``p1 (p a b) = b``."""
    k_law, s_law, p0_law, p1_law, p_total = [], [], [], [], []
    for _ in range(samples):
        a, b, c = (pca.random_element(rng) for _ in range(3))
        k_law.append(below(lambda: a, lambda: pca.apply_all(pca.k, [a, b], fuel)))
        s_law.append(below(lambda: pca.apply(pca.apply(a, c, fuel), pca.apply(b, c, fuel), fuel),
                           lambda: pca.apply_all(pca.s, [a, b, c], fuel)))
        p_total.append((defined(lambda: pca.apply_all(pca.p, [a, b], fuel)), None))
        p0_law.append(below(lambda: a, lambda: pca.apply(pca.p0, pca.apply_all(pca.p, [a, b], fuel), fuel)))
        p1_law.append(below(lambda: b, lambda: pca.apply(pca.p1, pca.apply_all(pca.p, [a, b], fuel), fuel)))
    return [
        tally("k a b = a", k_law),
        tally("s a b c <= a c (b c)", s_law),
        tally("p a b defined", p_total),
        tally("p0 (p a b) = a", p0_law),
        tally("p1 (p a b) = b", p1_law),
    ]


__all__ = ["random_polynomial", "check_combinatory_completeness", "check_basic_laws", "exhausted_rate",
           "Outcome", "poly_size"]
