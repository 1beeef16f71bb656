"""The family fibration: predicates ``I -> A`` ordered by realizers.

For a DCO ``(A, F)`` the fiber over a finite index set ``I`` is the preorder
on functions ``phi: I -> A`` with ``phi <= psi`` iff some ``alpha`` in ``F``
satisfies ``alpha o phi = psi``.  Index sets are finite tuples of hashable
labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Mapping, Sequence

from .dco import (
    Dco,
    DcoMorphism,
    FiniteDco,
    Graph,
    all_functions,
    all_partial_functions,
    morphism_witnesses,
    saturate,
)
from .report import Check, check


@dataclass(frozen=True)
class Predicate:
    """A total function from a finite index set to the carrier."""

    index: tuple
    values: tuple

    def __post_init__(self):
        if len(self.index) != len(self.values):
            raise ValueError("predicate must assign a value to every index")

    @classmethod
    def of(cls, mapping: Mapping) -> "Predicate":
        return cls(tuple(mapping), tuple(mapping.values()))

    @cached_property
    def mapping(self) -> dict:
        return dict(zip(self.index, self.values))

    def __call__(self, i):
        return self.mapping[i]

    def __len__(self):
        return len(self.index)


def identity_predicate(d: FiniteDco) -> Predicate:
    """``mu = id_A``, the generic predicate of ``fam(d)``."""
    return Predicate(tuple(d.carrier), tuple(d.carrier))


def predicates(d: FiniteDco, index: Sequence) -> Iterator[Predicate]:
    index = tuple(index)
    for values in all_functions(index, d.carrier):
        yield Predicate(index, values)


def fiber_leq(d: Dco, phi: Predicate, psi: Predicate, **search):
    """A realizer ``alpha`` with ``alpha o phi = psi``, or None if there is none.

    Finite DCOs are searched exhaustively.  PCA-induced ones raise
    :class:`~realizability.terms.Exhausted` when the search budget runs out.
    """
    if phi.index != psi.index:
        raise ValueError("predicates live over different index sets")
    return d.find_extension(zip(phi.values, psi.values), **search)


def equivalent(d: Dco, phi: Predicate, psi: Predicate, **search) -> bool:
    return fiber_leq(d, phi, psi, **search) is not None and fiber_leq(d, psi, phi, **search) is not None


def reindex(phi: Predicate, f: Mapping | Callable, index: Sequence) -> Predicate:
    """``f* phi = phi o f`` for ``f`` from ``index`` into the index set of ``phi``."""
    fn = f.__getitem__ if isinstance(f, Mapping) else f
    index = tuple(index)
    return Predicate(index, tuple(phi(fn(i)) for i in index))


def meet_predicates(cs, phi: Predicate, psi: Predicate) -> Predicate:
    return Predicate(phi.index, tuple(cs.meet(a, b) for a, b in zip(phi.values, psi.values)))


def top_predicate(cs, index: Sequence) -> Predicate:
    index = tuple(index)
    return Predicate(index, tuple(cs.top for _ in index))


# ---------------------------------------------------------------------------
# Discrete and generic predicates


def canonical_spans(n: int, m: int, target: Sequence) -> Iterator[tuple[tuple, tuple]]:
    """Spans ``{0..n-1} <-e- {0..m-1} -f-> target`` with ``e`` surjective, one per
    relabeling class of the middle set: ``e`` is non-decreasing and ``f`` is
    non-decreasing (in the order of ``target``) within each fiber of ``e``.
    """
    position = {x: k for k, x in enumerate(target)}
    for e in itertools.combinations_with_replacement(range(n), m):
        if set(e) != set(range(n)):
            continue
        for f in itertools.product(target, repeat=m):
            if all(position[f[j]] <= position[f[j + 1]] for j in range(m - 1) if e[j] == e[j + 1]):
                yield e, f


def check_discrete(d: FiniteDco, mu: Predicate, bound: int) -> Check:
    """Bounded test of discreteness of ``mu``; the counterexample is the first in
    canonical order."""
    tested = 0
    for n in range(bound + 1):
        index = tuple(range(n))
        for m in range(n, bound + 1):
            middle = tuple(range(m))
            for e, f in canonical_spans(n, m, mu.index):
                f_mu = Predicate(middle, tuple(mu(x) for x in f))
                mediator = {}
                for j in middle:
                    mediator.setdefault(e[j], f[j])
                mediates = all(mediator[e[j]] == f[j] for j in middle)
                for phi in predicates(d, index):
                    e_phi = Predicate(middle, tuple(phi(e[j]) for j in middle))
                    if fiber_leq(d, e_phi, f_mu) is None:
                        continue
                    tested += 1
                    if not mediates:
                        return check("discrete", False, f"span e={e}, f={f}, phi={phi.values}: no h with h e = f")
                    h_mu = Predicate(index, tuple(mu(mediator[i]) for i in index))
                    if fiber_leq(d, phi, h_mu) is None:
                        return check("discrete", False, f"span e={e}, f={f}, phi={phi.values}: phi not <= h*mu")
    return check("discrete", True, f"{tested} spans and predicates at bound {bound}")


def check_generic(d: FiniteDco, mu: Predicate, bound: int) -> Check:
    tested = 0
    for n in range(bound + 1):
        index = tuple(range(n))
        for phi in predicates(d, index):
            tested += 1
            for f in all_functions(index, mu.index):
                if equivalent(d, phi, Predicate(index, tuple(mu(x) for x in f))):
                    break
            else:
                return check("generic", False, f"phi={phi.values} over {n} indices is not f*mu for any f")
    return check("generic", True, f"{tested} predicates at bound {bound}")


# ---------------------------------------------------------------------------
# Reconstruction of a DCO from its family fibration


class IndexedDco(FiniteDco):
    """Partial functions ``alpha`` whose span ``A <-d- alpha -a-> A`` satisfies
    ``d* mu <= a* mu`` in ``fam(ambient)``."""

    def __init__(self, ambient: FiniteDco):
        self.ambient = ambient
        self.carrier = ambient.carrier
        self.name = f"indexed({ambient.name})" if ambient.name else "indexed"
        self.mu = identity_predicate(ambient)

    @property
    def family(self):
        return tuple(self.members())

    def contains(self, g: Graph) -> bool:
        span = tuple(sorted(g.pairs, key=repr))
        d_mu = reindex(self.mu, lambda pair: pair[0], span)
        a_mu = reindex(self.mu, lambda pair: pair[1], span)
        return fiber_leq(self.ambient, d_mu, a_mu) is not None

    def members(self):
        return (g for g in all_partial_functions(self.carrier) if self.contains(g))

    def find_extension(self, pairs, fuel: int = 0, depth: int = 0):
        g = Graph(frozenset(pairs))
        return g if self.contains(g) else None

    def compose(self, alpha: Graph, beta: Graph) -> Graph:
        return alpha.then(beta)


def dco_from_indexed(d: FiniteDco) -> IndexedDco:
    return IndexedDco(d)


def compare_with_saturation(d: FiniteDco) -> Check:
    """``dco_from_indexed(d)`` and ``saturate(d)`` agree on every partial function."""
    rebuilt, sat = dco_from_indexed(d), saturate(d)
    for g in all_partial_functions(d.carrier):
        if rebuilt.contains(g) != sat.contains(g):
            return check("indexed reconstruction = saturation", False, f"disagree on {g.label}")
    return check("indexed reconstruction = saturation", True)


# ---------------------------------------------------------------------------
# Bounded sanity checks


def check_fiber_preorder(d: FiniteDco, bound: int) -> Check:
    for n in range(bound + 1):
        preds = list(predicates(d, range(n)))
        for phi in preds:
            if fiber_leq(d, phi, phi) is None:
                return check("fiber preorder", False, f"{phi.values} not <= itself")
        for phi, psi, chi in itertools.product(preds, repeat=3):
            if fiber_leq(d, phi, psi) is not None and fiber_leq(d, psi, chi) is not None \
                    and fiber_leq(d, phi, chi) is None:
                return check("fiber preorder", False, f"transitivity fails at {phi.values}, {psi.values}, {chi.values}")
    return check("fiber preorder", True)


def postcomposition_monotone(d1: FiniteDco, d2: FiniteDco, fn: Sequence, bound: int) -> bool:
    """``phi |-> f o phi`` is monotone ``fam(d1)(I) -> fam(d2)(I)`` for ``|I| <= bound``."""
    f = dict(zip(d1.carrier, fn))
    for n in range(bound + 1):
        preds = list(predicates(d1, range(n)))
        for phi, psi in itertools.product(preds, repeat=2):
            if fiber_leq(d1, phi, psi) is None:
                continue
            fphi = Predicate(phi.index, tuple(f[x] for x in phi.values))
            fpsi = Predicate(psi.index, tuple(f[x] for x in psi.values))
            if fiber_leq(d2, fphi, fpsi) is None:
                return False
    return True


def check_local_equivalence(d1: FiniteDco, d2: FiniteDco, bound: int = 2) -> Check:
    """A function is a DCO morphism iff postcomposition with it is monotone on fibers."""
    for fn in all_functions(d1.carrier, d2.carrier):
        is_morphism = morphism_witnesses(d1, d2, fn) is not None
        if is_morphism != postcomposition_monotone(d1, d2, fn, bound):
            return check("local equivalence", False, f"f={fn}: morphism={is_morphism}")
    return check("local equivalence", True)


def check_order_reflection(d: FiniteDco, bound: int = 2) -> Check:
    """If ``f* mu <= g* mu`` then the span through the image of ``f`` is a member
    of the reconstructed DCO realizing ``f <= g``."""
    rebuilt = dco_from_indexed(d)
    mu = identity_predicate(d)
    for n in range(bound + 1):
        index = tuple(range(n))
        for f, g in itertools.product(list(all_functions(index, d.carrier)), repeat=2):
            fmu, gmu = reindex(mu, dict(zip(index, f)), index), reindex(mu, dict(zip(index, g)), index)
            if fiber_leq(d, fmu, gmu) is None:
                continue
            span = {}
            for i in index:
                if span.setdefault(f[i], g[i]) != g[i]:
                    return check("order reflection", False, f"f={f}, g={g}: span is not functional")
            witness = Graph.of(span)
            if not rebuilt.contains(witness):
                return check("order reflection", False, f"f={f}, g={g}: span {witness.label} rejected")
    return check("order reflection", True)
