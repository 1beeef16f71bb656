"""Primitive-recursive programs and the DCO they form on the natural numbers.

Programs are built from zero, successor and projections by composition and
primitive recursion.  Library programs carry a native implementation used for
speed; ``interpret(..., native=False)`` ignores it, which is how the fast
paths are checked against their definitions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import isqrt
from typing import Callable

from .dco import CartesianStructure, Dco
from .terms import Exhausted


@dataclass(frozen=True)
class Zero:
    arity: int


@dataclass(frozen=True)
class Succ:
    arity: int = 1


@dataclass(frozen=True)
class Proj:
    arity: int
    index: int  # 1-based

    def __post_init__(self):
        if not 1 <= self.index <= self.arity:
            raise ValueError("projection index out of range")


@dataclass(frozen=True)
class Comp:
    """``f(g1(xs), ..., gm(xs))``."""

    f: "Program"
    gs: tuple

    @property
    def arity(self) -> int:
        return self.gs[0].arity


@dataclass(frozen=True)
class Rec:
    """``r(0, xs) = base(xs)``, ``r(y+1, xs) = step(y, r(y, xs), xs)``."""

    base: "Program"
    step: "Program"

    @property
    def arity(self) -> int:
        return self.base.arity + 1


@dataclass(frozen=True)
class Native:
    """A named program with a fast implementation of the same function."""

    name: str
    body: "Program"
    fn: Callable = field(compare=False, repr=False)

    @property
    def arity(self) -> int:
        return self.body.arity


Program = Zero | Succ | Proj | Comp | Rec | Native


def interpret(prog, args: tuple, native: bool = True) -> int:
    if len(args) != prog.arity:
        raise ValueError(f"arity mismatch: expected {prog.arity}, got {len(args)}")
    if isinstance(prog, Native):
        return prog.fn(*args) if native else interpret(prog.body, args, native)
    if isinstance(prog, Zero):
        return 0
    if isinstance(prog, Succ):
        return args[0] + 1
    if isinstance(prog, Proj):
        return args[prog.index - 1]
    if isinstance(prog, Comp):
        inner = tuple(interpret(g, args, native) for g in prog.gs)
        return interpret(prog.f, inner, native)
    if isinstance(prog, Rec):
        y, rest = args[0], args[1:]
        acc = interpret(prog.base, rest, native)
        for n in range(y):
            acc = interpret(prog.step, (n, acc, *rest), native)
        return acc
    raise TypeError(f"not a program: {prog!r}")


def compose(f, *gs):
    return Comp(f, tuple(gs))


# library -------------------------------------------------------------------

IDENTITY = Proj(1, 1)
PRED = Native("pred", Rec(Zero(0), Proj(2, 1)), lambda n: max(n - 1, 0))
ADD = Native("add", Rec(Proj(1, 1), compose(Succ(), Proj(3, 2))), lambda x, y: x + y)
# monus with the arguments swapped: sub(x, y) = y - x, truncated
SUB = Native("sub", Rec(Proj(1, 1), compose(PRED, Proj(3, 2))), lambda x, y: max(y - x, 0))
# nsg(0) = 1, nsg(n+1) = 0
NSG = Native("nsg", Rec(compose(Succ(), Zero(0)), Zero(2)), lambda n: 1 if n == 0 else 0)
TRI = Native("tri", Rec(Zero(0), compose(ADD, Proj(2, 2), compose(Succ(), Proj(2, 1)))),
             lambda n: n * (n + 1) // 2)
# le(a, b) = 1 iff a <= b
LE = Native("le", compose(NSG, compose(SUB, Proj(2, 2), Proj(2, 1))), lambda a, b: int(a <= b))
PAIR = Native("pair", compose(ADD, compose(TRI, compose(ADD, Proj(2, 1), Proj(2, 2))), Proj(2, 2)),
              lambda x, y: (x + y) * (x + y + 1) // 2 + y)


def _diagonal(z: int) -> int:
    return (isqrt(8 * z + 1) - 1) // 2


# w(z+1) = w(z) + le(tri(w(z) + 1), z + 1)
DIAG = Native(
    "diag",
    Rec(Zero(0), compose(ADD, Proj(2, 2), compose(
        LE, compose(TRI, compose(Succ(), Proj(2, 2))), compose(Succ(), Proj(2, 1))))),
    _diagonal,
)
UNPAIR_RIGHT = Native("unpair_right", compose(SUB, compose(TRI, compose(DIAG, IDENTITY)), IDENTITY),
                      lambda z: z - _diagonal(z) * (_diagonal(z) + 1) // 2)
UNPAIR_LEFT = Native("unpair_left", compose(SUB, UNPAIR_RIGHT, DIAG),
                     lambda z: _diagonal(z) - (z - _diagonal(z) * (_diagonal(z) + 1) // 2))

LIBRARY = (IDENTITY, PRED, ADD, SUB, NSG, TRI, LE, PAIR, DIAG, UNPAIR_RIGHT, UNPAIR_LEFT)


def cantor_pair(x: int, y: int) -> int:
    return (x + y) * (x + y + 1) // 2 + y


def constant_program(value: int, arity: int = 1):
    body = Zero(arity)
    for _ in range(value):
        body = compose(Succ(), body)
    return Native(f"const{value}", body, lambda *args: value)


def describe(prog) -> str:
    if isinstance(prog, Native):
        return prog.name
    if isinstance(prog, Zero):
        return "Z"
    if isinstance(prog, Succ):
        return "S"
    if isinstance(prog, Proj):
        return f"P{prog.arity}_{prog.index}"
    if isinstance(prog, Comp):
        return f"{describe(prog.f)}(" + ", ".join(describe(g) for g in prog.gs) + ")"
    return f"R[{describe(prog.base)}; {describe(prog.step)}]"


# the DCO -------------------------------------------------------------------


class PrimrecDco(Dco):
    """Carrier the natural numbers; members are unary primitive-recursive programs."""

    def __init__(self, sample_max: int = 60):
        self.sample_max = sample_max

    def __repr__(self):
        return "PrimrecDco()"

    def call(self, alpha, x, fuel: int = 0):
        return interpret(alpha, (x,))

    @property
    def identity(self):
        return IDENTITY

    def compose(self, alpha, beta):
        return compose(beta, alpha)

    def constant(self, a):
        return constant_program(a)

    def random_element(self, rng: random.Random):
        return rng.randint(0, self.sample_max)

    def find_extension(self, pairs, fuel: int = 0, depth: int = 0):
        """Search the unary library, then constants; raise Exhausted otherwise."""
        pairs = list(pairs)
        unary = [p for p in LIBRARY if p.arity == 1]
        outputs = {y for _, y in pairs}
        if len(outputs) == 1:
            unary.append(constant_program(next(iter(outputs))))
        for prog in unary:
            if all(interpret(prog, (x,)) == y for x, y in pairs):
                return prog
        raise Exhausted(len(unary), "program search")

    @cached_property
    def cartesian(self) -> CartesianStructure:
        def meet(a, b, fuel=None):
            return interpret(PAIR, (a, b))

        def gamma(alpha, beta):
            return Comp(PAIR, (alpha, beta))

        return CartesianStructure(0, meet, UNPAIR_LEFT, UNPAIR_RIGHT, gamma)


def primrec_dco() -> PrimrecDco:
    return PrimrecDco()
