import random

from realizability.dco import check_cartesian_samples
from realizability.primrec import (
    ADD,
    DIAG,
    LE,
    LIBRARY,
    NSG,
    PAIR,
    PRED,
    SUB,
    TRI,
    UNPAIR_LEFT,
    UNPAIR_RIGHT,
    Comp,
    Native,
    cantor_pair,
    constant_program,
    interpret,
    primrec_dco,
)


def test_natives_match_definitions():
    for prog in LIBRARY:
        if not isinstance(prog, Native):
            continue
        for args in ([(x,) for x in range(12)] if prog.arity == 1 else
                     [(x, y) for x in range(7) for y in range(7)]):
            assert interpret(prog, args) == interpret(prog, args, native=False), (prog.name, args)


def test_arithmetic_oracles():
    for x in range(10):
        assert interpret(PRED, (x,)) == max(x - 1, 0)
        assert interpret(NSG, (x,)) == (x == 0)
        assert interpret(TRI, (x,)) == sum(range(x + 1))
        for y in range(10):
            assert interpret(ADD, (x, y)) == x + y
            assert interpret(SUB, (x, y)) == max(y - x, 0)
            assert interpret(LE, (x, y)) == (x <= y)


def test_pairing_inverts_on_samples():
    rng = random.Random(0)
    for _ in range(100):
        a, b = rng.randint(0, 500), rng.randint(0, 500)
        z = interpret(PAIR, (a, b))
        assert z == cantor_pair(a, b) == (a + b) * (a + b + 1) // 2 + b
        assert interpret(UNPAIR_LEFT, (z,)) == a
        assert interpret(UNPAIR_RIGHT, (z,)) == b
    for z in range(200):
        w = interpret(DIAG, (z,))
        assert w * (w + 1) // 2 <= z < (w + 1) * (w + 2) // 2


def test_constants_identity_and_composition():
    d = primrec_dco()
    for n in range(10):
        assert d.call(d.identity, n) == n
        assert d.call(constant_program(4), n) == 4
    comp = d.compose(PRED, TRI)
    assert isinstance(comp, Comp)
    for n in range(20):
        assert d.call(comp, n) == interpret(TRI, (interpret(PRED, (n,)),))


def test_cartesian_samples():
    d = primrec_dco()
    for c in check_cartesian_samples(d, d.cartesian, random.Random(1), samples=100):
        assert c.passed, c
