"""S/K terms, compiled polynomials and the DCO they induce.

Run with ``python3 demos/sk_tour.py``.
"""

import random

from realizability.dco import (
    PcaDco,
    cartesian_witnesses_from_pca,
    check_cartesian_samples,
    functional_completeness_from_pca,
    reconstruct_pca,
)
from realizability.pca import SKPca, compile_polynomial, parse_polynomial
from realizability.terms import Exhausted, evaluate, format_term, parse_term

sk = SKPca()

# evaluation is fuel-bounded: a cycling term runs out instead of looping
print("K a b  ->", format_term(evaluate(parse_term("K a b"), 100)))
try:
    evaluate(parse_term("S I I (S I I)"), 1_000)
except Exhausted as exc:
    print("S I I (S I I) ->", exc)

# bracket abstraction turns a polynomial into an element
flip = compile_polynomial(sk, parse_polynomial("x2 x1"))
print("compiled x2 x1 =", format_term(flip))
print("flip a b =", format_term(sk.apply_all(flip, ["a", "b"])))

# the induced DCO carries cartesian and functional-completeness data
d = PcaDco(sk)
cs = cartesian_witnesses_from_pca(sk)
fc = functional_completeness_from_pca(sk)
for c in check_cartesian_samples(d, cs, random.Random(0), samples=20):
    print(f"{c.verdict.value:7} {c.name}  [{c.witness}]")

# and application can be read back from it
back = reconstruct_pca(d, cs, fc)
print("reconstructed K a b =", format_term(back.apply(back.apply(sk.k, "a"), "b")))
