"""A few hom-sets in the completion over S/K.

Answers are three-valued: ``unknown`` means the realizer search ran out of
budget, never that a map was ruled out.
"""

import itertools

from realizability.exlex import non_closed_relation, rt
from realizability.pasm import obj
from realizability.pca import SKPca

sk = SKPca()
topos = rt(sk, fuel=10_000)
T, F = sk.k, sk.apply(sk.k, sk.i)

X = obj({0: T, 1: F})
EX = topos.embed(X)
Q = topos.relation_object(X, set(itertools.product((0, 1), repeat=2)), "X / all")
N2 = topos.nabla((0, 1))

print("points of nabla 2:", len(topos.points(N2)))
print("points of X / all:", len(topos.points(Q)))
for src, tgt in [(EX, N2), (Q, EX), (EX, Q)]:
    reps, verdict = topos.hom_search(src, tgt)
    print(f"hom({src}, {tgt}): {len(reps)} classes, {verdict.value}")

E, verified, closed = non_closed_relation(topos)
print(E, "is an equivalence relation:", verified.verdict.value, "| closed:", closed.value)
