"""Partitioned assemblies over small finite DCOs.

Only the one-point DCO has finite limits; the two-point DCO with a
constant already fails, and the audit says why.
"""

from realizability.dco import catalog, find_cartesian_structure
from realizability.exlex import ExCompletion
from realizability.fam import Predicate, fiber_leq
from realizability.pasm import PAsm, obj

cat = catalog()
c0 = cat["two_c0"]

phi, psi = Predicate(("u", "v"), (0, 1)), Predicate(("u", "v"), (0, 0))
print("phi <= psi realized by", fiber_leq(c0, phi, psi).name)
print("psi <= phi:", fiber_leq(c0, psi, phi))

for name, d in cat.items():
    print(f"{name:13} cartesian: {find_cartesian_structure(d) is not None}")

C = PAsm.over_finite(c0)
m = C.morphism(obj({0: 1}), obj({0: 0}), (0,))
f = C.factorize(m)
print("dense part", f.dense, "closed part", f.closed)

print(C.audit_characterization(2).to_text())

ex = ExCompletion(PAsm.over_finite(cat["trivial"]))
print(ex.audit_theorem_4_6(2).to_text())
