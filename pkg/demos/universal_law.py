"""The universal symmetric law: generators, relations and the 3-series.

Run with ``python3 demos/universal_law.py``.
"""

from fgcalc.fgl import invariant_differential, n_series, universal_fgl

U = universal_fgl(6)
print("generators and grades:")
for g in U.ring.gens:
    print(f"  {g.name}  grade {g.grade}")

print("\nF(x, y) to order 4:")
print(" ", universal_fgl(4).fgl)

print("\nfirst associativity relations (coefficient of x^i y^j z^k):")
for e, rel in U.relations[:4]:
    print(f"  {e}: {rel}   homogeneous of grade {min(rel.grades())}")

print("\n[3](x) to order 4:")
print(" ", n_series(universal_fgl(4).fgl, 3))

print("\nH(s) = dF/dy(s, 0):")
print(" ", invariant_differential(universal_fgl(5).fgl))
