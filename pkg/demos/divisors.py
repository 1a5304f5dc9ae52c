"""Divisors on the formal line over F2[e1, e2]/(e1^2, e2^2).

Points are nilpotent elements; a divisor is the monic polynomial with those
roots.  The translation product adds points with a formal group law.

Run with ``python3 demos/divisors.py``.
"""

from fgcalc.divisor import (Divisor, MeroDivisor, divisor_from_points, divisor_lambda,
                            divisor_star, star_by_points)
from fgcalc.fgl import multiplicative
from fgcalc.syntax import parse_ring

R = parse_ring("Z/2[e1;e1^2][e2;e2^2]")
e1, e2 = R.gen("e1"), R.gen("e2")
F = multiplicative(R, 16)

A = divisor_from_points([e1], R)
B = divisor_from_points([e2, e1 * e2], R)
print("A      =", A)
print("B      =", B)
print("A + B  =", A + B)
print("A * B  =", divisor_star(F, A, B))
print("points =", star_by_points(F, [e1], [e2, e1 * e2]))
print("[0] * B =", divisor_star(F, Divisor.origin(R), B))

print("\nexterior powers of {e1, e2, e1*e2}:")
for k in range(4):
    print(f"  lambda^{k} = {divisor_lambda(F, [e1, e2, e1 * e2], k)}")

D = MeroDivisor(divisor_from_points([e1, e2], R), 1)
print("\nD = ", D, " degree", D.degree)
print("-D =", -D)
print("D - D =", D - D)
