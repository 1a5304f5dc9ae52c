"""Degrees, factorizations and residues of Laurent series.

Run with ``python3 demos/residues.py``.
"""

from fgcalc.residue import laurent_compose, laurent_invert, mero_degree, mero_factor, residue
from fgcalc.rings import RingDesc
from fgcalc.syntax import parse_laurent, parse_ring, parse_series

R = parse_ring("Z[e;e^2]")
f = parse_laurent("e*x^-2 + x^-1 + 3 + x", R, "x", 8)
print("f          =", f)
print("degree     =", mero_degree(f))
fac = mero_factor(f)
print(f"f          = x^{fac.degree} * ({fac.unit}) * ({fac.tail})")
print("1/f        =", laurent_invert(f))
print("res f      =", residue(f))
print("res f'     =", residue(f.derivative()))
print("res f'/f   =", residue(f.derivative() * laurent_invert(f)))

# substituting a series g of degree d multiplies residues by d
g = parse_series("e + e*x + x^2", R, ("x",), 16)
print("\ng          =", g, " degree", mero_degree(parse_laurent("e + e*x + x^2", R, "x", 16)))
w = laurent_compose(f, g) * g.derivative()
print("res f(g) g' =", residue(w))

Z6 = RingDesc.Zmod(6)
print("\nover Z/6, 2 + 3x has", mero_degree(parse_laurent("2 + 3*x", Z6, "x", 4)))
