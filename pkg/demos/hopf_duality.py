"""Antipodes and Cartier duality for the bundled finite Hopf algebras.

Run with ``python3 demos/hopf_duality.py``.
"""

from fgcalc.cli import format_basis_vector
from fgcalc.hopf import (bundled_examples, cartier_dual, divided_power, hopf_antipode,
                         hopf_check, primitive_truncated)
from fgcalc.rings import RingDesc

for p in (2, 3, 5):
    H = divided_power(RingDesc.Zmod(p), p)
    chi = hopf_antipode(H)
    rows = ", ".join(f"chi(e{i}) = {format_basis_vector(r)}" for i, r in enumerate(chi))
    print(f"divided powers over F{p}: {rows}")
    same = cartier_dual(H) == primitive_truncated(RingDesc.Zmod(p), p)
    print(f"  dual is F{p}[x]/(x^{p}) with x primitive: {same}")

print()
for name, H in bundled_examples().items():
    D = cartier_dual(H)
    print(f"{name:28s} valid {not hopf_check(H)}  dual valid {not hopf_check(D)}"
          f"  double dual equal {cartier_dual(D) == H}")
