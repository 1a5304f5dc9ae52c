"""Heights and Landweber sequences of the two basic laws.

Run with ``python3 demos/heights.py``.
"""

from fgcalc.fgl import additive, height, landweber_sequence, multiplicative, n_series
from fgcalc.rings import RingDesc

Z = RingDesc.Z()

for p in (2, 3, 5):
    Fp = RingDesc.Zmod(p)
    mult = multiplicative(Fp, p + 3)
    print(f"p = {p}")
    print(f"  [p](x) for x + y + xy:  {n_series(mult, p)}")
    print(f"  height:                 {height(mult, p)}")
    print(f"  height of x + y:        {height(additive(Fp, p + 3), p)}")
    for name, law in (("multiplicative", multiplicative(Z, p + 1)), ("additive", additive(Z, p + 1))):
        terms = ", ".join(str(t) for t in landweber_sequence(law, p, 1))
        print(f"  Landweber ({name}): {terms}")
