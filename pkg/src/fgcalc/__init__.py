"""Exact computations with formal group laws, divisors and finite Hopf algebras."""

from .errors import FgcalcError
from .rings import RingDesc, RingElem
from .series import LaurentSeries, TruncSeries
from .syntax import parse_elem, parse_laurent, parse_ring, parse_series

__all__ = ["FgcalcError", "RingDesc", "RingElem", "TruncSeries", "LaurentSeries",
           "parse_ring", "parse_elem", "parse_series", "parse_laurent"]
__version__ = "0.1.0"
