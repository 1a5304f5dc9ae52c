"""Meromorphic functions on the formal line: degree, factorization, residues.

A Laurent series ``f`` has constant degree ``k`` when its coefficients below
``x^k`` are nilpotent and the coefficient of ``x^k`` is a unit.  Such an
``f`` is invertible and factors as ``x^k * u * g`` with ``u`` a unit power
series and ``g = 1 + b_1/x + ... + b_d/x^d`` with nilpotent ``b_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

from . import polys
from .errors import NotConstantDegree, NotInvertible, OrderTooLow
from .rings import _crt_idempotents, is_nilpotent, is_unit, nilpotency_index, reduce_mod
from .series import LaurentSeries, TruncSeries
from .weierstrass import weierstrass_factor

# order used when an exact Laurent polynomial has a non-polynomial inverse
DEFAULT_ORDER = 8
GEOMETRIC_CAP = 10_000


@dataclass(frozen=True)
class MeroFactorization:
    degree: int
    unit: TruncSeries
    tail: LaurentSeries
    # True when ``unit`` is an exact polynomial rather than a truncation
    exact: bool = False


@dataclass(frozen=True)
class SplitDegree:
    """Degrees on the pieces of ``Z/n = prod Z/q``: tuples ``(e, ring, k)``."""

    parts: tuple

    def __str__(self):
        return ", ".join(f"degree {k} on {ring}" for _, ring, k in self.parts)


def _exponent_range(f):
    top = f.order if f.order != inf else max(f.terms, default=0) + 1
    return range(f.lower, top)


def _constant_degree(f):
    """The constant degree, or None when some coefficient is neither kind."""
    for k in _exponent_range(f):
        a = f.terms.get(k, f.ring.zero)
        if is_unit(a):
            return k
        if not is_nilpotent(a):
            return None
    raise NotInvertible("no unit coefficient within the known range")


def _base_change(f, ring):
    return LaurentSeries(ring, f.var, {k: reduce_mod(c, ring) for k, c in f.terms.items()},
                         f.order)


def mero_degree(f):
    """Constant degree of ``f`` as an int, or a :class:`SplitDegree` over ``Z/n``."""
    if f.is_zero():
        raise NotInvertible("the zero series has no degree")
    k = _constant_degree(f)
    if k is not None:
        return k
    ring = f.ring
    if ring.base != "Zmod":
        raise NotConstantDegree(f"{f} has no constant degree over {ring}")
    pieces = _crt_idempotents(ring.modulus)
    if len(pieces) == 1:
        raise NotConstantDegree(f"{f} has no constant degree over {ring}")
    parts = []
    for e, q in pieces:
        sub = ring.with_base("Zmod", q)
        g = _base_change(f, sub)
        if g.is_zero():
            raise NotInvertible(f"{f} vanishes on the Z/{q} component")
        k = _constant_degree(g)
        if k is None:
            raise NotConstantDegree(f"{f} has no constant degree on {sub}")
        parts.append((ring.elem(e), sub, k))
    return SplitDegree(tuple(parts))


def _as_laurent(f):
    if isinstance(f, TruncSeries):
        return LaurentSeries.from_series(f)
    return f


def mero_factor(f):
    """Return ``x^k * u * g`` data; the product reproduces ``f`` to its order."""
    f = _as_laurent(f)
    if f.is_zero():
        raise NotInvertible("the zero series has no degree")
    k = _constant_degree(f)
    if k is None:
        raise NotConstantDegree(f"{f} has no constant degree over {f.ring}")
    ring, var, low = f.ring, f.var, f.lower
    exact = f.order == inf
    top = max(f.terms) + 1 if exact else f.order
    h = TruncSeries(ring, (var,), top - low,
                    {(e - low,): c for e, c in f.terms.items()})
    p, u = weierstrass_factor(h)
    d = len(p) - 1
    tail = LaurentSeries(ring, var, {j - d: c for j, c in enumerate(p)})
    return MeroFactorization(low + d, u, tail, exact)


def residue(w):
    """Coefficient of ``x^-1``."""
    w = _as_laurent(w)
    if w.order <= -1:
        raise OrderTooLow(f"residue needs order >= 0, series known to {w.order}")
    return w.terms.get(-1, w.ring.zero)


def _tail_inverse(g):
    """``1/g`` for ``g = 1 + (nilpotent polynomial in 1/x)``, exact."""
    ring, var = g.ring, g.var
    one = LaurentSeries(ring, var, {0: ring.one})
    r = one - g
    total, power = one, one
    for _ in range(GEOMETRIC_CAP):
        power = power * r
        if power.is_zero():
            return total
        total = total + power
    raise NotInvertible("tail is not unipotent")


def laurent_invert(f, order=None):
    """Inverse of a Laurent series of constant degree.

    Exact Laurent polynomials whose inverse is not a Laurent polynomial are
    truncated at ``order`` (default 8).

    A truncated ``f`` is read as the Laurent polynomial it stores, as in
    :func:`weierstrass_factor`.  When the polar part has nilpotent
    coefficients, the last few coefficients of the result depend on that
    reading and not only on ``f`` modulo its order.
    """
    f = _as_laurent(f)
    fac = mero_factor(f)
    ring, var = f.ring, f.var
    u = fac.unit
    if fac.exact and polys.trim(u.coeffs()) == [u.constant]:
        u_inv = LaurentSeries(ring, var, {0: u.constant ** -1})
    else:
        if fac.exact:
            target = DEFAULT_ORDER if order is None else order
            u = TruncSeries(ring, u.vars, target + fac.degree + _pole(fac.tail), u.terms)
        u_inv = LaurentSeries.from_series(u.invert())
    out = u_inv * _tail_inverse(fac.tail)
    out = out.shift(-fac.degree)
    if fac.exact and order is not None:
        out = out.truncate(order)
    return out


def _pole(g):
    return -g.lower if g.terms and g.lower < 0 else 0


def laurent_compose(f, g):
    """``f(g(x))`` for Laurent ``f`` and a Weierstrass series ``g`` with ``g(0)`` nilpotent."""
    f = _as_laurent(f)
    if isinstance(g, LaurentSeries):
        g = g.to_series()
    P = -f.lower if f.terms and f.lower < 0 else 0
    ring, var = f.ring, f.var
    c0 = g.constant
    nu = nilpotency_index(c0) if c0 else 1
    if f.order == inf:
        deg = max(f.terms, default=0) + P
        order = deg + 1 + g.order + nu
    else:
        order = f.order + P
    h = TruncSeries(ring, (var,), order, {(e + P,): c for e, c in f.terms.items()})
    h_of_g = LaurentSeries.from_series(h.compose(g.rename((var,))))
    if P == 0:
        return h_of_g
    return h_of_g * laurent_invert(g ** P)
