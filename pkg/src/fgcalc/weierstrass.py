"""Weierstrass degree, preparation and reduction for single-variable series.

A series ``g = sum a_k x^k`` has Weierstrass degree ``n`` when ``a_k`` is
nilpotent for ``k < n`` and ``a_n`` is a unit.  Such a ``g`` factors uniquely
as ``h * u`` with ``h`` monic of degree ``n`` (lower coefficients nilpotent)
and ``u`` a unit, and ``R[[x]]/(g)`` is free on ``1, x, ..., x^(n-1)``.

The truncated input is treated as the polynomial it stores, so ``h * u``
reproduces the stored coefficients exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import polys
from .errors import NotWeierstrass, OrderTooLow, VariableMismatch, VerificationFailed
from .rings import is_nilpotent, is_unit, nilpotency_index
from .series import TruncSeries

MAX_ITERATIONS = 1000


@dataclass(frozen=True)
class WeierstrassReport:
    degree: int
    unit_index: int
    # (k, m) with a_k^m = 0, for every k below the degree
    nilpotent_witnesses: tuple


class Factorization(NamedTuple):
    h: list          # ascending coefficients, monic
    u: TruncSeries


def _univariate(g):
    if len(g.vars) != 1:
        raise VariableMismatch("Weierstrass theory here is single-variable")


def weierstrass_degree(g):
    _univariate(g)
    witnesses = []
    for k in range(g.order):
        a = g[(k,)]
        if is_unit(a):
            return WeierstrassReport(k, k, tuple(witnesses))
        if not is_nilpotent(a):
            raise NotWeierstrass(f"coefficient {a} of x^{k} is neither "
                                 "nilpotent nor a unit")
        witnesses.append((k, nilpotency_index(a)))
    raise NotWeierstrass(f"no unit coefficient below order {g.order}")


def weierstrass_factor(g, max_iter=MAX_ITERATIONS):
    """Return ``(h, u)`` with ``h`` a Weierstrass polynomial and ``g = h*u``.

    ``h`` is found by lifting the factorization ``g = x^n * (g / x^n)``
    modulo the nilpotent ideal generated by the lower coefficients; each
    round gains one power of that ideal, so the loop is finite.
    """
    try:
        n = weierstrass_degree(g).degree
    except NotWeierstrass:
        if all(is_nilpotent(c) for c in g.terms.values()):
            # a unit may sit at or beyond the truncation
            raise OrderTooLow(f"no unit coefficient below order {g.order}") from None
        raise
    if n >= g.order:
        raise OrderTooLow(f"Weierstrass degree {n} needs order > {n}")
    ring = g.ring
    ghat = polys.trim(g.coeffs())
    if n == 0:
        return Factorization([ring.one], g)
    upper = TruncSeries.from_coeffs(ring, g.vars[0], ghat[n:], order=n)
    t = polys.trim(upper.invert().coeffs())
    h = [ring.zero] * n + [ring.one]
    for _ in range(max_iter):
        q, r = polys.divmod_monic(ghat, h, ring)
        if not r:
            break
        dh = polys.mod_monic(polys.mul(t, r, ring), h, ring)
        h = polys.add(h, dh, ring)
    else:
        raise VerificationFailed(f"Weierstrass lifting did not converge in "
                                 f"{max_iter} rounds")
    u = TruncSeries.from_coeffs(ring, g.vars[0], q, order=g.order)
    return Factorization(h, u)


def weierstrass_reduce(f, g):
    """Representative of ``f`` in ``R[[x]]/(g)`` of degree below deg(g).

    ``f`` may be a univariate series or an ascending coefficient list.
    """
    h, _ = weierstrass_factor(g)
    ring = g.ring
    if isinstance(f, TruncSeries):
        _univariate(f)
        f = f.coeffs()
    return polys.mod_monic(polys.trim(f), h, ring)


def poly_to_series(p, var, order):
    """Ascending coefficient list as a :class:`TruncSeries`."""
    ring = p[0].ring
    if len(p) > order:
        raise OrderTooLow(f"polynomial of degree {len(p) - 1} at order {order}")
    return TruncSeries.from_coeffs(ring, var, p, order=order)
