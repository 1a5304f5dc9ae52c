"""Effective divisors on the formal line, as Weierstrass polynomials.

A divisor ``D`` of degree ``n`` is stored as the monic polynomial
``f_D(t) = t^n + a_1 t^(n-1) + ... + a_n`` with nilpotent ``a_i``.  Sum of
divisors is the product of polynomials; the translation product ``D * E``
under a formal group law is the characteristic polynomial of
multiplication by ``F(alpha, beta)`` on ``R[alpha]/f_D (x) R[beta]/f_E``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import polys
from .errors import (NonNilpotentConstantTerm, NotNilpotentRoot, NotWeierstrass,
                     OrderTooLow, RingMismatch)
from .rings import SquareMatrix, charpoly, is_nilpotent
from .weierstrass import weierstrass_factor

NILPOTENCY_CAP = 10_000


@dataclass(frozen=True)
class Divisor:
    ring: object
    #: monic, highest coefficient first: (1, a_1, ..., a_n)
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.ring.elem(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs or coeffs[0] != 1:
            raise NotWeierstrass("divisor polynomial must be monic")
        for a in coeffs[1:]:
            if not is_nilpotent(a):
                raise NotWeierstrass(f"divisor coefficient {a} is not nilpotent")

    @classmethod
    def from_poly(cls, p):
        """From ascending coefficients of a monic polynomial."""
        p = polys.trim(p)
        return cls(p[0].ring, tuple(reversed(p)))

    @classmethod
    def zero(cls, ring):
        return cls(ring, (ring.one,))

    @classmethod
    def origin(cls, ring, k=1):
        """``k[0]``, cut out by ``t^k``."""
        return cls(ring, (ring.one,) + (ring.zero,) * k)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def poly(self):
        """Ascending coefficients."""
        return list(reversed(self.coeffs))

    def __add__(self, other):
        return divisor_sum(self, other)

    def __str__(self):
        from .syntax import format_poly
        return format_poly(self.poly, "t")


def _check_roots(roots):
    for c in roots:
        if not is_nilpotent(c):
            raise NotNilpotentRoot(f"{c} is not nilpotent")


def divisor_from_points(roots, ring=None):
    roots = list(roots)
    if ring is None:
        if not roots:
            raise ValueError("need a ring for the empty divisor")
        ring = roots[0].ring
    roots = [ring.elem(c) for c in roots]
    _check_roots(roots)
    return Divisor.from_poly(polys.from_roots(roots, ring))


def divisor_sum(D, E):
    if D.ring != E.ring:
        raise RingMismatch(f"{D.ring} vs {E.ring}")
    return Divisor.from_poly(polys.mul(D.poly, E.poly, D.ring))


def chern_coefficients(D):
    return list(D.coeffs[1:])


def divisor_of_series(g):
    h, _ = weierstrass_factor(g)
    return Divisor.from_poly(h)


# -- translation product ---------------------------------------------------------

class _TensorQuotient:
    """``R[a]/(f) (x) R[b]/(g)`` for monic ``f``, ``g``; elements are n x m grids."""

    def __init__(self, f, g, ring):
        self.f, self.g, self.ring = f, g, ring
        self.n, self.m = len(f) - 1, len(g) - 1

    def reduce(self, grid):
        ring = self.ring
        rows = [polys.mod_monic(row, self.f, ring)
                for row in _transpose(grid, ring)]       # indexed by b-power
        by_a = _transpose(rows, ring)                     # indexed by a-power
        out = []
        for i in range(self.n):
            col = by_a[i] if i < len(by_a) else []
            col = polys.mod_monic(col, self.g, ring)
            out.append(col + [ring.zero] * (self.m - len(col)))
        return out

    def mul(self, u, v):
        ring = self.ring
        prod = {}
        for i, row in enumerate(u):
            for j, a in enumerate(row):
                if not a:
                    continue
                for k, row2 in enumerate(v):
                    for l, b in enumerate(row2):
                        if b:
                            key = (i + k, j + l)
                            p = a * b
                            prod[key] = prod[key] + p if key in prod else p
        rows = max((i for i, _ in prod), default=0) + 1
        cols = max((j for _, j in prod), default=0) + 1
        grid = [[prod.get((i, j), ring.zero) for j in range(cols)]
                for i in range(rows)]
        return self.reduce(grid)

    def basis(self, i, j):
        ring = self.ring
        return [[ring.one if (a, b) == (i, j) else ring.zero
                 for b in range(self.m)] for a in range(self.n)]

    def add(self, u, v):
        return [[a + b for a, b in zip(r, s)] for r, s in zip(u, v)]

    def scale(self, u, c):
        return [[a * c for a in r] for r in u]

    def is_zero(self, u):
        return all(not a for r in u for a in r)

    def zero(self):
        return [[self.ring.zero] * self.m for _ in range(self.n)]


def _transpose(grid, ring):
    """Transpose a ragged grid, padding with zeros."""
    width = max((len(r) for r in grid), default=0)
    return [[r[j] if j < len(r) else ring.zero for r in grid] for j in range(width)]


def _powers_until_zero(alg, x):
    out = [alg.basis(0, 0)]
    while not alg.is_zero(out[-1]):
        if len(out) > NILPOTENCY_CAP:
            raise NonNilpotentConstantTerm("generator does not look nilpotent")
        out.append(alg.mul(out[-1], x))
    return out[:-1]


def divisor_star(F, D, E):
    """Translation product: the divisor of all F-sums of points of D and E."""
    ring = D.ring
    if E.ring != ring or F.ring != ring:
        raise RingMismatch("divisor_star needs a single ring")
    n, m = D.degree, E.degree
    if n == 0 or m == 0:
        return Divisor.zero(ring)
    alg = _TensorQuotient(D.poly, E.poly, ring)
    a_pows = _powers_until_zero(alg, alg.basis(1, 0) if n > 1 else
                                alg.reduce([[ring.zero] * m, [ring.one]]))
    b_pows = _powers_until_zero(alg, alg.basis(0, 1) if m > 1 else
                                alg.reduce([[ring.zero, ring.one]]))
    na, nb = len(a_pows), len(b_pows)
    if na + nb - 1 > F.order:
        raise OrderTooLow(f"F known to order {F.order}, need {na + nb - 1}")
    z = alg.zero()
    for (i, j), c in F.F.terms.items():
        if i < na and j < nb:
            z = alg.add(z, alg.scale(alg.mul(a_pows[i], b_pows[j]), c))
    size = n * m
    cols = []
    for a in range(n):
        for b in range(m):
            prod = alg.mul(z, alg.basis(a, b))
            cols.append([prod[i][j] for i in range(n) for j in range(m)])
    M = SquareMatrix(ring, [[cols[c][r] for c in range(size)] for r in range(size)])
    return Divisor(ring, tuple(charpoly(M)))


def fgl_sum(F, points):
    """Iterated F-sum of nilpotent ring elements (0 for no points)."""
    points = list(points)
    if not points:
        return F.ring.zero
    acc = points[0]
    for b in points[1:]:
        acc = F.F.evaluate([acc, b])
    return acc


def divisor_lambda(F, roots, k):
    """``lambda^k`` of the split divisor with the given roots."""
    roots = [F.ring.elem(c) for c in roots]
    _check_roots(roots)
    if k < 0:
        raise ValueError("k must be >= 0")
    sums = [fgl_sum(F, sub) for sub in combinations(roots, k)]
    return divisor_from_points(sums, F.ring)


def star_by_points(F, roots_d, roots_e):
    """Brute-force ``D * E`` from point lists: all pairwise F-sums."""
    ring = F.ring
    return divisor_from_points([fgl_sum(F, (a, b)) for a in roots_d for b in roots_e],
                               ring)


# -- meromorphic divisors D - k[0] ------------------------------------------------

def _t_nilpotency(D):
    """Least ``v`` with ``t^v`` divisible by ``f_D``."""
    ring = D.ring
    h = D.poly
    v = 0
    p = [ring.one]
    while True:
        if not polys.mod_monic(p, h, ring):
            return v
        p = [ring.zero] + p
        v += 1
        if v > NILPOTENCY_CAP:
            raise NonNilpotentConstantTerm("t is not nilpotent modulo f_D")


@dataclass(frozen=True)
class MeroDivisor:
    """``positive - shift*[0]``, kept with no common factor of ``t`` when shift > 0."""

    positive: Divisor
    shift: int = 0

    def __post_init__(self):
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")
        D, k = self.positive, self.shift
        while k > 0 and D.degree > 0 and not D.coeffs[-1]:
            D = Divisor(D.ring, D.coeffs[:-1])
            k -= 1
        object.__setattr__(self, "positive", D)
        object.__setattr__(self, "shift", k)

    @property
    def ring(self):
        return self.positive.ring

    @property
    def degree(self):
        return self.positive.degree - self.shift

    def __add__(self, other):
        return MeroDivisor(divisor_sum(self.positive, other.positive),
                           self.shift + other.shift)

    def __neg__(self):
        D = self.positive
        v = _t_nilpotency(D)
        t_v = [D.ring.zero] * v + [D.ring.one]
        q, r = polys.divmod_monic(t_v, D.poly, D.ring)
        E = Divisor.from_poly(q)
        # -D = E - v[0]
        back = v - self.shift
        if back >= 0:
            return MeroDivisor(E, back)
        return MeroDivisor(divisor_sum(E, Divisor.origin(D.ring, -back)), 0)

    def __sub__(self, other):
        return self + (-other)

    def __str__(self):
        if not self.shift:
            return f"V({self.positive})"
        return f"V({self.positive}) - {self.shift}[0]"


def mero_add(A, B):
    return A + B


def mero_negate(A):
    return -A


def divisor_of_laurent(f):
    """``div(f)`` for a Laurent series whose rescaled series is Weierstrass."""
    from .series import LaurentSeries
    if not isinstance(f, LaurentSeries):
        return MeroDivisor(divisor_of_series(f), 0)
    m = f.lower
    D = divisor_of_series(f.shift(-m).to_series())
    if m >= 0:
        return MeroDivisor(divisor_sum(D, Divisor.origin(f.ring, m)), 0)
    return MeroDivisor(D, -m)
