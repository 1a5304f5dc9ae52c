"""Formal group laws over constructible rings, truncated at a total degree.

A formal group law is a series ``F(x, y)`` with ``F(x, 0) = x``,
``F(x, y) = F(y, x)`` and ``F(F(x, y), z) = F(x, F(y, z))``.  Everything here
works to a fixed truncation order; nothing claims more than that.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .errors import (AxiomViolation, Cancelled, DerivativeNotZero, NotACoordinate,
                     NotAdditive, OrderTooLow, RequiresRationalCoefficients, RingMismatch,
                     UnsupportedRing, VerificationFailed, WrongCharacteristic)
from .rings import Gen, RingDesc, is_unit, reduce_mod
from .series import TruncSeries

XY = ("x", "y")
XYZ = ("x", "y", "z")


@dataclass(frozen=True, eq=False)
class FGL:
    ring: RingDesc
    F: TruncSeries
    order: int

    def __call__(self, a, b):
        return self.F.substitute({"x": a, "y": b})

    def __str__(self):
        return str(self.F)

    def __eq__(self, other):
        return isinstance(other, FGL) and self.F == other.F


def _degree_key(e):
    return (sum(e), tuple(-k for k in e))


def _first_nonzero(terms):
    if not terms:
        return None
    e = min(terms, key=_degree_key)
    return e, terms[e]


def associator(F, cancel=None):
    """``F(F(x,y),z) - F(x,F(y,z))`` as a series in x, y, z."""
    N = F.order
    ring = F.ring
    fxy = F.embed(XYZ)
    fyz = F.rename(("y", "z")).embed(XYZ)
    x = TruncSeries.var(ring, XYZ, "x", N)
    z = TruncSeries.var(ring, XYZ, "z", N)
    left = F.substitute({"x": fxy, "y": z})
    _check_cancel(cancel)
    right = F.substitute({"x": x, "y": fyz})
    _check_cancel(cancel)
    return left - right


def _check_cancel(cancel):
    if cancel is not None and cancel.is_set():
        raise Cancelled("cancelled by caller")


def fgl_validate(F, N=None):
    """Check the axioms to order ``N``; raise :class:`AxiomViolation` on failure."""
    if F.vars != XY:
        F = F.rename(XY)
    N = F.order if N is None else N
    if F.order < N:
        raise OrderTooLow(f"series has order {F.order} < {N}")
    F = F.truncate(N)
    ring = F.ring
    for i in range(N):
        c = F[(i, 0)]
        want = ring.one if i == 1 else ring.zero
        if c != want:
            raise AxiomViolation("unit", (i, 0), c)
    bad = {}
    for (i, j), c in F.terms.items():
        if i < j and c != F[(j, i)]:
            bad[(i, j)] = c - F[(j, i)]
    hit = _first_nonzero(bad)
    if hit:
        raise AxiomViolation("commutativity", *hit)
    hit = _first_nonzero(associator(F).terms)
    if hit:
        raise AxiomViolation("associativity", *hit)
    return FGL(ring, F, N)


# -- standard examples --------------------------------------------------------------

def additive(ring, N=8):
    return FGL(ring, TruncSeries(ring, XY, N, {(1, 0): 1, (0, 1): 1}), N)


def multiplicative(ring, N=8, a=1):
    """``H_a(x, y) = x + y + a*x*y`` (``a`` an integer or ring element)."""
    return FGL(ring, TruncSeries(ring, XY, N, {(1, 0): 1, (0, 1): 1,
                                               (1, 1): ring.elem(a)}), N)


@dataclass(frozen=True, eq=False)
class UniversalFGLData:
    order: int
    ring: RingDesc
    F: TruncSeries
    #: ``[(exponent in x, y, z), polynomial in the a_kl]``, nonzero only
    relations: tuple

    @property
    def fgl(self):
        return FGL(self.ring, self.F, self.order)


def _gen_name(k, l):
    return f"a{k}{l}" if k < 10 and l < 10 else f"a{k}_{l}"


def universal_ring(N):
    gens = [Gen(_gen_name(k, l), 1 - k - l)
            for k in range(1, N) for l in range(k, N) if k + l <= N - 1]
    return RingDesc("Z", None, tuple(gens))


def universal_series(N):
    ring = universal_ring(N)
    terms = {(1, 0): ring.one, (0, 1): ring.one}
    for k in range(1, N):
        for l in range(k, N):
            if k + l > N - 1:
                continue
            a = ring.gen(_gen_name(k, l))
            terms[(k, l)] = a
            terms[(l, k)] = a
    return ring, TruncSeries(ring, XY, N, terms)


def universal_fgl(N, cancel=None):
    """Symmetric universal series with its associativity relations.

    ``cancel`` is an optional ``threading.Event``; setting it makes the
    relation extraction raise :class:`Cancelled` at the next checkpoint.
    """
    if N < 2:
        raise ValueError("need N >= 2")
    ring, F = universal_series(N)
    A = associator(F, cancel)
    relations = []
    for e in sorted(A.terms, key=_degree_key):
        _check_cancel(cancel)
        relations.append((e, A.terms[e]))
    return UniversalFGLData(N, ring, F, tuple(relations))


# -- n-series and inverse --------------------------------------------------------------

def _as_fgl(F):
    return F if isinstance(F, FGL) else fgl_validate(F)


def inverse_series(F):
    """The series ``i(x)`` with ``F(x, i(x)) = 0``, solved degree by degree."""
    F = _as_fgl(F)
    ring, N = F.ring, F.order
    iota = {(1,): -ring.one}
    for d in range(2, N):
        partial = TruncSeries(ring, ("x",), d + 1, iota)
        x = TruncSeries.var(ring, ("x",), "x", d + 1)
        c = F.F.truncate(d + 1).substitute({"x": x, "y": partial})[(d,)]
        if c:
            iota[(d,)] = -c
    return TruncSeries(ring, ("x",), N, iota)


def n_series(F, n):
    F = _as_fgl(F)
    ring, N = F.ring, F.order
    x = TruncSeries.var(ring, ("x",), "x", N)
    if n < 0:
        return n_series(F, -n).compose(inverse_series(F))
    result = TruncSeries(ring, ("x",), N)
    for _ in range(n):
        result = F.F.substitute({"x": x, "y": result})
    return result


# -- coordinate changes and homomorphisms -----------------------------------------------------

def _check_coordinate(f):
    if len(f.vars) != 1:
        raise NotACoordinate("coordinate change must be univariate")
    if f.constant:
        raise NotACoordinate("coordinate must vanish at 0")
    if not is_unit(f[(1,)]):
        raise NotACoordinate(f"linear coefficient {f[(1,)]} is not a unit")


def fgl_conjugate(F, f):
    """``F_f(x, y) = f(F(g(x), g(y)))`` with ``g`` the inverse of ``f``."""
    F = _as_fgl(F)
    if f.ring != F.ring:
        raise RingMismatch(f"{F.ring} vs {f.ring}")
    _check_coordinate(f)
    f = f.rename(("x",))
    g = f.revert()
    gx = g.embed(XY)
    gy = g.rename(("y",)).embed(XY)
    inner = F.F.substitute({"x": gx, "y": gy})
    return fgl_validate(f.substitute({"x": inner}))


def hom_check(F, G, phi):
    """Whether ``phi(F(x, y)) = G(phi(x), phi(y))`` to the common order."""
    F, G = _as_fgl(F), _as_fgl(G)
    if F.ring != G.ring or phi.ring != F.ring:
        raise RingMismatch("hom_check needs a single ring")
    phi = phi.rename(("x",))
    if phi.constant:
        return False
    lhs = phi.substitute({"x": F.F})
    px = phi.embed(XY)
    py = phi.rename(("y",)).embed(XY)
    rhs = G.F.substitute({"x": px, "y": py})
    return lhs == rhs


# -- characteristic p ------------------------------------------------------------------------

def _check_char(ring, p):
    if ring.elem(p) != 0:
        raise WrongCharacteristic(f"{ring} does not have characteristic {p}")


def additive_decompose(f, p):
    """Coefficients ``(a_0, a_1, ...)`` with ``f = sum a_k x^(p^k)``."""
    ring = f.ring
    _check_char(ring, p)
    f = f.rename(("x",))
    N = f.order
    s = TruncSeries.var(ring, XY, "x", N) + TruncSeries.var(ring, XY, "y", N)
    defect = f.substitute({"x": s}) - f.embed(XY) - f.rename(("y",)).embed(XY)
    hit = _first_nonzero(defect.terms)
    if hit:
        raise NotAdditive(*hit)
    out = []
    q = 1
    while q < N:
        out.append(f[(q,)])
        q *= p
    while out and not out[-1]:
        out.pop()
    return out


def frobenius_decompose(f, p):
    """``v`` with ``f = v(x1^p, ..., xd^p)``; needs every partial derivative zero."""
    ring = f.ring
    _check_char(ring, p)
    out = {}
    for e, c in f.terms.items():
        if any(k % p for k in e):
            raise DerivativeNotZero(f"term with exponent {e} has nonzero derivative")
        out[tuple(k // p for k in e)] = c
    return TruncSeries(ring, f.vars, ceil(f.order / p), out)


@dataclass(frozen=True)
class Height:
    """Height of ``[p](x)``; ``value`` is None when ``[p]`` vanishes to order."""

    value: int | None
    unit: bool | None
    order: int

    @property
    def infinite(self):
        return self.value is None

    def __str__(self):
        if self.value is None:
            return f"InfiniteUpToOrder({self.order})"
        return f"{self.value}" + (" (unit)" if self.unit else " (non-unit)")


def _vp(k, p):
    n = 0
    while k % p == 0:
        k //= p
        n += 1
    return n


def height(F, p):
    F = _as_fgl(F)
    _check_char(F.ring, p)
    ps = n_series(F, p)
    if ps.is_zero():
        return Height(None, None, F.order)
    n = min(_vp(e[0], p) for e in ps.terms)
    return Height(n, is_unit(ps[(p ** n,)]), F.order)


# -- differentials and logarithms -------------------------------------------------------------

def invariant_differential(F, var="s"):
    """``H(s) = dF/dy (s, 0)``; the invariant differential is ``dx / H(x)``."""
    F = _as_fgl(F)
    H = F.F.derivative("y").set_zero("y").rename((var,))
    if H.constant != 1:
        raise VerificationFailed(f"H(0) = {H.constant}, expected 1")
    return H


def fgl_log(F):
    """Normalized logarithm ``f = integral of 1/H`` over a rational base."""
    F = _as_fgl(F)
    if F.ring.base != "Q":
        raise RequiresRationalCoefficients(f"logarithm needs a Q-algebra, got {F.ring}")
    H = invariant_differential(F, "x")
    f = H.invert().integrate().truncate(F.order)
    lhs = f.substitute({"x": F.F})
    rhs = f.embed(XY) + f.rename(("y",)).embed(XY)
    if lhs != rhs:
        raise VerificationFailed("logarithm does not linearize F")
    return f


# -- Landweber sequence ------------------------------------------------------------------------

@dataclass(frozen=True)
class LandweberTerm:
    n: int
    #: u_n in the quotient ring (None once the quotient is the zero ring)
    value: object
    ring: RingDesc | None
    #: True / False, or None for "unknown"
    regular: bool | None

    def __str__(self):
        flag = {True: "regular", False: "not regular", None: "unknown"}[self.regular]
        if self.ring is None:
            return f"u{self.n} = 0 in the zero ring ({flag})"
        return f"u{self.n} = {self.value} in {self.ring} ({flag})"


def _is_regular(u, ring):
    """Is multiplication by ``u`` injective on ``ring``?  None if undecided."""
    if ring is None:
        return True
    if is_unit(u):
        return True
    if not u:
        return False
    if ring._caps:
        return None
    if ring.base == "Zmod":
        from math import gcd
        g = ring.modulus
        for c in u.terms.values():
            g = gcd(g, c)
        return g == 1
    # polynomial ring over Z or Q: a domain
    return True


def _quotient(ring, u):
    """``(new_ring, map)`` for ``ring/(u)``, or None if unsupported."""
    if not u:
        return ring, lambda a: a
    if is_unit(u):
        return None, lambda a: None
    if u.is_constant() and ring.base in ("Z", "Zmod"):
        from math import gcd
        c = u.constant
        m = abs(c) if ring.base == "Z" else gcd(ring.modulus, c)
        new = ring.with_base("Zmod", m)
        return new, lambda a: reduce_mod(a, new)
    if ring._caps:
        return False
    for v in ring.gens:
        i = ring.index(v.name)
        touching = [(e, c) for e, c in u.terms.items() if e[i]]
        if len(touching) != 1:
            continue
        e, c = touching[0]
        if sum(e) != 1 or not ring.base_is_unit(c):
            continue
        rest = u - ring.monomial(e, c)
        new = ring.without_gen(v.name)
        image = -(rest.substitute(new, {})) * new.elem(ring.base_inverse(c))
        return new, (lambda a, new=new, name=v.name, image=image:
                     a.substitute(new, {name: image}))
    return False


def landweber_sequence(F, p, nmax, N=None):
    """``[(u_n, regular?)]`` for ``n = 0..nmax`` as :class:`LandweberTerm`."""
    F = _as_fgl(F)
    ring = F.ring
    if ring.base != "Z":
        raise UnsupportedRing(f"Landweber sequence needs a base of Z, got {ring}")
    need = p ** nmax + 1 if nmax else 1
    N = F.order if N is None else min(N, F.order)
    if N < need:
        raise OrderTooLow(f"u{nmax} needs the [p]-series to order {need}, "
                          f"have {N}")
    F = FGL(ring, F.F.truncate(N), N)
    ps = n_series(F, p) if nmax else None
    cur, to_cur = ring, (lambda a: a)
    supported = True
    out = []
    for n in range(nmax + 1):
        u_orig = ring.elem(p) if n == 0 else ps[(p ** n,)]
        u = to_cur(u_orig) if cur is not None else None
        if cur is None:
            out.append(LandweberTerm(n, None, None, True))
            continue
        flag = _is_regular(u, cur) if supported else None
        out.append(LandweberTerm(n, u, cur, flag))
        if not supported:
            continue
        q = _quotient(cur, u)
        if q is False:
            supported = False
            continue
        new, step = q
        to_cur = (lambda a, f=to_cur, g=step: g(f(a)))
        cur = new
    return out
