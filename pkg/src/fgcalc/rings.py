"""Constructible commutative rings and their elements.

A ring is a base (``Z``, ``Q`` or ``Z/n``) with an ordered list of adjoined
generators.  A generator may carry a grade and a pure power relation
``v^k = 0``; quotients by anything else are deliberately unsupported.
Elements are kept in canonical form, so equality is structural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (NotAUnit, NotAlmostIdempotent, RingMismatch,
                     UnsupportedRing)

#: names reserved for series variables; generators may not use them
RESERVED_VARS = frozenset({"x", "y", "z", "s", "t"})

TRIAL_DIVISION_BOUND = 10**6
IDEMPOTENT_POWER_CAP = 64


@dataclass(frozen=True)
class Gen:
    name: str
    grade: int = 0
    power: int | None = None

    def __str__(self):
        out = self.name
        if self.grade:
            out += f":{self.grade}"
        if self.power is not None:
            out += f";{self.name}^{self.power}"
        return out


@dataclass(frozen=True)
class RingDesc:
    """Description of a ring in the tower ``base[g1, g2, ...]``.

    ``base`` is one of ``"Z"``, ``"Q"``, ``"Z/n"`` (use :meth:`Zmod`).
    """

    base: str
    modulus: int | None = None
    gens: tuple[Gen, ...] = ()

    def __post_init__(self):
        if self.base not in ("Z", "Q", "Zmod"):
            raise ValueError(f"unknown base {self.base!r}")
        if self.base == "Zmod":
            if self.modulus is None or self.modulus < 2:
                raise ValueError("Z/n needs n >= 2")
        elif self.modulus is not None:
            raise ValueError("only Z/n carries a modulus")
        names = [g.name for g in self.gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in self.gens:
            if g.name in RESERVED_VARS:
                raise ValueError(f"generator name {g.name!r} is reserved "
                                 "for series variables")
            if g.power is not None and g.power < 1:
                raise ValueError("power relation exponent must be >= 1")
        object.__setattr__(self, "_index",
                           {g.name: i for i, g in enumerate(self.gens)})
        object.__setattr__(self, "_caps", tuple(
            (i, g.power) for i, g in enumerate(self.gens)
            if g.power is not None))

    # constructors

    @classmethod
    def Z(cls):
        return cls("Z")

    @classmethod
    def Q(cls):
        return cls("Q")

    @classmethod
    def Zmod(cls, n):
        return cls("Zmod", n)

    def adjoin(self, name, grade=0, power=None):
        return RingDesc(self.base, self.modulus,
                        self.gens + (Gen(name, grade, power),))

    def with_base(self, base, modulus=None):
        return RingDesc(base, modulus, self.gens)

    def without_gen(self, name):
        return RingDesc(self.base, self.modulus,
                        tuple(g for g in self.gens if g.name != name))

    def __repr__(self):
        return f"RingDesc({self})"

    def __str__(self):
        head = {"Z": "Z", "Q": "Q"}.get(self.base) or f"Z/{self.modulus}"
        if self.gens:
            head += "[" + ",".join(str(g) for g in self.gens) + "]"
        return head

    # base coefficient arithmetic

    def norm(self, c):
        """Canonical form of a base coefficient."""
        if self.base == "Zmod":
            return int(c) % self.modulus
        if self.base == "Q":
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"{c} is not an integer")
            return c.numerator
        return int(c)

    def base_is_nilpotent(self, c):
        if self.base == "Zmod":
            return c % radical(self.modulus) == 0
        return c == 0

    def base_is_unit(self, c):
        if self.base == "Zmod":
            return math.gcd(c, self.modulus) == 1
        if self.base == "Q":
            return c != 0
        return c in (1, -1)

    def base_inverse(self, c):
        if self.base == "Zmod":
            return pow(c, -1, self.modulus)
        if self.base == "Q":
            return 1 / Fraction(c)
        return c

    @property
    def characteristic(self):
        return self.modulus if self.base == "Zmod" else 0

    # element constructors

    @property
    def ngens(self):
        return len(self.gens)

    def index(self, name):
        return self._index[name]

    def elem(self, c=0):
        if isinstance(c, RingElem):
            if c.ring != self:
                raise RingMismatch(f"{c.ring} vs {self}")
            return c
        c = self.norm(c)
        if not c:
            return RingElem(self, {})
        return RingElem(self, {(0,) * self.ngens: c})

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    def gen(self, name):
        i = self._index[name]
        exps = tuple(1 if j == i else 0 for j in range(self.ngens))
        return self.monomial(exps)

    def monomial(self, exps, c=1):
        exps = tuple(exps)
        for i, k in self._caps:
            if exps[i] >= k:
                return self.zero
        c = self.norm(c)
        return RingElem(self, {exps: c} if c else {})

    def from_terms(self, terms):
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if any(e[i] >= k for i, k in self._caps):
                continue
            c = self.norm(out.get(e, 0) + c)
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        return RingElem(self, out)


class RingElem:
    """An element of a :class:`RingDesc`, stored as ``{exponents: coeff}``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.elem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        norm = self.ring.norm
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return RingElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.norm
        return RingElem(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        ring = self.ring
        norm = ring.norm
        if not ring.gens:
            c = norm(self.terms[()] * other.terms[()])
            return RingElem(ring, {(): c} if c else {})
        caps = ring._caps
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if caps and any(e[i] >= k for i, k in caps):
                    continue
                out[e] = out.get(e, 0) + ca * cb
        return RingElem(ring, {e: v for e, c in out.items() if (v := norm(c))})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return invert_unit(self) ** (-n)
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.elem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"RingElem({self.ring}, {self})"

    def __str__(self):
        return format_elem(self)

    # structure

    @property
    def constant(self):
        """Coefficient of the empty monomial (a base coefficient)."""
        return self.terms.get((0,) * self.ring.ngens, 0)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def kill_nilgens(self):
        """Image under setting every power-relation generator to zero."""
        caps = self.ring._caps
        return RingElem(self.ring, {e: c for e, c in self.terms.items()
                                    if not any(e[i] for i, _ in caps)})

    def grades(self):
        """Set of grades of the monomials present."""
        gs = [g.grade for g in self.ring.gens]
        return {sum(a * b for a, b in zip(e, gs)) for e in self.terms}

    def is_homogeneous(self):
        return len(self.grades()) <= 1

    def substitute(self, ring, images):
        """Ring map sending generator ``name`` to ``images[name]`` in ``ring``.

        Base coefficients are pushed through the canonical map to ``ring``'s
        base; generators missing from ``images`` map to the same-named
        generator of ``ring``.
        """
        result = ring.zero
        gens = self.ring.gens
        for e, c in self.terms.items():
            term = ring.elem(_push_coeff(c, ring))
            for g, k in zip(gens, e):
                if k:
                    img = images.get(g.name)
                    if img is None:
                        img = ring.gen(g.name)
                    term = term * img ** k
            result = result + term
        return result


def _push_coeff(c, ring):
    if ring.base == "Zmod" and isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, ring.modulus)
    return c


def format_elem(a):
    if not a.terms:
        return "0"
    names = [g.name for g in a.ring.gens]
    items = sorted(a.terms.items(),
                   key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))
    parts = [_format_term(c, _monomial_str(names, e)) for e, c in items]
    return join_terms(parts)


def _monomial_str(names, exps):
    out = []
    for name, k in zip(names, exps):
        if k == 1:
            out.append(name)
        elif k:
            out.append(f"{name}^{k}")
    return "*".join(out)


def _format_term(c, mono):
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def join_terms(parts):
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


# -- arithmetic entry points -------------------------------------------------

def arith(a, b, op):
    """Dispatch ``op`` in {'add', 'mul', 'neg', 'eq'}; ``neg`` ignores ``b``."""
    if b is not None and a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


def radical(n):
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def factorize(n, bound=TRIAL_DIVISION_BOUND):
    """Prime factorization ``[(p, k), ...]`` by trial division up to ``bound``."""
    out = []
    m = n
    p = 2
    while p * p <= m and p <= bound:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        if p <= bound or m < bound * bound:
            out.append((m, 1))
        else:
            raise UnsupportedRing(f"cannot factor {n} by trial division "
                                  f"below {bound}")
    return out


def is_nilpotent(a):
    # a polynomial over the base is nilpotent iff all its coefficients are
    ring = a.ring
    return all(ring.base_is_nilpotent(c)
               for c in a.kill_nilgens().terms.values())


def is_unit(a):
    ring = a.ring
    red = a.kill_nilgens()
    zero = (0,) * ring.ngens
    if not ring.base_is_unit(red.terms.get(zero, 0)):
        return False
    return all(ring.base_is_nilpotent(c)
               for e, c in red.terms.items() if e != zero)


def invert_unit(a):
    """Inverse of a unit, by geometric expansion around its constant term."""
    if not is_unit(a):
        raise NotAUnit(f"{a} is not a unit in {a.ring}")
    ring = a.ring
    c_inv = ring.elem(ring.base_inverse(a.constant))
    q = -(a * c_inv - 1)       # nilpotent
    result = ring.one
    power = ring.one
    while True:
        power = power * q
        if not power:
            break
        result = result + power
    return result * c_inv


def nilpotency_index(a, cap=None):
    """Least ``m >= 1`` with ``a^m = 0``; None if not reached within ``cap``."""
    if not a:
        return 1
    if not is_nilpotent(a):
        return None
    m, p = 1, a
    while p:
        p = p * a
        m += 1
        if cap is not None and m > cap:
            return None
    return m


def lift_idempotent(e, cap=IDEMPOTENT_POWER_CAP):
    """The unique idempotent congruent to ``e`` modulo nilpotents."""
    ring = e.ring
    if not is_nilpotent(e * e - e):
        raise NotAlmostIdempotent(f"{e}^2 - {e} is not nilpotent")
    f = ring.one - e
    ef = e * f
    n = 1
    power = ef
    while power:
        n *= 2
        if n > cap:
            raise NotAlmostIdempotent(f"(e(1-e))^n did not vanish for n <= {cap}")
        power = power * power
    # smallest power of two n with (ef)^n = 0 found; any such n works
    en, fn = e ** n, f ** n
    c = en + fn - 1
    return en * invert_unit(1 + c)


def split_ring(ring):
    """Orthogonal idempotent decomposition of ``Z/n`` into prime-power parts."""
    if ring.base != "Zmod" or ring.gens:
        raise UnsupportedRing(f"split_ring supports Z/n only, not {ring}")
    return [(ring.elem(e), RingDesc.Zmod(q)) for e, q in _crt_idempotents(ring.modulus)]


def _crt_idempotents(n):
    out = []
    for p, k in factorize(n):
        q = p ** k
        m = n // q
        if m == 1:
            out.append((1, q))
        else:
            out.append(((m * pow(m, -1, q)) % n, q))
    return out


def reduce_mod(a, ring):
    """Image of ``a`` in ``ring``, which must share generators (base change)."""
    if [g.name for g in a.ring.gens] != [g.name for g in ring.gens]:
        raise RingMismatch(f"{a.ring} and {ring} have different generators")
    return ring.from_terms({e: _push_coeff(c, ring) for e, c in a.terms.items()})


# -- matrices -----------------------------------------------------------------

class SquareMatrix:
    """Square matrix of ring elements (rows of equal length)."""

    def __init__(self, ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(ring.elem(x) for x in row) for row in rows)
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix is not square")

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (isinstance(other, SquareMatrix) and self.ring == other.ring
                and self.rows == other.rows)

    def __mul__(self, other):
        if isinstance(other, SquareMatrix):
            n = self.n
            cols = list(zip(*other.rows))
            return SquareMatrix(self.ring, [
                [_dot(row, col, self.ring) for col in cols] for row in self.rows])
        c = self.ring.elem(other)
        return SquareMatrix(self.ring, [[c * x for x in row] for row in self.rows])

    __rmul__ = __mul__

    def __add__(self, other):
        return SquareMatrix(self.ring, [[a + b for a, b in zip(r, s)]
                                        for r, s in zip(self.rows, other.rows)])

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, n):
        return cls(ring, [[0] * n for _ in range(n)])

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def __repr__(self):
        return "SquareMatrix(%s)" % [[str(x) for x in r] for r in self.rows]


def _dot(u, v, ring):
    s = ring.zero
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def charpoly(M, t="t"):
    """Coefficients ``[1, c1, ..., cn]`` of ``det(t*I - M)``, highest first.

    Berkowitz's algorithm: no division, so it is valid over any commutative
    ring.  ``t`` only names the variable for display.
    """
    ring = M.ring
    n = M.n
    poly = [ring.one]
    for r in range(n):
        # leading r x r block A, row R = M[r][:r], column C = M[:r][r]
        a = M[r, r]
        R = M.rows[r][:r]
        col = [M[i, r] for i in range(r)]
        toeplitz = [ring.one, -a]
        vec = col
        for _ in range(r):
            toeplitz.append(-_dot(R, vec, ring))
            vec = [_dot(M.rows[i][:r], vec, ring) for i in range(r)]
        # new poly (degree r+1) = Toeplitz (r+2 x r+1) times old poly
        new = []
        for i in range(r + 2):
            s = ring.zero
            for j in range(min(i, r) + 1):
                tj = toeplitz[i - j]
                if tj and poly[j]:
                    s = s + tj * poly[j]
            new.append(s)
        poly = new
    return poly


def determinant(M):
    cp = charpoly(M)
    return cp[-1] if M.n % 2 == 0 else -cp[-1]


def poly_at_matrix(coeffs, M):
    """Evaluate a polynomial (highest coefficient first) at a matrix, Horner."""
    ring = M.ring
    acc = SquareMatrix.zeros(ring, M.n)
    eye = SquareMatrix.identity(ring, M.n)
    for c in coeffs:
        acc = acc * M + eye * c
    return acc


def leibniz_det(rows, ring):
    """Determinant by the permutation expansion; an independent check only."""
    from itertools import permutations
    n = len(rows)
    total = ring.zero
    for perm in permutations(range(n)):
        inv = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        term = ring.one
        for i in range(n):
            term = term * rows[i][perm[i]]
            if not term:
                break
        total = total + (-term if inv % 2 else term)
    return total
