"""Truncated power series and Laurent series over a :class:`RingDesc`.

``TruncSeries`` keeps every term of total degree below ``order``; anything at
or above it is unknown.  Results of mixed-order arithmetic carry the smallest
order that is still valid, and nothing ever silently gains precision.
"""

from __future__ import annotations

from fractions import Fraction
from math import inf

from .errors import (NonNilpotentConstantTerm, NotACoordinate, NotAUnit,
                     OrderTooLow, RequiresRationalCoefficients, RingMismatch,
                     VariableMismatch)
from .rings import (RingElem, format_elem, invert_unit, is_unit, join_terms,
                    nilpotency_index)


def _check_compatible(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.vars != b.vars:
        raise VariableMismatch(f"{a.vars} vs {b.vars}")


class TruncSeries:
    """Multivariate power series modulo terms of total degree >= ``order``."""

    __slots__ = ("ring", "vars", "order", "terms")

    def __init__(self, ring, vars, order, terms=None):
        self.ring = ring
        self.vars = tuple(vars)
        self.order = order
        if order < 1:
            raise ValueError("order must be positive")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.vars):
                raise ValueError(f"exponent {e} does not match vars {self.vars}")
            if sum(e) >= order:
                continue
            c = ring.elem(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, vars, order, terms):
        s = cls.__new__(cls)
        s.ring, s.vars, s.order, s.terms = ring, vars, order, terms
        return s

    # constructors

    @classmethod
    def var(cls, ring, vars, name, order):
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(ring, vars, order, {e: ring.one})

    @classmethod
    def const(cls, ring, vars, c, order):
        vars = tuple(vars)
        return cls(ring, vars, order, {(0,) * len(vars): ring.elem(c)})

    @classmethod
    def from_coeffs(cls, ring, var, coeffs, order=None):
        """Univariate series from ascending coefficients."""
        order = len(coeffs) if order is None else order
        return cls(ring, (var,), order, {(i,): c for i, c in enumerate(coeffs)})

    # access

    def __getitem__(self, exps):
        if isinstance(exps, int):
            exps = (exps,)
        return self.terms.get(tuple(exps), self.ring.zero)

    coefficient = __getitem__

    def coeffs(self):
        """Ascending coefficient list of a univariate series, length ``order``."""
        if len(self.vars) != 1:
            raise VariableMismatch("coeffs() needs a univariate series")
        return [self[(i,)] for i in range(self.order)]

    @property
    def constant(self):
        return self[(0,) * len(self.vars)]

    def is_zero(self):
        return not self.terms

    def truncate(self, order):
        order = min(order, self.order)
        return TruncSeries._raw(self.ring, self.vars, order,
                                {e: c for e, c in self.terms.items()
                                 if sum(e) < order})

    def rename(self, vars):
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise VariableMismatch("rename must keep the number of variables")
        return TruncSeries._raw(self.ring, vars, self.order, dict(self.terms))

    def embed(self, vars):
        """View as a series in the larger variable list ``vars``."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(vars)
            for p, k in zip(pos, e):
                f[p] = k
            out[tuple(f)] = c
        return TruncSeries._raw(self.ring, vars, self.order, out)

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, TruncSeries):
            _check_compatible(self, other)
            return other
        if isinstance(other, (int, Fraction, RingElem)):
            return TruncSeries.const(self.ring, self.vars, other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out = {e: c for e, c in self.terms.items() if sum(e) < order}
        for e, c in other.terms.items():
            if sum(e) >= order:
                continue
            v = out[e] + c if e in out else c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncSeries._raw(self.ring, self.vars, order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries._raw(self.ring, self.vars, self.order,
                                {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RingElem)):
            c = self.ring.elem(other)
            out = {}
            for e, a in self.terms.items():
                v = a * c
                if v:
                    out[e] = v
            return TruncSeries._raw(self.ring, self.vars, self.order, out)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        a_items = [(e, sum(e), c) for e, c in self.terms.items() if sum(e) < order]
        b_items = [(e, sum(e), c) for e, c in other.terms.items() if sum(e) < order]
        out = {}
        for ea, da, ca in a_items:
            room = order - da
            for eb, db, cb in b_items:
                if db >= room:
                    continue
                e = tuple(x + y for x, y in zip(ea, eb))
                p = ca * cb
                if e in out:
                    out[e] = out[e] + p
                else:
                    out[e] = p
        return TruncSeries._raw(self.ring, self.vars, order,
                                {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.invert() ** (-n)
        result = TruncSeries.const(self.ring, self.vars, 1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, RingElem)):
            other = TruncSeries.const(self.ring, self.vars, other, self.order)
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.ring != other.ring or self.vars != other.vars:
            return False
        order = min(self.order, other.order)
        return self.truncate(order).terms == other.truncate(order).terms

    __hash__ = None

    def __repr__(self):
        return f"TruncSeries({self}, order={self.order})"

    def __str__(self):
        return format_series(self.terms, self.vars)

    # calculus

    def derivative(self, var=None):
        if var is None:
            if len(self.vars) != 1:
                raise VariableMismatch("name the variable to differentiate in")
            var = self.vars[0]
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                v = c * k
                if v:
                    f = list(e)
                    f[i] -= 1
                    out[tuple(f)] = v
        return TruncSeries._raw(self.ring, self.vars, max(self.order - 1, 1), out)

    def integrate(self, var=None):
        """Antiderivative with zero constant term (needs rational base)."""
        if self.ring.base != "Q":
            raise RequiresRationalCoefficients(f"cannot integrate over {self.ring}")
        if var is None:
            var = self.vars[0]
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] += 1
            out[tuple(f)] = c * Fraction(1, f[i])
        return TruncSeries._raw(self.ring, self.vars, self.order + 1, out)

    def set_zero(self, var):
        """Restrict to ``var = 0`` (the variable is dropped)."""
        i = self.vars.index(var)
        vars = self.vars[:i] + self.vars[i + 1:]
        out = {e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == 0}
        return TruncSeries._raw(self.ring, vars, self.order, out)

    # composition

    def substitute(self, mapping):
        """Substitute a series for each variable of ``self``.

        All substituted series must share ring and variables.  Constant terms
        may be nilpotent; the result order accounts for how many extra outer
        terms such constants pull down.
        """
        inners = [mapping[v] for v in self.vars]
        first = inners[0]
        for s in inners[1:]:
            _check_compatible(first, s)
        if first.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {first.ring}")
        used = [any(e[i] for e in self.terms) for i in range(len(self.vars))]
        order = min(s.order for s in inners)
        slack = 0
        for s, u in zip(inners, used):
            c = s.constant
            if c and u:
                nu = nilpotency_index(c)
                if nu is None:
                    raise NonNilpotentConstantTerm(
                        f"constant term {c} is not nilpotent")
                slack += nu - 1
        order = min(order, self.order - slack)
        if order < 1:
            raise OrderTooLow("outer series too short for nilpotent constants")
        inners = [s.truncate(order) for s in inners]
        powers = []
        for i, s in enumerate(inners):
            top = max((e[i] for e in self.terms), default=0)
            pw = [TruncSeries.const(self.ring, s.vars, 1, order)]
            for _ in range(top):
                pw.append(pw[-1] * s)
            powers.append(pw)
        return _horner(self.terms, powers, 0, order, self.ring, first.vars)

    def __call__(self, *args):
        return self.substitute(dict(zip(self.vars, args)))

    def compose(self, inner):
        if len(self.vars) != 1:
            raise VariableMismatch("compose() needs a univariate outer series")
        return self.substitute({self.vars[0]: inner})

    def invert(self):
        """Multiplicative inverse; the constant term must be a unit."""
        c = self.constant
        if not is_unit(c):
            raise NotAUnit(f"constant term {c} is not a unit")
        c_inv = invert_unit(c)
        q = TruncSeries.const(self.ring, self.vars, 1, self.order) - self * c_inv
        # q = 1 - a/c has nilpotent constant term: sum q^k terminates both
        # x-adically and by nilpotency
        result = TruncSeries.const(self.ring, self.vars, 1, self.order)
        power = result
        while True:
            power = power * q
            if power.is_zero():
                break
            result = result + power
        return result * c_inv

    def revert(self):
        """Compositional inverse of a univariate coordinate series."""
        if len(self.vars) != 1:
            raise VariableMismatch("revert() needs a univariate series")
        if self.constant:
            raise NotACoordinate("f(0) must be 0")
        a1 = self[(1,)]
        if not is_unit(a1):
            raise NotACoordinate(f"linear coefficient {a1} is not a unit")
        inv = invert_unit(a1)
        var = self.vars[0]
        g = {(1,): inv}
        for d in range(2, self.order):
            partial = TruncSeries(self.ring, self.vars, d + 1, g)
            err = self.truncate(d + 1).compose(partial)[(d,)]
            if err:
                g[(d,)] = -(inv * err)
        return TruncSeries(self.ring, (var,), self.order, g)

    def evaluate(self, values):
        """Value at nilpotent ring elements; fails if truncation could matter."""
        values = [self.ring.elem(v) for v in values]
        slack = 0
        for v in values:
            nu = nilpotency_index(v)
            if nu is None:
                raise NonNilpotentConstantTerm(f"{v} is not nilpotent")
            slack += nu - 1
        if slack >= self.order:
            raise OrderTooLow(f"order {self.order} cannot evaluate at points "
                              f"needing degree {slack}")
        total = self.ring.zero
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
                    if not term:
                        break
            total = total + term
        return total


def _horner(terms, powers, i, order, ring, vars):
    """Sum c * prod_j powers[j][e_j] over terms, grouping on variable ``i``."""
    nv = len(powers)
    if i == nv - 1:
        acc = None
        for e, c in terms.items():
            t = powers[i][e[i]] * c
            acc = t if acc is None else acc + t
        return acc if acc is not None else TruncSeries._raw(ring, vars, order, {})
    groups = {}
    for e, c in terms.items():
        groups.setdefault(e[i], {})[e] = c
    acc = None
    for k, sub in groups.items():
        inner = _horner(sub, powers, i + 1, order, ring, vars)
        t = inner * powers[i][k] if k else inner
        acc = t if acc is None else acc + t
    return acc if acc is not None else TruncSeries._raw(ring, vars, order, {})


def format_series(terms, vars):
    if not terms:
        return "0"
    items = sorted(terms.items(),
                   key=lambda kv: (sum(kv[0]), tuple(-k for k in kv[0])))
    parts = []
    for e, c in items:
        mono = "*".join(v if k == 1 else f"{v}^{k}"
                        for v, k in zip(vars, e) if k)
        parts.append(_coeff_times(c, mono))
    return join_terms(parts)


def _coeff_times(c, mono):
    if not mono:
        return format_elem(c)
    if len(c.terms) == 1:
        (e, b), = c.terms.items()
        if not any(e):
            if b == 1:
                return mono
            if b == -1:
                return "-" + mono
            return f"{b}*{mono}"
        s = format_elem(c)
        return f"{s}*{mono}"
    return f"({format_elem(c)})*{mono}"


# -- Laurent series ------------------------------------------------------------

class LaurentSeries:
    """Single-variable series with finitely many negative powers.

    Terms have exponents in ``[lower, order)``; ``order`` may be ``inf`` for
    an exact Laurent polynomial.  ``lower`` is kept tight (the least exponent
    present) so that product orders are as sharp as the data allows.
    """

    __slots__ = ("ring", "var", "lower", "order", "terms")

    def __init__(self, ring, var, terms=None, order=inf):
        self.ring = ring
        self.var = var
        self.order = order
        clean = {}
        for k, c in (terms or {}).items():
            if k >= order:
                continue
            c = ring.elem(c)
            if c:
                clean[int(k)] = c
        self.terms = clean
        self.lower = min(clean) if clean else (order - 1 if order != inf else 0)

    @classmethod
    def from_series(cls, s, shift=0):
        """``x^shift * s`` for a univariate :class:`TruncSeries` ``s``."""
        if len(s.vars) != 1:
            raise VariableMismatch("need a univariate series")
        return cls(s.ring, s.vars[0], {e[0] + shift: c for e, c in s.terms.items()},
                   s.order + shift)

    @classmethod
    def monomial(cls, ring, var, k, c=1, order=inf):
        return cls(ring, var, {k: c}, order)

    def to_series(self):
        """Power-series part viewed as a :class:`TruncSeries` (needs no poles)."""
        if any(k < 0 for k in self.terms):
            raise ValueError("series has negative powers")
        if self.order == inf:
            order = max(self.terms, default=0) + 1
        else:
            order = self.order
        return TruncSeries(self.ring, (self.var,), order,
                           {(k,): c for k, c in self.terms.items()})

    def __getitem__(self, k):
        if k >= self.order:
            raise OrderTooLow(f"coefficient of {self.var}^{k} is beyond order "
                              f"{self.order}")
        return self.terms.get(k, self.ring.zero)

    def _coerce(self, other):
        if isinstance(other, LaurentSeries):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            if other.var != self.var:
                raise VariableMismatch(f"{self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction, RingElem)):
            return LaurentSeries(self.ring, self.var, {0: self.ring.elem(other)})
        if isinstance(other, TruncSeries):
            return self._coerce(LaurentSeries.from_series(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return LaurentSeries(self.ring, self.var, out, order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.ring, self.var,
                             {k: -c for k, c in self.terms.items()}, self.order)

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
        order = min(self.order + other.lower, other.order + self.lower)
        out = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                if k >= order:
                    continue
                p = a * b
                out[k] = out[k] + p if k in out else p
        return LaurentSeries(self.ring, self.var, out, order)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if len(self.terms) == 1:
                (k, c), = self.terms.items()
                if is_unit(c):
                    # (c x^k + O(x^N))^n = c^n x^(kn) (1 + O(x^(N-k)))
                    return LaurentSeries(self.ring, self.var,
                                         {k * n: invert_unit(c) ** (-n)},
                                         k * n + self.order - k)
            from .residue import laurent_invert
            return laurent_invert(self ** (-n))
        result = LaurentSeries(self.ring, self.var, {0: self.ring.one})
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, LaurentSeries) else other
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        if self.ring != other.ring or self.var != other.var:
            return False
        order = min(self.order, other.order)
        return ({k: c for k, c in self.terms.items() if k < order}
                == {k: c for k, c in other.terms.items() if k < order})

    __hash__ = None

    def truncate(self, order):
        return LaurentSeries(self.ring, self.var, self.terms, min(order, self.order))

    def shift(self, k):
        """Multiply by ``var^k``."""
        return LaurentSeries(self.ring, self.var,
                             {i + k: c for i, c in self.terms.items()},
                             self.order + k)

    def derivative(self):
        out = {}
        for k, c in self.terms.items():
            v = c * k
            if v:
                out[k - 1] = v
        return LaurentSeries(self.ring, self.var, out, self.order - 1)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"LaurentSeries({self}, order={self.order})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            if k == 0:
                mono = ""
            elif k == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{k}"
            parts.append(_coeff_times(c, mono))
        return join_terms(parts)


# -- functional spellings -------------------------------------------------------

def series_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def series_compose(outer, inner):
    return outer.compose(inner)


def series_invert(a):
    return a.invert()


def series_revert(f):
    return f.revert()


def series_derivative(f, var=None):
    return f.derivative(var)


def laurent_derivative(f):
    return f.derivative()


def laurent_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
