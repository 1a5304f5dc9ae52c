"""Text syntax for rings, ring elements, series and polynomials.

Grammar::

    ring  := "Z" | "Q" | "Z/" NAT | ring "[" gen ("," gen)* "]"
    gen   := IDENT [":" INT] [";" IDENT "^" NAT]
    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := ("+" | "-") unary | power
    power := atom ["^" ["-"] NAT]
    atom  := IDENT | NAT | "(" expr ")"

``/`` divides by an integer and is only allowed over ``Q``.  Negative
exponents are only allowed when parsing Laurent series.  Printing with
``str()`` on any parsed value gives a canonical form that parses back to the
same value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import inf

from .errors import ParseError
from .rings import Gen, RingDesc, RingElem
from .series import LaurentSeries, TruncSeries

_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<sym>[-+*/^()\[\],:;]))")


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.toks = []
        pos = 0
        text_end = len(text.rstrip())
        while pos < text_end:
            m = _TOKEN.match(text, pos)
            if not m:
                start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise ParseError(f"unexpected character {text[start]!r}", text, start)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self):
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("end", "", len(self.text))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def accept(self, sym):
        kind, val, _ = self.peek()
        if kind == "sym" and val == sym:
            self.i += 1
            return True
        return False

    def expect(self, sym):
        if not self.accept(sym):
            self.fail(f"expected {sym!r}", [repr(sym)])

    def expect_kind(self, kind, what):
        k, val, pos = self.peek()
        if k != kind:
            self.fail(f"expected {what}", [what])
        self.i += 1
        return val, pos

    def fail(self, msg, expected=()):
        kind, val, pos = self.peek()
        found = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"{msg}, found {found}", self.text, pos, expected)

    def done(self):
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input", ["end of input"])


# -- rings ----------------------------------------------------------------------

def parse_ring(text):
    toks = _Tokens(text)
    val, _ = toks.expect_kind("ident", "'Z' or 'Q'")
    if val == "Q":
        ring = RingDesc.Q()
    elif val == "Z":
        if toks.accept("/"):
            n, pos = toks.expect_kind("nat", "modulus")
            if int(n) < 2:
                raise ParseError("modulus must be at least 2", text, pos)
            ring = RingDesc.Zmod(int(n))
        else:
            ring = RingDesc.Z()
    else:
        toks.i -= 1
        toks.fail("unknown base ring", ["'Z'", "'Q'", "'Z/'"])
    gens = []
    while toks.accept("["):
        while True:
            gens.append(_parse_gen(toks))
            if toks.accept("]"):
                break
            if not toks.accept(","):
                toks.fail("expected ',' or ']'", ["','", "']'"])
    toks.done()
    try:
        return RingDesc(ring.base, ring.modulus, tuple(gens))
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from None


def _parse_gen(toks):
    name, _ = toks.expect_kind("ident", "generator name")
    grade = 0
    power = None
    if toks.accept(":"):
        sign = -1 if toks.accept("-") else 1
        g, _ = toks.expect_kind("nat", "grade")
        grade = sign * int(g)
    if toks.accept(";"):
        again, pos = toks.expect_kind("ident", "generator name")
        if again != name:
            raise ParseError(f"relation names {again!r}, expected {name!r}",
                             toks.text, pos)
        toks.expect("^")
        k, pos = toks.expect_kind("nat", "exponent")
        if int(k) < 1:
            raise ParseError("power relation exponent must be >= 1", toks.text, pos)
        power = int(k)
    return Gen(name, grade, power)


# -- expressions ------------------------------------------------------------------

class _Context:
    def __init__(self, ring, vars=(), order=None, laurent=False):
        self.ring = ring
        self.vars = tuple(vars)
        self.order = order
        self.laurent = laurent

    def ident(self, name, toks, pos):
        if name in self.vars:
            if self.laurent:
                return LaurentSeries.monomial(self.ring, name, 1)
            return TruncSeries.var(self.ring, self.vars, name, self.order)
        if name in self.ring._index:
            return self.ring.gen(name)
        expected = list(self.vars) + [g.name for g in self.ring.gens]
        raise ParseError(f"unknown identifier {name!r}", toks.text, pos, expected)


def _expr(toks, ctx):
    val = _term(toks, ctx)
    while True:
        if toks.accept("+"):
            val = val + _term(toks, ctx)
        elif toks.accept("-"):
            val = val - _term(toks, ctx)
        else:
            return val


def _term(toks, ctx):
    val = _unary(toks, ctx)
    while True:
        if toks.accept("*"):
            val = val * _unary(toks, ctx)
        elif toks.peek()[:2] == ("sym", "/"):
            pos = toks.next()[2]
            if ctx.ring.base != "Q":
                raise ParseError("division is only allowed over Q", toks.text, pos)
            den = _unary(toks, ctx)
            if not isinstance(den, int):
                raise ParseError("can only divide by an integer", toks.text, pos)
            if den == 0:
                raise ParseError("division by zero", toks.text, pos)
            if isinstance(val, (int, Fraction)):
                val = Fraction(val, den)
            else:
                val = val * Fraction(1, den)
        else:
            return val


def _unary(toks, ctx):
    if toks.accept("-"):
        return -_unary(toks, ctx)
    if toks.accept("+"):
        return _unary(toks, ctx)
    return _power(toks, ctx)


def _power(toks, ctx):
    val = _atom(toks, ctx)
    if toks.accept("^"):
        neg = toks.accept("-")
        k, pos = toks.expect_kind("nat", "exponent")
        k = int(k)
        if neg:
            if isinstance(val, (int, Fraction)):
                if val == 0 or ctx.ring.base != "Q":
                    raise ParseError("negative power of a number", toks.text, pos)
                return Fraction(1, 1) / Fraction(val) ** k
            if not ctx.laurent:
                raise ParseError("negative exponents need a Laurent context",
                                 toks.text, pos)
            if isinstance(val, LaurentSeries) and len(val.terms) != 1:
                if ctx.order == inf:
                    raise ParseError("cannot invert a polynomial exactly",
                                     toks.text, pos)
                from .residue import laurent_invert
                return laurent_invert(val, order=ctx.order) ** k
            k = -k
        val = val ** k
    return val


def _atom(toks, ctx):
    kind, val, pos = toks.next()
    if kind == "nat":
        return int(val)
    if kind == "ident":
        return ctx.ident(val, toks, pos)
    if kind == "sym" and val == "(":
        inner = _expr(toks, ctx)
        toks.expect(")")
        return inner
    toks.i -= 1
    toks.fail("expected a value", ["identifier", "number", "'('"])


def _parse(text, ctx):
    toks = _Tokens(text)
    if toks.peek()[0] == "end":
        toks.fail("empty expression", ["identifier", "number", "'('"])
    val = _expr(toks, ctx)
    toks.done()
    return val


def parse_elem(text, ring):
    val = _parse(text, _Context(ring))
    if isinstance(val, Fraction) and ring.base != "Q":
        raise ParseError("fractions are only allowed over Q", text, 0)
    return ring.elem(val)


def parse_series(text, ring, vars=("x",), order=8):
    """Truncated power series in ``vars`` (total degree below ``order``)."""
    val = _parse(text, _Context(ring, vars, order))
    if not isinstance(val, TruncSeries):
        val = TruncSeries.const(ring, vars, ring.elem(val), order)
    return val


def parse_laurent(text, ring, var="x", order=8):
    """Laurent series in ``var``; terms at or above ``order`` are dropped."""
    val = _parse(text, _Context(ring, (var,), order, laurent=True))
    if not isinstance(val, LaurentSeries):
        val = LaurentSeries(ring, var, {0: ring.elem(val)}, order)
    return val.truncate(order)


def parse_poly(text, ring, var="t"):
    """Exact polynomial in ``var``; returns ascending coefficients."""
    val = _parse(text, _Context(ring, (var,), inf, laurent=True))
    if not isinstance(val, LaurentSeries):
        return [ring.elem(val)]
    if any(k < 0 for k in val.terms):
        raise ParseError("polynomial has negative powers", text, 0)
    top = max(val.terms, default=0)
    return [val.terms.get(k, ring.zero) for k in range(top + 1)]


def parse_elem_list(text, ring):
    if not text.strip():
        return []
    return [parse_elem(part, ring) for part in text.split(",")]


def format_poly(coeffs, var="t"):
    """Ascending coefficient list as text."""
    if not coeffs:
        return "0"
    ring = coeffs[0].ring
    s = LaurentSeries(ring, var, dict(enumerate(coeffs)))
    return _poly_str(s)


def _poly_str(s):
    from .series import _coeff_times
    from .rings import join_terms
    if not s.terms:
        return "0"
    parts = []
    for k in sorted(s.terms, reverse=True):
        mono = "" if k == 0 else (s.var if k == 1 else f"{s.var}^{k}")
        parts.append(_coeff_times(s.terms[k], mono))
    return join_terms(parts)


__all__ = ["parse_ring", "parse_elem", "parse_series", "parse_laurent",
           "parse_poly", "parse_elem_list", "format_poly", "RingElem"]
