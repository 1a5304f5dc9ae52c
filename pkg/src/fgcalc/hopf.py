"""Finite free Hopf algebras given by structure constants.

With basis ``e_0, ..., e_(m-1)``:

* ``mult[i][j][k]``   coefficient of ``e_k`` in ``e_i e_j``
* ``unit[k]``         coefficient of ``e_k`` in ``1``
* ``comult[i][j][k]`` coefficient of ``e_j (x) e_k`` in ``psi(e_i)``
* ``counit[i]``       ``eps(e_i)``
* ``antipode[i][k]``  coefficient of ``e_k`` in ``chi(e_i)`` (optional)

Duality transposes these tensors, so it is only meaningful because the
module is free of finite rank.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from math import comb

from .errors import AntipodeVerificationFailed, NotFiltered, ParseError
from .rings import RingDesc


@dataclass(frozen=True)
class Violation:
    identity: str
    indices: tuple
    detail: str = ""

    def __str__(self):
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.identity}[{idx}]" + (f": {self.detail}" if self.detail else "")


def _tensor(ring, data, shape):
    if len(shape) == 1:
        return tuple(ring.elem(x) for x in data)
    return tuple(_tensor(ring, row, shape[1:]) for row in data)


class FiniteHopf:
    def __init__(self, ring, rank, mult, unit, comult, counit, antipode=None):
        m = rank
        self.ring = ring
        self.rank = m
        self.mult = _tensor(ring, mult, (m, m, m))
        self.unit = _tensor(ring, unit, (m,))
        self.comult = _tensor(ring, comult, (m, m, m))
        self.counit = _tensor(ring, counit, (m,))
        self.antipode = None if antipode is None else _tensor(ring, antipode, (m, m))
        for t, depth in ((self.mult, 3), (self.comult, 3), (self.unit, 1),
                         (self.counit, 1)):
            _check_shape(t, m, depth)
        if self.antipode is not None:
            _check_shape(self.antipode, m, 2)

    def with_antipode(self, chi):
        return FiniteHopf(self.ring, self.rank, self.mult, self.unit, self.comult,
                          self.counit, chi)

    def __eq__(self, other):
        if not isinstance(other, FiniteHopf):
            return NotImplemented
        return (self.ring == other.ring and self.rank == other.rank
                and self.mult == other.mult and self.unit == other.unit
                and self.comult == other.comult and self.counit == other.counit
                and self.antipode == other.antipode)

    __hash__ = None

    def __repr__(self):
        return f"FiniteHopf({self.ring}, rank={self.rank})"

    # -- linear algebra on coordinate vectors --

    def multiply(self, u, v):
        zero = self.ring.zero
        out = [zero] * self.rank
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.mult[i][j]):
                    if c:
                        out[k] = out[k] + ab * c
        return out

    def coproduct(self, v):
        """``psi(v)`` as an m x m grid."""
        zero = self.ring.zero
        m = self.rank
        out = [[zero] * m for _ in range(m)]
        for i, a in enumerate(v):
            if not a:
                continue
            for j in range(m):
                for k in range(m):
                    c = self.comult[i][j][k]
                    if c:
                        out[j][k] = out[j][k] + a * c
        return out

    def basis(self, i):
        return [self.ring.one if k == i else self.ring.zero for k in range(self.rank)]

    def apply_antipode(self, v, chi=None):
        chi = self.antipode if chi is None else chi
        zero = self.ring.zero
        out = [zero] * self.rank
        for i, a in enumerate(v):
            if a:
                for k, c in enumerate(chi[i]):
                    if c:
                        out[k] = out[k] + a * c
        return out


def _check_shape(t, m, depth):
    if len(t) != m:
        raise ValueError(f"structure tensor has length {len(t)}, expected {m}")
    if depth > 1:
        for row in t:
            _check_shape(row, m, depth - 1)


def _dot(u, v, ring):
    s = ring.zero
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def _convolution(H, chi, left):
    """``mu(chi (x) 1) psi`` (left) or ``mu(1 (x) chi) psi`` applied to each basis vector."""
    m, ring = H.rank, H.ring
    rows = []
    for i in range(m):
        total = [ring.zero] * m
        for j in range(m):
            for k in range(m):
                c = H.comult[i][j][k]
                if not c:
                    continue
                if left:
                    prod = H.multiply(H.apply_antipode(H.basis(j), chi), H.basis(k))
                else:
                    prod = H.multiply(H.basis(j), H.apply_antipode(H.basis(k), chi))
                total = [t + c * p for t, p in zip(total, prod)]
        rows.append(total)
    return rows


def hopf_check(H):
    """All bialgebra identities (and antipode identities when given); [] if valid."""
    ring, m = H.ring, H.rank
    out = []
    E = [H.basis(i) for i in range(m)]
    prods = [[H.multiply(E[i], E[j]) for j in range(m)] for i in range(m)]
    for i, j, l in product(range(m), repeat=3):
        if H.multiply(prods[i][j], E[l]) != H.multiply(E[i], prods[j][l]):
            out.append(Violation("associativity", (i, j, l)))
    for i in range(m):
        if H.multiply(H.unit, E[i]) != E[i]:
            out.append(Violation("left unit", (i,)))
        if H.multiply(E[i], H.unit) != E[i]:
            out.append(Violation("right unit", (i,)))
    for i in range(m):
        psi = H.comult[i]
        # (psi (x) 1) psi  vs  (1 (x) psi) psi, as m^3 arrays
        left = [[[ring.zero] * m for _ in range(m)] for _ in range(m)]
        right = [[[ring.zero] * m for _ in range(m)] for _ in range(m)]
        for j in range(m):
            for k in range(m):
                c = psi[j][k]
                if not c:
                    continue
                for a in range(m):
                    for b in range(m):
                        d = H.comult[j][a][b]
                        if d:
                            left[a][b][k] = left[a][b][k] + c * d
                        d = H.comult[k][a][b]
                        if d:
                            right[j][a][b] = right[j][a][b] + c * d
        if left != right:
            out.append(Violation("coassociativity", (i,)))
        lc = [_dot(H.counit, [psi[j][k] for j in range(m)], ring) for k in range(m)]
        rc = [_dot(H.counit, psi[j], ring) for j in range(m)]
        if lc != E[i]:
            out.append(Violation("left counit", (i,)))
        if rc != E[i]:
            out.append(Violation("right counit", (i,)))
    psis = [H.comult[i] for i in range(m)]
    for i in range(m):
        for j in range(m):
            lhs = H.coproduct(prods[i][j])
            rhs = _grid_product(H, psis[i], psis[j])
            if lhs != rhs:
                out.append(Violation("comultiplication is multiplicative", (i, j)))
            if _dot(H.counit, prods[i][j], ring) != H.counit[i] * H.counit[j]:
                out.append(Violation("counit is multiplicative", (i, j)))
    unit_grid = [[a * b for b in H.unit] for a in H.unit]
    if H.coproduct(H.unit) != unit_grid:
        out.append(Violation("comultiplication preserves unit", ()))
    if _dot(H.counit, H.unit, ring) != 1:
        out.append(Violation("counit preserves unit", ()))
    if H.antipode is not None:
        target = [[eps * u for u in H.unit] for eps in H.counit]
        for side, left in (("left antipode", True), ("right antipode", False)):
            got = _convolution(H, H.antipode, left)
            for i in range(m):
                if got[i] != target[i]:
                    out.append(Violation(side, (i,)))
    return out


def _grid_product(H, A, B):
    """Product in ``H (x) H`` of two m x m coefficient grids."""
    m, ring = H.rank, H.ring
    out = [[ring.zero] * m for _ in range(m)]
    for a, b, c, d in product(range(m), repeat=4):
        x, y = A[a][b], B[c][d]
        if not x or not y:
            continue
        xy = x * y
        for p in range(m):
            s = H.mult[a][c][p]
            if not s:
                continue
            for q in range(m):
                t = H.mult[b][d][q]
                if t:
                    out[p][q] = out[p][q] + xy * s * t
    return out


def grouplike_check(H, v):
    v = [H.ring.elem(a) for a in v]
    if _dot(H.counit, v, H.ring) != 1:
        return False
    return H.coproduct(v) == [[a * b for b in v] for a in v]


def hopf_antipode(H):
    """Antipode by recursion down the basis; needs ``psi(e_i) - e_0 (x) e_i``
    to involve only ``e_j (x) e_k`` with ``k < i``."""
    ring, m = H.ring, H.rank
    if H.unit != tuple(H.basis(0)) or H.counit[0] != 1:
        raise NotFiltered("basis must start with e_0 = 1 and eps(e_0) = 1")
    chi = []
    for i in range(m):
        psi = H.comult[i]
        if psi[0][i] != 1:
            raise NotFiltered(f"psi(e_{i}) lacks the term e_0 (x) e_{i}")
        total = [H.counit[i] * u for u in H.unit]
        for j in range(m):
            for k in range(m):
                c = psi[j][k]
                if not c or (j, k) == (0, i):
                    continue
                if k >= i:
                    raise NotFiltered(f"psi(e_{i}) has a term e_{j} (x) e_{k} with "
                                      f"{k} >= {i}")
                prod = H.multiply(H.basis(j), chi[k])
                total = [t - c * p for t, p in zip(total, prod)]
        chi.append(total)
    target = [[eps * u for u in H.unit] for eps in H.counit]
    # the recursion solves mu(1 (x) chi) psi = eta eps; the other side is a real check
    for left in (True, False):
        if _convolution(H, chi, left=left) != target:
            side = "mu(chi (x) 1) psi" if left else "mu(1 (x) chi) psi"
            raise AntipodeVerificationFailed(f"{side} differs from eta eps")
    return [list(row) for row in chi]


def cartier_dual(H):
    m = H.rank
    mult = [[[H.comult[i][j][k] for i in range(m)] for k in range(m)] for j in range(m)]
    comult = [[[H.mult[j][k][i] for k in range(m)] for j in range(m)] for i in range(m)]
    chi = None
    if H.antipode is not None:
        chi = [[H.antipode[k][i] for k in range(m)] for i in range(m)]
    return FiniteHopf(H.ring, m, mult, H.counit, comult, H.unit, chi)


# -- bundled examples ---------------------------------------------------------------

def _zeros(m, depth):
    if depth == 1:
        return [0] * m
    return [_zeros(m, depth - 1) for _ in range(m)]


def trivial(ring):
    return FiniteHopf(ring, 1, [[[1]]], [1], [[[1]]], [1], [[1]])


def group_algebra(ring, n):
    """``R[Z/n]`` with basis ``g^0, ..., g^(n-1)``."""
    mult = _zeros(n, 3)
    comult = _zeros(n, 3)
    chi = _zeros(n, 2)
    for i in range(n):
        for j in range(n):
            mult[i][j][(i + j) % n] = 1
        comult[i][i][i] = 1
        chi[i][(-i) % n] = 1
    unit = [1] + [0] * (n - 1)
    return FiniteHopf(ring, n, mult, unit, comult, [1] * n, chi)


def functions_on_group(ring, n):
    """Functions on ``Z/n`` with the basis of point indicators."""
    mult = _zeros(n, 3)
    comult = _zeros(n, 3)
    chi = _zeros(n, 2)
    for i in range(n):
        mult[i][i][i] = 1
        for j in range(n):
            comult[(i + j) % n][i][j] = 1
        chi[i][(-i) % n] = 1
    counit = [1] + [0] * (n - 1)
    return FiniteHopf(ring, n, mult, [1] * n, comult, counit, chi)


def divided_power(ring, r):
    """``e_i e_j = C(i+j, i) e_(i+j)``, ``psi(e_n) = sum e_j (x) e_(n-j)``, cut at rank r.

    A Hopf algebra when the cut is compatible, e.g. rank p over F_p.
    """
    mult = _zeros(r, 3)
    comult = _zeros(r, 3)
    for i in range(r):
        for j in range(r):
            if i + j < r:
                mult[i][j][i + j] = comb(i + j, i)
        for j in range(i + 1):
            comult[i][j][i - j] = 1
    counit = [1] + [0] * (r - 1)
    unit = [1] + [0] * (r - 1)
    return FiniteHopf(ring, r, mult, unit, comult, counit)


def primitive_truncated(ring, r):
    """``R[x]/(x^r)`` with ``x`` primitive; a Hopf algebra for r = p over F_p."""
    mult = _zeros(r, 3)
    comult = _zeros(r, 3)
    for i in range(r):
        for j in range(r):
            if i + j < r:
                mult[i][j][i + j] = 1
        for j in range(i + 1):
            comult[i][j][i - j] = comb(i, j)
    counit = [1] + [0] * (r - 1)
    unit = [1] + [0] * (r - 1)
    return FiniteHopf(ring, r, mult, unit, comult, counit)


def bundled_examples():
    """Named valid examples used by the test suite and the demos."""
    Z = RingDesc.Z()
    out = {"trivial over Z": trivial(Z),
           "Z[Z/2]": group_algebra(Z, 2),
           "Z[Z/3]": group_algebra(Z, 3),
           "functions on Z/3": functions_on_group(Z, 3)}
    for p in (2, 3, 5):
        Fp = RingDesc.Zmod(p)
        dp = divided_power(Fp, p)
        out[f"divided powers over F{p}"] = dp.with_antipode(hopf_antipode(dp))
        pt = primitive_truncated(Fp, p)
        out[f"F{p}[x]/(x^{p}), x primitive"] = pt.with_antipode(hopf_antipode(pt))
    return out


# -- file format ------------------------------------------------------------------

def _sparse_vec(v):
    return [[k, str(c)] for k, c in enumerate(v) if c]


def to_json(H):
    m = H.rank
    doc = {
        "ring": str(H.ring),
        "rank": m,
        "mult": [[_sparse_vec(H.mult[i][j]) for j in range(m)] for i in range(m)],
        "unit": _sparse_vec(H.unit),
        "comult": [[[j, k, str(H.comult[i][j][k])]
                    for j in range(m) for k in range(m) if H.comult[i][j][k]]
                   for i in range(m)],
        "counit": [str(c) for c in H.counit],
    }
    if H.antipode is not None:
        doc["antipode"] = [_sparse_vec(row) for row in H.antipode]
    return doc


def from_json(doc):
    """Build a :class:`FiniteHopf` from the dict layout written by :func:`to_json`."""
    from .syntax import parse_elem, parse_ring

    def field(name):
        if name not in doc:
            raise ParseError(f"missing field {name!r}", json.dumps(doc)[:200], 0)
        return doc[name]

    ring = parse_ring(str(field("ring")))
    m = field("rank")
    if not isinstance(m, int) or m < 1:
        raise ParseError("rank must be a positive integer", str(m), 0)

    def elem(s):
        return parse_elem(str(s), ring)

    def vec(entries):
        v = [ring.zero] * m
        for k, c in entries:
            v[_index(k, m)] = v[_index(k, m)] + elem(c)
        return v

    mult = field("mult")
    if len(mult) != m or any(len(row) != m for row in mult):
        raise ParseError("mult must be rank x rank", str(m), 0)
    mult = [[vec(mult[i][j]) for j in range(m)] for i in range(m)]
    comult_in = field("comult")
    if len(comult_in) != m:
        raise ParseError("comult must have rank entries", str(m), 0)
    comult = []
    for entries in comult_in:
        grid = [[ring.zero] * m for _ in range(m)]
        for j, k, c in entries:
            j, k = _index(j, m), _index(k, m)
            grid[j][k] = grid[j][k] + elem(c)
        comult.append(grid)
    counit = [elem(c) for c in field("counit")]
    if len(counit) != m:
        raise ParseError("counit must have rank entries", str(m), 0)
    chi = None
    if doc.get("antipode") is not None:
        chi = [vec(row) for row in doc["antipode"]]
        if len(chi) != m:
            raise ParseError("antipode must have rank rows", str(m), 0)
    return FiniteHopf(ring, m, mult, vec(field("unit")), comult, counit, chi)


def _index(k, m):
    if not isinstance(k, int) or not 0 <= k < m:
        raise ParseError(f"basis index {k!r} out of range", str(k), 0)
    return k


def load_hopf(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, text, exc.pos) from None
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object", text, 0)
    try:
        return from_json(doc)
    except (TypeError, ValueError, KeyError, IndexError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed Hopf file: {exc}", text, 0) from None


def dump_hopf(H, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_hopf(H))


def dumps_hopf(H):
    """JSON text with one top-level field per line."""
    doc = to_json(H)
    lines = [f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"
