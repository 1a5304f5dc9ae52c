from itertools import product

import pytest
from hypothesis import given, strategies as st

from fgcalc.divisor import (Divisor, MeroDivisor, chern_coefficients, divisor_from_points,
                            divisor_lambda, divisor_of_laurent, divisor_of_series,
                            divisor_star, divisor_sum)
from fgcalc.errors import NotNilpotentRoot, NotWeierstrass, OrderTooLow, RingMismatch
from fgcalc.fgl import additive, multiplicative
from fgcalc.rings import RingDesc
from fgcalc.syntax import parse_laurent, parse_poly, parse_ring, parse_series

from oracles import eval_bivariate, poly_from_roots, random_weierstrass, seeded

ZE = parse_ring("Z[e;e^2]")
ZAB = parse_ring("Z[a;a^2][b;b^2]")
F2E = parse_ring("Z/2[e1;e1^2][e2;e2^2]")


def D(text, ring):
    return Divisor.from_poly(parse_poly(text, ring))


def test_from_points_examples():
    assert divisor_from_points([], ZE) == Divisor.zero(ZE)
    assert divisor_from_points([], ZE).degree == 0
    assert str(divisor_from_points([ZE.gen("e")])) == "t - e"
    a, b = ZAB.gen("a"), ZAB.gen("b")
    assert divisor_from_points([a, b]) == D("t^2 - (a+b)*t + a*b", ZAB)
    with pytest.raises(NotNilpotentRoot):
        divisor_from_points([ZE.one])


def test_invalid_divisor_polynomial():
    with pytest.raises(NotWeierstrass):
        D("t + 1", ZE)
    with pytest.raises(NotWeierstrass):
        D("2*t", ZE)


def test_sum_examples():
    a, b = ZAB.gen("a"), ZAB.gen("b")
    Da = divisor_from_points([a])
    assert divisor_sum(Da, Divisor.zero(ZAB)) == Da
    assert divisor_sum(Da, divisor_from_points([b])) == D("t^2 - (a+b)*t + a*b", ZAB)
    origin = Divisor.origin(ZE)
    assert str(origin + origin) == "t^2"
    with pytest.raises(RingMismatch):
        divisor_sum(origin, Divisor.origin(ZAB))


def test_star_examples():
    a, b = ZAB.gen("a"), ZAB.gen("b")
    Da, Db = divisor_from_points([a]), divisor_from_points([b])
    E = divisor_from_points([a, b])
    for F in (additive(ZAB), multiplicative(ZAB)):
        assert divisor_star(F, Divisor.origin(ZAB), E) == E
    assert divisor_star(additive(ZAB), Da, Db) == D("t - a - b", ZAB)
    assert divisor_star(multiplicative(ZAB), Da, Db) == D("t - a - b - a*b", ZAB)


def test_star_order_check():
    e1, e2 = F2E.gen("e1"), F2E.gen("e2")
    Dd = divisor_from_points([e1, e2, e1 + e2])
    with pytest.raises(OrderTooLow):
        divisor_star(multiplicative(F2E, 2), Dd, Dd)


def test_lambda_examples():
    a, b = ZAB.gen("a"), ZAB.gen("b")
    F = additive(ZAB)
    # the empty F-sum is 0, so lambda^0 is the divisor [0]: the unit for *
    assert divisor_lambda(F, [a, b], 0) == Divisor.origin(ZAB)
    assert divisor_lambda(F, [a, b], 1) == divisor_from_points([a, b])
    assert divisor_lambda(F, [a, b], 2) == D("t - (a+b)", ZAB)
    assert divisor_lambda(F, [a, b], 3) == Divisor.zero(ZAB)


def test_chern_examples():
    assert chern_coefficients(Divisor.zero(ZE)) == []
    assert chern_coefficients(D("t - e", ZE)) == [-ZE.gen("e")]


def test_divisor_of_series_examples():
    assert str(divisor_of_series(parse_series("x", RingDesc.Z()))) == "t"
    assert str(divisor_of_series(parse_series("e + x + x^2", ZE))) == "t + e"


def test_mero_divisors():
    e = ZE.gen("e")
    A = MeroDivisor(D("t - e", ZE))
    B = MeroDivisor(D("t^2", ZE), 1)
    assert B == MeroDivisor(Divisor.origin(ZE), 0)
    assert (A + B).positive == divisor_sum(A.positive, Divisor.origin(ZE))
    C = MeroDivisor(D("t - e", ZE), 2)
    assert (C + (-C)) == MeroDivisor(Divisor.zero(ZE))
    assert (C - C).degree == 0 and (-C).degree == 1
    # div(1 + e/x) = [ -e ] - [0]
    f = parse_laurent("1 + e*x^-1", ZE)
    assert divisor_of_laurent(f) == MeroDivisor(D("t + e", ZE), 1)
    assert divisor_of_laurent(f).degree == 0
    assert e * e == 0


# -- the semiring on split divisors --

NILS = [F2E.zero] + [x for x in (
    F2E.gen("e1"), F2E.gen("e2"), F2E.gen("e1") + F2E.gen("e2"),
    F2E.gen("e1") * F2E.gen("e2"), F2E.gen("e1") + F2E.gen("e1") * F2E.gen("e2"))]

roots = st.lists(st.sampled_from(NILS), max_size=3)
laws = st.sampled_from(["additive", "multiplicative"])


def _law(name):
    return additive(F2E, 16) if name == "additive" else multiplicative(F2E, 16)


def _brute_star(F, r, s):
    return tuple(poly_from_roots([eval_bivariate(F.F, a, b) for a in r for b in s], F2E))


@given(laws, roots, roots)
def test_star_matches_point_expansion(name, r, s):
    F = _law(name)
    got = divisor_star(F, divisor_from_points(r, F2E), divisor_from_points(s, F2E))
    assert got.coeffs == _brute_star(F, r, s)


@given(laws, roots, roots, roots)
def test_semiring_laws(name, r, s, u):
    F = _law(name)
    A, B, C = (divisor_from_points(x, F2E) for x in (r, s, u))
    assert divisor_star(F, A, B) == divisor_star(F, B, A)
    assert divisor_star(F, Divisor.origin(F2E), A) == A
    assert divisor_star(F, A, B + C) == divisor_star(F, A, B) + divisor_star(F, A, C)
    assert divisor_star(F, divisor_star(F, A, B), C) == divisor_star(F, A, divisor_star(F, B, C))


@given(roots, roots)
def test_whitney_convolution(r, s):
    A, B = divisor_from_points(r, F2E), divisor_from_points(s, F2E)
    ca = [F2E.one] + chern_coefficients(A)
    cb = [F2E.one] + chern_coefficients(B)
    want = [sum((ca[i] * cb[k - i] for i in range(len(ca)) if 0 <= k - i < len(cb)),
                F2E.zero) for k in range(len(ca) + len(cb) - 1)]
    assert [F2E.one] + chern_coefficients(A + B) == want


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 10 ** 9))
def test_divisor_of_product(d1, d2, seed):
    rng = seeded(seed)
    R = parse_ring("Z/3[e;e^3]")
    g1, g2 = random_weierstrass(rng, R, d1, 10), random_weierstrass(rng, R, d2, 10)
    assert divisor_of_series(g1 * g2) == divisor_of_series(g1) + divisor_of_series(g2)


@given(roots, st.integers(0, 3), roots, st.integers(0, 3))
def test_mero_degree_additive(r, k, s, m):
    A = MeroDivisor(divisor_from_points(r, F2E), k)
    B = MeroDivisor(divisor_from_points(s, F2E), m)
    assert (A + B).degree == A.degree + B.degree
    assert (A + (-A)) == MeroDivisor(Divisor.zero(F2E))


def test_exhaustive_small_distributivity():
    F = _law("multiplicative")
    small = [divisor_from_points(list(p), F2E) for n in range(2) for p in product(NILS[:3], repeat=n)]
    for A, B, C in product(small, repeat=3):
        assert divisor_star(F, A, B + C) == divisor_star(F, A, B) + divisor_star(F, A, C)
