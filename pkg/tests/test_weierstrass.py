import pytest
from hypothesis import given, strategies as st

from fgcalc import polys
from fgcalc.errors import NotWeierstrass, OrderTooLow
from fgcalc.rings import RingDesc, is_nilpotent, is_unit
from fgcalc.series import TruncSeries
from fgcalc.syntax import format_poly, parse_ring, parse_series
from fgcalc.weierstrass import weierstrass_degree, weierstrass_factor, weierstrass_reduce

from oracles import pool, random_weierstrass, seeded

ZE = parse_ring("Z[e;e^2]")


def S(text, ring, order=8):
    return parse_series(text, ring, ("x",), order)


def test_degree_examples():
    assert weierstrass_degree(S("2*x + x^2", RingDesc.Zmod(4))).degree == 2
    assert weierstrass_degree(S("x", RingDesc.Z())).degree == 1
    with pytest.raises(NotWeierstrass):
        weierstrass_degree(S("2 + 3*x", RingDesc.Zmod(6)))


def test_degree_witnesses():
    rep = weierstrass_degree(S("4 + 2*x + 3*x^2", RingDesc.Zmod(8)))
    assert rep.degree == 2 and rep.nilpotent_witnesses == ((0, 2), (1, 3))


def test_factor_examples():
    h, u = weierstrass_factor(S("e + x + x^2", ZE, order=5))
    assert format_poly(h, "x") == "x + e"
    assert u == S("1 - e + x", ZE, order=5)
    h, u = weierstrass_factor(S("x + x^2", RingDesc.Z()))
    assert format_poly(h, "x") == "x" and u == S("1 + x", RingDesc.Z())


def test_factor_z4():
    g = S("2*x + x^2", RingDesc.Zmod(4), order=6)
    h, u = weierstrass_factor(g)
    assert len(h) == 3 and h[2] == 1
    assert all(is_nilpotent(c) for c in h[:2])
    assert TruncSeries.from_coeffs(g.ring, "x", h, order=6) * u == g


def test_factor_needs_order():
    with pytest.raises(OrderTooLow):
        weierstrass_factor(S("2 + 2*x + x^3", RingDesc.Zmod(4), order=3))


def test_reduce_degree_one():
    # e + x + x^2 has Weierstrass degree 1 (its x-coefficient is a unit), so the
    # quotient is free on {1} and x = -e there
    g = S("e + x + x^2", ZE)
    assert format_poly(weierstrass_reduce(S("x", ZE), g), "x") == "-e"
    assert weierstrass_reduce(S("x^2", ZE), g) == []
    assert weierstrass_reduce(S("x^3", ZE), g) == []


def test_reduce_degree_two():
    g = S("e + e*x + x^2", ZE)
    assert format_poly(weierstrass_reduce(S("x^2", ZE), g), "x") == "-e*x - e"
    assert format_poly(weierstrass_reduce(S("x^3", ZE), g), "x") == "-e*x"
    assert format_poly(weierstrass_reduce(S("1", ZE), g), "x") == "1"


def test_reduce_oracle_by_substitution():
    # independent check: in R[[x]]/(g) with g = h*u, reducing x^k by repeated
    # use of x^n = -(lower part of h)
    R = RingDesc.Zmod(8)
    g = S("4 + 2*x + x^2 + 3*x^3", R, order=10)
    h, _ = weierstrass_factor(g)
    for k in range(8):
        p = [R.zero] * k + [R.one]
        while len(p) > 2:
            top = p.pop()
            shift = len(p) - 2
            for j in range(2):
                p[shift + j] = p[shift + j] - top * h[j]
        assert weierstrass_reduce(TruncSeries.from_coeffs(R, "x", [0] * k + [1], order=10),
                                  g) == polys.trim(p)


# -- properties --

rings = st.sampled_from(pool())


@given(rings, st.integers(0, 3), st.integers(0, 10 ** 9))
def test_round_trip_and_uniqueness(ring, degree, seed):
    rng = seeded(seed)
    g = random_weierstrass(rng, ring, degree, 8)
    h, u = weierstrass_factor(g)
    H = TruncSeries.from_coeffs(ring, "x", h, order=8)
    assert H * u == g
    assert len(h) == degree + 1 and h[-1] == 1
    assert all(is_nilpotent(c) for c in h[:-1]) and is_unit(u.constant)
    assert weierstrass_factor(H * u) == (h, u)


@given(rings, st.integers(0, 2), st.integers(0, 2), st.integers(0, 10 ** 9))
def test_degree_additive(ring, d1, d2, seed):
    rng = seeded(seed)
    g1 = random_weierstrass(rng, ring, d1, 8)
    g2 = random_weierstrass(rng, ring, d2, 8)
    assert weierstrass_degree(g1 * g2).degree == d1 + d2


@given(rings, st.integers(1, 3), st.integers(0, 10 ** 9))
def test_reduce_is_multiplicative(ring, degree, seed):
    rng = seeded(seed)
    g = random_weierstrass(rng, ring, degree, 10)
    f1 = random_weierstrass(rng, ring, 0, 10)
    f2 = random_weierstrass(rng, ring, 1, 10)
    r1, r2 = weierstrass_reduce(f1, g), weierstrass_reduce(f2, g)
    prod = polys.mul(r1, r2, ring)
    assert weierstrass_reduce(f1 * f2, g) == weierstrass_reduce(prod, g)
