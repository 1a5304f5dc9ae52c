import threading
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from fgcalc.errors import (AxiomViolation, Cancelled, DerivativeNotZero, NotACoordinate,
                           NotAdditive, RequiresRationalCoefficients, UnsupportedRing,
                           WrongCharacteristic)
from fgcalc.fgl import (FGL, XY, additive, additive_decompose, fgl_conjugate, fgl_log,
                        fgl_validate, frobenius_decompose, height, hom_check,
                        inverse_series, invariant_differential, landweber_sequence,
                        multiplicative, n_series, universal_fgl)
from fgcalc.rings import RingDesc
from fgcalc.series import TruncSeries
from fgcalc.syntax import parse_ring, parse_series

from oracles import sympy_series_coeffs, universal_three_series

Z = RingDesc.Z()
Q = RingDesc.Q()


def S(text, ring, vars=("x",), order=8):
    return parse_series(text, ring, vars, order)


def law(text, ring, order=8):
    return fgl_validate(S(text, ring, XY, order))


# -- validation --

def test_valid_laws():
    assert law("x + y", Z) == additive(Z)
    assert law("x + y + x*y", Z) == multiplicative(Z)


@pytest.mark.parametrize("text, axiom, exponent, value", [
    ("x + y + x^2", "unit", (2, 0), 1),
    ("x + y + x*y^2", "commutativity", (1, 2), 1),
    ("x + y + x^2*y + x*y^2", "associativity", (3, 1, 1), 2),
])
def test_axiom_violations(text, axiom, exponent, value):
    with pytest.raises(AxiomViolation) as info:
        law(text, Z)
    err = info.value
    assert err.axiom == axiom and err.exponent == exponent
    if value is not None:
        assert err.value == value


# -- the universal law --

def test_universal_small():
    U3 = universal_fgl(3)
    assert [g.name for g in U3.ring.gens] == ["a11"]
    assert U3.relations == ()
    U4 = universal_fgl(4)
    assert [g.name for g in U4.ring.gens] == ["a11", "a12"]
    assert [g.grade for g in U4.ring.gens] == [-1, -2]


@pytest.mark.parametrize("N", [4, 5, 6])
def test_universal_relations(N):
    U = universal_fgl(N)
    rel = dict(U.relations)
    for e, p in U.relations:
        assert p.is_homogeneous()
        # swapping x and z negates the associator
        assert rel[e[::-1]] == -p


def test_universal_cancellation():
    ev = threading.Event()
    ev.set()
    with pytest.raises(Cancelled):
        universal_fgl(6, cancel=ev)


def test_three_series_oracle():
    U = universal_fgl(4)
    got = n_series(U.fgl, 3)
    ref, (a11, a12) = universal_three_series()
    R = U.ring
    env = {a11: R.gen("a11"), a12: R.gen("a12")}
    for k in range(4):
        poly = sympy.Poly(ref[k], a11, a12)
        want = R.zero
        for (i, j), c in poly.terms():
            want = want + env[a11] ** i * env[a12] ** j * int(c)
        assert got[(k,)] == want
    assert str(got) == "3*x + 3*a11*x^2 + (a11^2 + 8*a12)*x^3"
    grades = [set(got[(k,)].grades()) for k in (1, 2, 3)]
    assert grades == [{0}, {-1}, {-2}]


# -- n-series --

def test_nseries_examples():
    H = multiplicative(Z, 4)
    assert n_series(H, 1) == S("x", Z, order=4)
    assert n_series(H, -1) == S("-x + x^2 - x^3", Z, order=4)
    assert n_series(H, 0).is_zero()


@pytest.mark.parametrize("n", [-3, -2, 2, 3, 5])
def test_multiplicative_nseries_binomial_oracle(n):
    x = sympy.Symbol("x")
    ref = sympy_series_coeffs((1 + x) ** n - 1, x, 8)
    got = n_series(multiplicative(Z), n)
    assert [got[(k,)] for k in range(8)] == [int(c) for c in ref]


@pytest.mark.parametrize("F", [multiplicative(Z, 7),
                               multiplicative(parse_ring("Z[a]"), 6, parse_ring("Z[a]").gen("a")),
                               fgl_conjugate(multiplicative(Z, 7), S("x + x^2", Z, order=7))])
def test_nseries_additivity(F):
    for m in range(-4, 5):
        for n in range(-4, 5):
            lhs = n_series(F, m + n)
            rhs = F.F.substitute({"x": n_series(F, m), "y": n_series(F, n)})
            assert lhs == rhs
    iota = inverse_series(F)
    assert iota.compose(iota) == S("x", F.ring, order=F.order)


# -- coordinate changes and homomorphisms --

def test_conjugate_examples():
    assert fgl_conjugate(additive(Q), S("2*x", Q)) == additive(Q)
    assert fgl_conjugate(multiplicative(Q), S("3*x", Q)) == law("x + y + x*y/3", Q)
    Qa = parse_ring("Q[a]")
    Ha = multiplicative(Qa, 8, Qa.gen("a"))
    assert fgl_conjugate(Ha, S("3*x", Qa)) == law("x + y + a/3*x*y", Qa)
    R = parse_ring("Z[a]")
    F = multiplicative(R, 6, R.gen("a"))
    assert fgl_conjugate(F, S("x", R, order=6)) == F
    with pytest.raises(NotACoordinate):
        fgl_conjugate(additive(Z), S("2*x", Z))


coords = st.lists(st.integers(-3, 3), min_size=5, max_size=5).map(
    lambda cs: S("x", Z, order=7) + TruncSeries(Z, ("x",), 7,
                                                {(k + 2,): c for k, c in enumerate(cs)}))


@given(coords, coords)
def test_conjugation_is_an_action(f, g):
    F = multiplicative(Z, 7)
    assert fgl_conjugate(F, f.compose(g)) == fgl_conjugate(fgl_conjugate(F, g), f)


def test_hom_check_examples():
    F = multiplicative(Z)
    assert hom_check(F, F, S("x", Z))
    R = parse_ring("Z/2[a;a^2]")
    assert hom_check(additive(R), multiplicative(R), S("a*x", R))
    assert not hom_check(additive(Z), additive(Z), S("x^2", Z))


def test_log_is_a_homomorphism_to_additive():
    F = multiplicative(Q)
    assert hom_check(F, additive(Q), fgl_log(F))


# -- characteristic p --

@pytest.mark.parametrize("p", [2, 3, 5])
def test_additive_decompose(p):
    R = RingDesc.Zmod(p)
    f = S(f"x + x^{p}", R, order=p * p + 1)
    assert additive_decompose(f, p) == [1, 1]


def test_additive_decompose_errors():
    F3 = RingDesc.Zmod(3)
    with pytest.raises(NotAdditive) as info:
        additive_decompose(S("x^2", F3), 3)
    assert info.value.exponent == (1, 1)
    assert additive_decompose(S("0", F3), 3) == []
    with pytest.raises(WrongCharacteristic):
        additive_decompose(S("x", Z), 3)


def test_frobenius_decompose():
    F2 = RingDesc.Zmod(2)
    assert frobenius_decompose(S("x^2", F2), 2) == S("x", F2, order=4)
    R = parse_ring("Z/2[a]")
    assert frobenius_decompose(S("a*x^2 + x^4", R), 2) == S("a*x + x^2", R, order=4)
    with pytest.raises(DerivativeNotZero):
        frobenius_decompose(S("x", F2), 2)


def test_invariant_differential():
    assert invariant_differential(additive(Z)) == S("1", Z, ("s",), 7)
    R = parse_ring("Z[a]")
    assert invariant_differential(multiplicative(R, 8, R.gen("a"))) == S("1 + a*s", R, ("s",))
    U = universal_fgl(4)
    assert str(invariant_differential(U.fgl)) == "1 + a11*s + a12*s^2"


def test_log_examples():
    assert fgl_log(additive(Q)) == S("x", Q)
    assert fgl_log(multiplicative(Q, 4)) == S("x - x^2/2 + x^3/3", Q, order=4)
    with pytest.raises(RequiresRationalCoefficients):
        fgl_log(multiplicative(Z))


def test_log_with_parameter_against_sympy():
    R = parse_ring("Q[a]")
    a = R.gen("a")
    got = fgl_log(multiplicative(R, 8, a))
    x, s = sympy.symbols("x s")
    ref = sympy_series_coeffs(sympy.log(1 + s * x) / s, x, 8)
    for k in range(1, 8):
        want = R.zero
        for (i,), q in sympy.Poly(ref[k], s).terms():
            want = want + a ** i * Fraction(int(q.p), int(q.q))
        assert got[(k,)] == want


@pytest.mark.parametrize("p, order", [(2, 8), (3, 27), (5, 8)])
def test_height_multiplicative(p, order):
    h = height(multiplicative(RingDesc.Zmod(p), order), p)
    assert (h.value, h.unit) == (1, True)
    assert str(h) == "1 (unit)"


def test_height_additive_and_errors():
    h = height(additive(RingDesc.Zmod(3)), 3)
    assert h.infinite and str(h) == "InfiniteUpToOrder(8)"
    with pytest.raises(WrongCharacteristic):
        height(additive(Z), 2)


@given(coords)
def test_height_invariant_under_conjugation(f):
    F2 = RingDesc.Zmod(2)
    f = TruncSeries(F2, ("x",), 7, {e: F2.elem(c.constant) for e, c in f.terms.items()})
    F = multiplicative(F2, 7)
    if not f[(1,)]:
        return
    assert height(fgl_conjugate(F, f), 2) == height(F, 2)


# -- Landweber --

@pytest.mark.parametrize("p", [2, 3, 5])
def test_landweber_multiplicative(p):
    u = landweber_sequence(multiplicative(Z, p + 1), p, 1)
    assert u[0].value == p and u[0].regular is True
    assert u[1].value == 1 and u[1].ring == RingDesc.Zmod(p) and u[1].regular is True
    # u1 is the x^p coefficient of (1+x)^p - 1
    assert comb(p, p) == 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_landweber_additive(p):
    u = landweber_sequence(additive(Z, p + 1), p, 1)
    assert u[1].value == 0 and u[1].regular is False


def test_landweber_edge_cases():
    assert [(t.value, t.regular) for t in landweber_sequence(additive(Z), 5, 0)] == [(5, True)]
    with pytest.raises(UnsupportedRing):
        landweber_sequence(additive(RingDesc.Zmod(4)), 2, 1)


def test_landweber_universal():
    U = universal_fgl(6)
    u = landweber_sequence(U.fgl, 2, 2)
    assert str(u[1].value) == "a11" and u[1].regular is True
    assert u[2].regular is not False


def test_associativity_violation_agrees_with_universal_relations():
    # specializing the universal relations at a12 = 1 (all other a_kl = 0)
    # must reproduce the first associator coefficient of x + y + x^2 y + x y^2
    U = universal_fgl(6)
    image = {g.name: (Z.one if g.name == "a12" else Z.zero) for g in U.ring.gens}
    nonzero = [(e, p.substitute(Z, image)) for e, p in U.relations]
    nonzero = [(e, v) for e, v in nonzero if v]
    with pytest.raises(AxiomViolation) as info:
        law("x + y + x^2*y + x*y^2", Z, order=6)
    assert (info.value.exponent, info.value.value) == nonzero[0]
