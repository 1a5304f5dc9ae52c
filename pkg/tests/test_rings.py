from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fgcalc.errors import NotAUnit, NotAlmostIdempotent, RingMismatch, UnsupportedRing
from fgcalc.rings import (RingDesc, SquareMatrix, arith, charpoly, determinant, invert_unit, is_nilpotent,
                          is_unit, lift_idempotent, nilpotency_index, poly_at_matrix,
                          split_ring)
from fgcalc.syntax import parse_elem, parse_ring

from oracles import charpoly_cofactor

Z4 = RingDesc.Zmod(4)
Z12 = RingDesc.Zmod(12)
ZE = parse_ring("Z[e;e^2]")


def test_modular_addition():
    assert arith(Z4.elem(2), Z4.elem(3), "add") == 1


def test_power_relation_kills_square():
    e = ZE.gen("e")
    assert arith(e, e, "mul") == 0


def test_free_generators_multiply():
    R = parse_ring("Z[a11][a12]")
    prod = arith(R.gen("a11"), R.gen("a12"), "mul")
    assert str(prod) == "a11*a12"


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Z4.elem(1) + Z12.elem(1)


def test_canonical_coefficients():
    Q = RingDesc.Q()
    assert Q.elem(Fraction(2, 4)) == Q.elem(Fraction(1, 2))
    assert Z12.elem(-1) == 11


@pytest.mark.parametrize("text, ring, expected", [
    ("6", "Z/12", True),
    ("0", "Z", True),
    ("1 + e", "Z[e;e^2]", False),
    ("2", "Z/4", True),
    ("2", "Z/6", False),
    ("3*e + 2", "Z/4[e;e^3]", True),
])
def test_is_nilpotent(text, ring, expected):
    R = parse_ring(ring)
    assert is_nilpotent(parse_elem(text, R)) is expected


def test_units_and_inverses():
    assert is_unit(Z12.elem(5)) and invert_unit(Z12.elem(5)) == 5
    one_e = parse_elem("1 + e", ZE)
    assert invert_unit(one_e) == parse_elem("1 - e", ZE)
    assert not is_unit(RingDesc.Z().elem(2))
    with pytest.raises(NotAUnit):
        invert_unit(RingDesc.Z().elem(2))


def test_nilpotency_index():
    assert nilpotency_index(Z12.elem(6)) == 2
    assert nilpotency_index(RingDesc.Zmod(8).elem(2)) == 3


@pytest.mark.parametrize("n, e, expected", [(12, 3, 9), (4, 1, 1), (12, 4, 4)])
def test_lift_idempotent_examples(n, e, expected):
    assert lift_idempotent(RingDesc.Zmod(n).elem(e)) == expected


def test_lift_idempotent_rejects():
    with pytest.raises(NotAlmostIdempotent):
        lift_idempotent(RingDesc.Z().elem(2))


@pytest.mark.parametrize("n, expected", [
    (6, [(3, "Z/2"), (4, "Z/3")]),
    (12, [(9, "Z/4"), (4, "Z/3")]),
    (5, [(1, "Z/5")]),
])
def test_split_ring_examples(n, expected):
    got = [(e.constant, str(r)) for e, r in split_ring(RingDesc.Zmod(n))]
    assert got == expected


def test_split_ring_unsupported():
    with pytest.raises(UnsupportedRing):
        split_ring(RingDesc.Z())
    with pytest.raises(UnsupportedRing):
        split_ring(parse_ring("Z/6[e;e^2]"))


def test_charpoly_examples():
    R = RingDesc.Z()
    assert charpoly(SquareMatrix.identity(R, 2)) == [1, -2, 1]
    assert charpoly(SquareMatrix(R, [[0, 0], [1, 0]])) == [1, 0, 0]
    assert charpoly(SquareMatrix(R, [[1, 2], [3, 4]])) == [1, -5, -2]


def test_det_of_rank_projection_deformation():
    # det((u - 1) A + 1) with A = diag(1, 0) is u
    R = parse_ring("Z[u]")
    u = R.gen("u")
    A = SquareMatrix(R, [[1, 0], [0, 0]])
    M = SquareMatrix(R, [[(u - 1) * A[i, j] + (1 if i == j else 0) for j in range(2)]
                         for i in range(2)])
    assert determinant(M) == u


# -- properties --

moduli = st.sampled_from([4, 6, 8, 9, 12, 18, 30, 60])


@given(moduli, st.integers(0, 10 ** 6))
def test_lift_idempotent_property(n, a):
    R = RingDesc.Zmod(n)
    e = R.elem(a)
    if not is_nilpotent(e * e - e):
        with pytest.raises(NotAlmostIdempotent):
            lift_idempotent(e)
        return
    t = lift_idempotent(e)
    assert t * t == t
    assert is_nilpotent(t - e)


@given(st.sampled_from([4, 8, 9, 12]), st.integers(0, 100), st.integers(0, 100),
       st.integers(0, 100))
def test_lift_idempotent_with_nilpotent_generator(n, a, b, c):
    R = RingDesc.Zmod(n).adjoin("e", power=3)
    e = R.gen("e")
    x = R.elem(a) + e * b + e * e * c
    if not is_nilpotent(x * x - x):
        return
    t = lift_idempotent(x)
    assert t * t == t and is_nilpotent(t - x)
    # uniqueness: perturbing by a nilpotent gives the same lift
    assert lift_idempotent(x + e * 5) == t


@given(st.integers(2, 3000))
def test_split_ring_decomposition(n):
    parts = split_ring(RingDesc.Zmod(n))
    es = [e for e, _ in parts]
    assert sum(es, RingDesc.Zmod(n).zero) == 1
    for i, a in enumerate(es):
        for j, b in enumerate(es):
            assert a * b == (a if i == j else 0)


@given(st.integers(2, 50), st.lists(st.integers(0, 10 ** 4), min_size=9, max_size=9))
def test_charpoly_matches_cofactor_oracle(n, entries):
    R = RingDesc.Zmod(n)
    M = SquareMatrix(R, [entries[0:3], entries[3:6], entries[6:9]])
    assert charpoly(M) == charpoly_cofactor(M)
    assert poly_at_matrix(charpoly(M), M).is_zero()


@given(st.lists(st.integers(-50, 50), min_size=4, max_size=4),
       st.lists(st.integers(-50, 50), min_size=4, max_size=4))
def test_charpoly_with_nilpotents(xs, ys):
    e = ZE.gen("e")
    M = SquareMatrix(ZE, [[x + y * e for x, y in zip(xs[i:i + 2], ys[i:i + 2])]
                          for i in (0, 2)])
    assert charpoly(M) == charpoly_cofactor(M)


@given(st.sampled_from([4, 8, 12, 27]), st.integers(0, 500), st.integers(0, 500))
def test_unit_plus_nilpotent_is_unit(n, a, b):
    R = RingDesc.Zmod(n).adjoin("e", power=2)
    u, z = R.elem(a), R.elem(b) * R.gen("e") + R.elem(b)
    if is_unit(u) and is_nilpotent(z):
        assert is_unit(u + z)
        assert (u + z) * invert_unit(u + z) == 1
