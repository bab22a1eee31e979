from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fusionkit.exactnum import (
    AlgebraicReal,
    Cyclotomic,
    Ordering,
    alg_arith,
    alg_compare,
    alg_from_integer,
    alg_is_integer,
    alg_sqrt_integer,
    cyc_arith,
)


@pytest.mark.parametrize("n", [0, 1, 4, -3])
def test_from_integer_has_linear_minpoly(n):
    a = alg_from_integer(n)
    assert a.minpoly == (-n, 1)
    assert a.as_integer() == n


def test_zero_interval_is_a_point():
    assert alg_from_integer(0).interval == (0, 0)


@pytest.mark.parametrize("n, poly", [(2, (-2, 0, 1)), (3, (-3, 0, 1)), (5, (-5, 0, 1))])
def test_sqrt_of_non_square(n, poly):
    r = alg_sqrt_integer(n)
    assert r.minpoly == poly
    lo, hi = r.interval
    assert lo <= math.sqrt(n) <= hi
    assert lo >= 1


@pytest.mark.parametrize("n, root", [(1, 1), (4, 2), (9, 3), (49, 7)])
def test_sqrt_of_square_collapses(n, root):
    assert alg_sqrt_integer(n).minpoly == (-root, 1)


def test_sqrt_rejects_nonpositive():
    with pytest.raises(ValueError):
        alg_sqrt_integer(0)


def test_sqrt2_times_sqrt2():
    s = alg_sqrt_integer(2)
    assert alg_arith(s, s, "mul") == alg_from_integer(2)


def test_sqrt2_plus_sqrt2_is_sqrt8():
    s = alg_sqrt_integer(2)
    total = alg_arith(s, s, "add")
    assert total.minpoly == (-8, 0, 1)
    lo, hi = total.refined(Fraction(1, 10**12))
    assert lo <= 2 * math.sqrt(2) <= hi


def test_additive_identity():
    assert alg_arith(alg_from_integer(1), alg_from_integer(0), "add") == alg_from_integer(1)


def test_unknown_operation():
    with pytest.raises(ValueError):
        alg_arith(alg_from_integer(1), alg_from_integer(1), "div")


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (alg_sqrt_integer(2), alg_from_integer(1), Ordering.GT),
        (alg_sqrt_integer(2), alg_sqrt_integer(2), Ordering.EQ),
        (alg_sqrt_integer(2), AlgebraicReal.from_rational(Fraction(3, 2)), Ordering.LT),
    ],
)
def test_compare(a, b, expected):
    assert alg_compare(a, b) == expected


@pytest.mark.parametrize("a, expected", [(alg_from_integer(2), 2), (alg_sqrt_integer(2), None), (alg_from_integer(6), 6)])
def test_is_integer(a, expected):
    assert alg_is_integer(a) == expected


def test_golden_ratio():
    phi = AlgebraicReal.largest_real_root((-1, -1, 1))
    assert phi.minpoly == (-1, -1, 1)
    assert abs(float(phi) - (1 + math.sqrt(5)) / 2) < 1e-12


def test_json_round_trip():
    for a in [alg_sqrt_integer(2), alg_from_integer(7), AlgebraicReal.largest_real_root((-1, -1, 1))]:
        assert AlgebraicReal.from_json(a.to_json()) == a


def test_json_rejects_reducible_minpoly():
    with pytest.raises(ValueError):
        AlgebraicReal.from_json({"minpoly": [-4, 0, 1], "interval": ["1", "3"]})


# -- properties -----------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 51))
def test_sqrt_squared(n):
    s = alg_sqrt_integer(n)
    assert s * s == alg_from_integer(n)


small_alg = st.one_of(
    st.integers(-5, 5).map(alg_from_integer),
    st.integers(1, 12).map(alg_sqrt_integer),
    st.fractions(min_value=-3, max_value=3, max_denominator=5).map(AlgebraicReal.from_rational),
)


@given(small_alg, small_alg)
def test_arith_commutative(a, b):
    assert alg_arith(a, b, "add") == alg_arith(b, a, "add")
    assert alg_arith(a, b, "mul") == alg_arith(b, a, "mul")


@given(small_alg, small_alg, small_alg)
def test_arith_associative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@given(small_alg, small_alg)
def test_compare_eq_iff_canonical_identical(a, b):
    same_root = a.minpoly == b.minpoly and abs(float(a) - float(b)) < 1e-9
    assert (alg_compare(a, b) == Ordering.EQ) == same_root
    if same_root:
        assert hash(a) == hash(b)


@given(small_alg, small_alg)
def test_compare_matches_floats(a, b):
    fa, fb = float(a), float(b)
    if abs(fa - fb) > 1e-9:
        assert (alg_compare(a, b) == Ordering.LT) == (fa < fb)


@given(small_alg, small_alg)
def test_refined_interval_contains_numeric_root(a, b):
    c = a * b + a
    lo, hi = c.refined(Fraction(1, 10**12))
    assert hi - lo <= Fraction(1, 10**12)
    approx = float(a) * float(b) + float(a)
    assert float(lo) - 1e-9 <= approx <= float(hi) + 1e-9


# -- cyclotomic numbers ------------------------------------------------------


def test_i_squared():
    i = Cyclotomic.zeta(4)
    assert cyc_arith(i, i, "mul") == Cyclotomic.from_rational(-1)


def test_zeta8_plus_conjugate_is_sqrt2():
    z = Cyclotomic.zeta(8)
    s = cyc_arith(z, cyc_arith(z, None, "conj"), "add")
    assert s.is_real()
    assert abs(complex(s) - math.sqrt(2)) < 1e-12
    assert s * s == Cyclotomic.from_rational(2)
    assert s.to_algebraic_real() == alg_sqrt_integer(2)


def test_add_zero():
    a = Cyclotomic.zeta(5) + Cyclotomic.from_rational(Fraction(1, 3))
    assert cyc_arith(a, Cyclotomic.from_rational(0), "add") == a


def test_conductor_is_minimized():
    # zeta_6 + zeta_6^5 = 1 lives in Q
    z = Cyclotomic.zeta(6)
    assert (z + z.conj()).is_rational()
    assert Cyclotomic.root_of_unity(12, 4) == Cyclotomic.zeta(3)


@pytest.mark.parametrize("n, e", [(16, 3), (8, 1), (12, 5), (1, 0), (5, 2)])
def test_root_exponent(n, e):
    g = math.gcd(n, e) if e else n
    assert Cyclotomic.root_of_unity(n, e).root_order() == n // g


def test_inverse_and_division():
    a = Cyclotomic.zeta(7) + 2
    assert a * a.inverse() == Cyclotomic.from_rational(1)
    assert (a / a) == Cyclotomic.from_rational(1)


def test_cyclotomic_json_round_trip():
    a = Cyclotomic.zeta(16) * Fraction(3, 7) + Cyclotomic.zeta(3)
    assert Cyclotomic.from_json(a.to_json()) == a


cyc = st.builds(
    lambda n, e, c: Cyclotomic.root_of_unity(n, e) * c,
    st.integers(1, 24),
    st.integers(0, 47),
    st.fractions(min_value=-4, max_value=4, max_denominator=6),
)


@given(cyc, cyc, cyc)
def test_cyclotomic_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(cyc, cyc)
def test_cyclotomic_matches_complex(a, b):
    assert cmath.isclose(complex(a * b), complex(a) * complex(b), abs_tol=1e-9)
    assert cmath.isclose(complex(a + b), complex(a) + complex(b), abs_tol=1e-9)


@given(cyc)
def test_conjugation_is_an_involution(a):
    assert a.conj().conj() == a
    assert (a * a.conj()).is_real()
