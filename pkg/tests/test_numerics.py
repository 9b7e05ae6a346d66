from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foulkes.numerics import (
    Polynomial,
    TruncatedSeries,
    apply_euler_operator,
    as_rational,
    binom_int,
    binom_shift_poly,
    cyclotomic_polynomial,
    matrix_inverse,
    matmul,
    rational_sqrt,
    rational_to_str,
    reduce_cyclotomic,
    solve_linear,
)


def test_binom_int_examples():
    assert binom_int(5, 2) == 10
    assert binom_int(-1, 3) == -1
    for m in (-7, 0, 3, 11):
        assert binom_int(m, 0) == 1


def test_binom_int_negative_k_rejected():
    with pytest.raises(ValueError):
        binom_int(3, -1)


@given(st.integers(-40, 40), st.integers(1, 20))
def test_binom_int_pascal(m, k):
    assert binom_int(m, k) == binom_int(m - 1, k) + binom_int(m - 1, k - 1)


@given(st.integers(0, 30), st.integers(0, 30))
def test_binom_int_matches_math_comb(m, k):
    assert binom_int(m, k) == comb(m, k)


def test_binom_shift_examples():
    assert binom_shift_poly(1, 1, 1) == Polynomial.x()
    assert binom_shift_poly(2, 2, 1) == Polynomial((0, Fraction(1, 2), Fraction(1, 2)))
    assert binom_shift_poly(2, 2, 2) == Polynomial((Fraction(3, 8), Fraction(1, 2), Fraction(1, 8)))


@given(st.integers(-5, 8), st.integers(0, 6), st.integers(1, 4))
def test_binom_shift_at_lattice_points(a, n, r):
    p = binom_shift_poly(a, n, r)
    assert p.degree == n
    for t in range(-10, 11):
        assert p(r * t + 1) == binom_int(t + a, n)


def test_euler_operator_examples():
    order = 12
    geo = TruncatedSeries.geometric(order)
    assert apply_euler_operator(geo, 0) == geo
    assert apply_euler_operator(geo, 2) == TruncatedSeries([(k + 1) ** 2 for k in range(order)], order)
    a3 = TruncatedSeries.from_polynomial((1 - Polynomial.x()) ** 4, order) * apply_euler_operator(geo, 3)
    assert a3.to_polynomial() == Polynomial((1, 4, 1))


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=5)
series = st.lists(coeff, min_size=0, max_size=8)


@settings(max_examples=60)
@given(series, series, series)
def test_series_ring_laws(a, b, c):
    A, B, C = (TruncatedSeries(x, 8) for x in (a, b, c))
    assert (A * B) * C == A * (B * C)
    assert A * B == B * A
    assert A * (B + C) == A * B + A * C


@given(coeff.filter(lambda f: f != 0), st.lists(coeff, max_size=7))
def test_series_inverse(lead, rest):
    A = TruncatedSeries([lead] + rest, 8)
    assert A * A.inverse() == TruncatedSeries((1,), 8)


def test_polynomial_canonical_zero():
    z = Polynomial((0, 0, 0))
    assert z.coeffs == ()
    assert z.degree is None
    assert z == Polynomial()
    assert Polynomial((1, 2)) - Polynomial((1, 2)) == z


def test_polynomial_division():
    p = Polynomial((1, 0, 0, -1))
    q, rem = p.divmod(Polynomial((1, -1)))
    assert rem.is_zero()
    assert q == Polynomial((1, 1, 1))
    with pytest.raises(ArithmeticError):
        Polynomial((1, 0, 1)).exact_div(Polynomial((1, -1)))


def test_rational_serialization():
    assert rational_to_str(Fraction(3, 4)) == "3/4"
    assert rational_to_str(Fraction(-6, 3)) == "-2"
    assert as_rational("-3/6") == Fraction(-1, 2)
    assert Polynomial((Fraction(1, 2), 0, 3)).to_json() == ["1/2", "0", "3"]


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        rational_sqrt(2)


def test_cyclotomic():
    assert cyclotomic_polynomial(1) == Polynomial((-1, 1))
    assert cyclotomic_polynomial(4) == Polynomial((1, 0, 1))
    assert cyclotomic_polynomial(6) == Polynomial((1, -1, 1))
    # 1 + zeta + zeta^2 = 0 for a primitive cube root
    assert reduce_cyclotomic([1, 1, 1], 3).is_zero()


@settings(max_examples=40)
@given(st.integers(1, 5), st.data())
def test_solve_linear_round_trip(m, data):
    entry = st.integers(-6, 6)
    a = [[data.draw(entry) for _ in range(m)] for _ in range(m)]
    for i in range(m):
        a[i][i] += 40  # diagonally dominant, so invertible
    inv = matrix_inverse(a)
    assert matmul(a, inv) == [[int(i == j) for j in range(m)] for i in range(m)]
    b = [[data.draw(entry)] for _ in range(m)]
    assert matmul(a, solve_linear(a, b)) == b
