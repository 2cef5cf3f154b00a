import numpy as np
import pytest

from levymart.errors import ValidationError
from levymart.polynomial import BiPolynomial, Polynomial, as_polynomial, falling_factorial


def test_trailing_zeros_are_trimmed():
    p = Polynomial((1.0, 2.0, 0.0, 0.0))
    assert p.coeffs == (1.0, 2.0)
    assert p.degree == 1


def test_zero_polynomial_has_degree_minus_one():
    assert Polynomial.zero().degree == -1
    assert Polynomial((0.0, 0.0)).is_zero
    assert Polynomial.constant(3).degree == 0


def test_non_finite_coefficients_are_rejected():
    with pytest.raises(ValidationError):
        Polynomial((1.0, float('nan')))


def test_arithmetic():
    p = Polynomial((1.0, 1.0))
    q = Polynomial((-1.0, 1.0))
    assert (p * q).coeffs == (-1.0, 0.0, 1.0)
    assert (p + q).coeffs == (0.0, 2.0)
    assert (p - p).is_zero
    assert (2 * p).coeffs == (2.0, 2.0)
    assert (1 - p).coeffs == (0.0, -1.0)


def test_derivative_and_shift():
    p = Polynomial.monomial(3)
    assert p.derivative().coeffs == (0.0, 0.0, 3.0)
    assert p.derivative(3).coeffs == (6.0,)
    assert p.derivative(4).is_zero
    # (x + 2)^3
    assert p.shift(2.0).coeffs == pytest.approx((8.0, 12.0, 6.0, 1.0))


def test_constancy_and_nonconstant_part():
    p = Polynomial((5.0, 1e-10, 2e-10))
    assert p.is_constant(1e-9)
    assert not p.is_constant(1e-11)
    assert Polynomial((5.0, 1.0, 2.0)).nonconstant_part().coeffs == (0.0, 1.0, 2.0)


def test_allclose_pads_shorter_polynomial():
    assert Polynomial((1.0, 2.0)).allclose(Polynomial((1.0, 2.0 + 1e-14)), rtol=1e-12)
    assert not Polynomial((1.0, 2.0)).allclose(Polynomial((1.0, 2.0, 1e-3)))


def test_evaluation_is_vectorized():
    p = Polynomial((1.0, 0.0, 1.0))
    np.testing.assert_allclose(p(np.array([0.0, 1.0, 2.0])), [1.0, 2.0, 5.0])


def test_falling_factorial():
    # x (x - 2) (x - 4)
    ff = falling_factorial(2.0, 3)
    assert ff.coeffs == pytest.approx((0.0, 8.0, -6.0, 1.0))
    assert falling_factorial(1.0, 0).coeffs == (1.0,)


def test_str():
    assert str(Polynomial((1.0, -1.0, 3.0))) == "3x^2 - x + 1"
    assert str(Polynomial.zero()) == "0"


def test_bipolynomial_slices():
    # x^2 + t
    q = BiPolynomial(((0.0, 1.0), (0.0, 0.0), (1.0, 0.0)))
    assert q(2.0, 3.0) == pytest.approx(7.0)
    assert q.degree_x == 2
    assert q.degree_t == 1
    assert q.time_coefficient(1).coeffs == (1.0,)
    assert q.time_coefficient(0).coeffs == (0.0, 0.0, 1.0)
    assert q.time_coefficient(5).is_zero
    assert q.at_time(3.0).coeffs == pytest.approx((3.0, 0.0, 1.0))
    assert q.at_point(2.0).coeffs == pytest.approx((4.0, 1.0))


def test_as_polynomial():
    assert as_polynomial(2.0).coeffs == (2.0,)
    assert as_polynomial([0, 1]).degree == 1
    p = Polynomial((1.0,))
    assert as_polynomial(p) is p
