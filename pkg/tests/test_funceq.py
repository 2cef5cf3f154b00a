import math

import numpy as np
import pytest

from levymart.errors import ValidationError
from levymart.funceq import (
    FallingFactorialBasis,
    difference,
    frechet_solve,
    newton_coefficients,
    verify_general_solution,
)
from levymart.polynomial import Polynomial


def test_difference_of_falling_factorial():
    # Delta_2 x (x - 2) (x - 4) = 6 x (x - 2)
    q = FallingFactorialBasis(2.0, 3).polynomial
    assert difference(q, 2.0).coeffs == pytest.approx((0.0, -12.0, 6.0))


def test_solve_quadratic():
    q = frechet_solve(Polynomial((0.0, -6.0, 3.0)), 2.0)
    assert q.coeffs == pytest.approx((0.0, 4.0, -3.0, 0.5))


def test_constant_right_hand_side():
    assert frechet_solve(Polynomial.constant(3.0), 0.5).coeffs == pytest.approx((0.0, 6.0))


def test_zero_right_hand_side():
    assert frechet_solve(Polynomial.zero(), 1.0).is_zero


@pytest.mark.parametrize('y', [1.0, math.sqrt(2.0), -0.3])
def test_round_trip_on_random_polynomials(y):
    rng = np.random.default_rng(7)
    for degree in range(6):
        p = Polynomial(rng.normal(size=degree + 1))
        q = frechet_solve(p, y)
        assert q.degree == p.degree + 1
        assert q(0.0) == pytest.approx(0.0, abs=1e-12)
        assert difference(q, y).allclose(p, rtol=1e-8, atol=1e-10)


def test_newton_coefficients_reconstruct():
    p = Polynomial((1.0, -2.0, 0.5, 1.0))
    y = 0.7
    coeffs = newton_coefficients(p, y)
    rebuilt = sum(
        (FallingFactorialBasis(y, k).polynomial * a for k, a in enumerate(coeffs)),
        Polynomial.zero(),
    )
    assert rebuilt.allclose(p, rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize('y', [0.0, math.inf, math.nan])
def test_invalid_steps(y):
    with pytest.raises(ValidationError):
        frechet_solve(Polynomial.monomial(1), y)


def test_negative_basis_order():
    with pytest.raises(ValidationError):
        FallingFactorialBasis(1.0, -1)


class TestGeneralSolution:
    def test_solutions_differ_by_constant(self):
        q = frechet_solve(Polynomial((1.0, 2.0)), 1.5)
        check = verify_general_solution(q, q + 4.0, 1.5)
        assert check.holds
        assert check.to_dict() == {'holds': True, 'premise': 'premise-true'}

    def test_different_differences_are_vacuous(self):
        q = frechet_solve(Polynomial.monomial(1), 1.0)
        check = verify_general_solution(q, q + Polynomial.monomial(1), 1.0)
        assert check.holds
        assert not check.premise_holds
        assert check.to_dict()['premise'] == 'premise-false'


@pytest.mark.parametrize('y', [1.0, math.sqrt(2.0), -0.3])
@pytest.mark.parametrize('k', range(9))
def test_difference_lowers_basis_order(k, y):
    # Delta_y x^{((k+1)/y)} = (k + 1) y x^{(k/y)}
    lowered = difference(FallingFactorialBasis(y, k + 1).polynomial, y)
    expected = FallingFactorialBasis(y, k).polynomial * ((k + 1) * y)
    assert lowered.allclose(expected, rtol=1e-9)
