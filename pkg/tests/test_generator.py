import math

import numpy as np
import pytest
from conftest import CENTRED_PROCESSES, FINITE_MOMENT_PROCESSES

from levymart.catalog import get_process
from levymart.errors import DomainError, MomentError, ValidationError
from levymart.generator import (
    ExpMix,
    Verdict,
    apply_numeric,
    apply_to_exponential,
    apply_to_polynomial,
    check_rate,
    classify_additive,
    classify_multiplicative,
)
from levymart.polynomial import Polynomial


class TestExpMix:
    def test_rates_are_ordered(self):
        g = ExpMix(1.0, 2.0, 3.0, 1.0)
        assert (g.a, g.lam1, g.b, g.lam2) == (3.0, 1.0, 1.0, 2.0)

    def test_equal_rates_collapse(self):
        g = ExpMix(1.0, 1.0, 2.0, 1.0)
        assert (g.a, g.lam1, g.b, g.lam2) == (3.0, 1.0, 0.0, 1.0)
        assert g.single

    def test_zero_first_weight_moves_second_term(self):
        g = ExpMix(0.0, 1.0, 2.0, 3.0)
        assert (g.a, g.lam1, g.b, g.lam2) == (2.0, 3.0, 0.0, 3.0)

    def test_negative_weights_rejected(self):
        with pytest.raises(ValidationError):
            ExpMix(-1.0, 1.0)

    def test_evaluation_and_derivatives(self):
        g = ExpMix(0.5, -1.0, 0.5, 1.0)
        assert g(0.3) == pytest.approx(math.cosh(0.3))
        assert g(0.3, order=1) == pytest.approx(math.sinh(0.3))
        assert g.derivative(2)(0.3) == pytest.approx(math.cosh(0.3))


class TestPolynomials:
    def test_brownian_square(self, brownian):
        assert apply_to_polynomial(brownian, Polynomial.monomial(2)).coeffs == (1.0,)

    def test_gamma_cube(self, gamma):
        # A x^3 = 3 kappa_1 x^2 + 3 kappa_2 x + kappa_3
        ap = apply_to_polynomial(gamma, Polynomial.monomial(3))
        assert ap.coeffs == pytest.approx((2.0, 3.0, 3.0), rel=1e-9)

    def test_constants_are_annihilated(self, gamma):
        assert apply_to_polynomial(gamma, Polynomial.constant(4.0)).is_zero

    def test_infinite_moment(self, pareto):
        with pytest.raises(MomentError):
            apply_to_polynomial(pareto, Polynomial.monomial(2))

    @pytest.mark.parametrize('name', FINITE_MOMENT_PROCESSES)
    def test_linearity(self, name):
        spec = get_process(name)
        rng = np.random.default_rng(23)
        p = Polynomial(tuple(rng.uniform(-1.0, 1.0, 6)))
        q = Polynomial(tuple(rng.uniform(-1.0, 1.0, 4)))
        combined = apply_to_polynomial(spec, p * 2.0 + q * -3.0)
        separate = apply_to_polynomial(spec, p) * 2.0 + apply_to_polynomial(spec, q) * -3.0
        assert combined.allclose(separate, rtol=1e-12)


class TestExponentials:
    def test_eigenvalue(self, brownian):
        assert apply_to_exponential(brownian, 2.0) == pytest.approx(2.0)

    def test_outside_domain(self, gamma):
        with pytest.raises(DomainError):
            apply_to_exponential(gamma, 1.0)
        with pytest.raises(DomainError):
            check_rate(gamma, 2.0)

    def test_capped_side_is_admissible(self, gamma):
        assert check_rate(gamma, -80.0).lower_capped

    def test_zero_rate_on_heavy_tails(self, pareto):
        assert apply_to_exponential(pareto, 0.0) == 0.0
        check_rate(pareto, 0.0)
        with pytest.raises(DomainError):
            check_rate(pareto, 0.1)


class TestNumericGenerator:
    @pytest.mark.parametrize('name', ['gamma', 'jump-diffusion', 'cpoisson-two-point', 'tempered-stable'])
    def test_agrees_with_closed_form_on_cubes(self, name):
        spec = get_process(name)
        p = Polynomial.monomial(3)
        x = 0.3
        expected = apply_to_polynomial(spec, p)(x)
        value = apply_numeric(spec, p, x, p.derivative(1), p.derivative(2))
        assert value == pytest.approx(expected, rel=1e-7, abs=1e-9)

    def test_agrees_with_eigenvalue_on_exponentials(self, gamma):
        lam, x = 0.4, -0.2
        g = ExpMix(1.0, lam)
        value = apply_numeric(gamma, g, x, g.derivative(1), g.derivative(2))
        assert value == pytest.approx(-math.log(1.0 - lam) * math.exp(lam * x), rel=1e-8)

    def test_finite_differences_when_derivatives_missing(self, brownian):
        value = apply_numeric(brownian, np.sin, 0.7)
        assert value == pytest.approx(-0.5 * math.sin(0.7), rel=1e-5)


class TestClassifyAdditive:
    def test_brownian_quadratic(self, brownian):
        result = classify_additive(brownian, Polynomial((0.0, 0.0, 5.0)))
        assert result.verdict is Verdict.MARTINGALE
        assert result.alpha == pytest.approx(5.0)
        assert result.witness is None

    @pytest.mark.parametrize('name', CENTRED_PROCESSES)
    def test_random_quadratics_on_centred_processes(self, name):
        spec = get_process(name)
        rng = np.random.default_rng(11)
        for _ in range(50):
            p = Polynomial(rng.normal(size=3))
            assert classify_additive(spec, p).verdict is Verdict.MARTINGALE

    @pytest.mark.parametrize('name', FINITE_MOMENT_PROCESSES)
    def test_higher_degrees_are_rejected(self, name):
        spec = get_process(name)
        for n in range(3, 7):
            result = classify_additive(spec, Polynomial.monomial(n))
            assert result.verdict is Verdict.NOT_MARTINGALE
            assert result.witness.coefficient(0) == 0.0
            assert not result.witness.is_zero

    def test_drift_rules_out_quadratics(self, gamma):
        assert classify_additive(gamma, Polynomial((0.0, 1.0))).verdict is Verdict.MARTINGALE
        assert classify_additive(gamma, Polynomial((0.0, 0.0, 1.0))).verdict is Verdict.NOT_MARTINGALE

    def test_trivial_process_is_indeterminate(self, trivial):
        result = classify_additive(trivial, Polynomial.monomial(4))
        assert result.verdict is Verdict.INDETERMINATE

    def test_verdict_record(self, brownian):
        record = classify_additive(brownian, Polynomial.monomial(3)).to_dict()
        assert record['verdict'] == 'not-martingale-function'
        assert record['witness_coeffs'] == [0.0, 3.0]
        assert record['tolerance_used'] > 0


class TestClassifyMultiplicative:
    def test_cosh_on_brownian(self, brownian):
        result = classify_multiplicative(brownian, ExpMix(0.5, -1.0, 0.5, 1.0))
        assert result.verdict is Verdict.MARTINGALE
        assert result.alpha == pytest.approx(0.5)

    def test_unequal_exponents(self, brownian):
        result = classify_multiplicative(brownian, ExpMix(1.0, 1.0, 1.0, 2.0))
        assert result.verdict is Verdict.NOT_MARTINGALE
        assert result.witness == pytest.approx((0.5, 2.0))

    def test_single_exponential_always_qualifies(self, gamma):
        result = classify_multiplicative(gamma, ExpMix(2.0, 0.5))
        assert result.verdict is Verdict.MARTINGALE
        assert result.alpha == pytest.approx(math.log(2.0), rel=1e-9)

    def test_symmetric_jumps(self, two_point):
        result = classify_multiplicative(two_point, ExpMix(1.0, -0.7, 3.0, 0.7))
        assert result.verdict is Verdict.MARTINGALE

    def test_zero_function(self, brownian):
        with pytest.raises(ValidationError):
            classify_multiplicative(brownian, ExpMix(0.0, 1.0))

    def test_rate_outside_domain(self, gamma):
        with pytest.raises(DomainError):
            classify_multiplicative(gamma, ExpMix(1.0, 0.5, 1.0, 1.5))

    def test_constant_on_heavy_tails(self, pareto):
        result = classify_multiplicative(pareto, ExpMix(1.0, 0.0))
        assert result.verdict is Verdict.MARTINGALE
        assert result.alpha == 0.0

    def test_trivial_process(self, trivial):
        assert classify_multiplicative(trivial, ExpMix(1.0, 1.0, 1.0, 2.0)).verdict is Verdict.INDETERMINATE
