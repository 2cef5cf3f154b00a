import math

import numpy as np
import pytest
from conftest import FINITE_MOMENT_PROCESSES

from levymart.catalog import get_process
from levymart.errors import MomentError, ValidationError
from levymart.generator import apply_to_polynomial
from levymart.moments import (
    cumulants,
    cumulants_from_moments,
    exp_moment_domain,
    first_infinite_order,
    moment_finite,
    moment_polynomial,
    moments_from_cumulants,
    raw_moment_polynomials,
    semigroup_on_polynomial,
)
from levymart.polynomial import Polynomial


def test_brownian_fourth_moment(brownian):
    assert moment_polynomial(brownian, 4).coeffs == pytest.approx((0.0, 0.0, 3.0), abs=1e-12)


def test_brownian_with_drift_moments():
    spec = get_process('brownian', {'drift': 2.0, 'sigma2': 1.0})
    # E X_t^2 = t + 4 t^2
    assert moment_polynomial(spec, 2).coeffs == pytest.approx((0.0, 1.0, 4.0))


def test_two_point_cumulants(two_point):
    assert cumulants(two_point, 4) == pytest.approx([0.0, 1.0, 0.0, 1.0], abs=1e-14)
    # E X_t^4 = kappa_4 t + 3 kappa_2^2 t^2
    assert moment_polynomial(two_point, 4).coeffs == pytest.approx((0.0, 1.0, 3.0))


def test_gamma_cumulants(gamma):
    # kappa_n = (n - 1)! c / beta^n
    assert cumulants(gamma, 4) == pytest.approx([1.0, 1.0, 2.0, 6.0], rel=1e-9)


def test_moment_polynomial_of_order_zero(gamma):
    assert moment_polynomial(gamma, 0).coeffs == (1.0,)


def test_moment_error_carries_first_failing_order(pareto):
    with pytest.raises(MomentError) as info:
        cumulants(pareto, 4)
    assert info.value.order == 2
    assert first_infinite_order(pareto, 4) == 2
    assert first_infinite_order(get_process('gamma'), 6) is None


def test_moment_finiteness_on_power_tail(pareto, one_sided_pareto):
    for spec in (pareto, one_sided_pareto):
        assert moment_finite(spec, 1)
        assert not moment_finite(spec, 2)
    with pytest.raises(ValidationError):
        moment_finite(pareto, -1)


def test_moments_from_cumulants_numbers():
    mus = moments_from_cumulants([0.0, 1.0, 0.0, 0.0])
    assert [m.coefficient(0) for m in mus] == pytest.approx([1.0, 0.0, 1.0, 0.0, 3.0])


def test_cumulant_moment_maps_are_inverse():
    kappas = [Polynomial((0.0, k)) for k in (0.3, 1.2, -0.7, 2.5, 0.1)]
    back = cumulants_from_moments(moments_from_cumulants(kappas)[1:])
    for original, recovered in zip(kappas, back):
        assert recovered.allclose(original, rtol=1e-12)


@pytest.mark.parametrize('name', FINITE_MOMENT_PROCESSES)
def test_semigroup_time_derivative_is_generator(name):
    spec = get_process(name)
    for n in range(1, 7):
        p = Polynomial.monomial(n)
        semigroup = semigroup_on_polynomial(spec, p)
        assert semigroup.time_coefficient(1).allclose(apply_to_polynomial(spec, p), rtol=1e-10)
        assert semigroup.time_coefficient(0).allclose(p, rtol=1e-12)


@pytest.mark.parametrize('name', FINITE_MOMENT_PROCESSES)
@pytest.mark.parametrize('t1, t2', [(0.3, 1.7), (1.0, 1.0), (2.5, 0.25)])
def test_semigroup_property(name, t1, t2):
    spec = get_process(name)
    p = Polynomial(tuple(np.random.default_rng(17).uniform(-2.0, 2.0, 6)))
    inner = semigroup_on_polynomial(spec, p).at_time(t2)
    twice = semigroup_on_polynomial(spec, inner).at_time(t1)
    once = semigroup_on_polynomial(spec, p).at_time(t1 + t2)
    assert twice.allclose(once, rtol=1e-10)


def test_cumulants_of_narrow_distant_jumps():
    spec = get_process('cpoisson-gauss-jumps', {'mu': 50.0, 'scale': 0.01})
    # kappa_1 = rate mu, kappa_2 = rate (mu^2 + scale^2)
    assert cumulants(spec, 2) == pytest.approx([50.0, 2500.0001], rel=1e-9)


def test_semigroup_on_square(brownian):
    semigroup = semigroup_on_polynomial(brownian, Polynomial.monomial(2))
    assert semigroup(2.0, 3.0) == pytest.approx(7.0)


def test_raw_moments_length(gamma):
    assert len(raw_moment_polynomials(gamma, 3)) == 4


class TestExpMomentDomain:
    def test_gamma(self, gamma):
        domain = exp_moment_domain(gamma)
        assert domain.upper == 1.0
        assert domain.lower_capped and not domain.upper_capped
        assert domain.contains(0.99)
        assert not domain.contains(1.0)
        assert domain.to_dict()['lower'] == -math.inf

    def test_bilateral_gamma(self):
        spec = get_process('bilateral-gamma', {'beta_plus': 2.0, 'beta_minus': 3.0})
        assert exp_moment_domain(spec).as_tuple() == (-3.0, 2.0)

    def test_brownian_is_capped_both_ways(self, brownian):
        domain = exp_moment_domain(brownian, kappa_max=10.0)
        assert domain.as_tuple() == (-10.0, 10.0)
        assert domain.lower_capped and domain.upper_capped
        assert str(domain) == '(-inf, inf)'

    def test_power_tail_is_degenerate(self, pareto):
        domain = exp_moment_domain(pareto)
        assert not domain.nondegenerate

    def test_invalid_cap(self, gamma):
        with pytest.raises(ValidationError):
            exp_moment_domain(gamma, kappa_max=0.0)

    def test_cumulant_generating_function_matches_eta(self, gamma):
        # eta(lam) = sum kappa_n lam^n / n! near 0
        from levymart.levy_core import eval_laplace_exponent
        lam = 0.05
        series = sum(k * lam ** n / math.factorial(n) for n, k in enumerate(cumulants(gamma, 6), start=1))
        assert eval_laplace_exponent(gamma, lam) == pytest.approx(series, rel=1e-8)
