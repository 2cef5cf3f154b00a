import math

import numpy as np
import pytest

from levymart.catalog import get_process
from levymart.errors import DomainError, ValidationError
from levymart.expmart import (
    STATED_BOUNDS,
    build_exp_martingale,
    esscher_tilt,
    solve_lambda,
    wald_martingale,
)
from levymart.levy_core import FULL_LINE, HALF_LINE, eval_laplace_exponent
from levymart.simulate import TimeGrid, sample_paths


class TestSolveLambda:
    def test_brownian_two_roots(self, brownian):
        report = solve_lambda(brownian, 0.5)
        assert report.roots == pytest.approx((-1.0, 1.0), abs=1e-8)
        assert not report.monotone
        assert report.convexity_bound == 2
        assert report.regime == FULL_LINE
        assert report.stated_bound == STATED_BOUNDS[FULL_LINE]
        assert report.eta_minimum == pytest.approx((0.0, 0.0), abs=1e-8)

    def test_gamma_single_root(self, gamma):
        report = solve_lambda(gamma, math.log(2.0))
        assert report.roots == pytest.approx((0.5,), abs=1e-8)
        assert report.monotone
        assert report.convexity_bound == 1
        assert report.regime == HALF_LINE

    def test_alpha_below_minimum(self, brownian):
        report = solve_lambda(brownian, -1.0)
        assert report.roots == ()

    def test_alpha_at_minimum(self, brownian):
        report = solve_lambda(brownian, 0.0)
        assert report.roots == pytest.approx((0.0,), abs=1e-5)

    def test_drifted_brownian(self):
        # lam^2/2 + lam = 1.5 -> lam = 1, -3
        spec = get_process('brownian', {'drift': 1.0})
        assert solve_lambda(spec, 1.5).roots == pytest.approx((-3.0, 1.0), abs=1e-8)

    @pytest.mark.parametrize('name, alpha', [('jump-diffusion', 0.8), ('bilateral-gamma', 0.3), ('tempered-stable', 0.2)])
    def test_roots_solve_the_equation(self, name, alpha):
        spec = get_process(name)
        report = solve_lambda(spec, alpha, kappa_max=5.0)
        assert report.roots
        for lam in report.roots:
            assert eval_laplace_exponent(spec, lam) == pytest.approx(alpha, abs=1e-9)
        assert report.to_dict()['roots'] == list(report.roots)

    def test_light_tails_overflowing_at_the_cap(self):
        spec = get_process('cpoisson-gauss-jumps', {'scale': 1.0})
        report = solve_lambda(spec, 0.5)
        # symmetric N(0, 1) jumps: eta(lam) = e^{lam^2 / 2} - 1
        root = math.sqrt(2.0 * math.log(1.5))
        assert report.roots == pytest.approx((-root, root), abs=1e-8)
        assert not report.monotone
        for lam in report.roots:
            assert eval_laplace_exponent(spec, lam) == pytest.approx(0.5, abs=1e-9)

    def test_degenerate_domain(self, pareto):
        with pytest.raises(ValidationError):
            solve_lambda(pareto, 1.0)

    def test_trivial_process(self, trivial):
        with pytest.raises(ValidationError):
            solve_lambda(trivial, 0.0)


class TestBuild:
    def test_two_root_martingale(self, brownian):
        report = solve_lambda(brownian, 0.5)
        martingale = build_exp_martingale(brownian, report, 1.0, 2.0)
        assert martingale.g.lam1 == pytest.approx(-1.0)
        assert martingale.g.lam2 == pytest.approx(1.0)
        assert martingale.normalizer(2.0) == pytest.approx(3.0 * math.e)

    def test_single_root_rejects_second_weight(self, gamma):
        report = solve_lambda(gamma, math.log(2.0))
        assert build_exp_martingale(gamma, report, 2.0).g.single
        with pytest.raises(ValidationError):
            build_exp_martingale(gamma, report, 1.0, 1.0)

    def test_no_roots(self, brownian):
        with pytest.raises(ValidationError):
            build_exp_martingale(brownian, solve_lambda(brownian, -1.0), 1.0)

    def test_weights(self, brownian):
        report = solve_lambda(brownian, 0.5)
        with pytest.raises(ValidationError):
            build_exp_martingale(brownian, report, 0.0, 0.0)
        with pytest.raises(ValidationError):
            build_exp_martingale(brownian, report, -1.0, 1.0)

    def test_normalized_mean_is_constant(self, brownian):
        martingale = build_exp_martingale(brownian, solve_lambda(brownian, 0.5), 1.0, 1.0)
        batch = sample_paths(brownian, TimeGrid.through(0.5, 1.0), 20000, seed=3)
        for t in (0.5, 1.0):
            ratio = martingale.g(batch.at(t)) / martingale.normalizer(t)
            assert ratio.mean() == pytest.approx(1.0, abs=0.03)


class TestEsscher:
    @pytest.mark.parametrize('name', ['jump-diffusion', 'gamma', 'cpoisson-two-point'])
    def test_tilted_exponent(self, name):
        spec = get_process(name)
        theta, lam = 0.3, 0.4
        tilted = esscher_tilt(spec, theta)
        expected = eval_laplace_exponent(spec, lam + theta) - eval_laplace_exponent(spec, theta)
        assert eval_laplace_exponent(tilted, lam) == pytest.approx(expected, rel=1e-8)
        assert tilted.name == f"{name}-tilted"

    def test_brownian_tilt_shifts_drift(self, brownian):
        tilted = esscher_tilt(brownian, 0.7)
        assert tilted.drift == pytest.approx(0.7)
        assert tilted.sigma2 == 1.0

    def test_outside_domain(self, gamma):
        with pytest.raises(DomainError):
            esscher_tilt(gamma, 1.5)


def test_wald_martingale_mean(brownian):
    batch = sample_paths(brownian, TimeGrid.through(0.5, 1.0), 20000, seed=4)
    values = wald_martingale(brownian, 0.5, batch)
    assert values.shape == batch.values.shape
    np.testing.assert_allclose(values[:, 0], 1.0)
    assert values[:, -1].mean() == pytest.approx(1.0, abs=0.03)
