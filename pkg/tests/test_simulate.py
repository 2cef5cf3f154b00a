import cmath
import math
from functools import lru_cache

import numpy as np
import pytest

from levymart.catalog import CATALOG, get_process
from levymart.errors import UnsupportedSamplerError, ValidationError
from levymart.levy_core import eval_exponent
from levymart.moments import cumulants, moment_finite, moment_polynomial
from levymart.simulate import (
    PathBatch,
    TimeGrid,
    sample_increment,
    sample_increments,
    sample_paths,
    substream,
    tail_diagnostic,
    write_binary,
    write_csv,
)


class TestTimeGrid:
    def test_through_prepends_zero(self):
        grid = TimeGrid.through(2.0, 1.0, 2.0)
        assert grid.times == (0.0, 1.0, 2.0)
        assert grid.steps.tolist() == [1.0, 1.0]
        assert grid.index(2.0) == 2

    @pytest.mark.parametrize('times', [(), (1.0, 2.0), (0.0, 2.0, 1.0), (0.0, math.inf)])
    def test_invalid_grids(self, times):
        with pytest.raises(ValidationError):
            TimeGrid(times)

    def test_time_off_grid(self):
        with pytest.raises(ValidationError):
            TimeGrid.through(1.0).index(0.5)


class TestDeterminism:
    def test_independent_of_threads_and_calls(self, gamma):
        grid = TimeGrid.through(0.5, 1.0)
        a = sample_paths(gamma, grid, 3000, seed=5, threads=1, block_size=1000)
        b = sample_paths(gamma, grid, 3000, seed=5, threads=4, block_size=1000)
        assert a.digest() == b.digest()
        assert a.fingerprint == gamma.fingerprint()

    def test_seed_changes_paths(self, brownian):
        a = sample_paths(brownian, (0.0, 1.0), 100, seed=1)
        b = sample_paths(brownian, (0.0, 1.0), 100, seed=2)
        assert a.digest() != b.digest()

    def test_substreams_are_distinct(self):
        x = substream(3, 0, 0).random(4)
        y = substream(3, 0, 1).random(4)
        z = substream(3, 1, 0).random(4)
        assert not np.allclose(x, y)
        assert not np.allclose(x, z)

    def test_batch_is_read_only(self, brownian):
        batch = sample_paths(brownian, (0.0, 1.0), 10, seed=0)
        with pytest.raises(ValueError):
            batch.values[0, 1] = 1.0

    def test_paths_start_at_zero(self):
        grid = TimeGrid.through(1.0)
        with pytest.raises(ValidationError):
            PathBatch(grid, np.ones((2, 2)), 0, 'x')


class TestMoments:
    def test_brownian(self, brownian):
        x = sample_paths(brownian, (0.0, 1.0), 40000, seed=11).at(1.0)
        assert x.mean() == pytest.approx(0.0, abs=0.03)
        assert x.var() == pytest.approx(1.0, abs=0.03)

    def test_two_point(self, two_point):
        x = sample_paths(two_point, (0.0, 1.0), 40000, seed=12).at(1.0)
        assert np.all(x == np.round(x))
        assert np.mean(x * x) == pytest.approx(1.0, abs=0.04)

    def test_gamma(self, gamma):
        x = sample_paths(gamma, (0.0, 1.0), 40000, seed=13).at(1.0)
        assert x.min() >= 0.0
        assert x.mean() == pytest.approx(1.0, abs=0.03)
        assert x.var() == pytest.approx(1.0, abs=0.06)

    def test_jump_diffusion_mean(self):
        spec = get_process('jump-diffusion')
        x = sample_paths(spec, (0.0, 1.0), 40000, seed=14).at(1.0)
        assert x.mean() == pytest.approx(cumulants(spec, 1)[0], abs=0.02)

    def test_tempered_stable_variance(self):
        spec = get_process('tempered-stable')
        x = sample_paths(spec, (0.0, 1.0), 40000, seed=15).at(1.0)
        # 2 c Gamma(2 - index) / beta^(2 - index)
        expected = 2.0 * math.gamma(1.5) / 2.0 ** 1.5
        assert x.var() == pytest.approx(expected, abs=0.03)
        assert x.mean() == pytest.approx(0.0, abs=0.02)

    def test_increments_over_two_steps(self, brownian):
        batch = sample_paths(brownian, TimeGrid.through(1.0, 3.0), 40000, seed=16)
        step = batch.at(3.0) - batch.at(1.0)
        assert step.var() == pytest.approx(2.0, abs=0.06)
        assert np.corrcoef(step, batch.at(1.0))[0, 1] == pytest.approx(0.0, abs=0.03)


LAW_TIMES = (0.5, 1.5)


@lru_cache(maxsize=None)
def catalog_batch(name):
    seed = 100 + sorted(CATALOG).index(name)
    return sample_paths(get_process(name), TimeGrid.through(*LAW_TIMES), 40000, seed=seed)


class TestCatalogLaws:
    @pytest.mark.parametrize('name', sorted(CATALOG))
    def test_moments_within_standard_errors(self, name):
        spec = get_process(name)
        # the standard error of X^n needs E X^{2n}
        orders = [n for n in range(1, 5) if moment_finite(spec, 2 * n)]
        if not orders:
            pytest.skip(f"{name} has no finite second moment")
        batch = catalog_batch(name)
        for t in LAW_TIMES:
            x = batch.at(t)
            for n in orders:
                values = x ** n
                std_error = values.std(ddof=1) / math.sqrt(values.size)
                assert abs(values.mean() - moment_polynomial(spec, n)(t)) <= 4 * std_error, (t, n)

    @pytest.mark.parametrize('name', sorted(CATALOG))
    def test_characteristic_function(self, name):
        spec = get_process(name)
        batch = catalog_batch(name)
        for t in LAW_TIMES:
            x = batch.at(t)
            for xi in (0.5, 1.0, 2.0):
                values = np.exp(1j * xi * x)
                std_error = math.sqrt((values.real.var(ddof=1) + values.imag.var(ddof=1)) / x.size)
                expected = cmath.exp(-t * eval_exponent(spec, xi))
                assert abs(values.mean() - expected) <= 4 * std_error, (t, xi)


class TestRecipes:
    def test_infinite_variation_is_unsupported(self):
        spec = get_process('tempered-stable', {'index': 1.5})
        with pytest.raises(UnsupportedSamplerError):
            sample_paths(spec, (0.0, 1.0), 10, seed=0)

    @pytest.mark.parametrize('epsilon', [0.0, 1.0])
    def test_cutoff_range(self, brownian, epsilon):
        with pytest.raises(ValidationError):
            sample_paths(brownian, (0.0, 1.0), 10, seed=0, epsilon=epsilon)

    def test_bad_arguments(self, brownian):
        with pytest.raises(ValidationError):
            sample_paths(brownian, (0.0, 1.0), 0, seed=0)
        with pytest.raises(ValidationError):
            sample_paths(brownian, (0.0, 1.0), 10, seed=-1)
        with pytest.raises(ValidationError):
            sample_increments(brownian, 0.0, 5, substream(0, 0, 0))

    def test_single_increment(self, gamma, two_point):
        first = sample_increment(gamma, 0.5, substream(3, 0, 0))
        assert first == sample_increment(gamma, 0.5, substream(3, 0, 0))
        assert isinstance(first, float) and first >= 0.0
        jump = sample_increment(two_point, 2.0, substream(3, 0, 1))
        assert jump == round(jump)


class TestWriters:
    def test_csv(self, brownian, tmp_path):
        batch = sample_paths(brownian, TimeGrid.through(0.5, 1.0), 5, seed=3)
        path = tmp_path / 'paths.csv'
        write_csv(batch, path)
        lines = path.read_text().splitlines()
        assert lines[0] == '0,0.5,1'
        assert len(lines) == 6
        np.testing.assert_array_equal(np.loadtxt(path, delimiter=',', skiprows=1), batch.values)

    def test_binary(self, brownian, tmp_path):
        batch = sample_paths(brownian, TimeGrid.through(1.0), 5, seed=3)
        path = tmp_path / 'paths.npy'
        write_binary(batch, path)
        loaded = np.load(path)
        assert loaded.flags.f_contiguous
        np.testing.assert_array_equal(loaded, batch.values)


class TestTailDiagnostic:
    def test_power_tail_blows_up(self, pareto):
        batch = sample_paths(pareto, (0.0, 1.0), 20000, seed=21)
        assert tail_diagnostic(batch, 4).blowup

    def test_gaussian_tail_is_quiet(self, brownian):
        batch = sample_paths(brownian, (0.0, 1.0), 20000, seed=22)
        diagnostic = tail_diagnostic(batch, 4)
        assert not diagnostic.blowup
        assert diagnostic.to_dict()['time'] == 1.0

    def test_order_must_be_positive(self, brownian):
        batch = sample_paths(brownian, (0.0, 1.0), 10, seed=0)
        with pytest.raises(ValidationError):
            tail_diagnostic(batch, 0)
