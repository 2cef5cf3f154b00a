import math
import sys
from pathlib import Path

import pytest

project_root = Path(__file__).resolve().parent.parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from levymart.catalog import get_process
from levymart.levy_core import DensityPiece, make_spec


@pytest.fixture(autouse=True)
def single_thread(monkeypatch):
    """Keep simulations on one thread unless a test asks otherwise."""
    from levymart import utils
    monkeypatch.setattr(utils, 'THREADS', 1)


@pytest.fixture
def brownian():
    return get_process('brownian')


@pytest.fixture
def gamma():
    return get_process('gamma')


@pytest.fixture
def two_point():
    return get_process('cpoisson-two-point')


@pytest.fixture
def pareto():
    return get_process('pareto-jumps')


@pytest.fixture
def trivial():
    return make_spec()


@pytest.fixture
def one_sided_pareto():
    """nu(dy) = 2 y^{-2.5} dy on [1, inf): M_1 = 4, second moment infinite."""
    return make_spec(pieces=[DensityPiece('power', (2.0, 2.5), 1.0, math.inf)])


# processes whose cumulants exist to order 6
FINITE_MOMENT_PROCESSES = [
    'brownian', 'poisson', 'cpoisson-two-point', 'cpoisson-gauss-jumps',
    'jump-diffusion', 'gamma', 'bilateral-gamma', 'tempered-stable',
]

# processes with kappa_1 = 0, where every polynomial of degree <= 2 is a martingale function
CENTRED_PROCESSES = [
    'brownian', 'cpoisson-two-point', 'cpoisson-gauss-jumps', 'bilateral-gamma', 'tempered-stable',
]
