"""
Catalog - named process specs with overridable parameters

Each entry expands a name plus parameter overrides into a full ProcessSpec,
including the sampler recipe and the density flags that the triplet alone
cannot certify.
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from levymart.errors import ValidationError
from levymart.levy_core import DensityPiece, ProcessFlags, ProcessSpec, make_spec

POSITIVE = (0.0, math.inf)
NEGATIVE = (-math.inf, 0.0)


def _brownian(p):
    return make_spec(
        drift=p['drift'], sigma2=p['sigma2'], sampler='gaussian',
        flags=ProcessFlags(True, 'full-line', True), name='brownian',
    )


def _poisson(p):
    # `drift` is the zero-truncation drift; the default 0 keeps the law on the lattice size*Z
    size, rate = p['size'], p['rate']
    compensated = rate * size if abs(size) < 1 else 0.0
    return make_spec(
        drift=p['drift'] + compensated, atoms=[(size, rate)], sampler='compound-poisson', name='poisson',
    )


def _cpoisson_two_point(p):
    size, rate = p['size'], p['rate']
    return make_spec(
        atoms=[(-size, rate / 2), (size, rate / 2)], sampler='compound-poisson', name='cpoisson-two-point',
    )


def _gauss_jump_pieces(rate, mu, scale):
    params = (rate, mu, scale)
    return [DensityPiece('gauss', params, *NEGATIVE), DensityPiece('gauss', params, *POSITIVE)]


def _cpoisson_gauss_jumps(p):
    # the law of X_t keeps an atom at 0 (no jump), so there is no density
    return make_spec(
        pieces=_gauss_jump_pieces(p['rate'], p['mu'], p['scale']),
        sampler='compound-poisson', name='cpoisson-gauss-jumps',
    )


def _jump_diffusion(p):
    return make_spec(
        drift=p['drift'], sigma2=p['sigma2'],
        pieces=_gauss_jump_pieces(p['rate'], p['mu'], p['scale']),
        sampler='compound-poisson', flags=ProcessFlags(True, 'full-line', True), name='jump-diffusion',
    )


def _gamma_inner_mean(c, beta):
    """int_0^1 y * c e^{-beta y} / y dy."""
    return c * -math.expm1(-beta) / beta


def _gamma(p):
    c, beta = p['c'], p['beta']
    return make_spec(
        drift=_gamma_inner_mean(c, beta),
        pieces=[DensityPiece('gamma', (c, beta), *POSITIVE)],
        sampler='gamma-subordinator', flags=ProcessFlags(True, 'half-line-positive'), name='gamma',
    )


def _bilateral_gamma(p):
    up = (p['c_plus'], p['beta_plus'])
    down = (p['c_minus'], p['beta_minus'])
    return make_spec(
        drift=_gamma_inner_mean(*up) - _gamma_inner_mean(*down),
        pieces=[DensityPiece('gamma', down, *NEGATIVE), DensityPiece('gamma', up, *POSITIVE)],
        sampler='gamma-subordinator', flags=ProcessFlags(True, 'full-line'), name='bilateral-gamma',
    )


def _tempered_stable(p):
    params = (p['c'], p['beta'], p['index'])
    return make_spec(
        drift=p['drift'],
        pieces=[DensityPiece('tempered-stable', params, *NEGATIVE), DensityPiece('tempered-stable', params, *POSITIVE)],
        sampler='composite', flags=ProcessFlags(True, 'full-line'), name='tempered-stable',
    )


def _pareto_jumps(p):
    params = (p['c'], p['alpha'])
    flags = ProcessFlags(True, 'full-line', True) if p['sigma2'] > 0 else ProcessFlags()
    return make_spec(
        sigma2=p['sigma2'],
        pieces=[DensityPiece('power', params, -math.inf, -1.0), DensityPiece('power', params, 1.0, math.inf)],
        sampler='compound-poisson', flags=flags, name='pareto-jumps',
    )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    defaults: Dict[str, float]
    builder: Callable[[Dict[str, float]], ProcessSpec]


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry for entry in (
        CatalogEntry('brownian', "Brownian motion with drift", {'drift': 0.0, 'sigma2': 1.0}, _brownian),
        CatalogEntry('poisson', "Poisson process with jumps of one size (lattice law)",
                     {'rate': 1.0, 'size': 1.0, 'drift': 0.0}, _poisson),
        CatalogEntry('cpoisson-two-point', "Compound Poisson with symmetric jumps +-size",
                     {'rate': 1.0, 'size': 1.0}, _cpoisson_two_point),
        CatalogEntry('cpoisson-gauss-jumps', "Compound Poisson with normal jumps",
                     {'rate': 1.0, 'mu': 0.0, 'scale': 0.5}, _cpoisson_gauss_jumps),
        CatalogEntry('jump-diffusion', "Brownian motion plus normal compound Poisson jumps",
                     {'drift': 0.0, 'sigma2': 1.0, 'rate': 1.0, 'mu': -0.1, 'scale': 0.3}, _jump_diffusion),
        CatalogEntry('gamma', "Gamma subordinator, nu(dy) = c e^{-beta y}/y dy on (0, inf)",
                     {'c': 1.0, 'beta': 1.0}, _gamma),
        CatalogEntry('bilateral-gamma', "Difference of two independent gamma subordinators",
                     {'c_plus': 1.0, 'beta_plus': 1.0, 'c_minus': 1.0, 'beta_minus': 1.0}, _bilateral_gamma),
        CatalogEntry('tempered-stable', "Symmetric tempered stable, index in [0, 1) for sampling",
                     {'c': 1.0, 'beta': 2.0, 'index': 0.5, 'drift': 0.0}, _tempered_stable),
        CatalogEntry('pareto-jumps', "Brownian motion plus power-law jumps on |y| >= 1",
                     {'c': 1.0, 'alpha': 2.5, 'sigma2': 1.0}, _pareto_jumps),
    )
}


def list_processes() -> List[Dict[str, object]]:
    return [
        {'name': e.name, 'description': e.description, 'defaults': dict(e.defaults)}
        for e in CATALOG.values()
    ]


def get_process(name: str, params: Optional[Dict[str, float]] = None) -> ProcessSpec:
    """Expand a catalog name into a ProcessSpec.

    Args:
        name: Catalog name, e.g. 'brownian' or 'gamma'
        params: Overrides for the entry's default parameters (optional)

    Returns:
        The fully validated ProcessSpec
    """
    entry = CATALOG.get(name)
    if entry is None:
        raise ValidationError(f"unknown process '{name}'; known: {', '.join(CATALOG)}")
    merged = dict(entry.defaults)
    for key, value in (params or {}).items():
        if key not in merged:
            raise ValidationError(
                f"process '{name}' has no parameter '{key}'; parameters: {', '.join(entry.defaults)}"
            )
        merged[key] = float(value)
    return entry.builder(merged)
