"""
Levy Core - process descriptors, characteristic and Laplace exponents

A one-dimensional Levy process is described by its triplet (b, sigma2, nu)
with the truncation function 1_{(0,1)}(|y|):

    psi(xi) = -i b xi + sigma2 xi^2 / 2 + int (1 - e^{i y xi} + i y xi 1_{|y|<1}) nu(dy)
    eta(lam) = b lam + sigma2 lam^2 / 2 + int (e^{lam y} - 1 - lam y 1_{|y|<1}) nu(dy)

so that E e^{i xi X_t} = e^{-t psi(xi)} and E e^{lam X_t} = e^{t eta(lam)}.
The Levy measure is a finite set of atoms plus density pieces on intervals
that do not contain 0. Every integral against nu runs through `measure_integral`,
which sums atoms exactly and integrates the pieces with QUADPACK, weighting
the part |y| < 1 by y^2 nu(dy).
"""
import hashlib
import json
import logging
import math
import warnings
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize, stats

from levymart import utils
from levymart.errors import ConvergenceError, ValidationError

logger = logging.getLogger(__name__)

FULL_LINE = 'full-line'
HALF_LINE = 'half-line'
LATTICE = 'lattice'
DEGENERATE = 'degenerate'

ACTIVITY_FINITE = 'finite'
ACTIVITY_FINITE_VARIATION = 'infinite-finite-variation'
ACTIVITY_INFINITE_VARIATION = 'infinite-infinite-variation'

SAMPLERS = ('gaussian', 'compound-poisson', 'gamma-subordinator', 'composite')
DENSITY_SUPPORTS = ('full-line', 'half-line-positive', 'none')


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def adaptive_quad(func: Callable, lo: float, hi: float, rtol: float = None, atol: float = None) -> float:
    """Adaptive Gauss-Kronrod quadrature that refuses to return unreliable values.

    QUADPACK warns whenever it cannot certify the requested tolerance; the
    result is still accepted when the error estimate is within a looser
    acceptance band (1e4 x rtol), otherwise ConvergenceError is raised.
    """
    rtol = utils.RTOL if rtol is None else rtol
    atol = utils.ATOL if atol is None else atol
    if lo == hi:
        return 0.0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always', integrate.IntegrationWarning)
        with np.errstate(over='ignore', invalid='ignore', under='ignore'):
            value, abserr = integrate.quad(func, lo, hi, epsabs=atol, epsrel=rtol, limit=utils.QUAD_LIMIT)
    if not np.isfinite(value):
        raise ConvergenceError(f"quadrature over [{lo}, {hi}] produced a non-finite value", abserr, non_finite=True)
    if caught:
        accept = max(1e4 * rtol * abs(value), 1e4 * atol)
        if abserr > accept:
            raise ConvergenceError(f"quadrature over [{lo}, {hi}] did not converge: {caught[0].message}", abserr)
        logger.debug("quadrature over [%s, %s] accepted with error %.3e", lo, hi, abserr)
    return float(value)


# ---------------------------------------------------------------------------
# Density kinds
# ---------------------------------------------------------------------------

class DensityKind(ABC):
    """Shape of a Levy density piece. Parameters are passed as a tuple ordered by `param_names`."""

    name: str = ''
    param_names: Tuple[str, ...] = ()

    def check(self, params: Tuple[float, ...]):
        if len(params) != len(self.param_names):
            raise ValidationError(f"density kind '{self.name}' expects parameters {self.param_names}")
        if not all(math.isfinite(p) for p in params):
            raise ValidationError(f"density kind '{self.name}' got non-finite parameters {params}")
        if params[0] < 0:
            raise ValidationError(f"density kind '{self.name}' needs a nonnegative intensity, got {params[0]}")

    @abstractmethod
    def log_pdf(self, y: np.ndarray, params) -> np.ndarray:
        """log of the density at y (y != 0)."""

    def pdf(self, y, params):
        with np.errstate(divide='ignore'):
            return np.exp(self.log_pdf(np.asarray(y, dtype=float), params))

    @abstractmethod
    def zero_power(self, params) -> float:
        """p such that the density behaves like |y|^{-p} near 0."""

    @abstractmethod
    def tail(self, params) -> Tuple[float, float]:
        """(rate, power): density ~ |y|^{-power} e^{-rate |y|} at infinity."""

    def breakpoints(self, params) -> Tuple[float, ...]:
        """Points where the density concentrates; quadrature splits there."""
        return ()

    def mass(self, a: float, b: float, sign: int, params, rtol=None, atol=None) -> float:
        """Mass of the density on sign * [a, b], 0 < a < b <= inf."""
        return adaptive_quad(lambda r: float(self.pdf(sign * r, params)), a, b, rtol, atol)

    def sample(self, a: float, b: float, sign: int, size: int, rng: np.random.Generator, params) -> np.ndarray:
        """Draws from the normalized density restricted to sign * [a, b], a > 0."""
        rate, power = self.tail(params)
        if math.isinf(b):
            if rate > 0:
                b = a + 60.0 / rate
            else:
                b = min(a * 1e12 ** (1.0 / max(power - 1.0, 1e-3)), 1e300)
        grid = np.geomspace(a, b, 4097)
        dens = self.pdf(sign * grid, params)
        cdf = integrate.cumulative_trapezoid(dens, grid, initial=0.0)
        cdf /= cdf[-1]
        return sign * np.interp(rng.random(size), cdf, grid)

    def tilt(self, params, theta: float, sign: int):
        """Parameters of e^{theta y} times this density on the side `sign`."""
        raise ValidationError(f"density kind '{self.name}' has no closed-form exponential tilt")


class GaussKind(DensityKind):
    """rate * N(mu, scale^2) density: compound Poisson with Gaussian jumps."""

    name = 'gauss'
    param_names = ('rate', 'mu', 'scale')

    def check(self, params):
        super().check(params)
        if params[2] <= 0:
            raise ValidationError("gauss density needs scale > 0")

    def log_pdf(self, y, params):
        rate, mu, scale = params
        z = (y - mu) / scale
        with np.errstate(divide='ignore'):
            return np.log(rate) - np.log(scale) - 0.5 * np.log(2 * np.pi) - 0.5 * z * z

    def zero_power(self, params):
        return 0.0

    def tail(self, params):
        return math.inf, 0.0

    def breakpoints(self, params):
        _, mu, scale = params
        # infinite-interval quadrature misses bumps much narrower than |mu|
        return tuple(mu + k * scale for k in (-40, -20, -10, -5, 0, 5, 10, 20, 40))

    def _bounds(self, a, b, sign, params):
        _, mu, scale = params
        lo, hi = (a, b) if sign > 0 else (-b, -a)
        return (lo - mu) / scale, (hi - mu) / scale

    def mass(self, a, b, sign, params, rtol=None, atol=None):
        za, zb = self._bounds(a, b, sign, params)
        if za > 0:
            return params[0] * float(stats.norm.sf(za) - stats.norm.sf(zb))
        return params[0] * float(stats.norm.cdf(zb) - stats.norm.cdf(za))

    def sample(self, a, b, sign, size, rng, params):
        _, mu, scale = params
        za, zb = self._bounds(a, b, sign, params)
        return stats.truncnorm.rvs(za, zb, loc=mu, scale=scale, size=size, random_state=rng)

    def tilt(self, params, theta, sign):
        rate, mu, scale = params
        return (rate * math.exp(theta * mu + 0.5 * theta * theta * scale * scale), mu + theta * scale * scale, scale)


class ExpKind(DensityKind):
    """c * e^{-beta |y|}."""

    name = 'exp'
    param_names = ('c', 'beta')

    def log_pdf(self, y, params):
        c, beta = params
        with np.errstate(divide='ignore'):
            return np.log(c) - beta * np.abs(y)

    def zero_power(self, params):
        return 0.0

    def tail(self, params):
        return params[1], 0.0

    def mass(self, a, b, sign, params, rtol=None, atol=None):
        c, beta = params
        if beta == 0:
            return c * (b - a)
        return c * (math.exp(-beta * a) - (0.0 if math.isinf(b) else math.exp(-beta * b))) / beta

    def sample(self, a, b, sign, size, rng, params):
        beta = params[1]
        u = rng.random(size)
        if beta == 0:
            return sign * (a + u * (b - a))
        span = 1.0 if math.isinf(b) else -math.expm1(-beta * (b - a))
        return sign * (a - np.log1p(-u * span) / beta)

    def tilt(self, params, theta, sign):
        c, beta = params
        return (c, beta - sign * theta)


class PowerKind(DensityKind):
    """c * |y|^{-alpha}."""

    name = 'power'
    param_names = ('c', 'alpha')

    def log_pdf(self, y, params):
        c, alpha = params
        with np.errstate(divide='ignore'):
            return np.log(c) - alpha * np.log(np.abs(y))

    def zero_power(self, params):
        return params[1]

    def tail(self, params):
        return 0.0, params[1]

    def mass(self, a, b, sign, params, rtol=None, atol=None):
        c, alpha = params
        if alpha == 1:
            return c * (math.log(b) - math.log(a))
        upper = 0.0 if math.isinf(b) else b ** (1 - alpha)
        return c * (a ** (1 - alpha) - upper) / (1 - alpha)

    def sample(self, a, b, sign, size, rng, params):
        alpha = params[1]
        u = rng.random(size)
        if alpha == 1:
            return sign * a * np.exp(u * (math.log(b) - math.log(a)))
        lo = a ** (1 - alpha)
        hi = 0.0 if math.isinf(b) else b ** (1 - alpha)
        return sign * (lo + u * (hi - lo)) ** (1.0 / (1 - alpha))

    def tilt(self, params, theta, sign):
        if theta == 0:
            return params
        return super().tilt(params, theta, sign)


class TemperedStableKind(DensityKind):
    """c * e^{-beta |y|} / |y|^{1 + index}, 0 <= index < 2."""

    name = 'tempered-stable'
    param_names = ('c', 'beta', 'index')

    def check(self, params):
        super().check(params)
        if not 0 <= params[2] < 2:
            raise ValidationError("tempered-stable index must lie in [0, 2)")

    def log_pdf(self, y, params):
        c, beta, index = params
        r = np.abs(y)
        with np.errstate(divide='ignore'):
            return np.log(c) - beta * r - (1.0 + index) * np.log(r)

    def zero_power(self, params):
        return 1.0 + params[2]

    def tail(self, params):
        return params[1], 1.0 + params[2]

    def tilt(self, params, theta, sign):
        c, beta, index = params
        return (c, beta - sign * theta, index)


class GammaKind(TemperedStableKind):
    """c * e^{-beta |y|} / |y|, the gamma subordinator's density."""

    name = 'gamma'
    param_names = ('c', 'beta')

    def check(self, params):
        DensityKind.check(self, params)

    def log_pdf(self, y, params):
        return super().log_pdf(y, (params[0], params[1], 0.0))

    def zero_power(self, params):
        return 1.0

    def tail(self, params):
        return params[1], 1.0

    def tilt(self, params, theta, sign):
        c, beta = params
        return (c, beta - sign * theta)


DENSITY_KINDS: Dict[str, DensityKind] = {
    kind.name: kind for kind in (GaussKind(), ExpKind(), PowerKind(), GammaKind(), TemperedStableKind())
}


# ---------------------------------------------------------------------------
# Measure, triplet, process
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DensityPiece:
    """kind density on the interval [lo, hi], which must not contain 0 in its interior."""

    kind: str
    params: Tuple[float, ...]
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, 'params', tuple(float(p) for p in self.params))
        object.__setattr__(self, 'lo', float(self.lo))
        object.__setattr__(self, 'hi', float(self.hi))
        if self.kind not in DENSITY_KINDS:
            raise ValidationError(f"unknown density kind '{self.kind}'; known: {sorted(DENSITY_KINDS)}")
        self.shape.check(self.params)
        if not self.lo < self.hi:
            raise ValidationError(f"density piece needs lo < hi, got [{self.lo}, {self.hi}]")
        if self.lo < 0 < self.hi:
            raise ValidationError(f"density piece [{self.lo}, {self.hi}] covers 0; split it at 0")

    @property
    def shape(self) -> DensityKind:
        return DENSITY_KINDS[self.kind]

    @property
    def sign(self) -> int:
        return 1 if self.lo >= 0 else -1

    @property
    def radial(self) -> Tuple[float, float]:
        """The piece as |y| in [a, b]."""
        return (self.lo, self.hi) if self.sign > 0 else (-self.hi, -self.lo)

    @property
    def touches_zero(self) -> bool:
        return self.radial[0] == 0.0

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.radial[1])

    def log_pdf(self, y):
        return self.shape.log_pdf(np.asarray(y, dtype=float), self.params)

    def pdf(self, y):
        return self.shape.pdf(y, self.params)

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(c for c in self.shape.breakpoints(self.params) if self.lo < c < self.hi)

    def tail_finite(self, power_weight: float = 0.0, rate_weight: float = 0.0) -> bool:
        """Is int_{|y|>=1} |y|^power_weight e^{rate_weight |y|} piece(dy) finite?"""
        if not self.unbounded:
            return True
        rate, power = self.shape.tail(self.params)
        if rate > rate_weight:
            return True
        if rate < rate_weight:
            return False
        return power - power_weight > 1.0

    def mass(self, a: float = 0.0, b: float = math.inf, rtol=None, atol=None) -> float:
        lo, hi = self.radial
        a, b = max(a, lo), min(b, hi)
        if a >= b:
            return 0.0
        return self.shape.mass(a, b, self.sign, self.params, rtol, atol)

    def sample(self, a: float, size: int, rng: np.random.Generator) -> np.ndarray:
        lo, hi = self.radial
        return self.shape.sample(max(a, lo), hi, self.sign, size, rng, self.params)

    def to_dict(self) -> dict:
        if (self.lo, self.hi) == (0.0, math.inf):
            support = 'positive'
        elif (self.lo, self.hi) == (-math.inf, 0.0):
            support = 'negative'
        else:
            support = [self.lo, self.hi]
        return {
            'kind': self.kind,
            'params': dict(zip(self.shape.param_names, self.params)),
            'support': support,
        }


@dataclass(frozen=True)
class LevyMeasure:
    """Atoms (location, mass) plus density pieces."""

    atoms: Tuple[Tuple[float, float], ...] = ()
    pieces: Tuple[DensityPiece, ...] = ()

    def __post_init__(self):
        atoms = tuple(sorted((float(y), float(m)) for y, m in self.atoms))
        for y, m in atoms:
            if y == 0 or not math.isfinite(y):
                raise ValidationError(f"atom location must be finite and nonzero, got {y}")
            if not m > 0 or not math.isfinite(m):
                raise ValidationError(f"atom mass must be positive and finite, got {m}")
        object.__setattr__(self, 'atoms', atoms)
        object.__setattr__(self, 'pieces', tuple(self.pieces))
        for piece in self.pieces:
            if piece.touches_zero and piece.shape.zero_power(piece.params) >= 3:
                raise ValidationError(f"{piece.kind} piece is not square-integrable at 0")
            if not piece.tail_finite():
                raise ValidationError(f"{piece.kind} piece has infinite mass on |y| >= 1")

    @property
    def is_zero(self) -> bool:
        return not self.atoms and not self.pieces

    @property
    def activity(self) -> str:
        power = max(
            (p.shape.zero_power(p.params) for p in self.pieces if p.touches_zero),
            default=0.0,
        )
        if power < 1:
            return ACTIVITY_FINITE
        if power < 2:
            return ACTIVITY_FINITE_VARIATION
        return ACTIVITY_INFINITE_VARIATION

    @property
    def positive(self) -> bool:
        """Is the measure carried by (0, inf)?"""
        return all(y > 0 for y, _ in self.atoms) and all(p.sign > 0 for p in self.pieces)

    def outer_moment_finite(self, n: float) -> bool:
        return all(p.tail_finite(power_weight=n) for p in self.pieces)

    def exp_moment_finite(self, lam: float) -> bool:
        """Is int_{|y|>=1} e^{lam y} nu(dy) finite?"""
        for piece in self.pieces:
            if lam * piece.sign > 0 and not piece.tail_finite(rate_weight=abs(lam)):
                return False
        return True

    def total_mass(self, rtol=None, atol=None) -> float:
        if self.activity != ACTIVITY_FINITE:
            return math.inf
        return sum(m for _, m in self.atoms) + sum(p.mass(rtol=rtol, atol=atol) for p in self.pieces)

    def to_dict(self) -> dict:
        return {
            'atoms': [[y, m] for y, m in self.atoms],
            'density': [p.to_dict() for p in self.pieces],
        }


def _segments(lo: float, hi: float, eps: float, extra: Sequence[float] = ()) -> List[Tuple[float, float]]:
    cuts = sorted({c for c in (-1.0, -eps, eps, 1.0, *extra) if lo < c < hi})
    edges = [lo] + cuts + [hi]
    return list(zip(edges[:-1], edges[1:]))


def measure_integral(
    measure: LevyMeasure,
    atom_kernel: Callable[[float], float],
    inner: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]],
    outer: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]],
    rtol: float = None,
    atol: float = None,
) -> float:
    """int k(y) nu(dy), split at |y| = 1.

    atom_kernel(y) is k itself and is applied to the atoms. On the density
    pieces, inner(y, log_w) must return k(y) nu(y) for |y| < 1 given
    log_w = log(y^2 nu(y)), i.e. it multiplies exp(log_w) by k(y)/y^2; outer(y,
    log_w) returns k(y) nu(y) for |y| >= 1 given log_w = log nu(y). Passing None
    for a region skips it (atoms in that region included).
    """
    total = 0.0
    for y, m in measure.atoms:
        if (abs(y) < 1 and inner is not None) or (abs(y) >= 1 and outer is not None):
            total += m * atom_kernel(y)

    eps = utils.SMALL_JUMP_EPS
    for piece in measure.pieces:
        for a, b in _segments(piece.lo, piece.hi, eps, piece.breakpoints):
            if min(abs(a), abs(b)) >= 1:
                if outer is None:
                    continue
                def integrand(y, piece=piece):
                    return float(outer(np.float64(y), piece.log_pdf(y)))
            else:
                if inner is None:
                    continue
                def integrand(y, piece=piece):
                    return float(inner(np.float64(y), 2.0 * np.log(abs(y)) + piece.log_pdf(y)))
            total += adaptive_quad(integrand, a, b, rtol, atol)
    return total


@dataclass(frozen=True)
class LevyTriplet:
    drift: float
    sigma2: float
    measure: LevyMeasure = field(default_factory=LevyMeasure)

    def __post_init__(self):
        object.__setattr__(self, 'drift', float(self.drift))
        object.__setattr__(self, 'sigma2', float(self.sigma2))
        if not math.isfinite(self.drift):
            raise ValidationError("drift must be finite")
        if not (self.sigma2 >= 0 and math.isfinite(self.sigma2)):
            raise ValidationError(f"sigma2 must be finite and nonnegative, got {self.sigma2}")
        weight = measure_integral(
            self.measure,
            lambda y: min(y * y, 1.0),
            lambda y, log_w: np.exp(log_w),
            lambda y, log_w: np.exp(log_w),
        )
        if not math.isfinite(weight):
            raise ValidationError("Levy measure violates int min(y^2, 1) nu(dy) < inf")

    @property
    def is_trivial(self) -> bool:
        return self.drift == 0 and self.sigma2 == 0 and self.measure.is_zero


@dataclass(frozen=True)
class ProcessFlags:
    """Catalog metadata about transition densities; not derivable from the triplet."""

    has_density: bool = False
    density_support: str = 'none'
    cb1_density: Optional[bool] = None

    def __post_init__(self):
        if self.density_support not in DENSITY_SUPPORTS:
            raise ValidationError(f"density_support must be one of {DENSITY_SUPPORTS}")
        if self.has_density != (self.density_support != 'none'):
            raise ValidationError("has_density must agree with density_support")


@dataclass(frozen=True)
class ProcessSpec:
    triplet: LevyTriplet
    sampler: str
    flags: ProcessFlags = field(default_factory=ProcessFlags)
    name: str = 'custom'

    def __post_init__(self):
        if self.sampler not in SAMPLERS:
            raise ValidationError(f"sampler must be one of {SAMPLERS}, got '{self.sampler}'")
        measure = self.triplet.measure
        if self.sampler == 'gaussian' and not measure.is_zero:
            raise ValidationError("gaussian sampler requires a zero Levy measure")
        if self.sampler == 'compound-poisson' and measure.activity != ACTIVITY_FINITE:
            raise ValidationError("compound-poisson sampler requires a finite Levy measure")
        if self.sampler == 'gamma-subordinator':
            if measure.atoms or not measure.pieces or any(
                p.kind != 'gamma' or (p.lo, p.hi) not in ((0.0, math.inf), (-math.inf, 0.0)) for p in measure.pieces
            ):
                raise ValidationError("gamma-subordinator sampler requires gamma densities on full half-lines only")

    @property
    def nontrivial(self) -> bool:
        return not self.triplet.is_trivial

    @property
    def drift(self) -> float:
        return self.triplet.drift

    @property
    def sigma2(self) -> float:
        return self.triplet.sigma2

    @property
    def measure(self) -> LevyMeasure:
        return self.triplet.measure

    def to_dict(self) -> dict:
        data = {
            'name': self.name,
            'drift': self.drift,
            'sigma2': self.sigma2,
            'sampler': self.sampler,
            'flags': {
                'has_density': self.flags.has_density,
                'density_support': self.flags.density_support,
                'cb1_density': self.flags.cb1_density,
            },
        }
        data.update(self.measure.to_dict())
        return data

    def fingerprint(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, allow_nan=True)
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:16]


def make_spec(
    drift: float = 0.0,
    sigma2: float = 0.0,
    atoms: Sequence[Tuple[float, float]] = (),
    pieces: Sequence[DensityPiece] = (),
    sampler: Optional[str] = None,
    flags: Optional[ProcessFlags] = None,
    name: str = 'custom',
) -> ProcessSpec:
    """Build a spec, picking the sampler recipe from the triplet when not given."""
    measure = LevyMeasure(tuple(atoms), tuple(pieces))
    if sampler is None:
        if measure.is_zero:
            sampler = 'gaussian'
        elif measure.activity == ACTIVITY_FINITE:
            sampler = 'compound-poisson'
        elif not measure.atoms and all(p.kind == 'gamma' for p in measure.pieces):
            sampler = 'gamma-subordinator'
        else:
            sampler = 'composite'
    if flags is None:
        flags = ProcessFlags(True, 'full-line') if sigma2 > 0 else ProcessFlags()
    return ProcessSpec(LevyTriplet(drift, sigma2, measure), sampler, flags, name)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def eval_exponent(spec: ProcessSpec, xi: float, rtol: float = None, atol: float = None) -> complex:
    """Characteristic exponent psi(xi) by the Levy-Khintchine formula."""
    xi = float(xi)
    if not math.isfinite(xi):
        raise ValidationError("xi must be finite")
    if xi == 0.0:
        return 0j
    measure = spec.measure

    def re_inner(y, log_w):
        s = np.sin(0.5 * y * xi) / y
        return 2.0 * s * s * np.exp(log_w)

    def im_inner(y, log_w):
        u = y * xi
        if abs(u) < 1e-2:
            reduced = xi ** 3 * y / 6.0 - xi ** 5 * y ** 3 / 120.0
        else:
            reduced = (u - np.sin(u)) / (y * y)
        return reduced * np.exp(log_w)

    real = measure_integral(
        measure,
        lambda y: 1.0 - math.cos(y * xi),
        re_inner,
        lambda y, log_w: (1.0 - np.cos(y * xi)) * np.exp(log_w),
        rtol, atol,
    )
    imag = measure_integral(
        measure,
        lambda y: -math.sin(y * xi) + (y * xi if abs(y) < 1 else 0.0),
        im_inner,
        lambda y, log_w: -np.sin(y * xi) * np.exp(log_w),
        rtol, atol,
    )
    real += 0.5 * spec.sigma2 * xi * xi
    imag -= spec.drift * xi
    return complex(max(real, 0.0), imag)


def laplace_finite(spec: ProcessSpec, lam: float) -> bool:
    """The divergence flag behind eval_laplace_exponent."""
    return spec.measure.exp_moment_finite(float(lam))


def eval_laplace_exponent(spec: ProcessSpec, lam: float, rtol: float = None, atol: float = None) -> float:
    """Laplace exponent eta(lam); math.inf when E e^{lam X_t} is infinite."""
    lam = float(lam)
    if lam == 0.0:
        return 0.0
    if not laplace_finite(spec, lam):
        return math.inf

    def inner(y, log_w):
        u = lam * y
        if abs(u) < 1e-3:
            reduced = lam * lam * (0.5 + u / 6.0 + u * u / 24.0)
        else:
            reduced = (np.expm1(u) - u) / (y * y)
        return reduced * np.exp(log_w)

    def outer(y, log_w):
        return np.exp(lam * y + log_w) - np.exp(log_w)

    jumps = measure_integral(
        spec.measure,
        lambda y: math.expm1(lam * y) - (lam * y if abs(y) < 1 else 0.0),
        inner, outer, rtol, atol,
    )
    return spec.drift * lam + 0.5 * spec.sigma2 * lam * lam + jumps


def measure_moments(measure: LevyMeasure, k: int, region: str, rtol: float = None, atol: float = None) -> float:
    """m_k = int_{|y|<1} y^k nu(dy) (region 'inner') or M_k = int_{|y|>=1} y^k nu(dy) ('outer').

    Returns math.inf when the integral diverges.
    """
    if k < 1:
        raise ValidationError("moment order must be at least 1")
    if region not in ('inner', 'outer'):
        raise ValidationError("region must be 'inner' or 'outer'")

    def atom_kernel(y):
        return y ** k

    if region == 'outer':
        if not measure.outer_moment_finite(k):
            return math.inf

        def outer(y, log_w):
            return np.sign(y) ** k * np.exp(k * np.log(np.abs(y)) + log_w)

        return measure_integral(measure, atom_kernel, None, outer, rtol, atol)

    if k == 1:
        if measure.activity == ACTIVITY_INFINITE_VARIATION:
            return math.inf

        def inner(y, log_w):
            return np.exp(log_w) / y
    else:
        def inner(y, log_w):
            return y ** (k - 2) * np.exp(log_w)

    return measure_integral(measure, atom_kernel, inner, None, rtol, atol)


def truncation_free_drift(spec: ProcessSpec, rtol: float = None, atol: float = None) -> float:
    """b' = b - m_1, the drift of the finite-variation representation.

    Only meaningful when the jump part has finite variation.
    """
    if spec.measure.activity == ACTIVITY_INFINITE_VARIATION:
        raise ValidationError("zero-truncation drift needs a finite-variation jump part")
    return spec.drift - measure_moments(spec.measure, 1, 'inner', rtol, atol)


def lattice_span(spec: ProcessSpec, max_denominator: int = 1000) -> Optional[float]:
    """Common span h of the atoms (all atoms in h*Z), or None."""
    atoms = [y for y, _ in spec.measure.atoms]
    if not atoms or spec.measure.pieces:
        return None
    base = abs(atoms[0])
    fractions = []
    for y in atoms:
        ratio = y / base
        approx = Fraction(ratio).limit_denominator(max_denominator)
        if abs(ratio - float(approx)) > 1e-9 * max(1.0, abs(ratio)):
            return None
        fractions.append(approx)
    common = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fractions), 1)
    numerators = [abs(f.numerator * (common // f.denominator)) for f in fractions]
    return base * reduce(math.gcd, numerators) / common


def support_class(spec: ProcessSpec, tol: float = 1e-12) -> str:
    """Structural support classification of the law of X_t, t > 0."""
    if not spec.nontrivial:
        return DEGENERATE
    measure = spec.measure
    finite_variation = measure.activity != ACTIVITY_INFINITE_VARIATION
    if spec.sigma2 == 0 and finite_variation:
        b0 = truncation_free_drift(spec)
        span = lattice_span(spec)
        if span is not None and abs(b0) <= tol * max(1.0, abs(spec.drift)):
            return LATTICE
        if measure.positive and b0 >= -tol * max(1.0, abs(spec.drift)):
            return HALF_LINE
    return FULL_LINE


def exponent_zero_scan(spec: ProcessSpec, xi_max: float = 20.0, n: int = 2000, tol: float = 1e-6) -> List[float]:
    """Points in (0, xi_max] where |psi| nearly vanishes (diagnostic only).

    Local minima of |psi| on the grid are refined by a bounded search on |psi|^2,
    which is smooth at a zero; the refined point is accurate to about 1e-7.
    """
    if xi_max <= 0 or n < 3:
        raise ValidationError("zero scan needs xi_max > 0 and at least 3 grid points")
    modulus = lambda xi: abs(eval_exponent(spec, xi))
    grid = np.linspace(xi_max / n, xi_max, n)
    values = np.array([modulus(xi) for xi in grid])
    scale = max(float(values.max()), 1.0)
    zeros = []
    # refine every interior local minimum on its neighbouring cells
    for i in range(1, n - 1):
        if values[i] <= values[i - 1] and values[i] <= values[i + 1]:
            found = optimize.minimize_scalar(
                lambda xi: modulus(xi) ** 2, bounds=(grid[i - 1], grid[i + 1]),
                method='bounded', options={'xatol': 1e-12},
            )
            if math.sqrt(found.fun) <= tol * scale:
                zeros.append(float(found.x))
    return zeros
