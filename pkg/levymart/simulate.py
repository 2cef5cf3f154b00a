"""
Simulate - sample paths of Levy processes on time grids

Recipes:
    gaussian            b dt + sigma sqrt(dt) N
    compound-poisson    drift b - m_1, Poisson number of jumps drawn from nu / nu(R)
    gamma-subordinator  exact Gamma(c dt, beta) increments per half-line piece
    composite           jumps |y| >= eps as compound Poisson, jumps |y| < eps
                        replaced by a centred normal of variance int_{|y|<eps} y^2 nu(dy)

Random numbers come from counter-based Philox streams keyed by
(seed, block, cell), where a block is a fixed number of consecutive paths, so
a batch does not depend on the number of worker threads.
"""
import hashlib
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from levymart import utils
from levymart.errors import UnsupportedSamplerError, ValidationError
from levymart.levy_core import (
    ACTIVITY_INFINITE_VARIATION,
    DensityPiece,
    ProcessSpec,
    adaptive_quad,
    measure_moments,
)

logger = logging.getLogger(__name__)

TAIL_THRESHOLD = 0.05


@dataclass(frozen=True)
class TimeGrid:
    times: Tuple[float, ...]

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        if not times or times[0] != 0.0:
            raise ValidationError("time grid must start at 0")
        if not all(math.isfinite(t) for t in times):
            raise ValidationError("time grid must be finite")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError("time grid must be strictly increasing")
        object.__setattr__(self, 'times', times)

    @classmethod
    def through(cls, *times: float) -> 'TimeGrid':
        """Grid through the given positive times, 0 prepended."""
        return cls((0.0,) + tuple(sorted(set(float(t) for t in times if t != 0))))

    @property
    def steps(self) -> np.ndarray:
        return np.diff(np.array(self.times))

    def index(self, t: float) -> int:
        for i, u in enumerate(self.times):
            if abs(u - t) <= 1e-12 * max(1.0, abs(t)):
                return i
        raise ValidationError(f"time {t} is not on the grid {list(self.times)}")

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True, eq=False)
class PathBatch:
    """n_paths x len(grid) values; column 0 is X_0 = 0."""

    grid: TimeGrid
    values: np.ndarray
    seed: int
    fingerprint: str
    epsilon: float = field(default=0.0)

    def __post_init__(self):
        if self.values.shape[1] != len(self.grid):
            raise ValidationError("path values do not match the grid")
        if np.any(self.values[:, 0] != 0.0):
            raise ValidationError("paths must start at 0")
        self.values.setflags(write=False)

    @property
    def n_paths(self) -> int:
        return self.values.shape[0]

    def at(self, t: float) -> np.ndarray:
        return self.values[:, self.grid.index(t)]

    def digest(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.values).tobytes()).hexdigest()


# ---------------------------------------------------------------------------
# Recipes
# ---------------------------------------------------------------------------

def _piece_power_integral(piece: DensityPiece, a: float, b: float, power: int) -> float:
    """int y^power nu(dy) over the part of the piece with a <= |y| <= b."""
    lo, hi = piece.radial
    a, b = max(a, lo), min(b, hi)
    if a >= b:
        return 0.0
    sign = piece.sign ** power

    def integrand(r):
        return sign * math.exp(power * math.log(r) + float(piece.log_pdf(piece.sign * r)))

    edges = [a] + sorted(abs(c) for c in piece.breakpoints if a < abs(c) < b) + [b]
    return sum(adaptive_quad(integrand, u, v) for u, v in zip(edges[:-1], edges[1:]))


@dataclass(frozen=True)
class _JumpSource:
    mass: float
    draw: Callable[[int, np.random.Generator], np.ndarray]


class _Recipe:
    """Precomputed sampling data for one spec and small-jump cutoff."""

    def __init__(self, spec: ProcessSpec, epsilon: float):
        self.spec = spec
        self.epsilon = epsilon
        self.sigma2 = spec.sigma2
        self.drift = spec.drift
        self.sources: List[_JumpSource] = []
        self.gammas: List[Tuple[int, float, float]] = []
        measure = spec.measure

        if spec.sampler == 'gaussian':
            return
        if spec.sampler == 'gamma-subordinator':
            for piece in measure.pieces:
                c, beta = piece.params
                self.gammas.append((piece.sign, c, beta))
            self.drift -= measure_moments(measure, 1, 'inner')
            return
        if spec.sampler == 'compound-poisson':
            cutoff = 0.0
            self.drift -= measure_moments(measure, 1, 'inner')
        else:
            if measure.activity == ACTIVITY_INFINITE_VARIATION:
                raise UnsupportedSamplerError(
                    f"no sampling recipe for the infinite-variation jump part of '{spec.name}'"
                )
            cutoff = epsilon
            small = 0.0
            for y, m in measure.atoms:
                if abs(y) < cutoff:
                    small += m * y * y
                elif abs(y) < 1:
                    self.drift -= m * y
            for piece in measure.pieces:
                small += _piece_power_integral(piece, 0.0, cutoff, 2)
                self.drift -= _piece_power_integral(piece, cutoff, 1.0, 1)
            self.sigma2 += small
            logger.debug("composite recipe for %s: eps=%g small-jump variance %.3e", spec.name, cutoff, small)

        for y, m in measure.atoms:
            if abs(y) >= cutoff:
                self.sources.append(_JumpSource(m, lambda size, rng, y=y: np.full(size, y)))
        for piece in measure.pieces:
            mass = piece.mass(cutoff)
            if mass > 0:
                self.sources.append(
                    _JumpSource(mass, lambda size, rng, piece=piece: piece.sample(cutoff, size, rng))
                )

    @property
    def jump_rate(self) -> float:
        return sum(s.mass for s in self.sources)

    def draw(self, dt: float, size: int, rng: np.random.Generator) -> np.ndarray:
        out = np.full(size, self.drift * dt)
        if self.sigma2 > 0:
            out += math.sqrt(self.sigma2 * dt) * rng.standard_normal(size)
        rate = self.jump_rate
        if rate > 0:
            counts = rng.poisson(rate * dt, size)
            total = int(counts.sum())
            if total:
                weights = np.array([s.mass for s in self.sources]) / rate
                which = rng.choice(len(self.sources), size=total, p=weights)
                jumps = np.empty(total)
                for k, source in enumerate(self.sources):
                    chosen = which == k
                    n = int(chosen.sum())
                    if n:
                        jumps[chosen] = source.draw(n, rng)
                owner = np.repeat(np.arange(size), counts)
                out += np.bincount(owner, weights=jumps, minlength=size)
        for sign, c, beta in self.gammas:
            out += sign * rng.gamma(c * dt, 1.0 / beta, size)
        return out


@lru_cache(maxsize=64)
def _recipe(spec: ProcessSpec, epsilon: float) -> _Recipe:
    return _Recipe(spec, epsilon)


def sample_increments(spec: ProcessSpec, dt: float, size: int, stream: np.random.Generator,
                      epsilon: float = None) -> np.ndarray:
    """`size` independent draws distributed as X_dt."""
    if not dt > 0:
        raise ValidationError("dt must be positive")
    epsilon = utils.SMALL_JUMP_EPS if epsilon is None else float(epsilon)
    if not 0 < epsilon < 1:
        raise ValidationError("small-jump cutoff must lie in (0, 1)")
    return _recipe(spec, epsilon).draw(float(dt), int(size), stream)


def sample_increment(spec: ProcessSpec, dt: float, stream: np.random.Generator, epsilon: float = None) -> float:
    return float(sample_increments(spec, dt, 1, stream, epsilon)[0])


def substream(seed: int, block: int, cell: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block, cell))))


def sample_paths(
    spec: ProcessSpec,
    grid: Union[TimeGrid, Sequence[float]],
    n_paths: int,
    seed: int,
    epsilon: float = None,
    threads: int = None,
    block_size: int = None,
) -> PathBatch:
    """Simulate n_paths paths on the grid; deterministic in (spec, grid, n_paths, seed, epsilon)."""
    if not isinstance(grid, TimeGrid):
        grid = TimeGrid(tuple(grid))
    if n_paths < 1:
        raise ValidationError("n_paths must be at least 1")
    if seed is None or seed < 0:
        raise ValidationError("seed must be a nonnegative integer")
    epsilon = utils.SMALL_JUMP_EPS if epsilon is None else float(epsilon)
    threads = utils.THREADS if threads is None else threads
    block_size = utils.BLOCK_SIZE if block_size is None else block_size
    if not 0 < epsilon < 1:
        raise ValidationError("small-jump cutoff must lie in (0, 1)")
    steps = grid.steps
    values = np.zeros((n_paths, len(grid)))
    _recipe(spec, epsilon)  # raises UnsupportedSamplerError before any worker starts

    def fill(block: int):
        start = block * block_size
        stop = min(start + block_size, n_paths)
        running = np.zeros(stop - start)
        for cell, dt in enumerate(steps):
            running = running + sample_increments(spec, dt, stop - start, substream(seed, block, cell), epsilon)
            values[start:stop, cell + 1] = running

    n_blocks = -(-n_paths // block_size)
    if threads > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill, range(n_blocks)))
    else:
        for block in range(n_blocks):
            fill(block)
    logger.info("simulated %d paths of %s on %d grid times (seed %d)", n_paths, spec.name, len(grid), seed)
    return PathBatch(grid, values, int(seed), spec.fingerprint(), epsilon)


def write_csv(batch: PathBatch, path: Union[str, Path]):
    """Header row of grid times, then one row per path."""
    header = ','.join(f"{t:.17g}" for t in batch.grid.times)
    np.savetxt(path, batch.values, fmt='%.17g', delimiter=',', header=header, comments='')


def write_binary(batch: PathBatch, path: Union[str, Path]):
    """Column-major .npy dump."""
    np.save(path, np.asfortranarray(batch.values))


@dataclass(frozen=True)
class TailDiagnostic:
    order: int
    time: float
    ratio: float
    threshold: float

    @property
    def blowup(self) -> bool:
        return self.ratio > self.threshold

    def to_dict(self) -> dict:
        return {
            'order': self.order, 'time': self.time, 'ratio': self.ratio,
            'threshold': self.threshold, 'blowup': self.blowup,
        }


def tail_diagnostic(batch: PathBatch, order: int, threshold: float = TAIL_THRESHOLD) -> TailDiagnostic:
    """max |X|^n / sum |X|^n at the last grid time; stays large when E|X|^n is infinite."""
    if order < 1:
        raise ValidationError("tail diagnostic order must be at least 1")
    x = np.abs(batch.values[:, -1])
    if not np.any(x > 0):
        return TailDiagnostic(order, batch.grid.times[-1], 0.0, threshold)
    with np.errstate(divide='ignore'):
        logs = order * np.log(x)
    ratio = float(np.exp(np.max(logs) - logsumexp(logs)))
    return TailDiagnostic(order, batch.grid.times[-1], ratio, threshold)
