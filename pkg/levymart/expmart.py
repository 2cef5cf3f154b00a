"""
Exponential martingales - roots of eta(lam) = alpha and the functions
g(x) = a e^{lam1 x} + b e^{lam2 x} with g(X_t) / E g(X_t) a martingale

E e^{lam X_t} = e^{alpha t} is solved as eta(lam) = alpha. eta is convex on
the exponential-moment domain, so there are at most two real roots.
"""
import logging
import math
import sys
from dataclasses import dataclass, replace
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import optimize

from levymart import utils
from levymart.errors import ConvergenceError, ValidationError
from levymart.generator import ExpMix, check_rate
from levymart.levy_core import (
    FULL_LINE,
    HALF_LINE,
    DensityPiece,
    LevyMeasure,
    LevyTriplet,
    ProcessSpec,
    eval_laplace_exponent,
    measure_integral,
    support_class,
)
from levymart.moments import ExpDomain, exp_moment_domain
from levymart.simulate import PathBatch

logger = logging.getLogger(__name__)

STATED_BOUNDS = {
    FULL_LINE: "p_t > 0 on R: at most one solution as stated",
    HALF_LINE: "p_t = 0 on (-inf, 0): at most two solutions",
}


@dataclass(frozen=True)
class RootReport:
    alpha: float
    roots: Tuple[float, ...]
    eta_minimum: Tuple[float, float]
    domain: ExpDomain
    monotone: bool
    regime: str
    stated_bound: Optional[str]
    convexity_bound: int
    tolerance: float
    warnings: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            'alpha': self.alpha,
            'roots': list(self.roots),
            'eta_minimum': {'lambda': self.eta_minimum[0], 'eta': self.eta_minimum[1]},
            'domain': self.domain.to_dict(),
            'monotone': self.monotone,
            'regime': self.regime,
            'stated_bound': self.stated_bound,
            'convexity_bound': self.convexity_bound,
            'tolerance': self.tolerance,
            'warnings': list(self.warnings),
        }


def _shrunk(domain: ExpDomain) -> Tuple[float, float]:
    lo, hi = domain.as_tuple()
    margin = utils.EDGE_MARGIN
    return lo + margin * max(1.0, abs(lo)), hi - margin * max(1.0, abs(hi))


def _eta_or_inf(spec: ProcessSpec, lam: float) -> float:
    """eta(lam), or inf where the jump integral overflows double precision."""
    try:
        return eval_laplace_exponent(spec, lam)
    except ConvergenceError as e:
        if e.non_finite:
            return math.inf
        raise


def _window(eta: Callable[[float], float], edge: float, alpha: float) -> Tuple[float, float, Optional[float]]:
    """Walk from 0 towards `edge` with doubling steps.

    Returns (w, eta(w), beyond): w is the farthest visited point with finite
    eta and beyond the first point where eta overflows (None if it never
    does). The walk stops once eta exceeds max(alpha, 0), since eta is convex
    with eta(0) = 0 and only grows further out.
    """
    value = eta(edge)
    if math.isfinite(value):
        return edge, value, None
    beyond = edge
    w, w_value = 0.0, 0.0
    lam = math.copysign(min(0.125, 0.5 * abs(edge)), edge)
    while abs(lam) < abs(edge):
        value = eta(lam)
        if not math.isfinite(value):
            beyond = lam
            break
        w, w_value = lam, value
        if value > max(alpha, 0.0):
            break
        lam *= 2.0
    return w, w_value, beyond


def solve_lambda(spec: ProcessSpec, alpha: float, tol: float = None, kappa_max: float = None) -> RootReport:
    """All real lam with eta(lam) = alpha inside the exponential-moment domain.

    eta is first confined to a window where it is finite in double precision;
    on capped sides with light tails eta(+-kappa_max) overflows, and the window
    edge is then found by doubling outward from 0. The convex minimum lam* is
    located by bounded Brent search on the window, then each side of lam*
    that brackets alpha is bisected. A minimum at a domain edge means eta is
    monotone there and at most one root exists.
    """
    alpha = float(alpha)
    tol = utils.ROOT_TOL if tol is None else tol
    if not spec.nontrivial:
        raise ValidationError("eta vanishes identically for the trivial process")
    domain = exp_moment_domain(spec, kappa_max)
    if not domain.nondegenerate:
        raise ValidationError(f"exponential-moment domain {domain} is degenerate")
    lo, hi = _shrunk(domain)
    eta = lambda lam: _eta_or_inf(spec, lam)

    sides = [_window(eta, lo, alpha), _window(eta, hi, alpha)]
    w_lo, w_hi = sides[0][0], sides[1][0]
    if not w_lo < w_hi:
        raise ConvergenceError(f"eta overflows on both sides of 0 for {spec.name}")
    result = optimize.minimize_scalar(eta, bounds=(w_lo, w_hi), method='bounded', options={'xatol': 1e-12})
    candidates = [(float(result.x), eta(result.x))] + [(w, value) for w, value, _ in sides]
    lam_star, eta_star = min(candidates, key=lambda c: c[1])
    at_edge = min(abs(lam_star - lo), abs(hi - lam_star)) <= 1e-9 * max(1.0, abs(lam_star))
    warnings = []

    if alpha < eta_star - tol:
        roots = ()
    elif abs(alpha - eta_star) <= tol:
        roots = (lam_star,)
    else:
        roots = []
        # overflowed points count as far above alpha
        f = lambda lam: min(eta(lam), sys.float_info.max) - alpha
        for edge, (w, value, beyond) in zip((lo, hi), sides):
            if value > alpha:
                end = w
            elif beyond is not None:
                end = beyond
            else:
                if abs(w - lam_star) > 1e-9 * max(1.0, abs(w)):
                    warnings.append(f"eta stays below alpha up to the domain edge {edge:.12g}; no root on that side")
                continue
            a, b = sorted((lam_star, end))
            try:
                root = optimize.bisect(f, a, b, xtol=1e-15, maxiter=500)
            except (RuntimeError, ValueError) as e:
                raise ConvergenceError(f"bisection for eta(lam) = {alpha} failed on [{a}, {b}]: {e}")
            residual = abs(f(root))
            if residual > tol:
                raise ConvergenceError(f"root {root!r} misses alpha", residual)
            if abs(root - edge) <= 2 * utils.EDGE_MARGIN * max(1.0, abs(edge)):
                warnings.append(f"root {root:.12g} lies at the domain edge")
            roots.append(root)
        roots = tuple(sorted(roots))

    regime = support_class(spec)
    report = RootReport(
        alpha=alpha,
        roots=tuple(float(r) for r in roots),
        eta_minimum=(lam_star, eta_star),
        domain=domain,
        monotone=at_edge,
        regime=regime,
        stated_bound=STATED_BOUNDS.get(regime),
        convexity_bound=1 if at_edge else 2,
        tolerance=tol,
        warnings=tuple(warnings),
    )
    logger.info("eta(lam) = %g on %s: roots %s", alpha, spec.name, report.roots)
    return report


@dataclass(frozen=True)
class ExpMartingale:
    """g together with E g(X_t) = (a + b) e^{alpha t}."""

    g: ExpMix
    alpha: float

    def normalizer(self, t):
        return (self.g.a + self.g.b) * np.exp(self.alpha * np.asarray(t, dtype=float))

    def to_dict(self) -> dict:
        return {'g': self.g.to_dict(), 'alpha': self.alpha, 'normalizer': f"{self.g.a + self.g.b:.17g} * exp({self.alpha:.17g} t)"}


def build_exp_martingale(spec: ProcessSpec, report: RootReport, a: float, b: float = 0.0) -> ExpMartingale:
    if not report.roots:
        raise ValidationError(
            f"eta(lam) = {report.alpha} has no real root: otherwise there is only the trivial solution g = 0"
        )
    if a < 0 or b < 0 or a + b <= 0:
        raise ValidationError("weights a, b must be nonnegative and not both zero")
    if len(report.roots) == 1:
        if b != 0:
            raise ValidationError("a single root admits only b = 0")
        g = ExpMix(a, report.roots[0])
    else:
        g = ExpMix(a, report.roots[0], b, report.roots[1])
    return ExpMartingale(g, report.alpha)


def esscher_tilt(spec: ProcessSpec, theta: float) -> ProcessSpec:
    """Law of X under the measure with density e^{theta X_t - t eta(theta)}.

    sigma2 is unchanged, nu_theta(dy) = e^{theta y} nu(dy) and
    b_theta = b + theta sigma2 + int_{|y|<1} y (e^{theta y} - 1) nu(dy).
    """
    theta = float(theta)
    check_rate(spec, theta)
    measure = spec.measure
    shift = measure_integral(
        measure,
        lambda y: y * math.expm1(theta * y),
        lambda y, log_w: np.expm1(theta * y) / y * np.exp(log_w),
        None,
    )
    atoms = tuple((y, m * math.exp(theta * y)) for y, m in measure.atoms)
    pieces = tuple(
        DensityPiece(p.kind, p.shape.tilt(p.params, theta, p.sign), p.lo, p.hi) for p in measure.pieces
    )
    triplet = LevyTriplet(spec.drift + theta * spec.sigma2 + shift, spec.sigma2, LevyMeasure(atoms, pieces))
    return replace(spec, triplet=triplet, name=f"{spec.name}-tilted")


def wald_martingale(spec: ProcessSpec, lam: float, batch: PathBatch) -> np.ndarray:
    """e^{lam X_u - u eta(lam)} along every path of the batch."""
    check_rate(spec, lam)
    eta = eval_laplace_exponent(spec, lam)
    times = np.array(batch.grid.times)
    return np.exp(lam * batch.values - eta * times[np.newaxis, :])
