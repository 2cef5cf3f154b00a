"""
Moments - cumulants, raw moments of X_t as polynomials in t, exponential-moment
domain and the exact semigroup action on polynomials
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import comb

from levymart import utils
from levymart.errors import MomentError, ValidationError
from levymart.levy_core import ProcessSpec, measure_moments
from levymart.polynomial import BiPolynomial, Polynomial, as_polynomial

logger = logging.getLogger(__name__)


def moment_finite(spec: ProcessSpec, n: int) -> bool:
    """True iff int_{|y|>=1} |y|^n nu(dy) < inf, i.e. E|X_t|^n < inf."""
    if n < 0:
        raise ValidationError("moment order must be nonnegative")
    return spec.measure.outer_moment_finite(n)


def first_infinite_order(spec: ProcessSpec, n: int) -> Optional[int]:
    for k in range(1, n + 1):
        if not moment_finite(spec, k):
            return k
    return None


@lru_cache(maxsize=256)
def _cumulants(spec: ProcessSpec, n: int, rtol: float, atol: float) -> Tuple[float, ...]:
    measure = spec.measure
    values = []
    for j in range(1, n + 1):
        outer = measure_moments(measure, j, 'outer', rtol, atol)
        if j == 1:
            values.append(spec.drift + outer)
            continue
        inner = measure_moments(measure, j, 'inner', rtol, atol)
        values.append(inner + outer + (spec.sigma2 if j == 2 else 0.0))
    logger.debug("cumulants of %s up to order %d: %s", spec.name, n, values)
    return tuple(values)


def cumulants(spec: ProcessSpec, n: int, rtol: float = None, atol: float = None) -> List[float]:
    """[kappa_1, ..., kappa_n] of X_1 in closed form from the triplet.

    kappa_1 = b + M_1, kappa_2 = sigma2 + m_2 + M_2 and kappa_j = m_j + M_j for
    j >= 3, with m_j, M_j the inner and outer measure moments.
    """
    if n < 0:
        raise ValidationError("number of cumulants must be nonnegative")
    failing = first_infinite_order(spec, n)
    if failing is not None:
        raise MomentError(failing)
    rtol = utils.RTOL if rtol is None else rtol
    atol = utils.ATOL if atol is None else atol
    return list(_cumulants(spec, n, rtol, atol))


def moments_from_cumulants(kappas: Sequence[Union[Polynomial, float]]) -> List[Polynomial]:
    """[mu_0, ..., mu_n] from [c_1, ..., c_n] by mu_m = sum_j C(m-1, j-1) c_j mu_{m-j}."""
    cs = [as_polynomial(c) for c in kappas]
    mus = [Polynomial.constant(1.0)]
    for m in range(1, len(cs) + 1):
        total = Polynomial.zero()
        for j in range(1, m + 1):
            total = total + cs[j - 1] * mus[m - j] * float(comb(m - 1, j - 1, exact=True))
        mus.append(total)
    return mus


def cumulants_from_moments(moments: Sequence[Union[Polynomial, float]]) -> List[Polynomial]:
    """Inverse of moments_from_cumulants; `moments` is [mu_1, ..., mu_n] (mu_0 = 1)."""
    mus = [Polynomial.constant(1.0)] + [as_polynomial(m) for m in moments]
    kappas: List[Polynomial] = []
    for m in range(1, len(mus)):
        total = mus[m]
        for j in range(1, m):
            total = total - kappas[j - 1] * mus[m - j] * float(comb(m - 1, j - 1, exact=True))
        kappas.append(total)
    return kappas


def raw_moment_polynomials(spec: ProcessSpec, n: int, rtol: float = None, atol: float = None) -> List[Polynomial]:
    """[E X_t^0, ..., E X_t^n] as polynomials in t."""
    kappas = cumulants(spec, n, rtol, atol)
    return moments_from_cumulants([Polynomial((0.0, k)) for k in kappas])


def moment_polynomial(spec: ProcessSpec, n: int, rtol: float = None, atol: float = None) -> Polynomial:
    """q(t) = E X_t^n, a polynomial in t of degree at most n."""
    if n < 0:
        raise ValidationError("moment order must be nonnegative")
    return raw_moment_polynomials(spec, n, rtol, atol)[n]


@dataclass(frozen=True)
class ExpDomain:
    """Open interval (lower, upper) on which eta is finite, capped at +-kappa_max."""

    lower: float
    upper: float
    lower_capped: bool
    upper_capped: bool
    kappa_max: float

    def contains(self, lam: float) -> bool:
        # eta(0) = 0 even when the domain collapses to a point
        return lam == 0 or self.lower < lam < self.upper

    @property
    def nondegenerate(self) -> bool:
        return self.lower < 0 < self.upper

    def as_tuple(self) -> Tuple[float, float]:
        return self.lower, self.upper

    def to_dict(self) -> dict:
        return {
            'lower': -math.inf if self.lower_capped else self.lower,
            'upper': math.inf if self.upper_capped else self.upper,
            'lower_capped': self.lower_capped,
            'upper_capped': self.upper_capped,
            'kappa_max': self.kappa_max,
        }

    def __str__(self):
        lo = '-inf' if self.lower_capped else f"{self.lower:g}"
        hi = 'inf' if self.upper_capped else f"{self.upper:g}"
        return f"({lo}, {hi})"


def _edge(spec: ProcessSpec, side: int) -> float:
    """Sup of |lam| with lam * side in the domain, from the declared tails."""
    edge = math.inf
    for piece in spec.measure.pieces:
        if piece.sign == side and piece.unbounded:
            edge = min(edge, piece.shape.tail(piece.params)[0])
    return edge


def exp_moment_domain(spec: ProcessSpec, kappa_max: float = None) -> ExpDomain:
    """Maximal open interval around 0 where E e^{lam X_t} < inf.

    Each unbounded density piece declares its exponential decay rate, so the
    edges are exact; an edge beyond kappa_max is reported as capped. At an edge
    eta may still be finite (power-tempered tails) but the edge itself is
    excluded.
    """
    kappa_max = utils.KAPPA_MAX if kappa_max is None else float(kappa_max)
    if kappa_max <= 0:
        raise ValidationError("kappa_max must be positive")
    upper = _edge(spec, 1)
    lower = _edge(spec, -1)
    return ExpDomain(
        lower=-min(lower, kappa_max),
        upper=min(upper, kappa_max),
        lower_capped=lower >= kappa_max,
        upper_capped=upper >= kappa_max,
        kappa_max=kappa_max,
    )


def semigroup_on_polynomial(spec: ProcessSpec, p: Polynomial, rtol: float = None, atol: float = None) -> BiPolynomial:
    """T_t p(x) = E p(x + X_t) = sum_n a_n sum_k C(n, k) x^{n-k} E X_t^k, exactly."""
    p = as_polynomial(p)
    degree = max(p.degree, 0)
    mus = raw_moment_polynomials(spec, degree, rtol, atol)
    grid = np.zeros((degree + 1, degree + 1))
    for n, a_n in enumerate(p.coeffs):
        if a_n == 0.0:
            continue
        for k in range(n + 1):
            mu = mus[k].array
            grid[n - k, : mu.size] += a_n * comb(n, k, exact=True) * mu
    return BiPolynomial(grid)
