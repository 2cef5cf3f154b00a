"""
Generator - the infinitesimal generator A of a Levy process

    A f(x) = b f'(x) + sigma2/2 f''(x)
             + int [f(x+y) - f(x) - y f'(x) 1_{|y|<1}] nu(dy)

On polynomials A acts through the cumulants, A p = sum_k kappa_k p^{(k)} / k!;
on exponentials A e^{lam x} = eta(lam) e^{lam x}. The classifiers decide
whether f(X_t) - E f(X_t) or g(X_t) / E g(X_t) is a martingale.
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np

from levymart import utils
from levymart.errors import DomainError, ValidationError
from levymart.levy_core import ProcessSpec, eval_laplace_exponent, measure_integral
from levymart.moments import cumulants, exp_moment_domain
from levymart.polynomial import Polynomial, as_polynomial

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    MARTINGALE = 'martingale-function'
    NOT_MARTINGALE = 'not-martingale-function'
    INDETERMINATE = 'trivial-process-indeterminate'


@dataclass(frozen=True)
class ExpMix:
    """g(x) = a e^{lam1 x} + b e^{lam2 x}, canonically lam1 <= lam2.

    Equal rates collapse to (a + b) e^{lam1 x}; a single exponential is always
    stored in the (a, lam1) slot with b = 0 and lam2 = lam1.
    """

    a: float
    lam1: float
    b: float = 0.0
    lam2: Optional[float] = None

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        lam1 = float(self.lam1)
        lam2 = lam1 if self.lam2 is None else float(self.lam2)
        if not all(math.isfinite(v) for v in (a, b, lam1, lam2)):
            raise ValidationError("ExpMix parameters must be finite")
        if a < 0 or b < 0:
            raise ValidationError("ExpMix weights must be nonnegative")
        if lam1 > lam2:
            a, b, lam1, lam2 = b, a, lam2, lam1
        if lam1 == lam2:
            a, b = a + b, 0.0
        elif a == 0.0:
            a, b, lam1 = b, 0.0, lam2
        if b == 0.0:
            lam2 = lam1
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)
        object.__setattr__(self, 'lam1', lam1)
        object.__setattr__(self, 'lam2', lam2)

    @property
    def is_zero(self) -> bool:
        return self.a == 0.0 and self.b == 0.0

    @property
    def single(self) -> bool:
        return self.b == 0.0

    def __call__(self, x, order: int = 0):
        x = np.asarray(x, dtype=float)
        value = self.a * self.lam1 ** order * np.exp(self.lam1 * x)
        if self.b:
            value = value + self.b * self.lam2 ** order * np.exp(self.lam2 * x)
        return value

    def derivative(self, order: int = 1) -> Callable:
        return lambda x: self(x, order)

    def to_dict(self) -> dict:
        return {'a': self.a, 'lam1': self.lam1, 'b': self.b, 'lam2': self.lam2}

    def __str__(self):
        if self.single:
            return f"{self.a:g}*exp({self.lam1:g}x)"
        return f"{self.a:g}*exp({self.lam1:g}x) + {self.b:g}*exp({self.lam2:g}x)"


@dataclass(frozen=True)
class ClassificationVerdict:
    verdict: Verdict
    alpha: Optional[float]
    witness: Optional[Union[Polynomial, Tuple[float, float]]]
    tolerance: float

    def __post_init__(self):
        if (self.witness is not None) != (self.verdict is Verdict.NOT_MARTINGALE):
            raise ValidationError("a witness accompanies exactly the negative verdicts")

    @property
    def is_martingale(self) -> bool:
        return self.verdict is Verdict.MARTINGALE

    def to_dict(self) -> dict:
        if isinstance(self.witness, Polynomial):
            witness = self.witness.to_list()
        elif self.witness is not None:
            witness = list(self.witness)
        else:
            witness = None
        return {
            'verdict': self.verdict.value,
            'alpha': self.alpha,
            'witness_coeffs': witness,
            'tolerance_used': self.tolerance,
        }


def apply_to_polynomial(spec: ProcessSpec, p: Polynomial, rtol: float = None, atol: float = None) -> Polynomial:
    """A p = sum_{k>=1} kappa_k p^{(k)} / k!; raises MomentError if a needed moment is infinite."""
    p = as_polynomial(p)
    if p.degree < 1:
        return Polynomial.zero()
    kappas = cumulants(spec, p.degree, rtol, atol)
    result = Polynomial.zero()
    for k, kappa in enumerate(kappas, start=1):
        if kappa != 0.0:
            result = result + p.derivative(k) * (kappa / math.factorial(k))
    return result


def check_rate(spec: ProcessSpec, lam: float, kappa_max: float = None):
    """Raise DomainError unless lam lies in the exponential-moment domain."""
    domain = exp_moment_domain(spec, kappa_max)
    inside = lam == 0 or (
        (domain.lower_capped or lam > domain.lower) and (domain.upper_capped or lam < domain.upper)
    )
    if not inside:
        raise DomainError(lam, str(domain))
    return domain


def apply_to_exponential(spec: ProcessSpec, lam: float, rtol: float = None, atol: float = None) -> float:
    """The eigenvalue eta(lam) in A e^{lam x} = eta(lam) e^{lam x}."""
    check_rate(spec, lam)
    return eval_laplace_exponent(spec, lam, rtol, atol)


def apply_numeric(
    spec: ProcessSpec,
    f: Callable,
    x: float,
    df: Optional[Callable] = None,
    d2f: Optional[Callable] = None,
    step: float = 1e-4,
    rtol: float = None,
    atol: float = None,
) -> float:
    """Evaluate A f(x) from the integro-differential form by quadrature.

    Args:
        spec: The process
        f: Twice differentiable function of one real variable
        x: Evaluation point
        df, d2f: First and second derivative of f (central differences with `step` if omitted)
        step: Difference step used when derivatives are not supplied

    Returns:
        A f(x) as a float
    """
    x = float(x)
    if df is None:
        df = lambda z: (f(z + step) - f(z - step)) / (2.0 * step)
    if d2f is None:
        d2f = lambda z: (f(z + step) - 2.0 * f(z) + f(z - step)) / (step * step)
    fx = float(f(x))
    dfx = float(df(x))
    value = spec.drift * dfx + 0.5 * spec.sigma2 * float(d2f(x))
    if spec.measure.is_zero:
        return value

    def atom_kernel(y):
        return float(f(x + y)) - fx - (y * dfx if abs(y) < 1 else 0.0)

    def inner(y, log_w):
        if abs(y) < 1e-3:
            reduced = 0.5 * d2f(x + y / 3.0)
        else:
            reduced = (f(x + y) - fx - y * dfx) / (y * y)
        return reduced * np.exp(log_w)

    def outer(y, log_w):
        return (f(x + y) - fx) * np.exp(log_w)

    return value + measure_integral(spec.measure, atom_kernel, inner, outer, rtol, atol)


def classify_additive(spec: ProcessSpec, p: Polynomial, tol: float = None) -> ClassificationVerdict:
    """Is p(X_t) - E p(X_t) a martingale? Decided by constancy of A p."""
    tol = utils.CLASSIFY_TOL if tol is None else tol
    p = as_polynomial(p)
    if not spec.nontrivial:
        return ClassificationVerdict(Verdict.INDETERMINATE, None, None, tol)
    ap = apply_to_polynomial(spec, p)
    kappa_scale = max((abs(k) for k in cumulants(spec, max(p.degree, 0))), default=1.0)
    scale = max(1.0, p.scale * max(1.0, kappa_scale))
    if ap.is_constant(tol * scale):
        return ClassificationVerdict(Verdict.MARTINGALE, ap.coefficient(0), None, tol)
    logger.debug("A p = %s is not constant", ap)
    return ClassificationVerdict(Verdict.NOT_MARTINGALE, ap.coefficient(0), ap.nonconstant_part(), tol)


def classify_multiplicative(spec: ProcessSpec, g: ExpMix, tol: float = None) -> ClassificationVerdict:
    """Is g(X_t) / E g(X_t) a martingale? Decided by eta(lam1) == eta(lam2)."""
    tol = utils.CLASSIFY_TOL if tol is None else tol
    if g.is_zero:
        raise ValidationError("the zero function has no multiplicative normalization")
    check_rate(spec, g.lam1)
    check_rate(spec, g.lam2)
    eta1 = eval_laplace_exponent(spec, g.lam1)
    if g.single:
        return ClassificationVerdict(Verdict.MARTINGALE, eta1, None, tol)
    if not spec.nontrivial:
        return ClassificationVerdict(Verdict.INDETERMINATE, None, None, tol)
    eta2 = eval_laplace_exponent(spec, g.lam2)
    if abs(eta1 - eta2) <= tol * max(1.0, abs(eta1), abs(eta2)):
        return ClassificationVerdict(Verdict.MARTINGALE, 0.5 * (eta1 + eta2), None, tol)
    return ClassificationVerdict(Verdict.NOT_MARTINGALE, None, (eta1, eta2), tol)
