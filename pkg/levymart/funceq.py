"""
Fréchet difference equation Delta_y q = p on polynomials

Solutions are built from the falling factorials
x^{(k/y)} = x (x - y) ... (x - (k-1) y), which satisfy
Delta_y x^{((k+1)/y)} = (k+1) y x^{(k/y)}.
"""
import math
from dataclasses import dataclass

import numpy as np

from levymart.errors import ValidationError
from levymart.polynomial import Polynomial, as_polynomial, falling_factorial


def _check_step(y: float) -> float:
    y = float(y)
    if y == 0.0 or not math.isfinite(y):
        raise ValidationError("difference step y must be finite and nonzero")
    return y


@dataclass(frozen=True)
class FallingFactorialBasis:
    step: float
    order: int

    def __post_init__(self):
        object.__setattr__(self, 'step', _check_step(self.step))
        if self.order < 0:
            raise ValidationError("falling factorial order must be nonnegative")

    @property
    def polynomial(self) -> Polynomial:
        return falling_factorial(self.step, self.order)

    def __call__(self, x):
        return self.polynomial(x)


def difference(q: Polynomial, y: float) -> Polynomial:
    """Delta_y q(x) = q(x + y) - q(x)."""
    y = _check_step(y)
    q = as_polynomial(q)
    return q.shift(y) - q


def newton_coefficients(p: Polynomial, y: float) -> np.ndarray:
    """a_k with p = sum_k a_k x^{(k/y)}, from forward differences at 0, y, ..., n y."""
    y = _check_step(y)
    p = as_polynomial(p)
    n = max(p.degree, 0)
    values = p(y * np.arange(n + 1))
    coeffs = np.empty(n + 1)
    for k in range(n + 1):
        coeffs[k] = values[0] / (math.factorial(k) * y ** k)
        values = np.diff(values)
    return coeffs


def frechet_solve(p: Polynomial, y: float) -> Polynomial:
    """The solution q of Delta_y q = p normalized by q(0) = 0.

    Each Newton term a_k x^{(k/y)} is antidifferenced to
    a_k x^{((k+1)/y)} / ((k+1) y); the k = 0 term gives p(0) x / y.
    """
    p = as_polynomial(p)
    y = _check_step(y)
    if p.is_zero:
        return Polynomial.zero()
    q = Polynomial.zero()
    for k, a_k in enumerate(newton_coefficients(p, y)):
        if a_k != 0.0:
            q = q + falling_factorial(y, k + 1) * (a_k / ((k + 1) * y))
    return q


@dataclass(frozen=True)
class SolutionCheck:
    """holds is vacuously true when the premise (equal differences) fails."""

    holds: bool
    premise_holds: bool

    def __bool__(self):
        return self.holds

    def to_dict(self) -> dict:
        return {'holds': self.holds, 'premise': 'premise-true' if self.premise_holds else 'premise-false'}


def verify_general_solution(q1: Polynomial, q2: Polynomial, y: float, tol: float = 1e-9) -> SolutionCheck:
    """Two solutions of the same difference equation differ by a constant."""
    q1, q2 = as_polynomial(q1), as_polynomial(q2)
    if not difference(q1, y).allclose(difference(q2, y), rtol=tol):
        return SolutionCheck(True, False)
    gap = q1 - q2
    scale = max(1.0, q1.scale, q2.scale)
    return SolutionCheck(gap.is_constant(tol * scale), True)
