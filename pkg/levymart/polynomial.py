"""
Dense real polynomials in one variable and in (x, t)

Coefficients are stored in ascending powers. Arithmetic is delegated to
numpy.polynomial; the classes add canonical trimming and immutability.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P

from levymart.errors import ValidationError
from levymart.utils import ZERO_THRESHOLD

Number = Union[int, float]


def _trim(coeffs: np.ndarray) -> np.ndarray:
    if coeffs.size == 0:
        return np.zeros(1)
    threshold = ZERO_THRESHOLD * max(float(np.max(np.abs(coeffs))), 1.0)
    last = coeffs.size - 1
    while last > 0 and abs(coeffs[last]) <= threshold:
        last -= 1
    trimmed = coeffs[: last + 1].copy()
    if last == 0 and abs(trimmed[0]) <= threshold:
        trimmed[0] = 0.0
    return trimmed


@dataclass(frozen=True)
class Polynomial:
    """p(x) = sum_k coeffs[k] x^k, trailing near-zero coefficients trimmed."""

    coeffs: Tuple[float, ...]

    def __post_init__(self):
        array = np.asarray(self.coeffs, dtype=float).ravel()
        if not np.all(np.isfinite(array)):
            raise ValidationError("polynomial coefficients must be finite")
        object.__setattr__(self, 'coeffs', tuple(float(c) for c in _trim(array)))

    @classmethod
    def zero(cls) -> 'Polynomial':
        return cls((0.0,))

    @classmethod
    def constant(cls, value: Number) -> 'Polynomial':
        return cls((float(value),))

    @classmethod
    def monomial(cls, n: int, coefficient: Number = 1.0) -> 'Polynomial':
        if n < 0:
            raise ValidationError("monomial degree must be nonnegative")
        coeffs = np.zeros(n + 1)
        coeffs[n] = coefficient
        return cls(coeffs)

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> 'Polynomial':
        return cls(P.polyfromroots(list(roots)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs)

    @property
    def degree(self) -> int:
        """Degree, with -1 standing for the zero polynomial."""
        if len(self.coeffs) == 1 and self.coeffs[0] == 0.0:
            return -1
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == -1

    @property
    def scale(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def coefficient(self, k: int) -> float:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0.0

    def __call__(self, x):
        return P.polyval(x, self.array)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(P.polyadd(self.array, other.array))
        return Polynomial(P.polyadd(self.array, [float(other)]))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self.array)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(P.polymul(self.array, other.array))
        return Polynomial(self.array * float(other))

    __rmul__ = __mul__

    def derivative(self, order: int = 1) -> 'Polynomial':
        if order > self.degree:
            return Polynomial.zero()
        return Polynomial(P.polyder(self.array, order))

    def shift(self, y: Number) -> 'Polynomial':
        """x -> p(x + y)."""
        composed = np.polynomial.Polynomial(self.array)(np.polynomial.Polynomial([float(y), 1.0]))
        return Polynomial(composed.coef)

    def nonconstant_part(self) -> 'Polynomial':
        coeffs = list(self.coeffs)
        coeffs[0] = 0.0
        return Polynomial(coeffs)

    def is_constant(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs[1:])

    def allclose(self, other: 'Polynomial', rtol: float = 1e-12, atol: float = 0.0) -> bool:
        size = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(size)
        b = np.zeros(size)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        bound = rtol * max(float(np.max(np.abs(a))), float(np.max(np.abs(b))), 1.0) + atol
        return bool(np.all(np.abs(a - b) <= bound))

    def to_list(self) -> list:
        return list(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0.0:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            body = f"{magnitude:g}"
            if k >= 1:
                body = ("" if magnitude == 1.0 else body) + ("x" if k == 1 else f"x^{k}")
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def falling_factorial(step: Number, order: int) -> Polynomial:
    """x (x - y) ... (x - (k-1) y)."""
    if order == 0:
        return Polynomial.constant(1.0)
    return Polynomial.from_roots(step * np.arange(order))


@dataclass(frozen=True)
class BiPolynomial:
    """q(x, t) = sum_{i,j} grid[i][j] x^i t^j."""

    grid: Tuple[Tuple[float, ...], ...]

    def __post_init__(self):
        array = np.atleast_2d(np.asarray(self.grid, dtype=float))
        if array.size == 0:
            array = np.zeros((1, 1))
        threshold = ZERO_THRESHOLD * max(float(np.max(np.abs(array))), 1.0)
        rows, cols = array.shape
        while rows > 1 and np.all(np.abs(array[rows - 1, :cols]) <= threshold):
            rows -= 1
        while cols > 1 and np.all(np.abs(array[:rows, cols - 1]) <= threshold):
            cols -= 1
        array = array[:rows, :cols]
        object.__setattr__(self, 'grid', tuple(tuple(float(c) for c in row) for row in array))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.grid)

    @property
    def degree_x(self) -> int:
        return len(self.grid) - 1

    @property
    def degree_t(self) -> int:
        return len(self.grid[0]) - 1

    def __call__(self, x, t):
        return P.polyval2d(x, t, self.array)

    def time_coefficient(self, j: int) -> Polynomial:
        """The polynomial in x multiplying t^j."""
        if j > self.degree_t:
            return Polynomial.zero()
        return Polynomial(self.array[:, j])

    def at_time(self, t: Number) -> Polynomial:
        return Polynomial(P.polyval(float(t), self.array.T))

    def at_point(self, x: Number) -> Polynomial:
        """The polynomial in t obtained by fixing x."""
        return Polynomial(P.polyval(float(x), self.array))

    def to_list(self) -> list:
        return [list(row) for row in self.grid]


def as_polynomial(value: Union[Polynomial, Sequence[Number], Number]) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if np.isscalar(value):
        return Polynomial.constant(value)
    return Polynomial(value)
