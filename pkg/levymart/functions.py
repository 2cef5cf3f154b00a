"""
Function mini-language for test functions f and g

    poly:<c0,c1,...>        polynomial, ascending coefficients
    expmix:<a,l1,b,l2>      a e^{l1 x} + b e^{l2 x}  (expmix:<a,l1> for one term)
    identity square cube cosh exp sin tanh bump
"""
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from levymart.errors import ValidationError
from levymart.generator import ExpMix
from levymart.polynomial import Polynomial


@dataclass(frozen=True)
class ParsedFunction:
    text: str
    f: Callable
    df: Callable
    d2f: Callable
    polynomial: Optional[Polynomial] = None
    expmix: Optional[ExpMix] = None

    @property
    def rates(self) -> Tuple[float, ...]:
        """Exponential rates of g; empty for non-exponential functions."""
        if self.expmix is None:
            return ()
        return tuple(sorted({self.expmix.lam1, self.expmix.lam2}))

    @property
    def moment_order(self) -> Optional[int]:
        """Moment order needed for a finite-variance statistic (2 deg p), None if unknown."""
        if self.polynomial is not None:
            return 2 * max(self.polynomial.degree, 0)
        if self.expmix is None:
            return 0
        return None

    def __call__(self, x):
        return self.f(x)


def parse_coeffs(text: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise ValidationError(f"expected comma-separated numbers, got '{text}'")
    if not values:
        raise ValidationError("empty coefficient list")
    return values


def from_polynomial(p: Polynomial, text: Optional[str] = None) -> ParsedFunction:
    d1, d2 = p.derivative(1), p.derivative(2)
    return ParsedFunction(text or f"poly:{','.join(f'{c:g}' for c in p.coeffs)}", p, d1, d2, polynomial=p)


def from_expmix(g: ExpMix, text: Optional[str] = None) -> ParsedFunction:
    return ParsedFunction(
        text or f"expmix:{g.a:g},{g.lam1:g},{g.b:g},{g.lam2:g}",
        g, g.derivative(1), g.derivative(2), expmix=g,
    )


def _sech2(x):
    return 1.0 / np.cosh(x) ** 2


def _bump(x):
    return np.exp(-np.square(x))


NAMED = {
    'identity': lambda: from_polynomial(Polynomial((0.0, 1.0)), 'identity'),
    'square': lambda: from_polynomial(Polynomial((0.0, 0.0, 1.0)), 'square'),
    'cube': lambda: from_polynomial(Polynomial((0.0, 0.0, 0.0, 1.0)), 'cube'),
    'cosh': lambda: from_expmix(ExpMix(0.5, -1.0, 0.5, 1.0), 'cosh'),
    'exp': lambda: from_expmix(ExpMix(1.0, 1.0), 'exp'),
    'sin': lambda: ParsedFunction('sin', np.sin, np.cos, lambda x: -np.sin(x)),
    'tanh': lambda: ParsedFunction(
        'tanh', np.tanh, _sech2, lambda x: -2.0 * np.tanh(x) * _sech2(x),
    ),
    'bump': lambda: ParsedFunction(
        'bump', _bump, lambda x: -2.0 * x * _bump(x), lambda x: (4.0 * np.square(x) - 2.0) * _bump(x),
    ),
}


def parse_function(text: str) -> ParsedFunction:
    text = text.strip()
    if text in NAMED:
        return NAMED[text]()
    kind, _, body = text.partition(':')
    if kind == 'poly':
        return from_polynomial(Polynomial(parse_coeffs(body)), text)
    if kind == 'expmix':
        values = parse_coeffs(body)
        if len(values) not in (2, 4):
            raise ValidationError("expmix takes a,l1 or a,l1,b,l2")
        return from_expmix(ExpMix(*values), text)
    raise ValidationError(
        f"unknown function '{text}'; use poly:<coeffs>, expmix:<a,l1,b,l2> or one of {', '.join(NAMED)}"
    )
