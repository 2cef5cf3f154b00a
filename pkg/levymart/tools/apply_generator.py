from typing import Dict, Any, List, Optional

from levymart.config import resolve_process
from levymart.errors import LevymartError, ValidationError
from levymart.functions import parse_function
from levymart.generator import apply_numeric, apply_to_exponential, apply_to_polynomial
from levymart.moments import semigroup_on_polynomial
from levymart.polynomial import Polynomial
from .report_utils import failure


def apply_generator(
    process,
    params: Optional[Dict[str, float]] = None,
    poly: Optional[List[float]] = None,
    lam: Optional[float] = None,
    function: Optional[str] = None,
    x: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Apply the generator A to a polynomial, an exponential or a named function at a point.

    Args:
        process: Catalog name, inline JSON/dict config or '@path'
        params: Catalog parameter overrides (optional)
        poly: Polynomial coefficients, ascending (closed form A p, checked against
              the t-linear coefficient of T_t p)
        lam: Exponential rate (returns the eigenvalue eta(lam))
        function: Function spec in the mini-language, evaluated numerically at x

    Returns:
        Dict with one entry per requested form
    """
    try:
        if poly is None and lam is None and function is None:
            raise ValidationError("give at least one of poly, lam or function")
        _, spec = resolve_process(process, params)
        result = {'success': True}

        # Each requested form is evaluated independently

        if poly is not None:
            p = Polynomial(poly)
            ap = apply_to_polynomial(spec, p)
            # The t-linear coefficient of the semigroup must equal Ap
            semigroup = semigroup_on_polynomial(spec, p)
            result['polynomial'] = {
                'p': p.to_list(),
                'Ap': ap.to_list(),
                'semigroup': semigroup.to_list(),
                't_linear_matches': semigroup.time_coefficient(1).allclose(ap, rtol=1e-10)
            }
        if lam is not None:
            result['exponential'] = {'lambda': float(lam), 'eta': apply_to_exponential(spec, lam)}
        if function is not None:
            if x is None:
                raise ValidationError("numeric generator evaluation needs x")
            parsed = parse_function(function)
            value = apply_numeric(spec, parsed.f, x, parsed.df, parsed.d2f)
            result['numeric'] = {'function': parsed.text, 'x': float(x), 'Af': value}
        return result
    except LevymartError as e:
        return failure(e)
