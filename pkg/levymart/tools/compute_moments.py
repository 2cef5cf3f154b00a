from typing import Dict, Any, Optional

from levymart.config import resolve_process
from levymart.errors import LevymartError, ValidationError
from levymart.moments import cumulants, exp_moment_domain, first_infinite_order, raw_moment_polynomials
from .report_utils import failure


def compute_moments(
    process,
    params: Optional[Dict[str, float]] = None,
    order: int = 4,
    t: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Cumulants and raw moments E X_t^n (as polynomials in t) up to a given order.

    Args:
        process: Catalog name, inline JSON/dict config or '@path'
        params: Catalog parameter overrides (optional)
        order: Highest moment order; orders past the first infinite one are dropped
        t: Time at which the moment polynomials are also evaluated (optional)

    Returns:
        Dict with cumulants, moment polynomial coefficients (ascending powers of t)
        and the exponential-moment domain
    """
    try:
        if order < 0:
            raise ValidationError("order must be nonnegative")
        _, spec = resolve_process(process, params)
        # Stop at the last finite order instead of failing the whole request
        failing = first_infinite_order(spec, order)
        usable = order if failing is None else failing - 1
        moments = raw_moment_polynomials(spec, usable)

        result = {
            'success': True,
            'order': usable,
            'first_infinite_order': failing,
            'cumulants': cumulants(spec, usable),
            'moment_polynomials': [m.to_list() for m in moments],
            'exp_moment_domain': exp_moment_domain(spec).to_dict()
        }
        # Evaluate the moment polynomials at t if asked
        if t is not None:
            result['t'] = float(t)
            result['moments_at_t'] = [float(m(t)) for m in moments]
        return result
    except LevymartError as e:
        return failure(e)
