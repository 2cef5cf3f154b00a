from typing import Dict, Any, List, Optional

from levymart.config import resolve_process
from levymart.errors import LevymartError, ValidationError
from levymart.generator import ExpMix, classify_additive, classify_multiplicative
from levymart.polynomial import Polynomial
from .report_utils import failure


def classify_function(
    process,
    params: Optional[Dict[str, float]] = None,
    poly: Optional[List[float]] = None,
    expmix: Optional[List[float]] = None,
    tol: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Exact martingale-function verdict for a polynomial (additive) or an
    exponential mixture (multiplicative).

    Args:
        process: Catalog name, inline JSON/dict config or '@path'
        params: Catalog parameter overrides (optional)
        poly: Polynomial coefficients, ascending
        expmix: [a, l1] or [a, l1, b, l2]
        tol: Constancy tolerance (LEVYMART_CLASSIFY_TOL by default)

    Returns:
        Dict with mode and the verdict record {verdict, alpha, witness_coeffs, tolerance_used}
    """
    try:
        if (poly is None) == (expmix is None):
            raise ValidationError("give exactly one of poly or expmix")
        _, spec = resolve_process(process, params)
        if poly is not None:
            verdict = classify_additive(spec, Polynomial(poly), tol)
            mode = 'additive'
        else:
            # Single exponential or a two-term mix
            if len(expmix) not in (2, 4):
                raise ValidationError("expmix takes a,l1 or a,l1,b,l2")
            g = ExpMix(*expmix)
            verdict = classify_multiplicative(spec, g, tol)
            mode = 'multiplicative'
        return {
            'success': True,
            'mode': mode,
            **verdict.to_dict()
        }
    except LevymartError as e:
        return failure(e)
