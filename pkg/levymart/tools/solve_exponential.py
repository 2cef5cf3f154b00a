from typing import Dict, Any, Optional, Tuple

from levymart.config import resolve_process
from levymart.errors import LevymartError
from levymart.expmart import build_exp_martingale, solve_lambda
from levymart.generator import classify_multiplicative
from levymart.levy_core import eval_laplace_exponent
from .report_utils import failure


def solve_exponential(
    process,
    alpha: float,
    params: Optional[Dict[str, float]] = None,
    build: Optional[Tuple[float, float]] = None,
    horizon: Optional[float] = None,
    tol: Optional[float] = None,
) -> Dict[str, Any]:
    """
    Solve E e^{lam X_t} = e^{alpha t} for real lam and optionally build g.

    Args:
        process: Catalog name, inline JSON/dict config or '@path'
        alpha: Target exponent
        params: Catalog parameter overrides (optional)
        build: Weights (a, b) of g = a e^{lam1 x} + b e^{lam2 x} (optional)
        horizon: Nominal t of the equation; the roots do not depend on it (echoed only)
        tol: Residual tolerance on eta (LEVYMART_ROOT_TOL by default)

    Returns:
        Dict with the RootReport, root residuals and the constructed martingale function
    """
    try:
        _, spec = resolve_process(process, params)
        # Roots of eta(lam) = alpha, horizon plays no part
        report = solve_lambda(spec, alpha, tol)
        result = {
            'success': True,
            'horizon': horizon,
            **report.to_dict(),
            'residuals': [abs(eval_laplace_exponent(spec, r) - report.alpha) for r in report.roots]
        }
        if build is not None:
            a, b = build
            martingale = build_exp_martingale(spec, report, a, b)
            result['martingale'] = martingale.to_dict()
            # Re-check the built g with the exact multiplicative classifier
            result['martingale']['verdict'] = classify_multiplicative(spec, martingale.g).verdict.value
        return result
    except LevymartError as e:
        return failure(e)
