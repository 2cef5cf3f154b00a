from typing import Dict, Any, List, Optional

from levymart.errors import LevymartError, ValidationError
from levymart.funceq import difference, frechet_solve, verify_general_solution
from levymart.polynomial import Polynomial
from .report_utils import failure

ACTIONS = ('solve', 'diff', 'verify')


def solve_funceq(action: str, p: List[float], y: float, q2: Optional[List[float]] = None) -> Dict[str, Any]:
    """
    Work with the difference equation Delta_y q = p.

    Args:
        action: 'solve' (q with Delta_y q = p, q(0) = 0), 'diff' (Delta_y p) or
                'verify' (p and q2 solve the same equation -> they differ by a constant)
        p: Polynomial coefficients, ascending
        y: Step, nonzero
        q2: Second polynomial for 'verify'

    Returns:
        Dict with the resulting coefficients or the verification record
    """
    try:
        if action not in ACTIONS:
            raise ValidationError(f"action must be one of {ACTIONS}")
        poly = Polynomial(p)
        if action == 'solve':
            q = frechet_solve(poly, y)
            return {
                'success': True,
                'q': q.to_list(),
                'degree': q.degree,
                'round_trip': difference(q, y).allclose(poly, rtol=1e-9)
            }
        if action == 'diff':
            return {'success': True, 'difference': difference(poly, y).to_list()}
        # verify: two solutions of the same equation differ by a constant
        if q2 is None:
            raise ValidationError("verify needs q2")
        check = verify_general_solution(poly, Polynomial(q2), y)
        return {'success': True, **check.to_dict()}
    except LevymartError as e:
        return failure(e)
