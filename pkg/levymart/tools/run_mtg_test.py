from typing import Dict, Any, List, Optional

from levymart.config import resolve_process
from levymart.errors import LevymartError, ValidationError
from levymart.functions import parse_function
from levymart.generator import classify_additive, classify_multiplicative
from levymart.mtgtest import ADDITIVE, MULTIPLICATIVE, gamma_diagnostics, test_additive, test_multiplicative
from .report_utils import failure

MODES = {'additive': ADDITIVE, 'mult': MULTIPLICATIVE, 'multiplicative': MULTIPLICATIVE}


def run_mtg_test(
    process,
    function: str,
    seed: int,
    mode: str = 'additive',
    params: Optional[Dict[str, float]] = None,
    s: float = 0.5,
    t: float = 1.0,
    n_paths: Optional[int] = None,
    level: Optional[float] = None,
    diagnostics: Optional[List[float]] = None,
) -> Dict[str, Any]:
    """
    Monte Carlo martingale test of f (additive) or g (multiplicative).

    Args:
        process: Catalog name, inline JSON/dict config or '@path'
        function: Function spec: poly:<coeffs>, expmix:<a,l1,b,l2> or a named function
        seed: Seed of the path batch
        mode: 'additive' or 'mult'
        params: Catalog parameter overrides (optional)
        s, t: Test times, 0 < s < t
        n_paths: Number of paths (LEVYMART_N_PATHS by default)
        level: Test level (LEVYMART_LEVEL by default)
        diagnostics: Times for gamma diagnostics (optional)

    Returns:
        Dict with the MartingaleReport, the exact verdict when the function is a
        polynomial or exponential mixture, and optional gamma diagnostics
    """
    try:
        if mode not in MODES:
            raise ValidationError(f"mode must be one of {sorted(MODES)}")
        mode = MODES[mode]
        # Growth is checked against the process inside the tests
        _, spec = resolve_process(process, params)
        parsed = parse_function(function)

        if mode == ADDITIVE:
            report = test_additive(
                spec, parsed.f, s, t, n_paths, level, seed, parsed.text, moment_order=parsed.moment_order,
            )
            # Exact verdict only when the function has a closed form
            exact = classify_additive(spec, parsed.polynomial) if parsed.polynomial is not None else None
        else:
            report = test_multiplicative(
                spec, parsed.f, s, t, n_paths, level, seed, parsed.text, rates=parsed.rates,
            )
            exact = classify_multiplicative(spec, parsed.expmix) if parsed.expmix is not None else None

        result = {
            'success': True,
            'report': report.to_dict(),
            'exact_verdict': exact.to_dict() if exact else None
        }
        # Diagnostics sample their own grid from the same seed
        if diagnostics:
            table = gamma_diagnostics(spec, parsed.f, diagnostics, report.n_paths, seed, mode)
            result['gamma_diagnostics'] = table.to_dict()
        return result
    except LevymartError as e:
        return failure(e)
