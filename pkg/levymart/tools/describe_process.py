from typing import Dict, Any, Optional, Sequence

from levymart.config import resolve_process
from levymart.errors import LevymartError
from levymart.levy_core import eval_exponent, eval_laplace_exponent, exponent_zero_scan, lattice_span, support_class
from levymart.moments import exp_moment_domain, moment_finite
from .report_utils import failure

MAX_REPORTED_ORDER = 8


def describe_process(
    process,
    params: Optional[Dict[str, float]] = None,
    xi_values: Sequence[float] = (0.5, 1.0, 2.0),
    zero_scan: bool = False,
) -> Dict[str, Any]:
    """
    Describe a process: triplet, exponent samples, support class and moment domains.

    Args:
        process: Catalog name, inline JSON/dict config or '@path' to a config file
        params: Catalog parameter overrides (optional)
        xi_values: Points where psi is sampled
        zero_scan: Also scan |psi| for nonzero zeros (diagnostic, slower)

    Returns:
        Dict with the description (success: True) or error message (success: False, error: str)
    """
    try:
        cfg, spec = resolve_process(process, params)
        domain = exp_moment_domain(spec)
        # Sample psi at each xi (real and imaginary part separately, JSON has no complex)
        exponent = []
        for xi in xi_values:
            value = eval_exponent(spec, xi)
            exponent.append({'xi': float(xi), 're': value.real, 'im': value.imag})
        # eta only where it is finite
        laplace = []
        for lam in (-0.5, 0.5):
            if domain.contains(lam):
                laplace.append({'lambda': lam, 'eta': eval_laplace_exponent(spec, lam)})
        finite_orders = [n for n in range(1, MAX_REPORTED_ORDER + 1) if moment_finite(spec, n)]

        return {
            'success': True,
            'process': spec.to_dict(),
            'fingerprint': spec.fingerprint(),
            'nontrivial': spec.nontrivial,
            'activity': spec.measure.activity,
            'support_class': support_class(spec),
            'lattice_span': lattice_span(spec),
            'exponent': exponent,
            'laplace_exponent': laplace,
            'exp_moment_domain': domain.to_dict(),
            'finite_moment_orders': finite_orders,
            'zero_scan': exponent_zero_scan(spec) if zero_scan else None
        }
    except LevymartError as e:
        return failure(e)
