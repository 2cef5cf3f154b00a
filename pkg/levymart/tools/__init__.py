from .describe_process import describe_process
from .compute_moments import compute_moments
from .apply_generator import apply_generator
from .classify_function import classify_function
from .solve_funceq import solve_funceq
from .simulate_paths import simulate_paths
from .run_mtg_test import run_mtg_test
from .solve_exponential import solve_exponential

__all__ = [
    'describe_process',
    'compute_moments',
    'apply_generator',
    'classify_function',
    'solve_funceq',
    'simulate_paths',
    'run_mtg_test',
    'solve_exponential',
]
