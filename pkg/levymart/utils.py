"""
Utilities and Configuration for levymart
"""
import os
import logging
from dotenv import load_dotenv
from termcolor import colored

try:
    load_dotenv()
except (FileNotFoundError, PermissionError):
    pass  # plain environment variables are fine


def _env_float(name: str, default: str) -> float:
    return float(os.getenv(name, default))


def _env_flag(name: str, default: str = 'false') -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


# Quadrature
RTOL = _env_float('LEVYMART_RTOL', '1e-10')
ATOL = _env_float('LEVYMART_ATOL', '1e-14')
QUAD_LIMIT = int(os.getenv('LEVYMART_QUAD_LIMIT', '200'))

# Moments / exponential domain
KAPPA_MAX = _env_float('LEVYMART_KAPPA_MAX', '50')
ZERO_THRESHOLD = 1e-12

# Classification and root finding
CLASSIFY_TOL = _env_float('LEVYMART_CLASSIFY_TOL', '1e-9')
ROOT_TOL = _env_float('LEVYMART_ROOT_TOL', '1e-10')
EDGE_MARGIN = 1e-6

# Simulation
SMALL_JUMP_EPS = _env_float('LEVYMART_SMALL_JUMP_EPS', '1e-3')
THREADS = int(os.getenv('LEVYMART_THREADS', str(os.cpu_count() or 1)))
BLOCK_SIZE = int(os.getenv('LEVYMART_BLOCK_SIZE', '8192'))

# Monte Carlo tests
N_PATHS = int(os.getenv('LEVYMART_N_PATHS', '100000'))
LEVEL = _env_float('LEVYMART_LEVEL', '0.01')
CI_MODE = _env_flag('LEVYMART_CI')

LOG_LEVEL = os.getenv('LEVYMART_LOG_LEVEL', 'WARNING').upper()

REPORT_SCHEMA = 1


class HarmlessWarningFilter(logging.Filter):
    """Drop floating-point warnings that divergence probing triggers on purpose."""

    skip_patterns = (
        'overflow encountered in exp',
        'invalid value encountered in subtract',
        'divide by zero encountered in log',
    )

    def filter(self, record):
        message = record.getMessage()
        return not any(pattern in message for pattern in self.skip_patterns)


_logging_configured = False


def configure_logging(level: str = None):
    """Set up root logging once; `level` overrides LEVYMART_LOG_LEVEL."""
    global _logging_configured
    level = (level or LOG_LEVEL).upper()
    if not _logging_configured:
        logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s')
        logging.captureWarnings(True)
        logging.getLogger('py.warnings').addFilter(HarmlessWarningFilter())
        _logging_configured = True
    logging.getLogger('levymart').setLevel(getattr(logging, level, logging.WARNING))


def validate_config():
    """Validate that all settings are usable."""
    errors = []

    if not 0 < RTOL < 1:
        errors.append(f"LEVYMART_RTOL must lie in (0, 1), got {RTOL}")
    if ATOL < 0:
        errors.append(f"LEVYMART_ATOL must be nonnegative, got {ATOL}")
    if KAPPA_MAX <= 0:
        errors.append(f"LEVYMART_KAPPA_MAX must be positive, got {KAPPA_MAX}")
    if not 0 < SMALL_JUMP_EPS < 1:
        errors.append(f"LEVYMART_SMALL_JUMP_EPS must lie in (0, 1), got {SMALL_JUMP_EPS}")
    if THREADS < 1:
        errors.append(f"LEVYMART_THREADS must be at least 1, got {THREADS}")
    if BLOCK_SIZE < 1:
        errors.append(f"LEVYMART_BLOCK_SIZE must be at least 1, got {BLOCK_SIZE}")
    if not 0 < LEVEL < 1:
        errors.append(f"LEVYMART_LEVEL must lie in (0, 1), got {LEVEL}")

    if errors:
        raise ValueError(
            "Configuration errors:\n" + "\n".join(f"  - {e}" for e in errors)
        )

    return True


def get_config_summary() -> dict:
    """Get a summary of current configuration."""
    return {
        "quadrature": {"rtol": RTOL, "atol": ATOL, "limit": QUAD_LIMIT},
        "moments": {"kappa_max": KAPPA_MAX, "zero_threshold": ZERO_THRESHOLD},
        "classification": {"tol": CLASSIFY_TOL, "root_tol": ROOT_TOL, "edge_margin": EDGE_MARGIN},
        "simulation": {"small_jump_eps": SMALL_JUMP_EPS, "threads": THREADS, "block_size": BLOCK_SIZE},
        "mtg_test": {"n_paths": N_PATHS, "level": LEVEL, "ci_mode": CI_MODE},
        "log_level": LOG_LEVEL,
        "schema": REPORT_SCHEMA,
    }


if __name__ == "__main__":
    print("=" * 60)
    print("  levymart Configuration")
    print("=" * 60)
    print()

    for section, values in get_config_summary().items():
        if isinstance(values, dict):
            print(colored(f"{section}:", "cyan", attrs=["bold"]))
            for key, value in values.items():
                print(f"  {key}: {value}")
        else:
            print(colored(f"{section}: ", "cyan", attrs=["bold"]) + str(values))
        print()

    try:
        validate_config()
        print(colored("Configuration is valid!", "green"))
    except ValueError as e:
        print(colored("Configuration errors:", "red"))
        print(e)
