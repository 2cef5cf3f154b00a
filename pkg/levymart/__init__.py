"""
levymart - martingale functions of one-dimensional Levy processes

Which f make f(X_t) - E f(X_t) a martingale, which g make g(X_t) / E g(X_t)
one, and Monte Carlo checks of both. The tool layer (levymart.tools) returns
JSON-ready dicts; TOOLS below describes its inputs.
"""

__version__ = '0.1.0'

_PROCESS = {
    "type": ["string", "object"],
    "description": "Catalog name, inline process config or '@path' to a JSON file"
}
_PARAMS = {
    "type": "object",
    "additionalProperties": {"type": "number"},
    "description": "Catalog parameter overrides (optional)"
}
_COEFFS = {"type": "array", "items": {"type": "number"}}

# Input schemas of the tool-layer functions
TOOLS = [
    {
        "name": "describe_process",
        "description": "Triplet, activity class, support class and characteristic exponent samples of a process",
        "input_schema": {
            "type": "object",
            "properties": {
                "process": _PROCESS,
                "params": _PARAMS,
                "xi_values": {**_COEFFS, "description": "Points at which to evaluate psi (optional)"},
                "zero_scan": {"type": "boolean", "description": "Scan (0, 20] for near-zeros of psi (optional)"}
            },
            "required": ["process"]
        }
    },
    {
        "name": "compute_moments",
        "description": "Cumulants of X_1 and the moment polynomials t -> E X_t^n",
        "input_schema": {
            "type": "object",
            "properties": {
                "process": _PROCESS,
                "params": _PARAMS,
                "order": {"type": "integer", "description": "Highest moment order (default 4)"},
                "t": {"type": "number", "description": "Also evaluate the moments at this time (optional)"}
            },
            "required": ["process"]
        }
    },
    {
        "name": "apply_generator",
        "description": "Apply the generator to a polynomial, an exponential or a named function at a point",
        "input_schema": {
            "type": "object",
            "properties": {
                "process": _PROCESS,
                "params": _PARAMS,
                "poly": {**_COEFFS, "description": "Ascending polynomial coefficients"},
                "lam": {"type": "number", "description": "Rate of e^{lam x}"},
                "function": {"type": "string", "description": "Function spec for numeric evaluation"},
                "x": {"type": "number", "description": "Evaluation point for the numeric form"}
            },
            "required": ["process"]
        }
    },
    {
        "name": "classify_function",
        "description": "Exact additive (polynomial) or multiplicative (exponential mixture) verdict",
        "input_schema": {
            "type": "object",
            "properties": {
                "process": _PROCESS,
                "params": _PARAMS,
                "poly": {**_COEFFS, "description": "Ascending polynomial coefficients"},
                "expmix": {**_COEFFS, "description": "a, lam1[, b, lam2]"},
                "tol": {"type": "number", "description": "Constancy tolerance (optional)"}
            },
            "required": ["process"]
        }
    },
    {
        "name": "solve_funceq",
        "description": "Solve, apply or verify the difference equation Delta_y q = p",
        "input_schema": {
            "type": "object",
            "properties": {
                "action": {"type": "string", "enum": ["solve", "diff", "verify"]},
                "p": {**_COEFFS, "description": "Ascending coefficients of p (of q1 for verify)"},
                "y": {"type": "number", "description": "Nonzero step"},
                "q2": {**_COEFFS, "description": "Second solution for verify"}
            },
            "required": ["action", "p", "y"]
        }
    },
    {
        "name": "simulate_paths",
        "description": "Simulate seeded paths on a time grid and summarize them",
        "input_schema": {
            "type": "object",
            "properties": {
                "process": _PROCESS,
                "params": _PARAMS,
                "times": {**_COEFFS, "description": "Positive grid times"},
                "n_paths": {"type": "integer"},
                "seed": {"type": "integer"},
                "output": {"type": "string", "description": "CSV path (optional)"},
                "binary": {"type": "string", "description": "Column-major .npy path (optional)"},
                "epsilon": {"type": "number", "description": "Small-jump cutoff (optional)"},
                "tail_order": {"type": "integer", "description": "Heavy-tail diagnostic order (optional)"}
            },
            "required": ["process", "times", "n_paths", "seed"]
        }
    },
    {
        "name": "run_mtg_test",
        "description": "Monte Carlo additive or multiplicative martingale test with Bonferroni-combined instruments",
        "input_schema": {
            "type": "object",
            "properties": {
                "process": _PROCESS,
                "params": _PARAMS,
                "function": {"type": "string", "description": "poly:<coeffs>, expmix:<a,l1,b,l2> or a named function"},
                "seed": {"type": "integer"},
                "mode": {"type": "string", "enum": ["additive", "mult"]},
                "s": {"type": "number"},
                "t": {"type": "number"},
                "n_paths": {"type": "integer"},
                "level": {"type": "number"},
                "diagnostics": {**_COEFFS, "description": "Times for gamma diagnostics (optional)"}
            },
            "required": ["process", "function", "seed"]
        }
    },
    {
        "name": "solve_exponential",
        "description": "Real roots of eta(lam) = alpha and the corresponding exponential martingale function",
        "input_schema": {
            "type": "object",
            "properties": {
                "process": _PROCESS,
                "params": _PARAMS,
                "alpha": {"type": "number"},
                "build": {**_COEFFS, "description": "Weights a, b of g (optional)"},
                "horizon": {"type": "number"},
                "tol": {"type": "number"}
            },
            "required": ["process", "alpha"]
        }
    }
]
