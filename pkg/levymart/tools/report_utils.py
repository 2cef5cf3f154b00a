import math
import json
from typing import Dict, Any, Optional

import numpy as np

from levymart.errors import LevymartError
from levymart.utils import REPORT_SCHEMA

# JSON numbers are written with 17 significant digits so every double round-trips exactly
FLOAT_FORMAT = '.17g'


def failure(error: Exception) -> Dict[str, Any]:
    """Convert an exception into the tool-layer error dict."""
    kind = error.kind if isinstance(error, LevymartError) else 'error'
    return {
        'success': False,
        'error': str(error),
        'error_kind': kind
    }


def _format_float(value: float) -> str:
    if math.isnan(value):
        return 'NaN'
    if math.isinf(value):
        return 'Infinity' if value > 0 else '-Infinity'
    text = format(value, FLOAT_FORMAT)
    if not any(ch in text for ch in '.en'):
        text += '.0'  # keep floats floats on reload
    return text


def _encode(obj, indent: Optional[int], level: int) -> str:
    if isinstance(obj, (bool, np.bool_)):
        return 'true' if obj else 'false'
    if obj is None:
        return 'null'
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    pad = '' if indent is None else '\n' + ' ' * (indent * (level + 1))
    end = '' if indent is None else '\n' + ' ' * (indent * level)
    sep = ', ' if indent is None else ','
    if isinstance(obj, dict):
        if not obj:
            return '{}'
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return '{' + sep.join(items) + end + '}'
    if isinstance(obj, (list, tuple)):
        if not obj:
            return '[]'
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return '[' + sep.join(items) + end + ']'
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj: Any, indent: Optional[int] = 2) -> str:
    """JSON text with floats at 17 significant digits; non-finite values as Infinity/NaN."""
    return _encode(obj, indent, 0)


def build_report(run_config: Dict[str, Any], result: Dict[str, Any]) -> Dict[str, Any]:
    """Versioned report: schema, the echoed run configuration and the tool result."""
    return {
        'schema': REPORT_SCHEMA,
        'run_config': run_config,
        'result': result
    }
