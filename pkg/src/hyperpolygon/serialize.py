"""JSON text with floats written to 17 significant digits.

``json.dumps`` writes the shortest round-tripping repr; the file format
pins 17 significant digits instead, which also round-trips exactly.
"""

import json
import math

import numpy as np


def _number(x):
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    s = format(x, ".17g")
    # keep a float token so that values such as -0.0 read back unchanged
    return s if any(c in s for c in ".en") else s + ".0"


def _is_flat(seq):
    return all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq)


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if _is_flat(obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _number(obj)
    return json.dumps(obj)


def dumps(obj, indent=2):
    """Serialize nested dicts/lists/arrays of numbers and strings."""
    return _encode(obj, indent, 0) + "\n"


loads = json.loads
