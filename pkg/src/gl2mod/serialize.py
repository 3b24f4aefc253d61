"""Canonical JSON encoding of exact values, tables and reports.

Cyclotomic numbers are ``{"conductor": N, "coords": [[num, den], ...]}``
with power-basis coordinates; rationals use the same form at conductor 1.
Keys are sorted and separators fixed, so output is byte-reproducible.
"""

import json
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from .cyclo import CycNum


def encode(obj):
    """Convert ``obj`` into plain JSON-compatible data."""
    if isinstance(obj, CycNum):
        return {"conductor": obj.N,
                "coords": [[int(c.numerator), int(c.denominator)] for c in obj.coords()]}
    if isinstance(obj, (bool, type(None), str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if type(obj) is type(mpq(0)) or isinstance(obj, Fraction):
        return encode(CycNum.rational(mpq(obj)))
    if isinstance(obj, np.ndarray):
        return [encode(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if hasattr(obj, "to_json"):
        return encode(obj.to_json())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def emit_json(obj, indent=None):
    """Canonical JSON text (sorted keys, ASCII, fixed separators)."""
    seps = (",", ":") if indent is None else (",", ": ")
    return json.dumps(encode(obj), sort_keys=True, ensure_ascii=True, separators=seps,
                      indent=indent)


def decode_cyc(d):
    return CycNum.from_coords(d["conductor"], [mpq(a, b) for a, b in d["coords"]])


def _revive(obj):
    if isinstance(obj, dict):
        if set(obj) == {"conductor", "coords"}:
            return decode_cyc(obj)
        return {k: _revive(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_revive(x) for x in obj]
    return obj


def parse_json(text):
    """Inverse of :func:`emit_json`; cyclotomic encodings become :class:`CycNum`."""
    return _revive(json.loads(text))
