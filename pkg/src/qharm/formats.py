"""JSON and CSV formats: series files, weight files and deterministic output.

Series file::

    {"a": [[re, im], ...],      # a_1 .. a_N, a_1 must be [1, 0]
     "b": [[re, im], ...],      # b_1 .. b_N, optional (g = 0 when absent)
     "co_sign": -1}             # optional, default +1: f = h + co_sign * conj(g)

Weight files hold ``{"x": ..., "y": ...}`` or ``{"X": ..., "Y": ...}``; each
entry is a list of ``[n, value]`` pairs (1-based index) or an object keyed by
the index.  Values are numbers or ``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .classes import ConvexWeights, ExtremalWeights
from .series import AnalyticSeries, HarmonicSeries

__all__ = [
    "InputError",
    "dumps",
    "series_to_dict",
    "series_from_dict",
    "weights_from_dict",
    "fmt_float",
]


class InputError(ValueError):
    """Malformed or invariant-violating input document."""


def fmt_float(x: float, digits: int = 17) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return format(x, f".{digits}g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{_encode(str(k), indent, level + 1)}: {_encode(v, indent, level + 1)}"
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _encode(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


def _pairs(c: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in c]


def series_to_dict(f: HarmonicSeries) -> dict:
    out = {"a": _pairs(f.a[1:]), "b": _pairs(f.b[1:])}
    if f.co_sign != 1:
        out["co_sign"] = f.co_sign
    if f.hull_boundary:
        out["hull_boundary"] = True
    return out


def _complex_list(values, name: str) -> np.ndarray:
    if not isinstance(values, list):
        raise InputError(f'"{name}" must be an array of [re, im] pairs')
    out = np.zeros(len(values), dtype=complex)
    for i, v in enumerate(values):
        out[i] = _complex(v, f"{name}[{i}]")
    return out


def _complex(v, where: str) -> complex:
    if isinstance(v, bool):
        raise InputError(f"{where}: expected a number or [re, im]")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) and not isinstance(t, bool)
                                                   for t in v):
        return complex(v[0], v[1])
    raise InputError(f"{where}: expected a number or [re, im]")


def series_from_dict(doc, order: int | None = None) -> HarmonicSeries:
    """Parse a series document; errors name the violated invariant."""
    if not isinstance(doc, dict):
        raise InputError("series document must be a JSON object")
    if "a" not in doc:
        raise InputError('series document needs "a" (coefficients a_1..a_N)')
    unknown = set(doc) - {"a", "b", "co_sign", "hull_boundary"}
    if unknown:
        raise InputError(f"unknown series fields: {sorted(unknown)}")
    a = _complex_list(doc["a"], "a")
    b = _complex_list(doc.get("b", []), "b")
    if a.size == 0:
        raise InputError("a must contain at least a_1")
    co_sign = doc.get("co_sign", 1)
    if co_sign not in (1, -1) or isinstance(co_sign, bool):
        raise InputError("co_sign must be 1 or -1")
    n = max(a.size, b.size, 1)
    if order is not None:
        if n > order:
            raise InputError(f"series has {n} coefficients, more than truncation order {order}")
        n = order
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise InputError("coefficients must be finite")
    try:
        return HarmonicSeries(AnalyticSeries.from_coeffs(a, n), AnalyticSeries.from_coeffs(b, n),
                              co_sign=co_sign, hull_boundary=bool(doc.get("hull_boundary", False)))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _indexed(entry, name: str, first: int) -> dict:
    if entry is None:
        return {}
    if isinstance(entry, dict):
        items = entry.items()
    elif isinstance(entry, list):
        items = []
        for i, pair in enumerate(entry):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise InputError(f"{name}[{i}] must be an [n, value] pair")
            items.append(pair)
    else:
        raise InputError(f'"{name}" must be a list of [n, value] pairs or an object')
    out = {}
    for k, v in items:
        try:
            n = int(k)
        except (TypeError, ValueError):
            raise InputError(f"{name}: index {k!r} is not an integer") from None
        if n < first:
            raise InputError(f"{name}: index {n} below {first}")
        if n in out:
            raise InputError(f"{name}: index {n} repeated")
        out[n] = _complex(v, f"{name}[{n}]")
    return out


def weights_from_dict(doc):
    """Parse ``{"x", "y"}`` into :class:`ExtremalWeights` or ``{"X", "Y"}`` into :class:`ConvexWeights`."""
    if not isinstance(doc, dict):
        raise InputError("weights document must be a JSON object")
    keys = set(doc)
    try:
        if keys and keys <= {"x", "y"}:
            return ExtremalWeights.of(_indexed(doc.get("x"), "x", 2), _indexed(doc.get("y"), "y", 1))
        if keys and keys <= {"X", "Y"}:
            return ConvexWeights.of(_indexed(doc.get("X"), "X", 1), _indexed(doc.get("Y"), "Y", 1))
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from None
    raise InputError('weights need keys {"x", "y"} (extremal) or {"X", "Y"} (convex)')
