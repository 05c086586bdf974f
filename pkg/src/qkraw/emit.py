"""
Deterministic JSON and CSV serialization.

JSON objects have sorted keys; floats are written with 17 significant
digits; exact rationals are written as "num/den" strings; LaurentScalar
and NCPoly values use their own ``to_json`` forms; complex numbers become
[re, im] pairs.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction

from .ncalg import NCPoly
from .qscalar import LaurentScalar

__all__ = ["emit", "format_float", "to_plain"]


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    if not any(c in text for c in ".eE"):
        text += ".0"
    return text


def to_plain(obj):
    """Reduce ``obj`` to dicts, lists, str, int, float, bool and None."""
    if isinstance(obj, (LaurentScalar, NCPoly)):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    return obj


def _dump(obj, out):
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, list):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _dump(v, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, k in enumerate(sorted(obj)):
            if i:
                out.append(", ")
            out.append(json.dumps(k, ensure_ascii=False))
            out.append(": ")
            _dump(obj[k], out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v):
    v = to_plain(v)
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (dict, list)):
        parts = []
        _dump(v, parts)
        return "".join(parts)
    if v is None:
        return ""
    return str(v)


def emit(fmt: str, payload, columns=None) -> bytes:
    """Serialize ``payload`` as UTF-8 JSON or CSV.

    CSV expects a list of row dicts; the header is ``columns`` or the sorted
    union of row keys.
    """
    if fmt == "json":
        parts = []
        _dump(to_plain(payload), parts)
        return ("".join(parts) + "\n").encode("utf-8")
    if fmt == "csv":
        rows = [to_plain(r) for r in payload]
        if columns is None:
            columns = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown output format {fmt!r}")
