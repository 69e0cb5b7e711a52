"""Deterministic machine-record rendering.

Reports are emitted as canonical JSON text: keys sorted, floats printed
with 17 significant digits, complex numbers as [re, im] pairs, and nothing
environment-dependent (no timestamps, no paths). Identical report dicts
therefore render to byte-identical output, which is the determinism
contract the CLI tests pin.
"""

from __future__ import annotations

import json
import math

import numpy as np


def canonicalize(obj):
    """Recursively convert to plain JSON-compatible Python values.

    numpy scalars and arrays are unwrapped; complex values become
    [re, im] pairs; sets are sorted. Anything else is a TypeError so a
    non-serializable object never silently truncates a report.
    """
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return canonicalize(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): canonicalize(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return [canonicalize(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [canonicalize(v) for v in obj]
    raise TypeError(f"cannot render {type(obj).__name__} in a record")


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".17g")


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt_float(v)
    return json.dumps(v, ensure_ascii=True)


def _is_scalar(v) -> bool:
    return not isinstance(v, (list, dict))


def _render(obj, pieces: list, level: int) -> None:
    pad = "  " * level
    if isinstance(obj, dict):
        if not obj:
            pieces.append("{}")
            return
        keys = sorted(obj)
        pieces.append("{\n")
        for i, k in enumerate(keys):
            pieces.append("  " * (level + 1) + json.dumps(k) + ": ")
            _render(obj[k], pieces, level + 1)
            pieces.append(",\n" if i + 1 < len(keys) else "\n")
        pieces.append(pad + "}")
    elif isinstance(obj, list):
        if not obj:
            pieces.append("[]")
            return
        if all(_is_scalar(v) for v in obj) and len(obj) <= 8:
            pieces.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        pieces.append("[\n")
        for i, v in enumerate(obj):
            pieces.append("  " * (level + 1))
            _render(v, pieces, level + 1)
            pieces.append(",\n" if i + 1 < len(obj) else "\n")
        pieces.append(pad + "]")
    else:
        pieces.append(_scalar(obj))


def render_record(obj) -> str:
    """Canonical record text for a report dict; ends with one newline."""
    pieces: list[str] = []
    _render(canonicalize(obj), pieces, 0)
    return "".join(pieces) + "\n"


def complex_matrix_record(mat) -> list:
    """Nested-list form of a complex matrix with [re, im] entries."""
    m = np.asarray(mat, dtype=complex)
    return [[[float(e.real), float(e.imag)] for e in row] for row in m]
