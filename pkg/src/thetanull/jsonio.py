"""JSON emission with 17 significant digits and input parsing."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np


def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    s = "%.17g" % x
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _encode(obj, out: list, indent: int | None, level: int):
    nl = "" if indent is None else "\n" + " " * (indent * (level + 1))
    end = "" if indent is None else "\n" + " " * (indent * level)
    sep = ", " if indent is None else ","
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_fmt_float(float(obj)))
    elif isinstance(obj, (complex, np.complexfloating)):
        _encode({"re": obj.real, "im": obj.imag}, out, indent, level)
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(sep)
            out.append(nl + json.dumps(str(k)) + ": ")
            _encode(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = obj.tolist() if isinstance(obj, np.ndarray) else obj
        out.append("[")
        for i, v in enumerate(items):
            if i:
                out.append(", ")
            _encode(v, out, None, level + 1)
        out.append("]")
    elif hasattr(obj, "to_json"):
        _encode(obj.to_json(), out, indent, level)
    else:
        raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int | None = 2) -> str:
    """Serialize with every float written to 17 significant digits."""
    out: list[str] = []
    _encode(obj, out, indent, 0)
    return "".join(out)


def read_json_arg(arg: str):
    """Inline JSON when ``arg`` starts with ``{`` or ``[``, else a file path (``-`` for stdin)."""
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        return json.loads(s)
    if s == "-":
        import sys

        return json.loads(sys.stdin.read())
    return json.loads(Path(arg).read_text(encoding="utf-8"))


def parse_complex_vector(text: str) -> np.ndarray:
    """``"0.3+0.2j, 0"`` or a JSON object ``{"re": [...], "im": [...]}``."""
    s = text.strip()
    if s.startswith("{"):
        obj = json.loads(s)
        return np.asarray(obj["re"], dtype=float) + 1j * np.asarray(obj["im"], dtype=float)
    return np.array([complex(p.strip().replace(" ", "")) for p in s.split(",")])


def parse_complex_matrix(obj) -> np.ndarray:
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape or re.ndim != 2:
        raise ValueError("matrix re/im arrays must be 2-d and of equal shape")
    return re + 1j * im
