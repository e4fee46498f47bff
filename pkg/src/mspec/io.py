"""JSON tensor files and numeric serialization.

Tensor files look like ``{"m": 2, "n": 2, "format": "dense" | "coo",
"entries": ...}``. Dense entries are a nested m x n x m x n list; COO entries
are ``[i, j, k, l, value]`` records with 1-based indices, and symmetric
images of listed entries are filled in before validation.
"""

import json
import math

import numpy as np

from .errors import ParseError, ShapeMismatch
from .tensor import from_coo, validate


def _num(v):
    """Round-trippable float (17 significant digits)."""
    v = float(v)
    if not math.isfinite(v):
        return None
    return float(f"{v:.17g}")


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and dataclass-like records."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def dumps(obj):
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=False)


def tensor_to_dict(A, fmt="dense"):
    if fmt == "dense":
        entries = A.entries.tolist()
    elif fmt == "coo":
        nz = np.argwhere(A.entries != 0)
        entries = [[int(i) + 1, int(j) + 1, int(k) + 1, int(l) + 1, float(A.entries[i, j, k, l])]
                   for i, j, k, l in nz]
    else:
        raise ValueError("fmt must be 'dense' or 'coo'")
    return {"m": A.m, "n": A.n, "format": fmt, "entries": entries}


def tensor_from_dict(doc, repair=False):
    try:
        m, n = int(doc["m"]), int(doc["n"])
        fmt = doc.get("format", "dense")
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"tensor document needs integer m, n and entries: {exc}") from exc
    if m < 1 or n < 1:
        raise ShapeMismatch("m and n must be positive")
    if fmt == "dense":
        try:
            raw = np.array(entries, dtype=float)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"dense entries are not a numeric 4-array: {exc}") from exc
    elif fmt == "coo":
        raw = from_coo(m, n, entries)
    else:
        raise ParseError(f"unknown format {fmt!r}; expected 'dense' or 'coo'")
    return validate(raw, m, n, repair=repair)


def parse_tensor(text, source="<string>", repair=False):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return tensor_from_dict(doc, repair=repair)


def load_tensor(path, repair=False):
    with open(path, encoding="utf-8") as fh:
        return parse_tensor(fh.read(), str(path), repair=repair)


def save_tensor(A, path, fmt="dense", manifest=None):
    doc = tensor_to_dict(A, fmt)
    if manifest is not None:
        doc["manifest"] = manifest
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))
        fh.write("\n")

