"""JSON encodings for matrices, states and channels.

Matrix: ``{"dim": n, "entries": [[re, im], ...]}`` row-major, ``n*n`` pairs.
State: the matrix object plus ``"kind": "density"``.
Channel: ``{"d_in": n, "d_out": m, "kraus": [matrix, ...]}`` with ``m x n`` Kraus
operators stored as ``{"rows": m, "cols": n, "entries": ...}``.
Classical channel: ``{"rows": [[...], ...]}``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .channels import ClassicalChannel, QuantumChannel, validate_density
from .errors import BadParameter, DimensionMismatch, ValidationError


class FormatError(ValidationError):
    """A JSON document does not follow the expected layout."""


def _pairs(entries, count: int, what: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != count:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise DimensionMismatch(f"{what}: expected {count} entries, got {got}")
    out = np.empty(count, dtype=np.complex128)
    for i, pair in enumerate(entries):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise FormatError(f"{what}: entry {i} is not a [re, im] pair")
        re, im = pair
        if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in (re, im)):
            raise FormatError(f"{what}: entry {i} is not numeric")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise BadParameter(f"{what}: entry {i} is not finite")
        out[i] = complex(re, im)
    return out


def _encode_entries(m: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(m, dtype=np.complex128).reshape(-1)]


def matrix_to_json(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return {"dim": m.shape[0], "entries": _encode_entries(m)}


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "dim" not in obj or "entries" not in obj:
        raise FormatError('matrix object needs "dim" and "entries"')
    n = obj["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError(f'"dim" must be a positive integer, got {n!r}')
    return _pairs(obj["entries"], n * n, "matrix").reshape(n, n)


def state_to_json(rho) -> dict:
    return {"kind": "density", **matrix_to_json(rho)}


def state_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or obj.get("kind") != "density":
        raise FormatError('state object must carry "kind": "density"')
    return validate_density(matrix_from_json(obj))


def channel_to_json(ch: QuantumChannel) -> dict:
    return {
        "d_in": ch.d_in,
        "d_out": ch.d_out,
        "kraus": [
            {"rows": ch.d_out, "cols": ch.d_in, "entries": _encode_entries(k)} for k in ch.kraus
        ],
    }


def channel_from_json(obj) -> QuantumChannel:
    if not isinstance(obj, dict) or not {"d_in", "d_out", "kraus"} <= obj.keys():
        raise FormatError('channel object needs "d_in", "d_out" and "kraus"')
    d_in, d_out, ks = obj["d_in"], obj["d_out"], obj["kraus"]
    for name, v in (("d_in", d_in), ("d_out", d_out)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise FormatError(f'"{name}" must be a positive integer, got {v!r}')
    if not isinstance(ks, list) or not ks:
        raise FormatError('"kraus" must be a non-empty list')
    mats = []
    for i, k in enumerate(ks):
        if not isinstance(k, dict) or "entries" not in k:
            raise FormatError(f"Kraus operator {i} has no entries")
        if "dim" in k and d_in == d_out and k["dim"] == d_in:
            rows, cols = d_out, d_in
        else:
            rows, cols = k.get("rows"), k.get("cols")
        if (rows, cols) != (d_out, d_in):
            raise DimensionMismatch(f"Kraus operator {i} is {rows}x{cols}, expected {d_out}x{d_in}")
        mats.append(_pairs(k["entries"], d_out * d_in, f"Kraus operator {i}").reshape(d_out, d_in))
    return QuantumChannel(np.array(mats))


def classical_to_json(w: ClassicalChannel) -> dict:
    return {"rows": w.matrix.tolist()}


def classical_from_json(obj) -> ClassicalChannel:
    if not isinstance(obj, dict) or not isinstance(obj.get("rows"), list):
        raise FormatError('classical channel object needs "rows"')
    rows = obj["rows"]
    if not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError('"rows" must be a non-empty list of lists')
    if len({len(r) for r in rows}) != 1:
        raise DimensionMismatch("classical channel rows have unequal lengths")
    return ClassicalChannel(np.array(rows, dtype=float))


def load_json(path) -> object:
    """Read a JSON file; OSError and json.JSONDecodeError propagate to the caller."""
    return json.loads(Path(path).read_text())


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")
