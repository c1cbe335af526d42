"""JSON matrix files: ``{"n": int, "re": [[...]], "im": [[...]]}``.

Rows are row-major lists of reals. ``im`` may be omitted for real matrices.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np


class MatrixFormatError(Exception):
    """The file could not be read or does not follow the matrix format."""


def matrix_from_dict(data) -> np.ndarray:
    if not isinstance(data, dict) or "n" not in data or "re" not in data:
        raise MatrixFormatError('expected an object with keys "n", "re" and optionally "im"')
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError(f'"n" must be a positive integer, got {n!r}')
    try:
        re = np.asarray(data["re"], dtype=float)
        im = np.asarray(data.get("im", np.zeros((n, n))), dtype=float)
    except (TypeError, ValueError) as exc:
        raise MatrixFormatError(f"matrix entries must be numbers: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise MatrixFormatError(f"re/im must both be {n}x{n}, got {re.shape} and {im.shape}")
    M = re + 1j * im
    if not np.all(np.isfinite(M)):
        raise MatrixFormatError("matrix has non-finite entries")
    return M


def matrix_to_dict(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"n": int(M.shape[0]), "re": M.real.tolist(), "im": M.imag.tolist()}


def load_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path}: invalid JSON ({exc})") from exc
    return matrix_from_dict(data)


def save_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(M)), encoding="utf-8")
