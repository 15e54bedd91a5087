"""Singular values, Schatten p-norms, commutators and the trace inner product."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .indices import NormIndex, index

RANK_RTOL = 1e-9


class MatrixInputError(ValueError):
    """Malformed, non-finite or mismatched matrix input."""


def as_matrix(M) -> np.ndarray:
    """Validate and convert to a 2-D complex array."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.size == 0:
        raise MatrixInputError(f"expected a nonempty 2-D matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise MatrixInputError("matrix has non-finite entries")
    return A


def singular_values(M) -> np.ndarray:
    """Descending singular values, ``min(rows, cols)`` of them."""
    return np.linalg.svd(as_matrix(M), compute_uv=False)


def norm_of_spectrum(sigma, p: NormIndex | float | str | int) -> float:
    """l_p norm of a vector of non-negative singular values.

    Evaluated as ``s_max * (sum (s/s_max)^p)^(1/p)`` so that large finite p
    (hundreds or thousands) cannot overflow.
    """
    p = index(p)
    s = np.asarray(sigma, dtype=float)
    if s.size == 0:
        return 0.0
    smax = float(s.max())
    if smax == 0.0:
        return 0.0
    if p.u == 0:
        return smax
    if p.u == 1:
        return float(s.sum())
    pf = float(1 / p.u)
    ratio = s / smax
    k = int(np.argmax(s))
    rest = float(np.sum(np.delete(ratio, k) ** pf))
    return smax * math.exp(math.log1p(rest) / pf)


def schatten_norm(M, p: NormIndex | float | str | int) -> float:
    return norm_of_spectrum(singular_values(M), p)


def commutator(X, Y) -> np.ndarray:
    X = as_matrix(X)
    Y = as_matrix(Y)
    if X.shape[0] != X.shape[1] or X.shape != Y.shape:
        raise MatrixInputError(f"commutator needs equal square shapes, got {X.shape} and {Y.shape}")
    return X @ Y - Y @ X


def trace_inner(A, B) -> complex:
    """<A, B> = tr(B* A); linear in A, conjugate-linear in B."""
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise MatrixInputError(f"shape mismatch {A.shape} vs {B.shape}")
    return complex(np.vdot(B, A))


def rank(M, rtol: float = RANK_RTOL) -> int:
    s = singular_values(M)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def dual_witness(M, p: NormIndex) -> np.ndarray:
    """W with ||W||_{p'} = 1 and <M, W> = ||M||_p, built from the polar decomposition."""
    p = index(p)
    A = as_matrix(M)
    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    if s[0] == 0:
        return np.zeros_like(A)
    if p.u == 0:
        w = (s >= s[0] * (1 - 1e-12)).astype(float)
        w /= w.sum()
    elif p.u == 1:
        w = np.ones_like(s)
    else:
        pf = float(1 / p.u)
        w = (s / s[0]) ** (pf - 1)
        w /= norm_of_spectrum(w, NormIndex(1 - p.u))
    return (U * w) @ Vh


# -- JSON matrix file format: {"rows": d, "cols": d, "entries": [[re, im], ...]} row-major


def matrix_to_json(M) -> dict:
    A = as_matrix(M)
    rows, cols = A.shape
    return {
        "rows": rows,
        "cols": cols,
        "entries": [[float(z.real), float(z.imag)] for z in A.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixInputError(f"bad matrix object: {exc}") from exc
    if rows <= 0 or cols <= 0 or len(entries) != rows * cols:
        raise MatrixInputError(f"expected {rows}x{cols} entries, got {len(entries)}")
    vals = []
    for e in entries:
        if len(e) != 2:
            raise MatrixInputError(f"entry {e!r} is not a [re, im] pair")
        vals.append(complex(float(e[0]), float(e[1])))
    if not all(math.isfinite(v.real) and math.isfinite(v.imag) for v in vals):
        raise MatrixInputError("matrix has non-finite entries")
    return np.array(vals, dtype=complex).reshape(rows, cols)


def load_matrix(path: str | Path) -> np.ndarray:
    return matrix_from_json(json.loads(Path(path).read_text()))
