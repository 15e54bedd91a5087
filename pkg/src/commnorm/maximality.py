"""Structural tests for (p,q,r)-maximal pairs.

A maximal pair attains the constant with equality.  Every maximal pair of
the dimension-free regions is, in a suitable orthonormal basis, a 2x2 pair
padded by zeros with trace-free, mutually orthogonal blocks (the *core*);
depending on where (p,q,r) sits, some of X, Y, Z = [X, Y] must further be
rank one or multiples of a unitary.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import Region, classify, exponents
from .indices import index
from .witnesses import MatrixPair

DEFAULT_TOL = 1e-8


class MaximalityCondition(str, enum.Enum):
    RANK1_X = "Rank1X"
    RANK1_Y = "Rank1Y"
    RANK1_Z = "Rank1Z"
    UNITARY_X = "UnitaryX"
    UNITARY_Y = "UnitaryY"
    UNITARY_Z = "UnitaryZ"
    NONE_2X2_EXTRA = "None2x2Extra"


C = MaximalityCondition


@dataclass
class CompressionResult:
    found: bool
    residual: float
    support_dim: int
    X0: np.ndarray | None = None
    Y0: np.ndarray | None = None
    Z0: np.ndarray | None = None
    basis: np.ndarray | None = field(default=None, repr=False)


def joint_compress(pair: MatrixPair, tol: float = DEFAULT_TOL) -> CompressionResult:
    """Look for a 2-dimensional subspace carrying both X and Y.

    The joint support S is spanned by the columns of X, X*, Y and Y*; the
    pair compresses to 2x2 blocks iff dim S <= 2.  Residual is the relative
    Frobenius error of rebuilding X and Y from their compressions.
    """
    X, Y = pair.X, pair.Y
    d = pair.dim
    cols = np.hstack([X, X.conj().T, Y, Y.conj().T])
    scale = float(np.max(np.linalg.norm(cols, axis=0)))
    if scale == 0:
        return CompressionResult(False, float("inf"), 0)
    U, s, _ = np.linalg.svd(cols)
    dim_s = int(np.sum(s > tol * scale))
    if dim_s > 2:
        # Distance from a 2-dimensional support, for reporting only.
        return CompressionResult(False, float(s[2] / scale), dim_s)
    B = U[:, :2] if d >= 2 else U
    X0 = B.conj().T @ X @ B
    Y0 = B.conj().T @ Y @ B
    nx = max(np.linalg.norm(X), 1e-300)
    ny = max(np.linalg.norm(Y), 1e-300)
    residual = max(np.linalg.norm(B @ X0 @ B.conj().T - X) / nx,
                   np.linalg.norm(B @ Y0 @ B.conj().T - Y) / ny)
    found = residual <= tol
    return CompressionResult(found, float(residual), dim_s, X0, Y0, X0 @ Y0 - Y0 @ X0, B)


def core_residuals(pair: MatrixPair, tol: float = DEFAULT_TOL) -> dict[str, float]:
    """Relative size of tr X, tr Y, tr(Y* X) and the compression residual."""
    X, Y = pair.X, pair.Y
    nx = float(np.linalg.norm(X))
    ny = float(np.linalg.norm(Y))
    scale = nx + ny + nx * ny
    comp = joint_compress(pair, tol)
    return {
        "compression": comp.residual,
        "trace_x": abs(np.trace(X)) / scale,
        "trace_y": abs(np.trace(Y)) / scale,
        "trace_ystar_x": abs(np.vdot(Y, X)) / scale,
    }


def check_core(pair: MatrixPair, tol: float = DEFAULT_TOL) -> bool:
    """2x2 compressibility plus tr X = tr Y = tr(Y* X) = 0."""
    res = core_residuals(pair, tol)
    return all(v <= tol for v in res.values())


def condition_residual(pair: MatrixPair, cond: MaximalityCondition | str) -> float:
    """How far the pair is from satisfying ``cond``, relative to the top singular value."""
    cond = C(cond)
    if cond is C.NONE_2X2_EXTRA:
        return 0.0
    target = cond.value[-1]
    sigma = {"X": pair.sigma_x, "Y": pair.sigma_y, "Z": pair.sigma_z}[target]
    s1 = float(sigma[0])
    if s1 == 0:
        return float("inf")
    s2 = float(sigma[1]) if sigma.size > 1 else 0.0
    if cond.value.startswith("Rank1"):
        return s2 / s1
    s3 = float(sigma[2]) if sigma.size > 2 else 0.0
    return max(s1 - s2, s3) / s1


def check_condition(pair: MatrixPair, cond: MaximalityCondition | str, tol: float = DEFAULT_TOL) -> bool:
    return condition_residual(pair, cond) <= tol


def required_conditions(p, q, r) -> frozenset[MaximalityCondition] | None:
    """Extra conditions a maximal pair must meet beyond the core, where known.

    Only returned where the route to the constant is unambiguous:

    * (2,2,2): nothing extra;
    * strict interior of the mixed segment: X, Y and Z all unitary multiples;
    * otherwise, in the open cube 1 < p, q, r < inf away from the pyramid and
      octant, a rank-one condition for each monotonicity step that keeps the
      value constant: lowering p forces rank Z = 1, raising q forces
      rank X = 1, raising r forces rank Y = 1.

    Returns None elsewhere.
    """
    p, q, r = index(p), index(q), index(r)
    u, v, w = p.u, q.u, r.u
    half = Fraction(1, 2)
    if u == v == w == half:
        return frozenset({C.NONE_2X2_EXTRA})
    region = classify(p, q, r)
    if region in (Region.PYRAMID, Region.OCTANT):
        return None
    if not all(0 < x < 1 for x in (u, v, w)):
        return None
    e_p, e_q, e_r, e_mix = exponents(p, q, r)
    top = max(e_p, e_q, e_r, e_mix)
    if region is Region.SEG_MIXED and e_mix > max(e_p, e_q, e_r):
        return frozenset({C.UNITARY_X, C.UNITARY_Y, C.UNITARY_Z})
    conds = set()
    if max(e_p, e_mix) < top:
        conds.add(C.RANK1_Z)
    if max(e_q, e_mix) < top:
        conds.add(C.RANK1_X)
    if max(e_r, e_mix) < top:
        conds.add(C.RANK1_Y)
    return frozenset(conds) or None


def report(pair: MatrixPair, p, q, r, tol: float = DEFAULT_TOL) -> dict:
    """Per-condition verdicts and residuals, as emitted by the CLI."""
    required = required_conditions(p, q, r)
    core = core_residuals(pair, tol)
    conditions = {}
    for cond in C:
        res = condition_residual(pair, cond)
        conditions[cond.value] = {"holds": bool(res <= tol), "residual": res}
    return {
        "triplet": [str(index(x)) for x in (p, q, r)],
        "tol": tol,
        "core": {"holds": all(v <= tol for v in core.values()), "residuals": core},
        "conditions": conditions,
        "required": None if required is None else sorted(c.value for c in required),
        "required_hold": None if required is None else all(conditions[c.value]["holds"] for c in required),
    }
