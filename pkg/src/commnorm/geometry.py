"""Extremal trigonometry behind the corner constants.

* ``max_polygon_length`` -- the longest total circumference of a closed
  n-gon with vertices on the unit circle, and a brute-force oracle for it.
* ``cos_product_extrema`` -- extrema of products of two or three cosines
  with prescribed angle sum.
* ``c_inf11_maximize`` -- the one-dimensional reduction of the
  (inf, 1, 1) commutator problem, and a six-vector oracle for it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.optimize import minimize

from .golden import golden_max

MAX_ORACLE_N = 8


class Want(enum.Enum):
    MAX = "max"
    MIN = "min"


@dataclass(frozen=True)
class PolygonConfig:
    """Points e^{i angles[j]} joined j -> permutation[j]."""

    angles: tuple[float, ...]
    permutation: tuple[int, ...]

    def __post_init__(self):
        n = len(self.angles)
        if sorted(self.permutation) != list(range(n)):
            raise ValueError("permutation is not a bijection on range(n)")

    @property
    def n(self) -> int:
        return len(self.angles)

    def circumference(self) -> float:
        z = np.exp(1j * np.asarray(self.angles))
        return float(np.abs(z[list(self.permutation)] - z).sum())


def max_polygon_length(n: int) -> float:
    """L(n): 2n for even n, n*sqrt(2 + 2cos(pi/n)) for odd n."""
    if n < 2:
        raise ValueError("need at least two points")
    if n % 2 == 0:
        return 2.0 * n
    return n * math.sqrt(2 + 2 * math.cos(math.pi / n))


def polygon_length_by_winding(n: int) -> float:
    """max_k 2n sin(k pi / n), the form obtained before choosing k."""
    return max(2 * n * math.sin(k * math.pi / n) for k in range(n + 1))


def star_polygon(n: int) -> PolygonConfig:
    """n-th roots of unity joined as the {n; (n-1)/2} star (n odd) or antipodal pairs (n even)."""
    if n % 2 == 0:
        angles = tuple(0.0 if j % 2 == 0 else math.pi for j in range(n))
        perm = tuple(j + 1 if j % 2 == 0 else j - 1 for j in range(n))
        return PolygonConfig(angles, perm)
    step = (n - 1) // 2
    angles = tuple(2 * math.pi * j / n for j in range(n))
    perm = tuple((j + step) % n for j in range(n))
    return PolygonConfig(angles, perm)


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def _chord(x: np.ndarray) -> np.ndarray:
    return 2.0 * np.abs(np.sin(x / 2.0))


def _chord_grad(x: np.ndarray) -> np.ndarray:
    return np.cos(x / 2.0) * np.sign(np.sin(x / 2.0))


def _best_cycle(m: int, restarts: int, iters: int, rng: np.random.Generator) -> float:
    """Best circumference of a single m-cycle found by ascent over angle differences.

    The m - 1 free differences are optimised; the closing difference is
    2k*pi minus their sum.  Every winding number k in 0..m gets its own
    batch of random starts on the corresponding simplex.
    """
    if m == 1:
        return 0.0
    best = 0.0
    for k in range(m + 1):
        total = 2 * math.pi * k

        def neg(xf):
            x = np.append(xf, total - xf.sum())
            return -_chord(x).sum()

        def neg_grad(xf):
            x = np.append(xf, total - xf.sum())
            g = _chord_grad(x)
            return -(g[:-1] - g[-1])

        for _ in range(restarts):
            w = rng.exponential(size=m)
            x0 = (total if k else 2 * math.pi) * w / w.sum()
            if k == 0:
                x0 = x0 - x0.mean()
            res = minimize(neg, x0[:-1], jac=neg_grad, method="BFGS",
                           options={"maxiter": iters, "gtol": 1e-12})
            best = max(best, -float(res.fun))
    return best


def brute_force_polygon(n: int, restarts: int = 4, iters: int = 500, seed: int = 0) -> float:
    """Numerical lower bound on L(n) over every cycle type of n points.

    Circumference depends only on the cycle structure of the permutation,
    so cycle types (integer partitions of n) are enumerated instead of all
    n! permutations; cycles use disjoint points and are optimised separately.
    """
    if n < 2:
        raise ValueError("need at least two points")
    if n > MAX_ORACLE_N:
        raise ValueError(f"oracle refuses n={n} > {MAX_ORACLE_N}")
    rng = np.random.default_rng(seed)
    cycle_best = {m: _best_cycle(m, restarts, iters, rng) for m in range(1, n + 1)}
    return max(sum(cycle_best[m] for m in part) for part in integer_partitions(n))


def _reduce(x: float, lo: float) -> float:
    """Shift x by multiples of 2 pi into [lo, lo + 2 pi)."""
    return x - 2 * math.pi * math.floor((x - lo) / (2 * math.pi))


def cos_product_extrema(x: float, m: int, want: Want | str) -> float:
    """Max or min of a product of m cosines (m = 2 or 3) whose angles sum to x."""
    want = Want(want)
    if m == 2:
        if want is Want.MAX:
            return math.cos(x / 2) ** 2
        return -math.sin(x / 2) ** 2
    if m == 3:
        if want is Want.MAX:
            xr = _reduce(x, -math.pi)
            return math.cos(xr / 3) ** 3
        xr = _reduce(x, 0.0)
        return -math.cos((xr - math.pi) / 3) ** 3
    raise ValueError("only products of 2 or 3 cosines are supported")


def c_inf11_objective(x: float) -> float:
    return math.cos(x / 3) ** 3 + math.cos((x - math.pi) / 3) ** 3


def c_inf11_maximize(tol: float = 1e-12) -> tuple[float, float]:
    """Maximise cos^3(x/3) + cos^3((x - pi)/3) on [0, pi]; returns (x*, value)."""
    return golden_max(c_inf11_objective, 0.0, math.pi, tol=tol)


def _six_vector_value(v: np.ndarray, d: int) -> float:
    vecs = v.reshape(6, d)
    vecs = vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
    p, u, vv, a, b, q = vecs
    return abs(p @ u * (vv @ a) * (b @ q) - (p @ a) * (b @ u) * (vv @ q))


def six_vector_maximize(d: int = 3, restarts: int = 30, seed: int = 0) -> tuple[float, np.ndarray]:
    """Direct maximisation of |(p,u)(v,a)(b,q) - (p,a)(b,u)(v,q)| over unit vectors in R^d.

    Returns the best value and the six normalised vectors (rows p, u, v, a, b, q).
    """
    rng = np.random.default_rng(seed)
    best_val, best_x = -1.0, None
    for _ in range(restarts):
        x0 = rng.standard_normal(6 * d)
        res = minimize(lambda v: -_six_vector_value(v, d), x0, method="Nelder-Mead",
                       options={"maxiter": 20000, "xatol": 1e-10, "fatol": 1e-14})
        res = minimize(lambda v: -_six_vector_value(v, d), res.x, method="BFGS")
        val = -float(res.fun)
        if val > best_val:
            best_val, best_x = val, res.x
    vecs = best_x.reshape(6, d)
    return best_val, vecs / np.linalg.norm(vecs, axis=1, keepdims=True)
