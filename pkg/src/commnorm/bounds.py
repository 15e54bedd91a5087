"""Two-point Riesz-Thorin combination and the explicit bound curves.

The curves bracket the two families that interpolation leaves open:
C_{p,1,1} for p >= 2 and C_{p,inf,inf} for odd matrix size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .golden import golden_max
from .indices import NormIndex, _to_fraction, index, interpolate_index
from .schatten import norm_of_spectrum

SQRT27_4 = math.sqrt(27) / 4
SQRT5_4 = math.sqrt(5) / 4


@dataclass(frozen=True)
class InterpolationBase:
    """A known estimate ||T x||_p <= M ||x||_q.

    ``log2_M`` optionally records M = 2^log2_M exactly, so that chains of
    power-of-two constants combine without rounding.
    """

    p: NormIndex
    q: NormIndex
    M: float
    log2_M: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "p", index(self.p))
        object.__setattr__(self, "q", index(self.q))
        if not self.M > 0:
            raise ValueError(f"constant M={self.M} must be positive")

    @classmethod
    def pow2(cls, p, q, exponent) -> InterpolationBase:
        e = _to_fraction(exponent)
        return cls(p, q, 2.0 ** float(e), e)


def riesz_thorin(base0: InterpolationBase, base1: InterpolationBase, theta) -> InterpolationBase:
    """Combine two bounds at reciprocal-convex weight theta; M = M0^(1-theta) M1^theta."""
    t = _to_fraction(theta)
    if not 0 <= t <= 1:
        raise ValueError(f"theta={theta} outside [0, 1]")
    p = interpolate_index(base0.p, base1.p, t)
    q = interpolate_index(base0.q, base1.q, t)
    if base0.log2_M is not None and base1.log2_M is not None:
        return InterpolationBase.pow2(p, q, (1 - t) * base0.log2_M + t * base1.log2_M)
    if t == 0:
        M = base0.M
    elif t == 1:
        M = base1.M
    elif base0.M == base1.M:
        M = base0.M
    else:
        tf = float(t)
        M = math.exp((1 - tf) * math.log(base0.M) + tf * math.log(base1.M))
    return InterpolationBase(p, q, M)


def _require_p_ge_2(p: NormIndex) -> None:
    if p.u > Fraction(1, 2):
        raise ValueError(f"bound needs p >= 2, got p={p}")


def upper_p11(p) -> float:
    """Interpolation estimate 2^{1/p} (sqrt27/4)^{1-2/p} for C_{p,1,1}, p >= 2."""
    p = index(p)
    _require_p_ge_2(p)
    return 2.0 ** float(p.u) * SQRT27_4 ** float(1 - 2 * p.u)


def upper_p11_refined(p) -> float:
    """((sqrt27/4)^p + (sqrt5/4)^p)^{1/p}: two singular values with l2 mass <= 2, top one <= sqrt27/4."""
    p = index(p)
    _require_p_ge_2(p)
    return norm_of_spectrum([SQRT27_4, SQRT5_4], p)


def rank_one_curve(phi: float) -> tuple[float, float]:
    """Singular values of [X, Y] for a one-parameter family of normed rank-one pairs."""
    c, s = math.cos(phi), math.sin(phi)
    cs = c * s
    scale = math.sqrt(2) * math.sqrt(8 * cs) / (1 + 2 * cs)
    return scale * c, scale * s


def lower_p11(p, grid: int = 2048, iters: int = 60) -> float:
    """Certified lower bound for C_{p,1,1}.

    Maximum of 2^{1/p} and the p-norm along the rank-one curve for
    phi in [0, pi/4]; a grid scan brackets the best phi, which golden-section
    steps then refine.  Every evaluated phi is a genuine pair, so the result
    is a lower bound whatever the resolution.
    """
    p = index(p)
    if grid < 2:
        raise ValueError("grid needs at least two points")

    def f(phi: float) -> float:
        return norm_of_spectrum(rank_one_curve(phi), p)

    phis = np.linspace(0.0, math.pi / 4, grid)
    vals = [f(x) for x in phis]
    k = int(np.argmax(vals))
    lo, hi = phis[max(k - 1, 0)], phis[min(k + 1, grid - 1)]
    _, refined = golden_max(f, lo, hi, tol=1e-12, max_iter=iters)
    curve = max(vals[k], refined)
    return max(2.0 ** float(p.u), curve)


def star_value(d: int) -> float:
    """d * sqrt(2 + 2 cos(pi/d))."""
    return d * math.sqrt(2 + 2 * math.cos(math.pi / d))


def bounds_pinfinf(p, d: int) -> tuple[float, float]:
    """(lower, upper) for C_{p,inf,inf} at odd size d >= 3."""
    p = index(p)
    if d < 3 or d % 2 == 0:
        raise ValueError(f"odd d >= 3 required, got {d}")
    u = float(p.u)
    edge = math.sqrt(2 + 2 * math.cos(math.pi / d))
    lower_star = d**u * edge
    lower_padded = 2.0 * (d - 1) ** u
    upper = star_value(d) ** u * 2.0 ** (1 - u)
    return max(lower_star, lower_padded), upper


def pinfinf_crossing(d: int) -> float:
    """Index p0 where d^{1/p} sqrt(2+2cos(pi/d)) equals 2 (d-1)^{1/p}.

    Solving for u = 1/p: u (log d - log(d-1)) = log 2 - log(edge).
    Returns inf when the two curves never meet for p >= 1.
    """
    if d < 3 or d % 2 == 0:
        raise ValueError(f"odd d >= 3 required, got {d}")
    edge = math.sqrt(2 + 2 * math.cos(math.pi / d))
    u = (math.log(2) - math.log(edge)) / (math.log(d) - math.log(d - 1))
    if u <= 0 or u > 1:
        return math.inf
    return 1 / u
