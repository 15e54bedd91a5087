"""Golden-section search for unimodal maxima on an interval."""

from __future__ import annotations

import math
from typing import Callable

INVPHI = (math.sqrt(5) - 1) / 2


def golden_max(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Return ``(x, f(x))`` for the maximum of a unimodal ``f`` on ``[a, b]``.

    Stops when the bracket is shorter than ``tol`` or after ``max_iter``
    shrink steps.  The endpoints are also evaluated, so a maximum sitting on
    the boundary is returned exactly.
    """
    lo, hi = a, b
    c = hi - INVPHI * (hi - lo)
    d = lo + INVPHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INVPHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INVPHI * (hi - lo)
            fd = f(d)
    candidates = [(c, fc), (d, fd), (a, f(a)), (b, f(b))]
    mid = 0.5 * (lo + hi)
    candidates.append((mid, f(mid)))
    return max(candidates, key=lambda t: t[1])
