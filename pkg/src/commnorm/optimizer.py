"""Numerical search for matrix pairs with a large commutator ratio.

The search maximises log||[X,Y]||_p - log||X||_q - log||Y||_r by normalised
gradient ascent with step halving.  The gradient is taken either in closed
form from singular vectors or by central finite differences in the real and
imaginary parts of all entries.  All restarts advance together as one batch
of small matrices.

Indices 1 and inf are not differentiable; ascent runs through a schedule of
smoothed problems with every reciprocal clamped to [1/cap, 1 - 1/cap], then
polishes at the true indices.  Reported ratios are always evaluated at the
true indices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import witnesses
from .constants import BoundResult, Status, constant
from .indices import NormIndex, index
from .witnesses import MatrixPair

EXCEED_SLACK = 1e-6


@dataclass(frozen=True)
class OptimizerConfig:
    seed: int = 0
    restarts: int = 200
    max_iters: int = 2000
    step_init: float = 0.1
    tol: float = 1e-10
    step_growth: float = 1.0
    patience: int = 50
    fd_step: float = 1e-5
    smoothing_caps: tuple[int, ...] = (4, 8, 16, 32, 64, 256, 1024, 4096)
    polish_iters: int = 300
    attain_eps: float = 1e-6
    gradient: str = "analytic"

    def __post_init__(self):
        for name in ("restarts", "max_iters", "patience"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not self.smoothing_caps or min(self.smoothing_caps) < 2:
            raise ValueError("smoothing_caps must be a nonempty sequence of integers >= 2")
        if self.gradient not in ("analytic", "fd"):
            raise ValueError("gradient must be 'analytic' or 'fd'")
        for name in ("step_init", "tol", "fd_step", "attain_eps"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.polish_iters < 0:
            raise ValueError("polish_iters must be >= 0")


class Verdict(str, enum.Enum):
    ATTAINED_WITHIN = "AttainedWithin"
    BELOW_BOUND = "BelowBound"
    EXCEEDS_BOUND = "ExceedsBound"
    BRACKET_PROBE = "BracketProbe"


@dataclass
class SearchReport:
    best_ratio: float
    best_pair: MatrixPair
    best_restart: int
    start_label: str
    predicted: BoundResult | None
    iterations_used: int
    verdict: Verdict | None = None
    eps: float | None = None
    bracket_position: float | None = None
    triplet: tuple[str, str, str] = ("", "", "")
    dim: int = 0
    ratios: np.ndarray = field(default=None, repr=False)

    def to_dict(self, with_pair: bool = False) -> dict:
        out = {
            "triplet": list(self.triplet),
            "dim": self.dim,
            "best_ratio": self.best_ratio,
            "best_restart": self.best_restart,
            "start": self.start_label,
            "iterations_used": self.iterations_used,
            "verdict": None if self.verdict is None else self.verdict.value,
            "eps": self.eps,
            "bracket_position": self.bracket_position,
            "predicted": None if self.predicted is None else self.predicted.to_dict(),
        }
        if with_pair:
            out["pair"] = self.best_pair.to_json()
        return out


# -- batched objective ------------------------------------------------------


def _batched_log_norm(sigma: np.ndarray, u: float) -> np.ndarray:
    """log of the l_{1/u} norm along the last axis; sigma >= 0."""
    smax = sigma.max(axis=-1)
    safe = np.where(smax > 0, smax, 1.0)
    if u == 0:
        out = np.log(safe)
    else:
        pf = 1.0 / u
        out = np.log(safe) + u * np.log(np.sum((sigma / safe[..., None]) ** pf, axis=-1))
    return np.where(smax > 0, out, -np.inf)


def _svals(A: np.ndarray) -> np.ndarray:
    return np.linalg.svd(A, compute_uv=False)


def _objective(X: np.ndarray, Y: np.ndarray, u: tuple[float, float, float]) -> np.ndarray:
    Z = X @ Y - Y @ X
    return (_batched_log_norm(_svals(Z), u[0]) - _batched_log_norm(_svals(X), u[1])
            - _batched_log_norm(_svals(Y), u[2]))


def _to_params(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    R = X.shape[0]
    return np.concatenate([X.real.reshape(R, -1), X.imag.reshape(R, -1),
                           Y.real.reshape(R, -1), Y.imag.reshape(R, -1)], axis=1)


def _from_params(theta: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    shape = theta.shape[:-1] + (d, d)
    k = d * d
    X = (theta[..., :k] + 1j * theta[..., k:2 * k]).reshape(shape)
    Y = (theta[..., 2 * k:3 * k] + 1j * theta[..., 3 * k:]).reshape(shape)
    return X, Y


def _fd_gradient(theta: np.ndarray, d: int, u, h: float) -> np.ndarray:
    """Central differences of the objective in every real parameter."""
    R, n = theta.shape
    k = 2 * d * d
    step = h * np.eye(n)
    plus = theta[:, None, :] + step[None]
    minus = theta[:, None, :] - step[None]
    both = np.concatenate([plus, minus], axis=1)            # (R, 2n, n)
    Xb, Yb = _from_params(both, d)
    Zb = Xb @ Yb - Yb @ Xb
    fz = _batched_log_norm(_svals(Zb), u[0])
    # X only moves in the first k directions, Y in the last k.
    X0, Y0 = _from_params(theta, d)
    lx0 = _batched_log_norm(_svals(X0), u[1])
    ly0 = _batched_log_norm(_svals(Y0), u[2])
    x_idx = np.r_[0:k, n:n + k]
    y_idx = np.r_[k:n, n + k:2 * n]
    lx = np.repeat(lx0[:, None], 2 * n, axis=1)
    ly = np.repeat(ly0[:, None], 2 * n, axis=1)
    lx[:, x_idx] = _batched_log_norm(_svals(Xb[:, x_idx]), u[1])
    ly[:, y_idx] = _batched_log_norm(_svals(Yb[:, y_idx]), u[2])
    f = fz - lx - ly
    return (f[:, :n] - f[:, n:]) / (2 * h)


def _log_norm_weight(A: np.ndarray, u: float) -> np.ndarray:
    """W with d log||A||_{1/u} = Re tr(W* dA), batched over leading axes."""
    U, s, Vh = np.linalg.svd(A)
    smax = s[..., :1]
    safe = np.where(smax > 0, smax, 1.0)
    if u == 0:
        w = np.zeros_like(s)
        w[..., 0] = 1.0 / safe[..., 0]
    else:
        pf = 1.0 / u
        t = s / safe
        w = t ** (pf - 1) / (safe * np.sum(t**pf, axis=-1, keepdims=True))
    return (U * w[..., None, :]) @ Vh


def _analytic_gradient(theta: np.ndarray, d: int, u) -> np.ndarray:
    X, Y = _from_params(theta, d)
    Z = X @ Y - Y @ X
    Wz = _log_norm_weight(Z, u[0])
    Xh = np.conj(np.swapaxes(X, -1, -2))
    Yh = np.conj(np.swapaxes(Y, -1, -2))
    gx = Wz @ Yh - Yh @ Wz - _log_norm_weight(X, u[1])
    gy = Xh @ Wz - Wz @ Xh - _log_norm_weight(Y, u[2])
    return _to_params(gx, gy)


def gradient(theta: np.ndarray, d: int, u, method: str = "analytic", h: float = 1e-5) -> np.ndarray:
    """Gradient of the log ratio in the packed real parameters (one row per pair)."""
    if method == "fd":
        return _fd_gradient(theta, d, u, h)
    return _analytic_gradient(theta, d, u)


def _normalize(theta: np.ndarray, d: int, u) -> np.ndarray:
    X, Y = _from_params(theta, d)
    nx = np.exp(_batched_log_norm(_svals(X), u[1]))
    ny = np.exp(_batched_log_norm(_svals(Y), u[2]))
    nx = np.where(nx > 0, nx, 1.0)
    ny = np.where(ny > 0, ny, 1.0)
    return _to_params(X / nx[:, None, None], Y / ny[:, None, None])


def _ascend(theta: np.ndarray, d: int, u, cfg: OptimizerConfig, iters: int) -> tuple[np.ndarray, int]:
    """Normalised-gradient ascent on every row of theta; returns final params and iterations."""
    theta = _normalize(theta, d, u)
    X, Y = _from_params(theta, d)
    f = _objective(X, Y, u)
    R = theta.shape[0]
    step = np.full(R, cfg.step_init)
    active = np.isfinite(f)
    history = np.full((R, cfg.patience), -np.inf)
    used = 0
    for it in range(iters):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        used = it + 1
        th = theta[idx]
        g = gradient(th, d, u, cfg.gradient, cfg.fd_step)
        gn = np.linalg.norm(g, axis=1)
        zero = gn == 0
        gn[zero] = 1.0
        cand = _normalize(th + (step[idx] / gn)[:, None] * g, d, u)
        fc = _objective(*_from_params(cand, d), u)
        better = (fc > f[idx]) & ~zero
        acc = idx[better]
        theta[acc] = cand[better]
        f[acc] = fc[better]
        step[acc] = np.minimum(step[acc] * cfg.step_growth, cfg.step_init)
        rej = idx[~better]
        step[rej] *= 0.5
        slot = it % cfg.patience
        history[idx, slot] = f[idx]
        if it + 1 >= cfg.patience:
            oldest = history[idx, (it + 1) % cfg.patience]
            stalled = (f[idx] - oldest < cfg.tol) | (step[idx] < 1e-14)
            active[idx[stalled]] = False
        active[idx[zero]] = False
    return theta, used


def _true_ratios(theta: np.ndarray, d: int, p: NormIndex, q: NormIndex, r: NormIndex) -> np.ndarray:
    X, Y = _from_params(theta, d)
    return np.exp(_objective(X, Y, (float(p.u), float(q.u), float(r.u))))


def _smoothed(a: NormIndex, cap: int) -> float:
    lo = Fraction(1, cap)
    return float(min(max(a.u, lo), 1 - lo))


def _initial_params(d: int, cfg: OptimizerConfig) -> tuple[np.ndarray, list[str]]:
    recipes = witnesses.applicable_recipes(d)
    warm = [witnesses.build(rc) for rc in recipes]
    labels = [rc.name for rc in recipes]
    rng = np.random.default_rng(cfg.seed)
    shape = (cfg.restarts, d, d)
    Xr = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    Yr = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)
    Xw = np.stack([w.X for w in warm])
    Yw = np.stack([w.Y for w in warm])
    theta = _to_params(np.concatenate([Xw, Xr]), np.concatenate([Yw, Yr]))
    labels += [f"random#{i}" for i in range(cfg.restarts)]
    return theta, labels


def maximize_ratio(p, q, r, d: int, cfg: OptimizerConfig | None = None) -> SearchReport:
    """Best ratio found over warm starts and random complex Gaussian restarts.

    Each start is scored at the true indices before ascent and after every
    stage; its best score counts.  Ties go to the lowest start index (warm
    starts come first).
    """
    cfg = cfg or OptimizerConfig()
    p, q, r = index(p), index(q), index(r)
    if d < 2:
        raise ValueError("need d >= 2")
    theta, labels = _initial_params(d, cfg)
    stages = [theta.copy()]
    used = 0
    for cap in cfg.smoothing_caps:
        u_smooth = tuple(_smoothed(a, cap) for a in (p, q, r))
        theta, n = _ascend(theta, d, u_smooth, cfg, cfg.max_iters)
        stages.append(theta.copy())
        used += n
    if cfg.polish_iters:
        polish_cfg = replace(cfg, step_init=cfg.step_init * 0.1)
        u_true = (float(p.u), float(q.u), float(r.u))
        theta, n = _ascend(theta, d, u_true, polish_cfg, cfg.polish_iters)
        stages.append(theta.copy())
        used += n

    scores = np.stack([_true_ratios(th, d, p, q, r) for th in stages])   # (stages, starts)
    scores = np.where(np.isfinite(scores), scores, -np.inf)
    stage_best = np.argmax(scores, axis=0)
    per_start = scores[stage_best, np.arange(scores.shape[1])]
    k = int(np.argmax(per_start))
    X, Y = _from_params(stages[stage_best[k]][k], d)
    return SearchReport(
        best_ratio=float(per_start[k]),
        best_pair=MatrixPair(X, Y),
        best_restart=k,
        start_label=labels[k],
        predicted=None,
        iterations_used=used,
        triplet=(str(p), str(q), str(r)),
        dim=d,
        ratios=per_start,
    )


def verify_constant(p, q, r, d: int, cfg: OptimizerConfig | None = None) -> SearchReport:
    """Run the search and compare its best ratio with the known value or bracket."""
    cfg = cfg or OptimizerConfig()
    predicted = constant(p, q, r, d)
    rep = maximize_ratio(p, q, r, d, cfg)
    rep.predicted = predicted
    best = rep.best_ratio
    if best > predicted.upper + EXCEED_SLACK:
        rep.verdict = Verdict.EXCEEDS_BOUND
    elif predicted.status is Status.BRACKET:
        rep.verdict = Verdict.BRACKET_PROBE
        width = predicted.upper - predicted.lower
        rep.bracket_position = (best - predicted.lower) / width if width > 0 else 0.0
    elif best >= predicted.value - cfg.attain_eps:
        rep.verdict = Verdict.ATTAINED_WITHIN
        rep.eps = cfg.attain_eps
    else:
        rep.verdict = Verdict.BELOW_BOUND
    return rep
