"""Explicit matrix pairs attaining (or approaching) the commutator constants."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import schatten
from .indices import NormIndex, index
from .schatten import MatrixInputError


class RecipeError(ValueError):
    """A witness recipe whose dimension does not fit its construction."""


class Kind(str, enum.Enum):
    NILPOTENT = "Nilpotent"
    SIGN_FLIP = "SignFlip"
    PAULI = "Pauli"
    TILED = "Tiled"
    STAR_POLYGON = "StarPolygon"
    PADDED_EVEN = "PaddedEven"


@dataclass(frozen=True)
class WitnessRecipe:
    """A named construction at a given size.

    ``swap`` exchanges the roles of X and Y.  It matters for SignFlip, whose
    diagonal factor sits in the q-slot unless swapped.
    """

    kind: Kind
    dim: int
    swap: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        d = self.dim
        if d < 2:
            raise RecipeError(f"dimension {d} < 2")
        if self.kind in (Kind.STAR_POLYGON, Kind.PADDED_EVEN) and (d < 3 or d % 2 == 0):
            raise RecipeError(f"{self.kind.value} needs odd dim >= 3, got {d}")
        if self.kind is Kind.TILED and d % 2:
            raise RecipeError(f"Tiled needs even dim, got {d}")

    @property
    def name(self) -> str:
        return self.kind.value + ("(swapped)" if self.swap else "")


@dataclass(frozen=True, eq=False)
class MatrixPair:
    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = schatten.as_matrix(self.X)
        Y = schatten.as_matrix(self.Y)
        if X.shape[0] != X.shape[1] or X.shape != Y.shape:
            raise MatrixInputError(f"pair needs equal square shapes, got {X.shape}, {Y.shape}")
        X.setflags(write=False)
        Y.setflags(write=False)
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    @property
    def dim(self) -> int:
        return self.X.shape[0]

    @cached_property
    def Z(self) -> np.ndarray:
        return schatten.commutator(self.X, self.Y)

    @cached_property
    def sigma_x(self) -> np.ndarray:
        return schatten.singular_values(self.X)

    @cached_property
    def sigma_y(self) -> np.ndarray:
        return schatten.singular_values(self.Y)

    @cached_property
    def sigma_z(self) -> np.ndarray:
        return schatten.singular_values(self.Z)

    def swapped(self) -> MatrixPair:
        return MatrixPair(self.Y, self.X)

    def to_json(self) -> dict:
        return {"X": schatten.matrix_to_json(self.X), "Y": schatten.matrix_to_json(self.Y)}

    @classmethod
    def from_json(cls, obj: dict) -> MatrixPair:
        try:
            return cls(schatten.matrix_from_json(obj["X"]), schatten.matrix_from_json(obj["Y"]))
        except (KeyError, TypeError) as exc:
            raise MatrixInputError(f"bad pair object: {exc}") from exc


def _pad(A: np.ndarray, d: int) -> np.ndarray:
    out = np.zeros((d, d), dtype=complex)
    k = A.shape[0]
    out[:k, :k] = A
    return out


NILPOTENT_X = np.array([[0, 1], [0, 0]], dtype=complex)
NILPOTENT_Y = np.array([[0, 0], [1, 0]], dtype=complex)
SIGNFLIP_X = np.array([[1, 0], [0, -1]], dtype=complex)
SIGNFLIP_Y = np.array([[0, 1], [0, 0]], dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[1, 0], [0, -1]], dtype=complex)


def _tiled(d: int) -> tuple[np.ndarray, np.ndarray]:
    k = d // 2
    eye = np.eye(k)
    return np.kron(eye, PAULI_X), np.kron(eye, PAULI_Y)


def _star_polygon(d: int) -> tuple[np.ndarray, np.ndarray]:
    # Cyclic shift e_j -> e_{j+1}; Y puts the d-th roots of unity in star order.
    X = np.roll(np.eye(d, dtype=complex), 1, axis=0)
    m = (d - 1) // 2
    Y = np.diag(np.exp(2j * np.pi * np.arange(d) * m / d))
    return X, Y


def build(recipe: WitnessRecipe) -> MatrixPair:
    d = recipe.dim
    kind = recipe.kind
    if kind is Kind.NILPOTENT:
        X, Y = _pad(NILPOTENT_X, d), _pad(NILPOTENT_Y, d)
    elif kind is Kind.SIGN_FLIP:
        X, Y = _pad(SIGNFLIP_X, d), _pad(SIGNFLIP_Y, d)
    elif kind is Kind.PAULI:
        X, Y = _pad(PAULI_X, d), _pad(PAULI_Y, d)
    elif kind is Kind.TILED:
        X, Y = _tiled(d)
    elif kind is Kind.STAR_POLYGON:
        X, Y = _star_polygon(d)
    elif kind is Kind.PADDED_EVEN:
        X, Y = (_pad(A, d) for A in _tiled(d - 1))
    else:  # pragma: no cover
        raise RecipeError(f"unknown kind {kind!r}")
    if recipe.swap:
        X, Y = Y, X
    return MatrixPair(X, Y)


def ratio(pair: MatrixPair, p, q, r) -> float:
    """||[X, Y]||_p / (||X||_q ||Y||_r)."""
    nx = schatten.norm_of_spectrum(pair.sigma_x, q)
    ny = schatten.norm_of_spectrum(pair.sigma_y, r)
    if nx == 0 or ny == 0:
        raise ValueError("ratio undefined for a zero matrix")
    return schatten.norm_of_spectrum(pair.sigma_z, p) / (nx * ny)


def predicted_ratio(recipe: WitnessRecipe, p, q, r) -> float:
    """Closed-form ratio of a recipe, from the known singular values of X, Y and [X, Y]."""
    p, q, r = index(p), index(q), index(r)
    u, v, w = float(p.u), float(q.u), float(r.u)
    if recipe.swap:
        v, w = w, v
    d = recipe.dim
    kind = recipe.kind
    if kind is Kind.NILPOTENT:
        return 2.0**u
    if kind is Kind.SIGN_FLIP:
        return 2.0 ** (1 - v)
    if kind is Kind.PAULI:
        return 2.0 ** (1 + u - v - w)
    if kind is Kind.TILED:
        return 2.0 * d ** (u - v - w)
    if kind is Kind.PADDED_EVEN:
        return 2.0 * (d - 1) ** (u - v - w)
    if kind is Kind.STAR_POLYGON:
        return d ** (u - v - w) * math.sqrt(2 + 2 * math.cos(math.pi / d))
    raise RecipeError(f"unknown kind {kind!r}")  # pragma: no cover


def applicable_recipes(d: int) -> list[WitnessRecipe]:
    """Every recipe that can be built at size d, in a fixed order."""
    out = [WitnessRecipe(Kind.NILPOTENT, d), WitnessRecipe(Kind.SIGN_FLIP, d),
           WitnessRecipe(Kind.SIGN_FLIP, d, swap=True), WitnessRecipe(Kind.PAULI, d)]
    if d % 2 == 0:
        if d > 2:
            out.append(WitnessRecipe(Kind.TILED, d))
    else:
        out.append(WitnessRecipe(Kind.STAR_POLYGON, d))
        out.append(WitnessRecipe(Kind.PADDED_EVEN, d))
    return out


def best_witness(p, q, r, d: int) -> tuple[WitnessRecipe, float]:
    """Recipe with the largest measured ratio at size d (first listed wins ties)."""
    if d < 2:
        raise RecipeError("need d >= 2")
    best = None
    for recipe in applicable_recipes(d):
        value = ratio(build(recipe), p, q, r)
        if best is None or value > best[1] * (1 + 1e-13):
            best = (recipe, value)
    return best
