"""Region classification of (p, q, r) and the value of the commutator constant.

C_{p,q,r} is the least C with ||XY - YX||_p <= C ||X||_q ||Y||_r.  Writing
u, v, w for 1/p, 1/q, 1/r, the index cube splits into

* four segments where C = 2^e with e the largest of
  u, 1 - v, 1 - w and 1 + u - v - w (dimension free),
* the pyramid u >= v + w, where C depends on the matrix size d,
* the open octant p > 2, q < 2, r < 2, where only brackets are known.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import bounds, witnesses
from .indices import NormIndex, index

HALF = Fraction(1, 2)


class Region(str, enum.Enum):
    SEG_P = "SegP"
    SEG_Q = "SegQ"
    SEG_R = "SegR"
    SEG_MIXED = "SegMixed"
    PYRAMID = "Pyramid"
    OCTANT = "Octant"


class Status(str, enum.Enum):
    EXACT = "Exact"
    EXACT_EVEN_DIM = "ExactEvenDim"
    BRACKET = "Bracket"


class DimensionRequired(ValueError):
    """The constant depends on the matrix size, which was not given."""


SEGMENTS = (Region.SEG_P, Region.SEG_Q, Region.SEG_R, Region.SEG_MIXED)

# Witness designated for each dimension-free segment.
SEGMENT_WITNESS = {
    Region.SEG_P: witnesses.WitnessRecipe(witnesses.Kind.NILPOTENT, 2),
    Region.SEG_Q: witnesses.WitnessRecipe(witnesses.Kind.SIGN_FLIP, 2),
    Region.SEG_R: witnesses.WitnessRecipe(witnesses.Kind.SIGN_FLIP, 2, swap=True),
    Region.SEG_MIXED: witnesses.WitnessRecipe(witnesses.Kind.PAULI, 2),
}


@dataclass(frozen=True)
class BoundResult:
    status: Status
    region: Region
    lower: float
    upper: float
    value: float | None = None
    log2_value: Fraction | None = None
    dimension_dependent: bool = False
    dim: int | None = None
    witness: str | None = None
    note: str = ""

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"bracket [{self.lower}, {self.upper}] is empty")

    @property
    def exact(self) -> bool:
        return self.status is not Status.BRACKET

    def to_dict(self) -> dict:
        d = asdict(self)
        d["status"] = self.status.value
        d["region"] = self.region.value
        d["log2_value"] = None if self.log2_value is None else str(self.log2_value)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def exponents(p, q, r) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """The four base-2 exponents u, 1 - v, 1 - w, 1 + u - v - w, in tie-break order."""
    u, v, w = index(p).u, index(q).u, index(r).u
    return (u, 1 - v, 1 - w, 1 + u - v - w)


def pyramid_exponent(p, q, r) -> Fraction:
    return index(p).u - index(q).u - index(r).u


def classify(p, q, r) -> Region:
    p, q, r = index(p), index(q), index(r)
    u, v, w = p.u, q.u, r.u
    if u >= v + w:
        return Region.PYRAMID
    if u < HALF and v > HALF and w > HALF:
        return Region.OCTANT
    e = exponents(p, q, r)
    return SEGMENTS[e.index(max(e))]


def segment_exponent(p, q, r) -> Fraction:
    return max(exponents(p, q, r))


def _pow2(e: Fraction) -> float:
    return 2.0 ** float(e)


def constant_ppr(p, r) -> float:
    """C_{p,p,r} = max(2^{1/p}, 2^{1-1/p}, 2^{1-1/r})."""
    u, w = index(p).u, index(r).u
    return _pow2(max(u, 1 - u, 1 - w))


def symmetry_orbit(p, q, r) -> set[tuple[NormIndex, NormIndex, NormIndex]]:
    """Closure under (p,q,r) -> (p,r,q), (r',q,p'), (q',p',r)."""
    start = (index(p).u, index(q).u, index(r).u)
    seen = {start}
    todo = [start]
    while todo:
        u, v, w = todo.pop()
        for img in ((u, w, v), (1 - w, v, 1 - u), (1 - v, 1 - u, w)):
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return {(NormIndex(a), NormIndex(b), NormIndex(c)) for a, b, c in seen}


def _witness_max(p, q, r) -> float:
    return _pow2(segment_exponent(p, q, r))


def _octant(p: NormIndex, q: NormIndex, r: NormIndex) -> BoundResult:
    for a, b, c in sorted(symmetry_orbit(p, q, r), key=lambda t: (t[0].u, t[1].u, t[2].u)):
        if b.u == 1 and c.u == 1:
            if a.u == 0:
                value = bounds.SQRT27_4
                return BoundResult(Status.EXACT, Region.OCTANT, value, value, value=value,
                                   note="corner value sqrt(27)/4")
            lower = max(bounds.lower_p11(a), _witness_max(p, q, r))
            upper = bounds.upper_p11_refined(a)
            return BoundResult(Status.BRACKET, Region.OCTANT, lower, min(upper, math.sqrt(2)),
                               note=f"rank-one curve / two-atom bound via symmetric point ({a},1,1)")
    return BoundResult(Status.BRACKET, Region.OCTANT, _witness_max(p, q, r), math.sqrt(2),
                       note="upper bound sqrt(2) by monotonicity from (2,2,2); not sharp")


def _pyramid(p: NormIndex, q: NormIndex, r: NormIndex, d: int | None) -> BoundResult:
    e = pyramid_exponent(p, q, r)
    if e == 0:
        # On the plane 1/p = 1/q + 1/r every size gives 2.
        return BoundResult(Status.EXACT, Region.PYRAMID, 2.0, 2.0, value=2.0,
                           log2_value=Fraction(1), dim=d,
                           witness=SEGMENT_WITNESS[Region.SEG_MIXED].name,
                           note="boundary plane 1/p = 1/q + 1/r; attained at d >= 2")
    if d is None:
        raise DimensionRequired(f"dimension required: ({p},{q},{r}) lies in the pyramid 1/p > 1/q + 1/r")
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    top = 2.0 * d ** float(e)
    if d % 2 == 0:
        kind = witnesses.Kind.TILED if d > 2 else witnesses.Kind.PAULI
        return BoundResult(Status.EXACT_EVEN_DIM, Region.PYRAMID, top, top, value=top,
                           dimension_dependent=True, dim=d, witness=kind.value)
    if p.u == 1 and q.u == 0 and r.u == 0:
        value = bounds.star_value(d)
        return BoundResult(Status.EXACT, Region.PYRAMID, value, value, value=value,
                           dimension_dependent=True, dim=d,
                           witness=witnesses.Kind.STAR_POLYGON.value)
    recipe, lower = witnesses.best_witness(p, q, r, d)
    upper = top
    note = "odd d: 2 d^(1/p-1/q-1/r) is only an upper bound"
    if q.u == 0 and r.u == 0:
        base1 = bounds.InterpolationBase(1, "inf", bounds.star_value(d))
        base_inf = bounds.InterpolationBase("inf", "inf", 2.0)
        upper = min(upper, bounds.riesz_thorin(base1, base_inf, 1 - p.u).M)
        note = "odd d: interpolation between C_{1,inf,inf} and C_{inf,inf,inf}"
    lower = min(lower, upper)
    return BoundResult(Status.BRACKET, Region.PYRAMID, lower, upper, dimension_dependent=True,
                       dim=d, witness=recipe.name, note=note)


def constant(p, q, r, d: int | None = None) -> BoundResult:
    """Exact value or bracket for C_{p,q,r}; ``d`` is needed inside the pyramid."""
    p, q, r = index(p), index(q), index(r)
    if d is not None and d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    region = classify(p, q, r)
    if region is Region.PYRAMID:
        return _pyramid(p, q, r, d)
    if region is Region.OCTANT:
        return _octant(p, q, r)
    e = segment_exponent(p, q, r)
    value = _pow2(e)
    return BoundResult(Status.EXACT, region, value, value, value=value, log2_value=e, dim=d,
                       witness=SEGMENT_WITNESS[region].name, note="attained at d >= 2")
