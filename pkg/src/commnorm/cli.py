"""Command-line front end.

    commnorm constant 2 2 2
    commnorm constant 1 3 6 --dim 4
    commnorm witness 1 inf inf --dim 5 --out pair.json
    commnorm verify inf 1 1 --dim 3 --restarts 200 --seed 0 --json
    commnorm bounds p11 --pmin 2 --pmax 32 --steps 64 --csv p11.csv
    commnorm bounds pinfinf --dim 5 --steps 64 --csv pii.csv
    commnorm polygon 7 --oracle
    commnorm maximality --pair pair.json --p 2 --q 2 --r 2
    commnorm scan --axis p:0:1:33 --axis r:0:1:33 --fix q=p --out ppr.csv
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import bounds, geometry, maximality, optimizer, witnesses
from .constants import DimensionRequired, constant
from .indices import IndexDomainError, NormIndex, parse_index
from .schatten import MatrixInputError

AXES = ("p", "q", "r")


class UsageError(ValueError):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    return f"{float(x):.17g}"


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


# -- scans --------------------------------------------------------------------


@dataclass
class ScanSpec:
    """Grid in scale coordinates s = 1 - 1/index.

    ``axes`` maps an index name to (lo, hi, steps); ``fixed`` maps the other
    names to an index or to the name of an axis it follows.
    """

    axes: dict[str, tuple[Fraction, Fraction, int]] = field(default_factory=dict)
    fixed: dict[str, NormIndex | str] = field(default_factory=dict)
    dim: int | None = None
    out: str | None = None

    def __post_init__(self):
        for name, (lo, hi, steps) in self.axes.items():
            if name not in AXES:
                raise UsageError(f"unknown axis {name!r}")
            if not (0 <= lo <= 1 and 0 <= hi <= 1):
                raise UsageError(f"axis {name}: range must lie in [0, 1]")
            if steps < 2:
                raise UsageError(f"axis {name}: need at least 2 steps")
        for name, val in self.fixed.items():
            if name in self.axes:
                raise UsageError(f"{name} is both an axis and fixed")
            if isinstance(val, str) and val not in self.axes:
                raise UsageError(f"{name} follows {val!r}, which is not an axis")
        missing = set(AXES) - set(self.axes) - set(self.fixed)
        if missing:
            raise UsageError(f"no value for {', '.join(sorted(missing))}")

    def points(self):
        """Triplets in deterministic grid order (first axis slowest)."""
        names = [a for a in AXES if a in self.axes]
        grids = []
        for name in names:
            lo, hi, steps = self.axes[name]
            grids.append([lo + (hi - lo) * Fraction(i, steps - 1) for i in range(steps)])

        def rec(i, acc):
            if i == len(names):
                yield dict(acc)
                return
            for s in grids[i]:
                acc[names[i]] = NormIndex(1 - s)
                yield from rec(i + 1, acc)

        for point in rec(0, {}):
            for name, val in self.fixed.items():
                point[name] = point[val] if isinstance(val, str) else val
            yield point["p"], point["q"], point["r"]


SCAN_COLUMNS = ["s_p", "s_q", "s_r", "p", "q", "r", "region", "status", "value", "lower", "upper"]


def scan_rows(spec: ScanSpec):
    for p, q, r in spec.points():
        row = [fmt(1 - p.u), fmt(1 - q.u), fmt(1 - r.u), str(p), str(q), str(r)]
        try:
            res = constant(p, q, r, spec.dim)
        except DimensionRequired:
            yield row + ["Pyramid", "DimensionRequired", "", "", ""]
            continue
        yield row + [res.region.value, res.status.value, fmt(res.value), fmt(res.lower), fmt(res.upper)]


def scan(spec: ScanSpec) -> int:
    """Write the scan CSV to ``spec.out`` (or stdout); returns the row count."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    n = 0
    for row in scan_rows(spec):
        w.writerow(row)
        n += 1
    _emit(buf.getvalue(), spec.out)
    return n


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise MatrixInputError(f"cannot write {path}: {exc}") from exc


def _p_grid(pmin: NormIndex, pmax: NormIndex, steps: int) -> list[NormIndex]:
    # Uniform in the scale coordinate, as in the figures.
    lo, hi = 1 - pmin.u, 1 - pmax.u
    if steps < 2:
        return [pmin]
    return [NormIndex(1 - (lo + (hi - lo) * Fraction(i, steps - 1))) for i in range(steps)]


def bounds_p11_rows(pmin, pmax, steps, grid: int = 2048):
    for p in _p_grid(pmin, pmax, steps):
        yield [str(p), fmt(bounds.lower_p11(p, grid)), fmt(bounds.upper_p11_refined(p)),
               fmt(bounds.upper_p11(p)), fmt(2.0 ** float(p.u))]


def bounds_pinfinf_rows(pmin, pmax, steps, d):
    for p in _p_grid(pmin, pmax, steps):
        u = float(p.u)
        lower, upper = bounds.bounds_pinfinf(p, d)
        star = d**u * (bounds.star_value(d) / d)
        padded = 2.0 * (d - 1) ** u
        yield [str(p), fmt(lower), fmt(upper), fmt(star), fmt(padded)]


# -- argument parsing ---------------------------------------------------------


def _index_arg(text: str) -> NormIndex:
    try:
        return parse_index(text)
    except IndexDomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _axis_arg(text: str):
    try:
        name, lo, hi, steps = text.split(":")
        return name, (Fraction(lo), Fraction(hi), int(steps))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"axis must look like p:LO:HI:STEPS, got {text!r}") from exc


def _fix_arg(text: str):
    try:
        name, val = text.split("=")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"fixed index must look like q=2 or q=p, got {text!r}") from exc
    name, val = name.strip(), val.strip()
    if val in AXES:
        return name, val
    return name, _index_arg(val)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="commnorm", description="Sharp Schatten-norm commutator constants")
    sub = ap.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("constant", help="value or bracket of C_{p,q,r}")
    for a in AXES:
        c.add_argument(a, type=_index_arg)
    c.add_argument("--dim", type=int)

    w = sub.add_parser("witness", help="best known witness pair")
    for a in AXES:
        w.add_argument(a, type=_index_arg)
    w.add_argument("--dim", type=int, required=True)
    w.add_argument("--out")

    v = sub.add_parser("verify", help="numerical search against the known constant")
    for a in AXES:
        v.add_argument(a, type=_index_arg)
    v.add_argument("--dim", type=int, required=True)
    v.add_argument("--restarts", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-iters", type=int, default=2000)
    v.add_argument("--json", action="store_true")

    b = sub.add_parser("bounds", help="bound curves as CSV")
    bsub = b.add_subparsers(dest="family", required=True)
    b11 = bsub.add_parser("p11", help="bounds for C_{p,1,1}, p >= 2")
    b11.add_argument("--pmin", type=_index_arg, default=parse_index("2"))
    b11.add_argument("--pmax", type=_index_arg, default=parse_index("32"))
    b11.add_argument("--steps", type=int, default=64)
    b11.add_argument("--grid", type=int, default=2048)
    b11.add_argument("--csv")
    bii = bsub.add_parser("pinfinf", help="bounds for C_{p,inf,inf}, odd d")
    bii.add_argument("--dim", type=int, required=True)
    bii.add_argument("--pmin", type=_index_arg, default=parse_index("1"))
    bii.add_argument("--pmax", type=_index_arg, default=parse_index("inf"))
    bii.add_argument("--steps", type=int, default=64)
    bii.add_argument("--csv")

    pg = sub.add_parser("polygon", help="maximal circumference L(n)")
    pg.add_argument("n", type=int)
    pg.add_argument("--oracle", action="store_true")
    pg.add_argument("--seed", type=int, default=0)

    m = sub.add_parser("maximality", help="structural conditions for a pair")
    m.add_argument("--pair", required=True)
    m.add_argument("--p", type=_index_arg, required=True)
    m.add_argument("--q", type=_index_arg, required=True)
    m.add_argument("--r", type=_index_arg, required=True)
    m.add_argument("--tol", type=float, default=maximality.DEFAULT_TOL)

    s = sub.add_parser("scan", help="grid scan of the constant as CSV")
    s.add_argument("--axis", type=_axis_arg, action="append", default=[])
    s.add_argument("--fix", type=_fix_arg, action="append", default=[])
    s.add_argument("--dim", type=int)
    s.add_argument("--out")
    return ap


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dispatch(args) -> None:
    out = sys.stdout
    if args.cmd == "constant":
        out.write(constant(args.p, args.q, args.r, args.dim).to_json() + "\n")
    elif args.cmd == "witness":
        recipe, value = witnesses.best_witness(args.p, args.q, args.r, args.dim)
        pair = witnesses.build(recipe)
        doc = {
            "recipe": recipe.name,
            "dim": args.dim,
            "ratio": value,
            "predicted_ratio": witnesses.predicted_ratio(recipe, args.p, args.q, args.r),
        }
        if args.out:
            _emit(_dump(pair.to_json()) + "\n", args.out)
            doc["out"] = args.out
        else:
            doc["pair"] = pair.to_json()
        out.write(_dump(doc) + "\n")
    elif args.cmd == "verify":
        cfg = optimizer.OptimizerConfig(seed=args.seed, restarts=args.restarts, max_iters=args.max_iters)
        rep = optimizer.verify_constant(args.p, args.q, args.r, args.dim, cfg)
        if args.json:
            out.write(_dump(rep.to_dict()) + "\n")
        else:
            out.write(f"best_ratio={fmt(rep.best_ratio)} verdict={rep.verdict.value} "
                      f"start={rep.start_label} lower={fmt(rep.predicted.lower)} "
                      f"upper={fmt(rep.predicted.upper)}\n")
    elif args.cmd == "bounds":
        if args.family == "p11":
            header = ["p", "lower", "upper_refined", "upper_interp", "lower_trivial"]
            text = _csv_text(header, bounds_p11_rows(args.pmin, args.pmax, args.steps, args.grid))
        else:
            header = ["p", "lower", "upper_interp", "lower_star", "lower_padded"]
            text = _csv_text(header, bounds_pinfinf_rows(args.pmin, args.pmax, args.steps, args.dim))
        _emit(text, args.csv)
    elif args.cmd == "polygon":
        value = geometry.max_polygon_length(args.n)
        if args.oracle:
            oracle = geometry.brute_force_polygon(args.n, seed=args.seed)
            out.write(_dump({"n": args.n, "formula": value, "oracle": oracle}) + "\n")
        else:
            out.write(fmt(value) + "\n")
    elif args.cmd == "maximality":
        try:
            doc = json.loads(Path(args.pair).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise MatrixInputError(f"cannot read pair file {args.pair}: {exc}") from exc
        pair = witnesses.MatrixPair.from_json(doc)
        out.write(_dump(maximality.report(pair, args.p, args.q, args.r, args.tol)) + "\n")
    elif args.cmd == "scan":
        spec = ScanSpec(dict(args.axis), dict(args.fix), args.dim, args.out)
        scan(spec)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _dispatch(args)
    except (ValueError, OSError) as exc:
        # DimensionRequired, IndexDomainError, MatrixInputError and RecipeError are ValueErrors.
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
