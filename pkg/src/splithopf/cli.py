"""hopfctl: verification suites, projections, tables and field sampling.

Exit codes: 0 all checks pass / operation succeeded, 1 check failure or
domain error, 2 usage error.  All structured output is JSON (CSV for grid
exports); floats are printed with 17 significant digits so values round-trip
losslessly.  HOPFCTL_SEED provides the seed when --seed is absent.
"""

import argparse
import csv
import json
import math
import os
import sys

from fractions import Fraction

from .splitnum import SplitComplex, OrdinaryComplex, multiplication_table
from . import hopfmaps, gaugegeom, reporting

SCHEMA = 1


def _fmt_float(x):
    return float(("%.17g" % float(x)))


def _emit(data, out):
    text = json.dumps(data, indent=2, default=_fmt_float)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _seed(args):
    if args.seed is not None:
        return args.seed
    env = os.environ.get("HOPFCTL_SEED")
    return int(env) if env else 0


# ---------------------------------------------------------------------------
# spinor / point JSON codecs

def _decode_scalar(v, ring):
    if isinstance(v, list):
        re, im = v
        if ring == "split":
            return SplitComplex(re, im)
        if ring == "complex":
            return OrdinaryComplex(re, im)
        raise ValueError("real components must be plain numbers")
    return v


def _encode_scalar(v):
    if isinstance(v, (SplitComplex, OrdinaryComplex)):
        return [_fmt_float(v.re), _fmt_float(v.im)]
    return _fmt_float(v)


def _spinor_ring(level, realization):
    if (level, realization) == (3, "II"):
        return "real"
    return "split" if realization == "I" else "complex"


def decode_spinor(payload, level, realization):
    ring = _spinor_ring(level, realization)
    comps = [_decode_scalar(v, ring) for v in payload]
    return hopfmaps.Spinor(level, realization, comps)


def encode_spinor(spinor):
    return {"schema": SCHEMA, "level": spinor.level, "realization": spinor.realization,
            "comps": [_encode_scalar(c) for c in spinor.comps]}


# ---------------------------------------------------------------------------
# subcommands

def cmd_tables(args):
    _emit(multiplication_table(args.algebra), args.out)
    return 0


def _parse_tolerances(specs):
    out = {}
    for spec in specs or ():
        try:
            prefix, value = spec.split("=")
            out[prefix] = float(value)
        except ValueError:
            raise UsageError("tolerance: expected CHECK_PREFIX=VALUE, got %r" % spec)
    return out


def cmd_verify(args):
    seed = _seed(args)
    overrides = _parse_tolerances(args.tolerance)
    names = ["algebra", "gamma", "hopf", "gauge", "super"] if args.suite == "all" \
        else [args.suite]
    reports = []
    for name in names:
        rep = reporting.run_suite(name, seed=seed, corrupt=args.inject_fault)
        for check in rep.checks:
            for prefix, tol in overrides.items():
                if check.id.startswith(prefix) and check.residual is not None:
                    check.tolerance = tol
                    check.passed = check.residual < tol
        reports.append(rep)
    payload = {
        "schema": SCHEMA,
        "seed": seed,
        "status": "pass" if all(r.passed for r in reports) else "fail",
        "suites": [r.as_dict(timestamp=not args.no_timestamp) for r in reports],
    }
    _emit(payload, args.out)
    return 0 if payload["status"] == "pass" else 1


def _parse_point(args):
    try:
        coords = json.loads(args.point)
    except json.JSONDecodeError as e:
        raise UsageError("point: invalid JSON (%s)" % e)
    if not isinstance(coords, list) or not all(isinstance(c, (int, float)) for c in coords):
        raise UsageError("point: expected a JSON array of numbers")
    return coords


class UsageError(Exception):
    pass


def cmd_project(args):
    if args.level == 0:
        try:
            coords = json.loads(args.spinor)
            y = hopfmaps.level0_project(tuple(coords))
        except json.JSONDecodeError as e:
            raise UsageError("spinor: invalid JSON (%s)" % e)
        _emit({"schema": SCHEMA, "level": 0, "coords": [_fmt_float(c) for c in y]},
              args.out)
        return 0
    try:
        payload = json.loads(args.spinor)
    except json.JSONDecodeError as e:
        raise UsageError("spinor: invalid JSON (%s)" % e)
    sp = decode_spinor(payload, args.level, args.realization)
    pt = hopfmaps.project(sp)
    _emit({"schema": SCHEMA, "level": pt.level, "realization": pt.realization,
           "coords": [_fmt_float(c) for c in pt.coords], "patch": pt.patch}, args.out)
    return 0


def cmd_invert(args):
    if args.level == 0:
        coords = _parse_point(args)
        x = hopfmaps.level0_invert(tuple(coords), args.patch)
        _emit({"schema": SCHEMA, "level": 0, "coords": [_fmt_float(c) for c in x]},
              args.out)
        return 0
    coords = _parse_point(args)
    pt = hopfmaps.BasePoint(args.level, args.realization, coords, args.patch)
    fiber = None
    if args.fiber:
        ring = _spinor_ring(1 if args.level == 2 else args.level, args.realization)
        raw = json.loads(args.fiber)
        if args.level == 1:
            fiber = _decode_scalar(raw, _spinor_ring(1, args.realization))
        elif args.level == 2:
            fiber = [_decode_scalar(v, ring) for v in raw]
        else:
            ring = "split" if args.realization == "I" else "real"
            fiber = [_decode_scalar(v, ring) for v in raw]
    sp = hopfmaps.invert(pt, fiber=fiber, patch=args.patch)
    if isinstance(sp, hopfmaps.Section):
        mat = sp.matrix()
        _emit({"schema": SCHEMA, "level": args.level, "realization": args.realization,
               "section": [[_encode_scalar(e) for e in row] for row in mat.entries]},
              args.out)
    else:
        _emit(encode_spinor(sp), args.out)
    return 0


def _parse_grid(spec):
    axes = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            name, rng = part.split("=")
            lo, hi, steps = rng.split(":")
            axes[int(name.lstrip("x"))] = (float(lo), float(hi), int(steps))
        except ValueError:
            raise UsageError("grid: expected xI=min:max:steps[,...], got %r" % part)
    if not axes:
        raise UsageError("grid: empty specification")
    return axes


def cmd_sample_field(args):
    case = hopfmaps.case_info(args.level, args.realization)
    dim = case.base_dim
    axes = _parse_grid(args.grid)
    for idx in axes:
        if not 1 <= idx <= dim - 1:
            raise UsageError("grid: axis x%d out of range (free axes are 1..%d)"
                             % (idx, dim - 1))
    sign = 1 if args.patch == "upper" else -1
    ranges = []
    for idx in range(1, dim):
        if idx in axes:
            lo, hi, steps = axes[idx]
            vals = [lo + (hi - lo) * k / max(1, steps - 1) for k in range(steps)] \
                if steps > 1 else [lo]
        else:
            vals = [0.0]
        ranges.append(vals)

    rows = []
    names = None
    skipped = 0
    eta = case.base_metric.signature
    target = case.constraint_target

    def product(rs):
        if not rs:
            yield ()
            return
        for head in rs[0]:
            for tail in product(rs[1:]):
                yield (head,) + tail

    for partial in product(ranges):
        # solve the last coordinate from the constraint on the chosen patch
        acc = sum(e * v * v for e, v in zip(eta[:-1], partial))
        last_sq = (target - acc) / eta[-1]
        if last_sq < 0:
            skipped += 1
            continue
        x_last = sign * math.sqrt(last_sq)
        coords = list(partial) + [x_last]
        pt = hopfmaps.BasePoint(args.level, args.realization, coords, args.patch)
        if pt.patch_factor(args.patch) < 1e-6:
            skipped += 1
            continue
        try:
            cnames, values = gaugegeom.field_components(pt, args.patch)
        except (hopfmaps.PatchError, ValueError):
            skipped += 1
            continue
        names = cnames
        rows.append([_fmt_float(c) for c in coords] + [_fmt_float(v) for v in values])

    coord_names = ["x%d" % i for i in range(1, dim + 1)]
    if args.format == "csv":
        target_fh = open(args.out, "w", newline="") if args.out else sys.stdout
        writer = csv.writer(target_fh)
        writer.writerow(coord_names + (names or []))
        for row in rows:
            writer.writerow(["%.17g" % v for v in row])
        writer.writerow(["# skipped=%d" % skipped])
        if args.out:
            target_fh.close()
    else:
        _emit({"schema": SCHEMA, "level": args.level, "realization": args.realization,
               "patch": args.patch, "columns": coord_names + (names or []),
               "rows": rows, "skipped": skipped}, args.out)
    return 0


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="hopfctl",
                                description="split-algebra Hopf map toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="emit a split-algebra multiplication table")
    t.add_argument("--algebra", required=True,
                   choices=["split-complex", "split-quaternion", "split-octonion"])
    t.add_argument("--out")
    t.set_defaults(fn=cmd_tables)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", required=True,
                   choices=["algebra", "gamma", "hopf", "gauge", "super", "all"])
    v.add_argument("--seed", type=int)
    v.add_argument("--out")
    v.add_argument("--no-timestamp", action="store_true",
                   help="zero wall times for byte-identical reports")
    v.add_argument("--inject-fault", action="store_true",
                   help="test hook: corrupt one fixture so the suite fails")
    v.add_argument("--tolerance", action="append", metavar="CHECK_PREFIX=VALUE",
                   help="override the tolerance of residual-carrying checks")
    v.set_defaults(fn=cmd_verify)

    pr = sub.add_parser("project", help="project a spinor to its base point")
    pr.add_argument("--level", type=int, required=True, choices=[0, 1, 2, 3])
    pr.add_argument("--realization", choices=["I", "II"], default="I")
    pr.add_argument("--spinor", required=True,
                    help="JSON components; split/complex entries as [re, im]")
    pr.add_argument("--out")
    pr.set_defaults(fn=cmd_project)

    iv = sub.add_parser("invert", help="inversion section at a base point")
    iv.add_argument("--level", type=int, required=True, choices=[0, 1, 2, 3])
    iv.add_argument("--realization", choices=["I", "II"], default="I")
    iv.add_argument("--patch", choices=["upper", "lower"], default="upper")
    iv.add_argument("--point", required=True, help="JSON coordinate array")
    iv.add_argument("--fiber", help="JSON fiber element (level-specific)")
    iv.add_argument("--out")
    iv.set_defaults(fn=cmd_invert)

    sf = sub.add_parser("sample-field", help="sample connection/curvature on a grid")
    sf.add_argument("--level", type=int, required=True, choices=[1, 2, 3])
    sf.add_argument("--realization", choices=["I", "II"], required=True)
    sf.add_argument("--patch", choices=["upper", "lower"], default="upper")
    sf.add_argument("--grid", required=True, help="xI=min:max:steps[,...]")
    sf.add_argument("--format", choices=["csv", "json"], default="csv")
    sf.add_argument("--out")
    sf.set_defaults(fn=cmd_sample_field)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as e:
        sys.stderr.write("usage error: %s\n" % e)
        return 2
    except (hopfmaps.NormalizationError, hopfmaps.PatchError, hopfmaps.ConstraintError,
            hopfmaps.SamplingError, ValueError, TypeError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
