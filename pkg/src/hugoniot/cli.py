"""Command-line front end.

Every subcommand writes plain data files (CSV with 17 significant digits,
JSON for structured output) into ``--out``, which defaults to
``$HUGONIOT_OUTDIR`` or the working directory.  Exit codes: 0 success,
1 computation failure, 2 bad flags.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import math
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import HugoniotError
from .model import (
    ShockCandidate,
    ShockKind,
    State,
    Viscosity,
    energy_Z,
    hugoniot_branches,
    key_points,
    lax_classify,
    shock_speed,
    structure_exists,
)
from .riemann import region_map, sample_array, solve_riemann
from .structure import find_heteroclinic
from .viscous import Grid1D, RunLog, SchemeSettings, compare_to_riemann, evolve, riemann_ic, write_sidecar

OUTDIR_ENV = "HUGONIOT_OUTDIR"
_NUMBER_LIST = re.compile(r"^-?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?(,-?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)*$")


def _fmt(v: float) -> str:
    return f"{v + 0.0:.17g}"  # no negative zero


def _floats(text: str, count: int) -> tuple[float, ...]:
    try:
        vals = tuple(float(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected {count} comma-separated numbers, got {text!r}") from None
    if len(vals) != count or not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"expected {count} finite comma-separated numbers, got {text!r}")
    return vals


def state_arg(text: str) -> State:
    return State(*_floats(text, 2))


def viscosity_arg(text: str) -> Viscosity:
    m1, m2 = _floats(text, 2)
    if m1 <= 0 or m2 <= 0:
        raise argparse.ArgumentTypeError("viscosities must be positive")
    return Viscosity(m1, m2)


def box_arg(text: str) -> tuple[float, float, float, float]:
    x0, x1, y0, y1 = _floats(text, 4)
    if x1 <= x0 or y1 <= y0:
        raise argparse.ArgumentTypeError("box must be xmin,xmax,ymin,ymax with xmin<xmax, ymin<ymax")
    return x0, x1, y0, y1


def range_arg(text: str) -> tuple[float, float]:
    lo, hi = _floats(text, 2)
    if hi <= lo:
        raise argparse.ArgumentTypeError("range must be lo,hi with lo<hi")
    return lo, hi


def real_arg(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be finite")
    return v


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _glue_negative_lists(argv: list[str]) -> list[str]:
    """Attach number lists such as ``-10,14,-9,9`` to the preceding long option."""
    out: list[str] = []
    for tok in argv:
        prev = out[-1] if out else ""
        if tok.startswith("-") and _NUMBER_LIST.match(tok) and prev.startswith("--") and "=" not in prev:
            out[-1] = f"{prev}={tok}"
        else:
            out.append(tok)
    return out


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(v) if isinstance(v, float) else v for v in r])


def _write_json(path: Path, obj) -> None:
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


# --------------------------------------------------------------------------
# commands


def locus_label(c: ShockCandidate) -> str:
    """Lax type of a locus point; undercompressive only where ``Z(u-) > Z(u+)``."""
    kind = lax_classify(c).kind
    if kind is ShockKind.UNDERCOMPRESSIVE and energy_Z(c.u_minus, c.u_plus, c.W) <= energy_Z(c.u_plus, c.u_plus, c.W):
        return "undercompressive-unselected"
    return kind.value


def cmd_locus(args) -> int:
    up, mu = args.uplus, args.mu
    rows = []
    for br in hugoniot_branches(up):
        for x in np.linspace(up[0] - args.span, up[0] + args.span, args.points):
            um = br.state_at(float(x))
            c = ShockCandidate(um, up, br.speed_at(float(x)))
            try:
                verdict = structure_exists(c, mu).verdict.value
            except HugoniotError:
                verdict = "n/a"
            rows.append([br.branch_id.value, float(um[0]), float(um[1]), float(c.W), locus_label(c), verdict])
    _write_csv(args.out / "locus.csv", ["branch", "u1", "u2", "W", "label", "structure"], rows)
    kp = key_points(up, mu)
    _write_csv(args.out / "keypoints.csv", ["name", "u1", "u2"], [[k, float(p[0]), float(p[1])] for k, p in kp.items()])
    print(f"locus of {tuple(up)}: {len(rows)} points, key points {', '.join(k for k, _ in kp.items())}")
    return 0


def cmd_profile(args) -> int:
    W = args.W if args.W is not None else shock_speed(args.uminus, args.uplus)
    prof = find_heteroclinic(args.uminus, args.uplus, W, args.mu)
    meta = {"u_minus": list(args.uminus), "u_plus": list(args.uplus), "W": W, "mu": [args.mu.mu1, args.mu.mu2],
            "found": prof is not None}
    if prof is not None:
        prof.to_csv(args.out / "profile.csv")
        meta |= {"family": prof.family, "samples": len(prof.trajectory.xi)}
    _write_json(args.out / "profile.json", meta)
    if prof is None:
        print(f"no heteroclinic orbit from {tuple(args.uminus)} to {tuple(args.uplus)} at W={W:g}", file=sys.stderr)
        return 1
    print(f"profile found: {meta['samples']} samples{' (one-parameter family)' if prof.family else ''}")
    return 0


def cmd_riemann(args) -> int:
    sol = solve_riemann(args.left, args.right, args.mu)
    _write_json(args.out / "riemann.json", sol.to_dict())
    if args.theta is not None:
        lo, hi = args.theta
    else:
        speeds = [v for w in sol.waves for v in (w.lo, w.hi)] or [0.0]
        pad = 0.25 * (max(speeds) - min(speeds)) + 1.0
        lo, hi = min(speeds) - pad, max(speeds) + pad
    th = np.linspace(lo, hi, args.samples)
    u = sample_array(sol, th)
    _write_csv(args.out / "riemann.csv", ["theta", "u1", "u2"],
               [[float(t), float(a), float(b)] for t, (a, b) in zip(th, u)])
    print(f"region {sol.region.value}{' (boundary)' if sol.boundary else ''}")
    for w in sol.waves:
        where = f"fan [{_fmt(w.lo)}, {_fmt(w.hi)}]" if w.kind.is_fan else f"W={_fmt(w.speed)}"
        print(f"  {w.kind.value}: {tuple(map(float, w.left))} -> {tuple(map(float, w.right))} {where}")
    return 0


def cmd_evolve(args) -> int:
    grid = Grid1D(args.domain[0], args.domain[1], args.cells)
    settings = SchemeSettings(safety=args.safety)
    log = RunLog()
    f0 = riemann_ic(args.left, args.right, grid, args.width)
    f = evolve(f0, args.mu, args.t, settings, log)
    f.to_csv(args.out / "field.csv")
    extra = {"left": list(args.left), "right": list(args.right), "t": args.t, "width": args.width}
    if args.compare:
        extra["l1_error"] = compare_to_riemann(args.left, args.right, args.mu, args.t, grid, args.width, settings)
        print(f"L1 distance to the Riemann solution: {extra['l1_error']:.6e}")
    write_sidecar(args.out / "field.json", grid, args.mu, settings, log, **extra)
    print(f"evolved {grid.n} cells to t={args.t:g} in {len(log.dts)} steps")
    return 0


def cmd_regions(args) -> int:
    xs, ys, labels = region_map(args.right, args.mu, args.box, args.res)
    rows = [[float(x), float(y), labels[j, i].value] for j, y in enumerate(ys) for i, x in enumerate(xs)]
    _write_csv(args.out / "regions.csv", ["uL1", "uL2", "region"], rows)
    counts: dict[str, int] = {}
    for r in rows:
        counts[r[2]] = counts.get(r[2], 0) + 1
    print("cells per region: " + ", ".join(f"{k}:{v}" for k, v in sorted(counts.items())))
    return 0


def cmd_validate(args) -> int:
    from .validation import SUITES

    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    for name in names:
        fn = SUITES[name]
        kw = {"seed": args.seed} if args.seed is not None and "seed" in inspect.signature(fn).parameters else {}
        res = fn(**kw)
        print(res.report(), flush=True)
        ok &= res.passed
    return 0 if ok else 1


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    from .validation import SUITES

    p = argparse.ArgumentParser(prog="hugoniot", description="Wave theory of the u1^3/3 + u1 u2^2 system.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=None, help=f"output directory (default ${OUTDIR_ENV} or .)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("locus", parents=[common], help="Hugoniot locus with classification and key points")
    s.add_argument("--uplus", type=state_arg, required=True)
    s.add_argument("--mu", type=viscosity_arg, required=True)
    s.add_argument("--span", type=real_arg, default=10.0, help="half width in u1 of each branch")
    s.add_argument("--points", type=positive_int, default=401, help="points per branch")
    s.set_defaults(func=cmd_locus)

    s = sub.add_parser("profile", parents=[common], help="viscous shock profile by shooting")
    s.add_argument("--uminus", type=state_arg, required=True)
    s.add_argument("--uplus", type=state_arg, required=True)
    s.add_argument("--W", type=real_arg, default=None, help="shock speed (default from the jump condition)")
    s.add_argument("--mu", type=viscosity_arg, required=True)
    s.set_defaults(func=cmd_profile)

    s = sub.add_parser("riemann", parents=[common], help="exact Riemann solution")
    s.add_argument("--left", type=state_arg, required=True)
    s.add_argument("--right", type=state_arg, required=True)
    s.add_argument("--mu", type=viscosity_arg, required=True)
    s.add_argument("--theta", type=range_arg, default=None, help="sampling range lo,hi of x/t")
    s.add_argument("--samples", type=positive_int, default=801)
    s.set_defaults(func=cmd_riemann)

    s = sub.add_parser("evolve", parents=[common], help="viscous run from Riemann data")
    s.add_argument("--left", type=state_arg, required=True)
    s.add_argument("--right", type=state_arg, required=True)
    s.add_argument("--mu", type=viscosity_arg, required=True)
    s.add_argument("--domain", type=range_arg, default=(-20.0, 20.0))
    s.add_argument("--cells", type=positive_int, default=2000)
    s.add_argument("--t", type=real_arg, default=1.0)
    s.add_argument("--width", type=real_arg, default=0.0, help="tanh smoothing width of the initial step")
    s.add_argument("--safety", type=real_arg, default=0.4)
    s.add_argument("--compare", action="store_true", help="also report the L1 distance to the Riemann solution")
    s.set_defaults(func=cmd_evolve)

    s = sub.add_parser("regions", parents=[common], help="region map of left states")
    s.add_argument("--right", type=state_arg, required=True)
    s.add_argument("--mu", type=viscosity_arg, required=True)
    s.add_argument("--box", type=box_arg, default=(-10.0, 14.0, -9.0, 9.0))
    s.add_argument("--res", type=positive_int, default=400)
    s.set_defaults(func=cmd_regions)

    s = sub.add_parser("validate", help="run a property suite; exit 0 iff it passes")
    s.add_argument("suite", choices=[*SUITES, "all"])
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(func=cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_lists(list(sys.argv[1:] if argv is None else argv)))
    if hasattr(args, "out"):
        args.out = args.out or Path(os.environ.get(OUTDIR_ENV, "."))
        if args.command == "evolve" and args.t <= 0:
            parser.error("--t must be positive")
        if args.command == "evolve" and args.cells < 16:
            parser.error("--cells must be at least 16")
        args.out.mkdir(parents=True, exist_ok=True)
    try:
        return args.func(args)
    except (HugoniotError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
