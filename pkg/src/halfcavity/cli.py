"""Command-line front end.

    halfcavity amplitude --gamma 1 --td 1 --phi 0 --tmax 4 --steps 4096 --method both --out trace.csv
    halfcavity classify  --gamma 1 --td 1 --phi 3.14159
    halfcavity threshold --phi 1.5707963268 --out -
    halfcavity map       --phi-points 361 --u-points 300 --u-max 3 --format svg --out fig1.svg
    halfcavity witness   --gamma 1 --td 1 --phi 0 --probe plus_minus
    halfcavity verify    --profile fast

Exit codes: 0 success, 1 numeric failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import acceptance, svg
from .analytic import amplitude_series
from .channel import Probe, blp_witness
from .classifier import Verdict, classify, classify_bruteforce, region_map, threshold_at, threshold_curve
from .core import TWO_PI, HalfCavityError, Params, TimeGrid, uniform_axis
from .dde import IntegratorConfig, integrate

SCHEMA = "# schema=1"
FORMATS = {
    "amplitude": ("csv", "json"),
    "classify": ("json", "csv"),
    "threshold": ("json", "csv", "svg"),
    "map": ("csv", "json", "svg"),
    "witness": ("json", "csv"),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        # one line, no usage dump
        self.exit(2, f"{self.prog}: error: {message}\n")


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return format(x, ".17g")


def to_json(obj) -> str:
    """JSON with keys in insertion order and 17-significant-digit floats."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{to_json(str(k))}:{to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(to_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        import json
        return json.dumps(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_csv(header: Sequence[str], rows) -> str:
    def cell(v) -> str:
        if isinstance(v, (bool, np.bool_)):
            return "1" if v else "0"
        if isinstance(v, (float, np.floating)):
            return fmt_float(v)
        return "" if v is None else str(v)

    lines = [SCHEMA, ",".join(header)]
    lines += [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


# -- argument types ---------------------------------------------------------

def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite, got {text!r}")
    return value


def _nonneg(text: str) -> float:
    value = _finite(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return value


def _positive(text: str) -> float:
    value = _finite(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text!r}")
    return value


def _int_at_least(lo: int):
    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
        if value < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {text!r}")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="halfcavity", description="Emission of an atom in front of a mirror: "
                     "amplitudes, non-Markovianity on [0, 2 t_d], threshold diagram.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def physical(sp, need_gamma_positive: bool = False):
        sp.add_argument("--gamma", type=_positive if need_gamma_positive else _nonneg, required=True,
                        help="bare emission rate")
        sp.add_argument("--td", type=_nonneg, required=True, help="round-trip delay t_d")
        sp.add_argument("--phi", type=_finite, required=True, help="round-trip phase in radians")

    def output(sp, command):
        sp.add_argument("--out", default="-", help="output path, '-' for stdout")
        sp.add_argument("--format", choices=("csv", "json", "svg"), default=None,
                        help=f"default: from --out suffix, else {FORMATS[command][0]}")

    sp = sub.add_parser("amplitude", help="eps(t) from the series and/or the RK4 integrator")
    physical(sp)
    sp.add_argument("--tmax", type=_positive, required=True)
    sp.add_argument("--steps", type=_int_at_least(16), default=1024, help="RK4 steps per delay")
    sp.add_argument("--method", choices=("analytic", "dde", "both"), default="both")
    output(sp, "amplitude")

    sp = sub.add_parser("classify", help="window verdict for one parameter point")
    physical(sp, need_gamma_positive=True)
    sp.add_argument("--bruteforce", type=_int_at_least(64), default=None, metavar="N",
                    help="use the dense-scan oracle with N samples per interval")
    output(sp, "classify")

    sp = sub.add_parser("threshold", help="threshold u* = gamma t_d at one phase or along a phase grid")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--phi", type=_finite)
    group.add_argument("--phi-points", type=_int_at_least(2))
    sp.add_argument("--tol", type=_positive, default=1e-10)
    sp.add_argument("--u-max", type=_positive, default=3.0)
    sp.add_argument("--jobs", type=_int_at_least(1), default=None)
    output(sp, "threshold")

    sp = sub.add_parser("map", help="region map over phi in [0, 2 pi], u in (0, u_max]")
    sp.add_argument("--phi-points", type=_int_at_least(2), default=361)
    sp.add_argument("--u-points", type=_int_at_least(2), default=300)
    sp.add_argument("--u-max", type=_positive, default=3.0)
    sp.add_argument("--jobs", type=_int_at_least(1), default=None)
    output(sp, "map")

    sp = sub.add_parser("witness", help="trace-distance witness over [0, 2 t_d]")
    physical(sp)
    sp.add_argument("--probe", choices=[p.value for p in Probe], default=Probe.PLUS_MINUS.value)
    sp.add_argument("--n-steps", type=_int_at_least(256), default=4096)
    output(sp, "witness")

    sp = sub.add_parser("verify", help="run the acceptance criteria")
    sp.add_argument("--profile", choices=sorted(acceptance.PROFILES), default="fast")
    return parser


def _resolve_format(args) -> str:
    allowed = FORMATS[args.command]
    fmt = args.format
    if fmt is None and args.out != "-":
        suffix = Path(args.out).suffix.lstrip(".").lower()
        fmt = suffix if suffix in ("csv", "json", "svg") else None
    fmt = fmt or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"argument --format: {fmt} is not available for {args.command}")
    return fmt


def _jobs(args) -> int:
    if args.jobs is not None:
        return args.jobs
    return os.cpu_count() or 1


def _verdict_dict(p: Params, v: Verdict) -> dict:
    return {
        "gamma": p.gamma, "td": p.t_delay, "phi": p.phi, "u": p.u,
        "window": v.window, "markovian": v.markovian,
        "condition": v.satisfied_condition.value, "witness_x": v.witness_x,
        "extremal_derivative": v.extremal_derivative,
    }


def cmd_amplitude(args, fmt: str) -> str:
    p = Params(args.gamma, args.td, args.phi)
    cfg = IntegratorConfig(t_max=args.tmax, steps_per_delay=args.steps)
    if args.method == "analytic":
        if p.t_delay > 0:
            n = math.ceil(args.tmax * args.steps / p.t_delay - 1e-9)
            grid = TimeGrid(0.0, n * p.t_delay / args.steps, n + 1)
        else:
            grid = TimeGrid(0.0, args.tmax, args.steps + 1)
        times, dde_vals = grid.points(), None
    else:
        trace = integrate(p, cfg)
        times, dde_vals = trace.times, trace.values
    ana = None if args.method == "dde" else np.asarray(amplitude_series(p, times), dtype=complex)

    header = ["t"]
    if ana is not None:
        header += ["re_a", "im_a"]
    if dde_vals is not None:
        header += ["re_d", "im_d"]
    header += ["abs_a"] if ana is not None else ["abs_d"]
    rows = []
    for k, t in enumerate(times):
        row = [t]
        if ana is not None:
            row += [ana[k].real, ana[k].imag]
        if dde_vals is not None:
            row += [dde_vals[k].real, dde_vals[k].imag]
        row.append(abs(ana[k]) if ana is not None else abs(dde_vals[k]))
        rows.append(row)
    if fmt == "csv":
        return to_csv(header, rows)
    return to_json({"gamma": p.gamma, "td": p.t_delay, "phi": p.phi, "method": args.method,
                    "columns": header, "rows": rows})


def cmd_classify(args, fmt: str) -> str:
    p = Params(args.gamma, args.td, args.phi)
    v = classify(p) if args.bruteforce is None else classify_bruteforce(p, args.bruteforce)
    d = _verdict_dict(p, v)
    if fmt == "csv":
        return to_csv(list(d), [list(d.values())])
    return to_json(d) + "\n"


def cmd_threshold(args, fmt: str) -> str:
    if args.phi is not None:
        curve = [threshold_at(args.phi, args.tol, args.u_max)]
    else:
        curve = threshold_curve(uniform_axis(0.0, TWO_PI, args.phi_points), args.tol, args.u_max, _jobs(args))
    if fmt == "svg":
        return svg.render_threshold(curve, args.u_max)
    rows = [{"phi": tp.phi, "u_star": tp.u_star, "crossings": tp.crossings} for tp in curve]
    if fmt == "csv":
        return to_csv(["phi", "u_star", "crossings"], [list(r.values()) for r in rows])
    return to_json(rows[0] if args.phi is not None else rows) + "\n"


def cmd_map(args, fmt: str) -> str:
    jobs = _jobs(args)
    rmap = region_map(args.phi_points, args.u_points, args.u_max, jobs=jobs)
    if fmt == "svg":
        curve = threshold_curve(rmap.phi_axis, 1e-10, args.u_max, jobs)
        return svg.render_map(rmap, curve)
    rows = [[phi, u, cell.markovian, cell.satisfied_condition.value]
            for phi, row in zip(rmap.phi_axis, rmap.cells)
            for u, cell in zip(rmap.u_axis, row)]
    if fmt == "csv":
        return to_csv(["phi", "u", "markovian", "condition"], rows)
    return to_json({"window": "window-[0,2t_d]", "phi_axis": list(rmap.phi_axis), "u_axis": list(rmap.u_axis),
                    "markovian": rmap.markovian().astype(int).tolist(),
                    "condition": [[c.satisfied_condition.value for c in row] for row in rmap.cells]}) + "\n"


def cmd_witness(args, fmt: str) -> str:
    p = Params(args.gamma, args.td, args.phi)
    rep = blp_witness(p, Probe(args.probe), args.n_steps)
    d = {"gamma": p.gamma, "td": p.t_delay, "phi": p.phi, "probe": args.probe,
         "window": "window-[0,2t_d]", "nm_measure": rep.nm_measure, "markovian": rep.markovian}
    if fmt == "csv":
        return to_csv(list(d), [list(d.values())])
    return to_json(d) + "\n"


COMMANDS = {
    "amplitude": cmd_amplitude,
    "classify": cmd_classify,
    "threshold": cmd_threshold,
    "map": cmd_map,
    "witness": cmd_witness,
}


def _write(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    if args.command == "verify":
        results = acceptance.run_all(args.profile)
        sys.stdout.write(acceptance.format_report(results, args.profile))
        return 0 if all(r.passed for r in results) else 1

    try:
        fmt = _resolve_format(args)
        text = COMMANDS[args.command](args, fmt)
    except UsageError as exc:
        sys.stderr.write(f"halfcavity {args.command}: error: {exc}\n")
        return 2
    except (HalfCavityError, ArithmeticError) as exc:
        sys.stderr.write(f"halfcavity {args.command}: numeric failure: {exc}\n")
        return 1
    try:
        _write(text, args.out)
    except OSError as exc:
        sys.stderr.write(f"halfcavity {args.command}: error: argument --out: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())
