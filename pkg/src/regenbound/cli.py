"""
Command-line entry point: ``regenbound {bound,sweep,plot,verify,render}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
Rationals are passed and printed as exact ``num/den`` strings.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import plot, verify
from .repair_matrix import CaseMismatchError, RenderError, build_region, render_region
from .sweep import CurveKind, sweep_curve
from .tradeoff import (
    BoundError, CodeParams, OperatingPoint, exact_repair_bound, format_rational,
    normalize, rational,
)

OUTPUT_ENV = "REGENBOUND_OUTPUT_DIR"
FORMATS = ("plain", "json", "csv")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: CodeParams
    output_dir: Path
    format: str = "plain"
    cost_weights: Optional[tuple] = None


def _rat(text):
    try:
        return rational(text)
    except (BoundError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _cost(text):
    if text is None:
        return None
    parts = text.split(",") if isinstance(text, str) else list(text)
    if len(parts) != 2:
        raise UsageError(f"cost weights must be 'c1,c2', got {text!r}")
    return tuple(_rat(p) for p in parts)


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return data


def _merge(args, config, keys):
    """Flags win over the config file; returns the merged values."""
    out = {}
    for key in keys:
        value = getattr(args, key, None)
        out[key] = config.get(key) if value is None else value
    return out


def _output_dir(config) -> Path:
    out = Path(os.environ.get(OUTPUT_ENV) or config.get("output_dir") or ".")
    if out.exists() and not (out.is_dir() and os.access(out, os.W_OK)):
        raise UsageError(f"output directory {out} is not writable")
    return out


def _params(values) -> CodeParams:
    missing = [k for k in ("n", "k", "d") if values.get(k) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + m for m in missing))
    try:
        return CodeParams(*(int(values[k]) for k in ("n", "k", "d")))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as f:
        f.write(text)


def _out_path(cfg_dir: Path, name: str) -> Path:
    p = Path(name)
    return p if p.is_absolute() else cfg_dir / p


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def cmd_bound(args) -> int:
    config = _load_config(args.config)
    v = _merge(args, config, ["n", "k", "d", "alpha", "beta", "format", "cost"])
    params = _params(v)
    for key in ("alpha", "beta"):
        if v[key] is None:
            raise UsageError(f"missing --{key}")
    cfg = RunConfig(params, _output_dir(config), v["format"] or "plain", _cost(v["cost"]))
    if cfg.format not in FORMATS:
        raise UsageError(f"format must be one of {', '.join(FORMATS)}")
    pt = OperatingPoint(_rat(v["alpha"]), _rat(v["beta"]))
    res = exact_repair_bound(params, pt)
    fields = res.to_dict()
    if cfg.cost_weights:
        nb = normalize(params, pt, res.b_exact)
        c1, c2 = cfg.cost_weights
        fields["cost"] = format_rational(c1 * nb.alpha_bar + c2 * nb.gamma_bar)
    if cfg.format == "json":
        print(json.dumps(fields, sort_keys=True))
    elif cfg.format == "csv":
        keys = list(fields)
        print(",".join(keys))
        print(",".join(_csv_cell(fields[k]) for k in keys))
    else:
        def show(x):
            return "-" if x is None else str(x)
        print(f"params        n={params.n} k={params.k} d={params.d} "
              f"alpha={format_rational(pt.alpha)} beta={format_rational(pt.beta)}")
        print(f"cut-set       {fields['b_cutset']}")
        print(f"functional    {fields['b_functional']}")
        print(f"exact bound   {fields['b_exact']}")
        print(f"regime        {res.regime.value} (p={res.p}, theta={fields['theta']})")
        print(f"eps0 / eps1   {show(fields['eps0'])} / {show(fields['eps1'])}")
        print(f"q0 / q1       {show(res.q0)} / {show(res.q1)}")
        print(f"improved      {'yes' if res.improved else 'no'}")
        if res.clamped:
            print("note          alpha > d*beta, evaluated at alpha = d*beta")
        if "cost" in fields:
            print(f"cost          {fields['cost']}")
    return 0


def cmd_sweep(args) -> int:
    config = _load_config(args.config)
    v = _merge(args, config, ["n", "k", "d", "B", "points", "kind"])
    params = _params(v)
    if args.normalized:
        if args.B is not None:
            raise UsageError("--normalized and --B are mutually exclusive")
        B = Fraction(params.n)
    else:
        B = _rat(v["B"] if v["B"] is not None else 1)
    points = int(v["points"] if v["points"] is not None else 20)
    if points < 2:
        raise UsageError(f"grid must have at least 2 points, got {points}")
    kind = v["kind"] or "exact"
    kinds = list(CurveKind) if kind == "all" else [CurveKind(kind)]
    rows = []
    for kd in kinds:
        rows.extend(sweep_curve(params, B, points, kd))
    text = plot.write_csv(rows, params.d)
    if args.out:
        _write(_out_path(_output_dir(config), args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_plot(args) -> int:
    try:
        with open(args.input, newline="") as f:
            text = f.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    try:
        rows = plot.read_csv(text)
    except plot.CSVFormatError as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    svg = plot.render_svg(rows, normalized=args.normalized)
    _write(_out_path(_output_dir({}), args.out), svg)
    return 0


def cmd_verify(args) -> int:
    reports = verify.run(args.suite, max_d=args.max_d, fault=args.inject_fault)
    for rep in reports:
        print(rep.summary())
    ok = all(rep.ok for rep in reports)
    print("all checks passed" if ok else "verification FAILED")
    return 0 if ok else 1


def cmd_render(args) -> int:
    params = _params(vars(args))
    try:
        region = build_region(params, args.p, args.case)
        sys.stdout.write(render_region(region))
    except (CaseMismatchError, RenderError) as exc:
        raise UsageError(str(exc)) from None
    print(f"case {region.case.value}: p={region.p} q={region.q} cells={len(region.cells)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="regenbound",
        description="Storage / repair-bandwidth bounds for exact-repair regenerating codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    def code_flags(p, required=False):
        for name in ("n", "k", "d"):
            p.add_argument(f"--{name}", type=int, required=required)

    p = sub.add_parser("bound", help="evaluate the bounds at one operating point")
    code_flags(p)
    p.add_argument("--alpha", help="storage per node, e.g. 8 or 17/2")
    p.add_argument("--beta", help="download per helper")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--cost", help="weights c1,c2 of c1*alpha_bar + c2*gamma_bar")
    p.add_argument("--config", help="JSON file with default values for these flags")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", help="tabulate tradeoff curves as CSV")
    code_flags(p)
    p.add_argument("--B", help="file size (default 1)")
    p.add_argument("--normalized", action="store_true",
                   help="use B = n so raw and normalized columns coincide")
    p.add_argument("--points", type=int, help="number of beta grid points (default 20)")
    p.add_argument("--kind", choices=[k.value for k in CurveKind] + ["all"])
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.add_argument("--config", help="JSON file with default values for these flags")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("plot", help="draw a sweep CSV as SVG")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--normalized", action="store_true", help="plot alpha_bar vs gamma_bar")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", help="run the verification grids")
    p.add_argument("suite", choices=["identities", "props", "all"])
    p.add_argument("--max-d", type=int, default=6, help="largest d in the LP grid")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="print a repair-matrix region")
    code_flags(p, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--case", required=True, choices=["1a", "1b", "2a", "2b"])
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, BoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
