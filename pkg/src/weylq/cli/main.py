"""``weylq`` command line: verify, eval, show.

Exit codes: 0 success, 1 a check failed (or evaluation failed), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence, TextIO

from ..exactalg.serialize import ratfunc_to_json
from ..identities import SUITES, expand_suites, run_suites
from ..rootdata import RootDataError, dump, root_datum
from ..ymring import Context, F_formula, Mode, N_set, sigma_range
from .evaluate import EvalError, RunConfig, eval_expr
from .parser import ParseError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit; we map to exit code 2 ourselves
        raise UsageError(message)


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window must be LO,HI") from None
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", dest="family", required=True, choices=list("ABCDEFG"))
    common.add_argument("--rank", type=int, required=True)
    common.add_argument("--m", type=int, default=2)
    common.add_argument("--mode", choices=[m.value for m in Mode], default=None)
    common.add_argument("--json", action="store_true")
    common.add_argument("--window", type=_window, default=None, help="infinite-ring window LO,HI")

    parser = _Parser(prog="weylq", description="Weyl group actions on rational function fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--equality", choices=["exact", "randomized"], default="exact")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=16)
    v.add_argument("--suite", default="all", help=f"comma list of {', '.join(SUITES)}, all")

    e = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    e.add_argument("--expr", required=True)

    sub.add_parser("show", parents=[common], help="dump the root datum and the grid")
    return parser


def config_from(args: argparse.Namespace) -> RunConfig:
    kwargs = dict(
        family=args.family,
        rank=args.rank,
        m=args.m,
        mode=Mode(args.mode) if args.mode else None,
        json=args.json,
    )
    if args.window is not None:
        kwargs["window"] = args.window
    if args.command == "verify":
        kwargs.update(
            equality=args.equality,
            seed=args.seed,
            trials=args.trials,
            suites=args.suite.split(","),
        )
    try:
        cfg = RunConfig(**kwargs)
        root_datum(cfg.family, cfg.rank)
    except (ValueError, RootDataError) as exc:
        raise UsageError(str(exc)) from None
    return cfg


def time_units(ctx: Context) -> str:
    d = ctx.datum.d
    return f"time index t counts units of d = {d}: t <-> n = t*{d}; periodic times are read mod cm = {ctx.cm}"


def cmd_verify(cfg: RunConfig, out: TextIO) -> int:
    try:
        names = expand_suites(cfg.suites)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None
    ctx = cfg.context()
    reports = run_suites(ctx, names, cfg.eq(), cfg.mode)
    reports.sort(key=lambda r: r.sort_key())
    if cfg.json:
        json.dump([r.to_json() for r in reports], out, indent=1)
        out.write("\n")
    else:
        out.write(f"# {ctx.datum.lie_type} m={cfg.m}; {time_units(ctx)}\n")
        for r in reports:
            out.write(r.line() + "\n")
        fails = sum(r.status == "fail" for r in reports)
        skips = sum(r.status == "skipped" for r in reports)
        out.write(f"# {len(reports)} checks: {len(reports) - fails - skips} pass, {fails} fail, {skips} skipped\n")
    return EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_OK


def cmd_eval(cfg: RunConfig, source: str, out: TextIO) -> int:
    value = eval_expr(cfg, source)
    if cfg.json:
        json.dump({"expr": source, "value": ratfunc_to_json(value)}, out)
        out.write("\n")
    else:
        out.write(value.render() + "\n")
    return EXIT_OK


def show_data(cfg: RunConfig) -> dict:
    ctx = cfg.context(Mode.FULL)
    datum = ctx.datum
    return {
        "type": str(datum.lie_type),
        "cartan": [list(r) for r in datum.cartan],
        "d_i": [str(datum.d_i(i)) for i in datum.nodes],
        "d": str(datum.d),
        "d_prime": str(datum.d_prime),
        "c": datum.c,
        "e": list(datum.d_units),
        "coxeter": [list(r) for r in datum.coxeter],
        "m": cfg.m,
        "grid_size": ctx.grid_size,
        "F": {str(i): F_formula(datum, i) for i in datum.nodes},
        "N": {f"{i},{s}": list(N_set(ctx, i, s)) for i in datum.nodes for s in sigma_range(ctx, i)},
        "time_units": time_units(ctx),
    }


def cmd_show(cfg: RunConfig, out: TextIO) -> int:
    data = show_data(cfg)
    if cfg.json:
        json.dump(data, out, indent=1)
        out.write("\n")
        return EXIT_OK
    ctx = cfg.context(Mode.FULL)
    lines = [dump(ctx.datum), f"m = {cfg.m}", f"grid size c*m*l = {data['grid_size']}", data["time_units"]]
    lines += [f"F_{i}(t) = {formula}" for i, formula in data["F"].items()]
    lines += [f"N_{{{key}}} = {{{', '.join(map(str, members))}}}" for key, members in data["N"].items()]
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from(args)
        if args.command == "verify":
            return cmd_verify(cfg, out)
        if args.command == "eval":
            try:
                return cmd_eval(cfg, args.expr, out)
            except ParseError as exc:
                raise UsageError(f"syntax error at {exc}") from None
            except EvalError as exc:
                err.write(f"weylq: evaluation failed {exc}\n")
                return EXIT_FAIL
        return cmd_show(cfg, out)
    except UsageError as exc:
        err.write(f"weylq: error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
