"""Command-line front end.

Exit status: 0 on success, 2 when an analysis ran but is partial or
inconclusive (uncertified flats, exhausted search budget), 1 on bad input.
Every error line carries a diagnostic code in brackets.
"""

import argparse
import json
import sys
import warnings
from pathlib import Path

from . import __version__
from .annihilators import DEFAULT_MULTIPLIER_BOUND, find_annihilators, search_special_annihilator
from .configurations import PeriodizerSet, TorusConfig, is_tiling
from .expansivity import (
    DEFAULT_MAX_DIM,
    DEFAULT_RADIUS_SCHEDULE,
    DimensionGuardError,
    certify_all,
    certify_directions,
)
from .lattice_poly import LaurentPoly
from .tiles import DEFAULT_NODE_BUDGET, Tile, box_minus_corner, char_poly, enumerate_torus_tilings, lee_sphere
from .verify import ReportError, check_report

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL = 0, 1, 2

SCHEMAS = """\
JSON formats (all integer-valued, row-major):
  polynomial  {"dim": d, "terms": [{"exp": [e1..ed], "coef": c}, ...]}
              duplicate exponents are rejected
  tile/shape  {"dim": d, "cells": [[u1..ud], ...]}
  torus       {"dims": [n1..nd], "values": [v, ...]}        (n1*...*nd values)
  window      torus fields plus "lo": [..], "hi": [..]      (dims = hi-lo+1)
  report      written by `analyze`; re-checked by `verify-certificate`

exit status: 0 success, 1 input error, 2 partial/inconclusive result
diagnostic codes: E_IO, E_JSON, E_SCHEMA, E_OPTION, E_DIM_GUARD, E_BUDGET,
                  E_CERT_INVALID, W_PARTIAL, W_EMPTY
"""


class CliError(Exception):
    def __init__(self, code, message, status=EXIT_INPUT):
        super().__init__(message)
        self.code = code
        self.status = status


def _dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(obj, out):
    text = _dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError("E_IO", f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError("E_JSON", f"{path}: {exc}") from None


def _parse(loader, path):
    data = _load_json(path)
    try:
        return loader(data)
    except (ValueError, TypeError) as exc:
        raise CliError("E_SCHEMA", f"{path}: {exc}") from None


def _load_periodizer(data):
    # a tile file stands for its characteristic polynomial
    if isinstance(data, dict) and "cells" in data:
        return char_poly(Tile.from_json(data))
    return LaurentPoly.from_json(data)


def _int_list(text, sep=","):
    try:
        return [int(x) for x in text.split(sep) if x.strip()]
    except ValueError:
        raise CliError("E_OPTION", f"expected integers separated by {sep!r}, got {text!r}") from None


def _diag(code, message):
    print(f"algshift: [{code}] {message}", file=sys.stderr)


# --- commands ---------------------------------------------------------------


def cmd_tile(args):
    if args.kind == "lee":
        if args.d is None or args.r is None:
            raise CliError("E_OPTION", "tile lee needs --d and --r")
        if args.d < 1 or args.r < 0:
            raise CliError("E_OPTION", "need --d >= 1 and --r >= 0")
        tile = lee_sphere(args.d, args.r)
    else:
        if not args.sizes:
            raise CliError("E_OPTION", "tile box-minus-corner needs side lengths")
        try:
            tile = box_minus_corner(*args.sizes)
        except ValueError as exc:
            raise CliError("E_OPTION", str(exc)) from None
    _emit(tile.to_json(), args.out)
    return EXIT_OK


def cmd_tilings(args):
    tile = _parse(Tile.from_json, args.tile)
    dims = _int_list(args.torus, "x")
    if len(dims) != tile.dim or any(n < 1 for n in dims):
        raise CliError("E_OPTION", f"torus {args.torus!r} does not match tile dimension {tile.dim}")
    if args.limit is not None and args.limit < 1:
        raise CliError("E_OPTION", "--limit must be positive")
    res = enumerate_torus_tilings(tile, dims, limit=args.limit, node_budget=args.node_budget)
    verified = [is_tiling(c, tile) for c in res.tilings]
    out = {
        "tile": tile.to_json(),
        "torus": list(res.dims),
        "count": res.count,
        "exhaustive": res.exhaustive,
        "budget_exhausted": res.budget_exhausted,
        "nodes": res.nodes,
        "diagnostic": res.diagnostic,
        "all_verified": all(verified),
        "tilings": [c.to_json() for c in res.tilings],
    }
    _emit(out, args.out)
    if not all(verified):
        raise CliError("E_CERT_INVALID", "a reported tiling failed the c * f_D = 1 check")
    if res.budget_exhausted:
        _diag("E_BUDGET", res.diagnostic)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_annihilate(args):
    config = _parse(TorusConfig.from_json, args.config)
    shape = _parse(Tile.from_json, args.shape)
    if shape.dim != config.dim:
        raise CliError("E_SCHEMA", "shape and configuration dimensions differ")
    if args.bound < 1:
        raise CliError("E_OPTION", "--bound must be at least 1")
    basis = find_annihilators(config, shape.cells)
    out = basis.to_json()
    status = EXIT_OK
    if args.special:
        special = {"bound": args.bound, "status": "no-annihilator-in-shape", "vectors": None, "from_basis": None}
        for k, g in enumerate(basis.basis):
            s = search_special_annihilator(config, g, args.bound)
            if s is not None:
                special.update(status="verified", vectors=[list(t) for t in s.vectors], from_basis=k)
                break
            special["status"] = "not-found-under-bound"
        out["special"] = special
        if special["status"] != "verified":
            _diag("W_PARTIAL", f"special annihilator: {special['status']}")
            status = EXIT_PARTIAL
    _emit(out, args.out)
    return status


def cmd_analyze(args):
    polys = [_parse(_load_periodizer, p) for p in args.periodizers]
    try:
        fs = PeriodizerSet(polys)
    except ValueError as exc:
        raise CliError("E_SCHEMA", str(exc)) from None
    schedule = _int_list(args.radius_schedule)
    if not schedule or any(r < 0 for r in schedule):
        raise CliError("E_OPTION", "radius schedule must be non-negative integers")
    if args.direction:
        dirs = [_int_list(d) for d in args.direction]
        if any(len(u) != fs.dim or not any(u) for u in dirs):
            raise CliError("E_OPTION", f"directions must be nonzero vectors of length {fs.dim}")
        report = certify_directions(fs, dirs, schedule)
    else:
        try:
            report = certify_all(fs, schedule, max_dim=args.max_dim)
        except DimensionGuardError as exc:
            raise CliError("E_DIM_GUARD", f"{exc}; raise --max-dim or pass --direction") from None
    report.provenance = {"tool": "algshift", "version": __version__}
    data = report.to_json()
    _emit(data, args.report)
    counts = data["counts"]
    print(
        f"flats: {len(data['flats'])}  singleton: {counts['singleton-level']}  "
        f"certificate: {counts['certificate']}  uncertified: {counts['uncertified']}  "
        f"conclusion: {data['conclusion']}",
        file=sys.stderr,
    )
    if data["conclusion"] != "strongly-periodic":
        _diag("W_PARTIAL", "conclusion is partial")
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_verify(args):
    data = _load_json(args.report)
    if isinstance(data, dict) and data.get("flats") == []:
        _diag("W_EMPTY", "report has no flats; vacuously valid")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            ok, problems = check_report(data)
    except ReportError as exc:
        raise CliError("E_SCHEMA", str(exc)) from None
    for p in problems:
        _diag("E_CERT_INVALID", p)
    print("valid" if ok else "INVALID")
    return EXIT_OK if ok else EXIT_INPUT


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 means "partial" here
    def error(self, message):
        self.print_usage(sys.stderr)
        _diag("E_OPTION", message)
        sys.exit(EXIT_INPUT)


def build_parser():
    parser = _Parser(
        prog="algshift",
        description="Expansivity certificates for algebraic subshifts given by periodizers.",
        epilog=SCHEMAS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"algshift {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tile", help="write a tile JSON", epilog=SCHEMAS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("kind", choices=["lee", "box-minus-corner"])
    p.add_argument("sizes", nargs="*", type=int, help="side lengths for box-minus-corner")
    p.add_argument("--d", type=int, help="dimension of the Lee sphere")
    p.add_argument("--r", type=int, help="radius of the Lee sphere")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("tilings", help="enumerate tilings of a torus", epilog=SCHEMAS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--tile", required=True)
    p.add_argument("--torus", required=True, help="dimensions such as 5x5")
    p.add_argument("--limit", type=int)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_tilings)

    p = sub.add_parser("annihilate", help="integer annihilators with a given support shape", epilog=SCHEMAS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--config", required=True, help="torus JSON")
    p.add_argument("--shape", required=True, help="shape JSON (allowed -Supp)")
    p.add_argument("--special", action="store_true", help="also search a product of difference binomials")
    p.add_argument("--bound", type=int, default=DEFAULT_MULTIPLIER_BOUND)
    p.add_argument("--out")
    p.set_defaults(func=cmd_annihilate)

    p = sub.add_parser("analyze", help="certify expansivity of every hyperplane", epilog=SCHEMAS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--periodizers", nargs="+", required=True, help="polynomial or tile JSON files")
    p.add_argument("--radius-schedule", default=",".join(map(str, DEFAULT_RADIUS_SCHEDULE)))
    p.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    p.add_argument("--direction", action="append", help="analyze only this direction, e.g. 1,1,1,1 (repeatable)")
    p.add_argument("--report", help="report output file (default stdout)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify-certificate", help="re-check every verdict in a report", epilog=SCHEMAS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        _diag(exc.code, str(exc))
        return exc.status


if __name__ == "__main__":
    sys.exit(main())
