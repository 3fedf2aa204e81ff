"""Command-line front end.

Subcommands::

    lpqmult report    compute the full bound sandwich for one symbol
    lpqmult validate  run every named example's expected checks
    lpqmult opnorm    empirical operator-norm probe for one symbol

Exit codes: 0 success, 1 validation failures, 2 configuration error,
3 numerical failure.  All outputs are deterministic functions of the
configuration and the seed; repeated runs write byte-identical files.

Symbols are loaded either as a named builtin (see ``lpqmult.catalog``) or
from a JSON file:

    {"kind": "seq", "window": [-4, 4], "values": [0,0,0,1,2,1,0,0,0],
     "decay_declared": true}
    {"kind": "seq", "builtin": "power_blocks_seq", "params": {"r": 2, "K": 10}}
    {"kind": "fun", "grid": [-2.0, -1.0, 0.0, 1.0, 2.0],
     "samples": [0.0, 1.0, 2.0, 1.0, 0.0]}

Complex sequence values may be given as {"re": [...], "im": [...]}.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import bounds, catalog, figures, opnorm, report, validate
from .opnorm import AliasingError
from .symbols import (
    ExponentRangeError,
    SeqSymbol,
    grid_sampled_symbol,
    make_exponents,
)

EXIT_OK = 0
EXIT_CHECK_FAILURES = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(ValueError):
    pass


def _parse_number(text: str) -> float:
    try:
        return float(Fraction(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse number {text!r}") from exc


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ConfigError(f"--param expects key=value, got {item!r}")
        key, _, raw = item.partition("=")
        try:
            val = int(raw)
        except ValueError:
            val = _parse_number(raw)
        out[key] = val
    return out


def _parse_range(text: str, cast=int):
    try:
        lo, _, hi = text.partition(":")
        return cast(_parse_number(lo)), cast(_parse_number(hi))
    except Exception as exc:
        raise ConfigError(f"cannot parse range {text!r} (expected LO:HI)") from exc


def load_symbol_file(path: str):
    with open(path) as fh:
        doc = json.load(fh)
    kind = doc.get("kind")
    if "builtin" in doc:
        ex = catalog.build(doc["builtin"], **doc.get("params", {}))
        return ex.symbol, ex
    if kind == "seq":
        window = doc["window"]
        raw = doc["values"]
        if isinstance(raw, dict):
            vals = np.asarray(raw["re"], dtype=float) + 1j * np.asarray(raw["im"], dtype=float)
        else:
            vals = np.asarray(raw, dtype=float)
        return SeqSymbol(int(window[0]), int(window[1]), vals, bool(doc.get("decay_declared", False))), None
    if kind == "fun":
        return grid_sampled_symbol(doc["grid"], doc["samples"], bool(doc.get("real_valued", True))), None
    raise ConfigError(f"unrecognised symbol document in {path}")


def _resolve_symbol(args):
    """Returns (symbol, example-or-None, source description)."""
    if args.example and args.symbol:
        raise ConfigError("give either --example or --symbol, not both")
    if args.example:
        params = _parse_params(args.param)
        ex = catalog.build(args.example, **params)
        return ex.symbol, ex, f"builtin:{args.example}"
    if args.symbol:
        symbol, ex = load_symbol_file(args.symbol)
        return symbol, ex, f"file:{args.symbol}"
    raise ConfigError("a symbol is required (--example NAME or --symbol FILE)")


def _resolve_exponents(args, example):
    if args.p is not None and args.q is not None:
        p, q = _parse_number(args.p), _parse_number(args.q)
    elif example is not None:
        return example.exponents
    else:
        raise ConfigError("exponents --p and --q are required for file symbols")
    mode = args.mode
    if mode == "auto":
        mode = "hoermander" if (1.0 < p <= 2.0 <= q < math.inf) else "lizorkin"
    return make_exponents(p, q, mode)


# ---------------------------------------------------------------------------
# report


def cmd_report(args) -> int:
    symbol, example, source = _resolve_symbol(args)
    e = _resolve_exponents(args, example)
    kmax = args.kmax if args.kmax is not None else (example.kmax if example else None)
    krange = _parse_range(args.krange) if args.krange else (example.krange if example else None)
    domain = (
        _parse_range(args.domain, cast=float) if args.domain else (example.domain if example else None)
    )
    mesh = args.mesh if args.mesh is not None else 1 / 64

    opnorm_options = None
    if args.opnorm:
        opnorm_options = {"N": args.N, "iters": args.iters, "restarts": args.restarts, "seed": args.seed}

    config = {
        "command": "report",
        "symbol": source,
        "params": dict(sorted((example.parameters if example else {}).items())),
        "p": e.p,
        "q": e.q,
        "mode": e.mode,
        "kmax": kmax,
        "krange": list(krange) if krange else None,
        "domain": list(domain) if domain else None,
        "mesh": mesh,
        "opnorm": opnorm_options,
    }

    if not isinstance(symbol, SeqSymbol) and (krange is None or domain is None):
        raise ConfigError("function symbols need --krange and --domain")

    if e.mode == "hoermander":
        sw = bounds.sandwich(
            symbol, e, kmax=kmax, krange=krange, mesh=mesh, domain=domain, opnorm_options=opnorm_options
        )
        body = sw.to_json()
        per_block = sw.per_block_table
    else:
        # exponents outside the rearrangement-route range: derivative bounds only
        if isinstance(symbol, SeqSymbol):
            if not (symbol.is_real and symbol.decay_declared):
                raise ConfigError(
                    "derivative-variation bounds need a real sequence with decay_declared"
                )
            liz = bounds.lizorkin_upper_seq(symbol, e, kmax)
            liz_classic = bounds.lizorkin_classic_seq(symbol, e)
            table = bounds.lizorkin_block_values_seq(symbol, e, kmax)
        else:
            liz = bounds.lizorkin_upper_fun(symbol, e, krange)
            liz_classic = bounds.lizorkin_classic_fun(symbol, e, domain)
            table = bounds.lizorkin_block_values_fun(symbol, e, krange)
        body = {
            "exponents": {"p": e.p, "q": e.q, "r": e.r, "r_conj": e.r_conj, "mode": e.mode},
            "lower_necessary": None,
            "upper_hoermander_block": None,
            "upper_hoermander_classic": None,
            "upper_lizorkin_dyadic": liz.to_json(),
            "upper_lizorkin_classic": liz_classic.to_json(),
            "empirical_opnorm": None,
            "per_block_table": [[int(k), float(v)] for k, v in table],
            "ratios": {},
        }
        per_block = table

    provenance = {
        "lower_necessary": {"module": "bounds.necessary_lower", "family": "all-intervals"},
        "upper_hoermander_block": {"module": "bounds.hoermander_upper", "pools": "half-blocks"},
        "upper_hoermander_classic": {"module": "bounds.hoermander_classic", "ladder": "exponent-halving"},
        "upper_lizorkin_dyadic": {"module": "bounds.lizorkin_upper", "quad_tol": 1e-4},
        "upper_lizorkin_classic": {"module": "bounds.lizorkin_classic"},
        "empirical_opnorm": {"module": "opnorm.estimate_opnorm", "semantics": "lower bound probe"},
    }
    document = report.report_document(config, body, provenance)

    if args.out:
        report.dump_json(document, args.out)
    else:
        json.dump(document, sys.stdout, indent=2)
        sys.stdout.write("\n")
    if args.block_csv:
        report.dump_block_csv(per_block, args.block_csv)
    if args.figures:
        figures.render_report_figures(document, args.figures)
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args) -> int:
    names = sorted(catalog.REGISTRY)
    if args.only:
        if args.only not in catalog.REGISTRY:
            raise ConfigError(f"unknown example {args.only!r}")
        names = [args.only]
    rows = []
    for name in names:
        ex = catalog.build(name)
        rows.extend(validate.run_example(ex, tolerance=args.tolerance))
    for row in rows:
        print(row.format())
    failures = sum(not r.passed for r in rows)
    print(f"{len(rows) - failures}/{len(rows)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_CHECK_FAILURES


# ---------------------------------------------------------------------------
# opnorm


def cmd_opnorm(args) -> int:
    symbol, example, source = _resolve_symbol(args)
    e = _resolve_exponents(args, example)
    flags = []
    if isinstance(symbol, SeqSymbol):
        reach = max(abs(symbol.window_lo), abs(symbol.window_hi))
        if reach > args.N // 4:
            if example is None:
                raise AliasingError(
                    f"symbol window reach {reach} exceeds N/4 = {args.N // 4}; raise --N"
                )
            symbol = symbol.truncated(-(args.N // 4), args.N // 4)
            flags.append(f"window truncated to +-{args.N // 4} for aliasing guard")
        T = opnorm.make_periodic_multiplier(symbol, args.N)
    else:
        domain = (
            _parse_range(args.domain, cast=float)
            if args.domain
            else (example.domain if example else None)
        )
        if domain is None:
            raise ConfigError("function symbols need --domain for the line model")
        L = 2.0 * max(abs(domain[0]), abs(domain[1]))
        T = opnorm.make_line_multiplier(symbol, args.N, L)
        flags.append(f"line model: freq step {2 * math.pi / L:.6g}, Nyquist {math.pi * args.N / L:.6g}")

    est = opnorm.estimate_opnorm(T, e.p, e.q, iters=args.iters, restarts=args.restarts, seed=args.seed)
    config = {
        "command": "opnorm",
        "symbol": source,
        "params": dict(sorted((example.parameters if example else {}).items())),
        "p": e.p,
        "q": e.q,
        "N": args.N,
        "iters": args.iters,
        "restarts": args.restarts,
        "seed": args.seed,
    }
    body = {"estimate": {**est.to_json(), "model": T.kind, "flags": flags}}
    document = report.report_document(config, body, {"estimate": {"module": "opnorm.estimate_opnorm"}})
    if args.out:
        report.dump_json(document, args.out)
    else:
        json.dump(document, sys.stdout, indent=2)
        sys.stdout.write("\n")
    if args.trajectory:
        report.dump_trajectory_csv(est, args.trajectory)
    if args.figures:
        import os

        os.makedirs(args.figures, exist_ok=True)
        figures.trajectory_figure(est, os.path.join(args.figures, "opnorm_trajectory.png"))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpqmult", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_symbol_args(p):
        p.add_argument("--example", help="builtin example name")
        p.add_argument("--param", action="append", help="builtin parameter key=value (repeatable)")
        p.add_argument("--symbol", help="symbol JSON file")
        p.add_argument("--p", help="Lebesgue exponent p (fractions allowed, e.g. 4/3)")
        p.add_argument("--q", help="Lebesgue exponent q")
        p.add_argument("--mode", choices=["auto", "hoermander", "lizorkin"], default="auto")

    rep = sub.add_parser("report", help="compute the bound sandwich")
    add_symbol_args(rep)
    rep.add_argument("--kmax", type=int, help="largest discrete block index")
    rep.add_argument("--krange", help="continuous block range LO:HI")
    rep.add_argument("--domain", help="function domain A:B")
    rep.add_argument("--mesh", type=float, help="relative block mesh (default 1/64)")
    rep.add_argument("--opnorm", action="store_true", help="include the empirical estimate")
    rep.add_argument("--N", type=int, default=1024)
    rep.add_argument("--iters", type=int, default=200)
    rep.add_argument("--restarts", type=int, default=16)
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--out", help="report JSON path (default stdout)")
    rep.add_argument("--block-csv", help="per-block CSV path")
    rep.add_argument("--figures", help="directory for rendered figures")
    rep.set_defaults(func=cmd_report)

    val = sub.add_parser("validate", help="run the named-example checks")
    val.add_argument("--only", help="run a single example")
    val.add_argument("--tolerance", type=float, help="override quadrature-based tolerances")
    val.set_defaults(func=cmd_validate)

    opn = sub.add_parser("opnorm", help="empirical operator-norm probe")
    add_symbol_args(opn)
    opn.add_argument("--N", type=int, default=1024)
    opn.add_argument("--iters", type=int, default=200)
    opn.add_argument("--restarts", type=int, default=16)
    opn.add_argument("--seed", type=int, default=0)
    opn.add_argument("--domain", help="function domain A:B (line model)")
    opn.add_argument("--out", help="estimate JSON path (default stdout)")
    opn.add_argument("--trajectory", help="trajectory CSV path")
    opn.add_argument("--figures", help="directory for rendered figures")
    opn.set_defaults(func=cmd_opnorm)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ExponentRangeError, AliasingError, KeyError, FileNotFoundError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
