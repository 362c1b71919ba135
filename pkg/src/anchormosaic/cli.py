"""Command-line front end.

Subcommands: ``constants`` prints the closed-form tables, ``simulate`` runs
the Monte Carlo rate estimation, ``verify`` runs one of the identity checks.
Exit codes: 0 success, 1 usage error, 2 numerical or degeneracy error,
3 statistical-check failure. The environment variable ANCHORMOSAIC_SEED
overrides --seed. JSON reports are byte-stable for fixed flags (volatile
fields such as runtimes are omitted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import constants, experiments, sampler
from .constants import DimensionConfig
from .errors import ConvergenceError, DegeneracyError, IterationLimitError, MosaicError

__all__ = ["main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_STATISTICAL = 3

_SCHEMA_VERSION = 1
_CSV_HEADER = "type,ell,m,count,rate,se,predicted,z"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # noqa: D102
        raise _UsageError(message)


def _parse_n_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",")]


def _build_parser() -> _Parser:
    parser = _Parser(prog="anchormosaic", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_const = sub.add_parser("constants", help="closed-form interval and simplex constants")
    p_const.add_argument("--k", type=int, required=True, choices=(1, 2))
    p_const.add_argument("--n", type=str, required=True, help="ambient dimensions, e.g. 2..9 or 3,5,7")
    p_const.add_argument("--r0", type=float, default=None, help="radius threshold for the expectation column")
    p_const.add_argument("--rho", type=float, default=1.0)
    p_const.add_argument("--out", type=str, default=None)
    p_const.add_argument("--format", choices=("csv", "json"), default="json")

    p_sim = sub.add_parser("simulate", help="Monte Carlo interval/simplex rates")
    p_sim.add_argument("--n", type=int, required=True)
    p_sim.add_argument("--k", type=int, required=True, choices=(1, 2))
    p_sim.add_argument("--rho", type=float, default=1.0)
    p_sim.add_argument("--window", type=float, required=True, help="k-volume of the counting window")
    p_sim.add_argument("--buffer", type=float, default=None, help="sampling margin (default: radius quantile 1-1e-6)")
    p_sim.add_argument("--r0", type=float, default=None)
    p_sim.add_argument("--reps", type=int, default=10)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", type=str, default=None)
    p_sim.add_argument("--format", choices=("csv", "json"), default="json")

    p_ver = sub.add_parser("verify", help="identity and distribution checks")
    p_ver.add_argument("kind", choices=("bp", "angle", "gamma-lemma", "beta-law"))
    p_ver.add_argument("--n", type=int, default=2)
    p_ver.add_argument("--k", type=int, default=1)
    p_ver.add_argument("--m", type=int, default=1)
    p_ver.add_argument("--samples", type=float, default=1e6)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--test-function", choices=("gaussian", "bump"), default="gaussian")
    p_ver.add_argument("--out", type=str, default=None)
    return parser


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _emit(payload: dict, rows: list[dict], out: str | None, fmt: str) -> None:
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        lines = [_CSV_HEADER]
        for row in rows:
            cells = [
                row[key] for key in ("type", "ell", "m", "count", "rate", "se", "predicted", "z")
            ]
            lines.append(",".join("" if cell == "" else repr(cell) if isinstance(cell, float) else str(cell) for cell in cells))
        text = "\n".join(lines) + "\n"
    _write(text, out)


def _cmd_constants(args: argparse.Namespace) -> int:
    ns = _parse_n_range(args.n)
    types = constants.valid_interval_types(args.k)
    table: dict[str, dict[str, float]] = {}
    rows: list[dict] = []
    for n in ns:
        cfg = DimensionConfig(n=n, k=args.k, rho=args.rho)
        norm = args.rho ** (args.k / n)  # expectations per unit rho^(k/n) |R|
        entry: dict[str, float] = {}
        for t in types:
            value = constants.interval_constant(t, args.k, n)
            entry[f"C[{t.ell},{t.m}]"] = value
            if args.r0 is not None:
                entry[f"E[c({t.ell},{t.m})](r0)"] = (
                    constants.expected_interval_count(t, cfg, area=1.0, r0=args.r0) / norm
                )
        for j in range(args.k + 1):
            entry[f"D[{j}]"] = constants.simplex_constant(j, args.k, n)
            if args.r0 is not None:
                entry[f"E[d({j})](r0)"] = (
                    constants.expected_simplex_count(j, cfg, area=1.0, r0=args.r0) / norm
                )
        table[str(n)] = entry
        for t in types:
            rows.append(
                {
                    "type": "interval", "ell": t.ell, "m": t.m, "count": n,
                    "rate": entry.get(f"E[c({t.ell},{t.m})](r0)", ""),
                    "se": "", "predicted": entry[f"C[{t.ell},{t.m}]"], "z": "",
                }
            )
    payload = {
        "schema_version": _SCHEMA_VERSION,
        "kind": "constants",
        "k": args.k,
        "rho": args.rho,
        "r0": args.r0,
        "table": table,
    }
    _emit(payload, rows, args.out, args.format)
    return EXIT_OK


def _cmd_simulate(args: argparse.Namespace, seed: int) -> int:
    side = args.window ** (1.0 / args.k)
    window = tuple((0.0, side) for _ in range(args.k))
    cfg = sampler.SamplingConfig(
        n=args.n, rho=args.rho, window=window, buffer=1.0, seed=seed
    )
    buffer = args.buffer if args.buffer is not None else sampler.choose_buffer(cfg, 1.0 - 1e-6)
    cfg = sampler.SamplingConfig(
        n=args.n, rho=args.rho, window=window, buffer=buffer, seed=seed
    )
    report = experiments.estimate_interval_rates(cfg, replicates=args.reps, r0=args.r0)
    text = (
        experiments.report_to_json(report)
        if args.format == "json"
        else experiments.report_to_csv(report)
    )
    _write(text, args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, seed: int) -> int:
    samples = int(args.samples)
    if args.kind == "bp":
        check = experiments.verify_bp_identity(
            args.n, args.k, args.m, test_function=args.test_function,
            samples=samples, seed=seed,
        )
        ok = check.overlap
        payload = {
            "kind": "verify-bp",
            "n": args.n, "k": args.k, "m": args.m,
            "samples": samples,
            "left": check.left, "left_ci": list(check.left_ci),
            "right": check.right, "right_ci": list(check.right_ci),
            "analytic": check.analytic,
            "ci_overlap": ok,
        }
    elif args.kind == "angle":
        check = experiments.verify_angle_integral(args.n)
        ok = check.abs_error <= 1e-8
        payload = {
            "kind": "verify-angle", "n": args.n,
            "quadrature": check.quadrature, "closed_form": check.closed_form,
            "abs_error": check.abs_error, "pass": ok,
        }
    elif args.kind == "gamma-lemma":
        check = experiments.verify_gamma_lemma(draws=max(samples, 100) if samples < 10**4 else 100, seed=seed)
        ok = check.passed
        payload = {
            "kind": "verify-gamma-lemma", "draws": check.draws,
            "max_rel_error": check.max_rel_error, "tolerance": check.tolerance,
            "pass": ok,
        }
    else:  # beta-law
        check = experiments.verify_beta_projection_law(args.n, args.k, samples=samples, seed=seed)
        ok = check.passed
        payload = {
            "kind": "verify-beta-law", "n": args.n, "k": args.k, "samples": samples,
            "p_half_dims": check.p_half_dims, "p_fraction_dims": check.p_fraction_dims,
            "pass": ok,
        }
    payload["schema_version"] = _SCHEMA_VERSION
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_STATISTICAL


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    seed = getattr(args, "seed", 0)
    env_seed = os.environ.get("ANCHORMOSAIC_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    try:
        if args.command == "constants":
            return _cmd_constants(args)
        if args.command == "simulate":
            return _cmd_simulate(args, seed)
        return _cmd_verify(args, seed)
    except (DegeneracyError, ConvergenceError, IterationLimitError, MosaicError,
            ValueError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
