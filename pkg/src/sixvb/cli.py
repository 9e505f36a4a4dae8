"""Command-line front end.

Subcommands: validate | compute | verify | bench.  Exit codes are a stable
contract: 0 for success or agreement, 1 for disagreement, validation
violations or identity failures, 2 for input errors.  The BPBA_THREADS
environment variable caps worker threads for config sweeps and verify
draws.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import DegenerateSpecError, PoleError
from .exact import format_rational
from .lattice import (
    ExternalConfig,
    LatticeSpec,
    all_configs,
    reference_config,
    spec_from_dict,
    validate_spec,
)
from .pipeline import METHODS, compute_report, report_to_dict
from .sampling import random_ice_config, random_spec
from .verify import SUITES, run_suites

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2


def _load_spec(path: str) -> LatticeSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        return spec_from_dict(data)
    except OSError as exc:
        raise SystemExit(_input_error(f"cannot read {path}: {exc}"))
    except (ValueError, ZeroDivisionError) as exc:
        raise SystemExit(_input_error(f"malformed lattice file {path}: {exc}"))


def _input_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INPUT


def _parse_labels(text: str, n: int, what: str) -> tuple:
    try:
        labels = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise SystemExit(_input_error(f"{what} must be a comma list of 1/2, got {text!r}"))
    if len(labels) != n or any(s not in (1, 2) for s in labels):
        raise SystemExit(_input_error(f"{what} must list {n} labels from {{1,2}}"))
    return labels


def cmd_validate(args) -> int:
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        spec = spec_from_dict(data)
    except OSError as exc:
        return _input_error(f"cannot read {args.spec}: {exc}")
    except (ValueError, ZeroDivisionError) as exc:
        return _input_error(f"malformed lattice file {args.spec}: {exc}")
    report = validate_spec(spec)
    if args.json:
        print(json.dumps({"ok": report.ok, "violations": list(report.violations)}, indent=2))
    else:
        if report.ok:
            print(f"ok: {spec.n} lines, {len(spec.reflected)} reflected")
        else:
            print("invalid:")
            for v in report.violations:
                print(f"  - {v}")
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_compute(args) -> int:
    spec = _load_spec(args.spec)
    report = validate_spec(spec)
    if not report.ok:
        return _input_error("invalid lattice: " + "; ".join(report.violations))

    if args.all_configs:
        configs = list(all_configs(spec.n))
    elif args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            return _input_error("--alpha and --beta must be given together")
        configs = [
            ExternalConfig(
                _parse_labels(args.alpha, spec.n, "--alpha"),
                _parse_labels(args.beta, spec.n, "--beta"),
            )
        ]
    else:
        configs = [reference_config(spec.n)]

    methods = METHODS if args.method == "all" else (args.method,)
    try:
        run = compute_report(spec, configs, methods)
    except (PoleError, DegenerateSpecError) as exc:
        return _input_error(f"degenerate computation: {exc}")

    if args.json:
        print(json.dumps(report_to_dict(run), indent=2))
    else:
        for i, config in enumerate(run.configs):
            cells = " ".join(
                f"{m}={format_rational(run.values[m][i])}" for m in run.methods
            )
            print(f"alpha={','.join(map(str, config.alpha))} beta={','.join(map(str, config.beta))}  {cells}")
        times = " ".join(f"{m}={run.timings[m]:.3f}s" for m in run.methods)
        print(f"# methods: {', '.join(run.methods)}; agreement: {run.agreement}; {times}")
    if len(run.methods) > 1 and not run.agreement:
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = run_suites(names, seed=args.seed, draws=args.draws)
    print(f"# suites: {', '.join(names)}; draws: {args.draws}; seed: {args.seed}")
    width = max(len(r.name) for r in results)
    all_ok = True
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:<{width}}  {r.total - len(r.failures)}/{r.total}  {status}")
        for params in r.failures:
            print(f"    failing draw: {params}")
        all_ok = all_ok and r.passed
    return EXIT_OK if all_ok else EXIT_FAILED


def cmd_bench(args) -> int:
    if args.nmax < 1 or args.nmax > 6:
        return _input_error("--nmax must lie in 1..6 (state dimension 2^(2N))")
    rng = random.Random(args.seed)
    rows = []
    for n in range(1, args.nmax + 1):
        spec = random_spec(rng, n)
        config = random_ice_config(rng, spec)
        timings = {}
        run = compute_report(spec, [reference_config(n), config], METHODS)
        timings = run.timings
        rows.append((n, timings))
    print(f"{'N':>2} {'L':>3} {'direct':>10} {'aba':>10} {'cba':>10}   (seconds; one sweep of 2 configs)")
    for n, t in rows:
        print(
            f"{n:>2} {2 * n:>3} {t['direct']:>10.4f} {t['aba']:>10.4f} {t['cba']:>10.4f}"
        )
    print("# cba term count grows as 2^N * N!; direct and aba stay polynomial per amplitude")
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sixvb",
        description=(
            "Exact partition functions of six-vertex lattices with a reflecting "
            "boundary, by three independent constructions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="validate a lattice file")
    p_validate.add_argument("spec", help="path to a lattice JSON file")
    p_validate.add_argument("--json", action="store_true", help="machine-readable output")
    p_validate.set_defaults(func=cmd_validate)

    p_compute = sub.add_parser("compute", help="compute partition-function values")
    p_compute.add_argument("spec", help="path to a lattice JSON file")
    p_compute.add_argument(
        "--method",
        choices=("direct", "aba", "cba", "all"),
        default="all",
        help="construction route (default: all, with exact cross-check)",
    )
    p_compute.add_argument("--alpha", help="comma list of start-edge labels, e.g. 2,1,1,1")
    p_compute.add_argument("--beta", help="comma list of end-edge labels")
    p_compute.add_argument(
        "--all-configs", action="store_true", help="sweep all 4^N external configurations"
    )
    p_compute.add_argument("--json", action="store_true", help="machine-readable output")
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="run randomized exact identity suites")
    p_verify.add_argument(
        "--suite",
        choices=tuple(SUITES) + ("all",),
        default="all",
    )
    p_verify.add_argument("--draws", type=int, default=20, help="draws per identity")
    p_verify.add_argument("--seed", type=int, default=0, help="seed for all draws")
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="time the three routes on growing lattices")
    p_bench.add_argument("--nmax", type=int, default=4, help="largest line count (max 6)")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.set_defaults(func=cmd_bench)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:  # raised by helpers with an exit code
        code = exc.code
        return code if isinstance(code, int) else EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
