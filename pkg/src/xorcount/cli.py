"""Command line interface: counting runs, calibration, benchmark generation.

Exit codes for ``count``: 0 success, 1 usage error, 2 solver timeout,
3 backend error.  JSON reports use sorted keys so reruns diff cleanly;
``--omit-timing`` drops the wall-time section, making reports with
identical input, config and seed byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
import time

import numpy as np

from .counter import ConfigError, CounterConfig, main_count
from .exact import exact_projected_count
from .formula import Formula, parse_dimacs
from .generators import FAMILIES, generate
from .sat import BackendError, BuiltinOracle, ConfigurationError, ExternalOracle, SolverTimeout

SOLVER_ENV = "XORCOUNT_SOLVER"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TIMEOUT = 2
EXIT_BACKEND = 3


class _Parser(argparse.ArgumentParser):
    # our exit-code scheme reserves 2 for timeouts; usage errors exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_backend_args(p):
    p.add_argument("--backend", choices=("builtin", "external"), default="builtin")
    p.add_argument(
        "--solver-bin",
        default=os.environ.get(SOLVER_ENV),
        help=f"external solver binary (default: ${SOLVER_ENV})",
    )
    p.add_argument(
        "--xor-native",
        action="store_true",
        help="external solver reads 'x' XOR lines natively",
    )
    p.add_argument("--timeout", type=float, default=None, help="per-call solver timeout (s)")


def _make_oracle(args):
    if args.backend == "builtin":
        return BuiltinOracle()
    if not args.solver_bin:
        raise ConfigurationError(
            f"--backend external requires --solver-bin or ${SOLVER_ENV}"
        )
    return ExternalOracle(
        args.solver_bin, native_xor=args.xor_native, timeout=args.timeout
    )


def _load_formula(path, scope_override):
    with open(path, "rb") as fh:
        data = fh.read()
    f = parse_dimacs(data)
    if scope_override is not None:
        scope = tuple(sorted({int(t) for t in scope_override.split(",") if t.strip()}))
        f = Formula(num_vars=f.num_vars, clauses=f.clauses, scope=scope)
    return f, hashlib.sha256(data).hexdigest()


def _pick_seed(arg_seed):
    if arg_seed is not None:
        return int(arg_seed)
    return int.from_bytes(os.urandom(8), "little")


def _run_report(path, digest, args, cfg, result, wall):
    report = {
        "input": {"path": path, "sha256": digest},
        "config": {
            "epsilon": cfg.epsilon,
            "delta": cfg.delta,
            "r": cfg.r,
            "seed": cfg.seed,
            "backend": args.backend,
            "solver_bin": args.solver_bin,
            "timeout": args.timeout,
            "lower_bound": cfg.warm_start_lower_bound,
            "parallel": cfg.parallel_repetitions,
            "scope_override": args.scope,
        },
        "result": {
            "estimate": result.estimate,
            "log2_estimate": math.log2(result.estimate) if result.estimate else None,
            "exact": result.exact,
            "pivot": result.pivot,
            "t": result.t,
            "any_emergency_stop": result.any_emergency_stop,
            "exact_gate_queries": result.exact_gate_queries,
            "repetitions": [
                {
                    "m": tr.final_m,
                    "cell_count": tr.cell_count,
                    "estimate": tr.estimate,
                    "emergency_stop": tr.emergency_stop,
                    "sat_queries": tr.sat_queries,
                }
                for tr in result.traces
            ],
        },
    }
    if not args.omit_timing:
        report["timing"] = {"wall_time_s": wall}
    return report


def cmd_count(args):
    f, digest = _load_formula(args.file, args.scope)
    cfg = CounterConfig(
        epsilon=args.epsilon,
        delta=args.delta,
        seed=_pick_seed(args.seed),
        warm_start_lower_bound=args.lower_bound,
        parallel_repetitions=args.parallel,
    )
    oracle = _make_oracle(args)
    start = time.monotonic()
    result = main_count(f, cfg, oracle)
    wall = time.monotonic() - start
    if args.json:
        report = _run_report(args.file, digest, args, cfg, result, wall)
        json.dump(report, sys.stdout, indent=2, sort_keys=True)
        print()
    else:
        kind = "exact" if result.exact else "estimate"
        print(f"{kind} {result.estimate}")
        if not result.exact:
            print(f"  log2 ~ {math.log2(result.estimate):.2f}" if result.estimate else "")
        print(f"  seed {cfg.seed}")
    return EXIT_OK


def _trial_seed(master: int, formula_index: int, trial: int) -> int:
    state = np.random.SeedSequence((master, formula_index, trial)).generate_state(2)
    return int(state[0]) | (int(state[1]) << 32)


def _parse_gen_spec(spec: str):
    family, _, rest = spec.partition(":")
    params = {}
    if rest:
        for item in rest.split(","):
            k, _, v = item.partition("=")
            params[k.strip().replace("-", "_")] = int(v)
    return family, params


def cmd_calibrate(args):
    corpus = args.corpus
    tmp = None
    if args.gen:
        tmp = tempfile.mkdtemp(prefix="xorcount_corpus_")
        for i, spec in enumerate(args.gen):
            family, params = _parse_gen_spec(spec)
            generate(family, tmp, f"gen{i:03d}_{family}", **params)
        corpus = tmp
    if corpus is None:
        raise SystemExit(EXIT_USAGE)

    oracle = _make_oracle(args)
    entries = []
    for name in sorted(os.listdir(corpus)):
        if not name.endswith(".json"):
            continue
        with open(os.path.join(corpus, name)) as fh:
            manifest = json.load(fh)
        cnf_path = os.path.join(corpus, manifest["file"])
        f, _ = _load_formula(cnf_path, None)
        true = manifest.get("projected_count")
        if true is None:
            try:
                true = exact_projected_count(f, oracle).value
            except ValueError as exc:
                print(f"warning: skipping {name}: {exc}", file=sys.stderr)
                continue
        entries.append((manifest["file"], f, int(true)))

    per_formula = []
    trials_total = 0
    hits_total = 0
    records = []
    for fidx, (name, f, true) in enumerate(entries):
        hits = 0
        for trial in range(args.trials):
            cfg = CounterConfig(
                epsilon=args.epsilon,
                delta=args.delta,
                seed=_trial_seed(args.seed, fidx, trial),
            )
            result = main_count(f, cfg, oracle)
            lo = (1 - args.epsilon) * true
            hi = (1 + args.epsilon) * true
            ok = lo <= result.estimate <= hi
            hits += ok
            records.append(
                {
                    "formula": name,
                    "trial": trial,
                    "seed": cfg.seed,
                    "estimate": result.estimate,
                    "exact": result.exact,
                    "in_tolerance": ok,
                }
            )
        per_formula.append(
            {
                "formula": name,
                "true_count": true,
                "trials": args.trials,
                "in_tolerance": hits,
                "coverage": hits / args.trials if args.trials else None,
            }
        )
        trials_total += args.trials
        hits_total += hits

    coverage = hits_total / trials_total if trials_total else None
    ci = None
    if trials_total:
        # normal-approximation binomial interval on the pooled coverage
        se = math.sqrt(max(coverage * (1 - coverage), 1e-12) / trials_total)
        ci = [max(0.0, coverage - 1.96 * se), min(1.0, coverage + 1.96 * se)]
    report = {
        "config": {
            "epsilon": args.epsilon,
            "delta": args.delta,
            "target_confidence": 1 - args.delta,
            "trials_per_formula": args.trials,
            "master_seed": args.seed,
            "backend": args.backend,
        },
        "per_formula": per_formula,
        "pooled": {
            "trials": trials_total,
            "in_tolerance": hits_total,
            "coverage": coverage,
            "coverage_ci95": ci,
        },
        "trial_records": records,
    }
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.fail_below is not None and (coverage is None or coverage < args.fail_below):
        return 4
    return EXIT_OK


def cmd_gen(args):
    family, params = _parse_gen_spec(args.spec)
    if family not in FAMILIES:
        print(f"unknown family {family!r}; choose from {FAMILIES}", file=sys.stderr)
        return EXIT_USAGE
    name = args.name or family.replace("-", "_")
    manifest = generate(family, args.out_dir, name, **params)
    print(json.dumps(manifest, indent=2, sort_keys=True))
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="xorcount", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="estimate the projected model count of a DIMACS file")
    p.add_argument("file")
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=0.14)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--scope", default=None, help="comma-separated scope override")
    p.add_argument("--lower-bound", type=int, default=None, help="sound warm-start lower bound")
    p.add_argument("--parallel", action="store_true", help="run repetitions concurrently")
    p.add_argument("--json", action="store_true")
    p.add_argument("--omit-timing", action="store_true")
    _add_backend_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("calibrate", help="Monte-Carlo check of the (epsilon,delta) guarantee")
    p.add_argument("corpus", nargs="?", default=None, help="directory with .cnf/.json pairs")
    p.add_argument(
        "--gen",
        action="append",
        help="generate a corpus entry, e.g. 'free-k:k=12,pinned_vars=2' (repeatable)",
    )
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--delta", type=float, default=0.14)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fail-below", type=float, default=None)
    p.add_argument("--json-out", default=None)
    _add_backend_args(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("gen", help="generate a benchmark formula with a known count")
    p.add_argument("spec", help="family:key=val,... e.g. 'free-k:k=20'")
    p.add_argument("out_dir")
    p.add_argument("--name", default=None)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except SolverTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (BackendError, ConfigurationError) as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
