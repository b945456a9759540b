"""Benchmark: compiled search kernel vs. the interpreted numpy fallback.

The kernel is compiled with numba unless XORCOUNT_NO_NUMBA is set at
import time, so the fallback timing is collected in a subprocess with
the flag exported.  The workload is the estimator's actual inner loop:
bounded enumeration of hash cells of a free-k formula, which is
dominated by SAT search over the XOR translations.

Usage: python benchmarks/bench_solver.py [--k 14] [--rounds 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def workload(k: int, rounds: int) -> dict:
    from xorcount.counter import CounterConfig, main_count
    from xorcount.generators import free_k
    from xorcount.kernel import NUMBA_ENABLED
    from xorcount.sat import BuiltinOracle

    f, true = free_k(k)
    oracle = BuiltinOracle()
    # one throwaway run so compilation time is reported separately
    t0 = time.monotonic()
    main_count(f, CounterConfig(seed=0, delta=0.5), oracle)
    warmup = time.monotonic() - t0

    times = []
    for seed in range(1, rounds + 1):
        t0 = time.monotonic()
        result = main_count(f, CounterConfig(seed=seed, delta=0.1), oracle)
        times.append(time.monotonic() - t0)
        assert 0.5 * true <= result.estimate <= 1.5 * true
    return {
        "mode": "compiled" if NUMBA_ENABLED else "interpreted",
        "warmup_s": round(warmup, 3),
        "runs_s": [round(t, 3) for t in times],
        "best_s": round(min(times), 3),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k", type=int, default=14, help="free-variable count (2^k models)")
    parser.add_argument("--rounds", type=int, default=3)
    parser.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args(argv)

    if args.inner:
        print(json.dumps(workload(args.k, args.rounds)))
        return 0

    base_env = dict(os.environ)
    base_env.pop("XORCOUNT_NO_NUMBA", None)
    results = []
    for extra_env in ({}, {"XORCOUNT_NO_NUMBA": "1"}):
        env = dict(base_env, **extra_env)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner",
             "--k", str(args.k), "--rounds", str(args.rounds)],
            env=env,
            cwd=ROOT,
            capture_output=True,
            text=True,
        )
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            return 1
        results.append(json.loads(proc.stdout.strip().splitlines()[-1]))

    compiled, interpreted = results
    print(f"workload: free-{args.k} formula, {args.rounds} full counting runs each")
    for r in results:
        print(
            f"  {r['mode']:>11}: best {r['best_s']}s  runs {r['runs_s']}  "
            f"(warmup {r['warmup_s']}s)"
        )
    if compiled["best_s"] > 0:
        print(f"  speedup: {interpreted['best_s'] / compiled['best_s']:.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
