"""Benchmark the jitted mod-p kernels against the pure-numpy fallback.

The package selects its kernel implementation at import time: numba
``@njit`` versions when numba is importable, or plain Python/numpy when it
is not or when ``HALLCHAR_PURE_NUMPY=1`` is set.  Because the choice is
frozen at import, this script re-executes itself in a subprocess per mode
and compares wall times.  JIT compilation happens inside ``warmup()``
before any timer starts, so numbers reflect steady-state throughput.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _bench(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_worker(repeat):
    import numpy as np

    from hallchar import catalog, linalg, subspaces
    from hallchar.quiver import kronecker_quiver

    linalg.warmup()  # one-time jit compilation, excluded from all timers

    rng = np.random.default_rng(0)
    results = {}

    stack = rng.integers(0, 5, size=(400, 24, 24)).astype(np.int64)
    results["batch_rank_mod: 400 ranks of 24x24 mod 5"] = _bench(
        lambda: linalg.batch_rank_mod(stack, 5), repeat
    )

    big = rng.integers(0, 3, size=(160, 160)).astype(np.int64)
    results["rref_mod: echelon form of 160x160 mod 3"] = _bench(
        lambda: linalg.rref_mod(big.copy(), 3), repeat
    )

    K = kronecker_quiver()
    M = catalog.parse_symbol("R(3,3)@0+R(2,2)@1", K).instantiate(3)

    def grassmannians():
        subspaces.clear_census_cache()  # force kernel re-runs, not cache hits
        total = 0
        for k in range(M.dims[0] + 1):
            total += subspaces.grassmannian_count(M, (k, k))
        return total

    results["grassmannian_count: all Gr_(k,k) of a (5,5) Kronecker module, p=3"] = (
        _bench(grassmannians, repeat)
    )

    print(json.dumps({"pure_numpy": linalg.PURE_NUMPY, "results": results}))


def run_mode(pure, repeat):
    env = dict(os.environ, HALLCHAR_PURE_NUMPY="1" if pure else "0")
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker", "--repeat", str(repeat)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        run_worker(args.repeat)
        return

    jit = run_mode(pure=False, repeat=args.repeat)
    pure = run_mode(pure=True, repeat=args.repeat)
    if jit["pure_numpy"]:
        print("note: numba is not importable; both columns use the fallback\n")

    width = max(len(name) for name in jit["results"])
    print(f"{'kernel workload':<{width}}  {'jit':>10}  {'pure-numpy':>10}  speedup")
    for name, t_jit in jit["results"].items():
        t_pure = pure["results"][name]
        print(f"{name:<{width}}  {t_jit:>9.4f}s  {t_pure:>9.4f}s  {t_pure / t_jit:6.1f}x")


if __name__ == "__main__":
    main()
