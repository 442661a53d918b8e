#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends on representative workloads.

Run:  python3 benchmarks/bench_kernels.py [--repeats N]

Measures the raw kernels on synthetic data shaped like the real hot paths
(order-64 groups with a 64-entry cyclotomic basis of rank 32), then an
end-to-end verification sweep through the public API under each backend.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ksphere import kernels  # noqa: E402


def _time(fn, repeats):
    fn()  # warm (JIT compile / cache touch)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeats: int) -> None:
    rng = np.random.default_rng(0)
    k, n, phi, p = 64, 64, 32, 12289
    mat = rng.integers(0, p, (k, k)).astype(np.int64)
    prod = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    inv = (-np.arange(n)) % n
    cls = np.arange(n, dtype=np.int64)
    members = np.arange(n, dtype=np.int64)[:8]
    reps = np.arange(n, dtype=np.int64)
    mul = rng.integers(-2, 3, (phi, phi, phi)).astype(np.int64)
    vals = rng.integers(-8, 9, (k, n, phi)).astype(np.int64)
    at = rng.integers(-8, 9, (32, n, phi, phi)).astype(np.int64)
    bm = rng.integers(-8, 9, (32, n, phi, phi)).astype(np.int64)
    flat = vals.reshape(-1, phi)

    cases = [
        ("rref_mod 64x64", lambda impl: impl["rref_mod"](mat.copy(), p)),
        ("charpoly_mod 64x64", lambda impl: impl["charpoly_mod"](mat.copy(), p)),
        ("class_matrix", lambda impl: impl["class_matrix"](prod, inv, cls, members, reps)),
        ("mul_into 4096x32", lambda impl: impl["mul_into"](flat, mul)),
        ("weighted_analysis", lambda impl: impl["weighted_analysis"](vals, at)),
        ("pair_products", lambda impl: impl["pair_products"](vals, bm)),
        ("pair_gram", lambda impl: impl["pair_gram"](vals, bm)),
    ]

    backends = kernels.available_backends()
    impls = {name: kernels.get_backend(name) for name in backends}
    header = f"{'kernel':24s}" + "".join(f"{b:>12s}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for label, runner in cases:
        times = {}
        for name in backends:
            impl = impls[name]
            times[name] = _time(lambda: runner(impl), repeats)
        line = f"{label:24s}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        if len(backends) == 2:
            line += f"{times['numpy'] / times['numba']:9.1f}x"
            out_np, out_nb = (runner(impls[b]) for b in backends)
            if isinstance(out_np, tuple):
                out_np, out_nb = out_np[0], out_nb[0]
            if not np.array_equal(out_np, out_nb):
                line += "  MISMATCH"
        print(line)


def bench_end_to_end() -> None:
    script = (
        "import time; import ksphere.verification as v; "
        "t0 = time.perf_counter(); v.run_verification(32); "
        "print(f'{time.perf_counter() - t0:.2f}s')"
    )
    print("\nend-to-end: verification sweep of all builtin groups up to order 32")
    for name, env_flag in [("numba", "0"), ("numpy", "1")]:
        env = dict(os.environ, KSPHERE_DISABLE_NUMBA=env_flag)
        env["PYTHONPATH"] = os.path.join(os.path.dirname(__file__), "..", "src")
        proc = subprocess.run(
            [sys.executable, "-c", script], capture_output=True, text=True, env=env
        )
        out = proc.stdout.strip() or proc.stderr.strip()
        print(f"  {name:6s} {out}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args()
    print(f"active backend: {kernels.BACKEND}")
    bench_kernels(args.repeats)
    if not args.skip_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
