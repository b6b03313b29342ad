"""Compare the numba and numpy kernel backends.

Times each kernel on random inputs, then a full model-checking run with the
evaluator pointed at one backend or the other. Numba compile time is paid
once during warm-up and excluded.

    python3 benchmarks/bench_kernels.py --sizes 64 256 1024 --repeat 20
"""
from __future__ import annotations

import argparse
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from chronomind import LekChecker, kernels, parse_formula

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from test_acceptance import scaling_model  # noqa: E402

NAMES = ("box", "compose", "nbhd_member")


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def inputs(n: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    rel = rng.random((n, n)) < 0.1
    other = rng.random((n, n)) < 0.1
    sat = rng.random(n) < 0.5
    owner = np.repeat(np.arange(n, dtype=np.int64), 3)
    sets = np.ascontiguousarray(rng.random((3 * n, n)) < 0.05)
    return {
        "box": (rel, sat),
        "compose": (rel, other),
        "nbhd_member": (rel, sat, sets, owner),
    }


@contextmanager
def backend(name: str):
    saved = {k: getattr(kernels, k) for k in NAMES}
    for k in NAMES:
        setattr(kernels, k, getattr(kernels, f"{k}_{name}"))
    try:
        yield
    finally:
        for k, fn in saved.items():
            setattr(kernels, k, fn)


FORMULA = parse_formula(
    "(B[i] (p(1,3) | ~q(2,5)) -> K[j] r(0,12)) & G[0,12] (r(0,12) -> [+p(1,3)] B[i] p(1,3))"
)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 256, 1024])
    ap.add_argument("--repeat", type=int, default=10)
    args = ap.parse_args(argv)

    if not kernels.HAS_NUMBA:
        sys.exit("numba is not importable; nothing to compare")
    for k, a in inputs(8).items():  # warm-up compiles every numba kernel
        getattr(kernels, f"{k}_numba")(*a)

    print(f"{'kernel':<12} {'n':>6} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.sizes:
        data = inputs(n)
        for k in NAMES:
            fast = best_of(lambda: getattr(kernels, f"{k}_numba")(*data[k]), args.repeat)
            slow = best_of(lambda: getattr(kernels, f"{k}_numpy")(*data[k]), args.repeat)
            print(f"{k:<12} {n:>6} {fast * 1e3:>10.3f} {slow * 1e3:>10.3f} {slow / fast:>7.1f}x")

    print()
    print(f"{'model check':<12} {'n':>6} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.sizes:
        m = scaling_model(n)
        w = min(m.worlds)
        timing = {}
        for name in ("numba", "numpy"):
            with backend(name):
                LekChecker(m).holds(w, FORMULA)
                timing[name] = best_of(lambda: LekChecker(m).holds(w, FORMULA), args.repeat)
        print(f"{'formula':<12} {n:>6} {timing['numba'] * 1e3:>10.3f} "
              f"{timing['numpy'] * 1e3:>10.3f} {timing['numpy'] / timing['numba']:>7.1f}x")


if __name__ == "__main__":
    main()
