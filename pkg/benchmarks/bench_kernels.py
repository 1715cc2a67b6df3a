"""Compare the compiled and pure-Python cubic kernels.

    python benchmarks/bench_kernels.py [--n 100000] [--repeat 3]

Both kernels are imported directly, so the environment switch is not needed.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from cubiprox import _pykernels
from cubiprox.oracle import make_rng
from cubiprox.suites import random_cubics

try:
    from cubiprox import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def bench(kernels, coeffs, repeat: int) -> tuple[float, float]:
    a, b, c, d = coeffs
    batch = min(timeit.repeat(lambda: kernels.solve_batch(a, b, c, d), number=1, repeat=repeat))
    m = min(2000, a.size)
    scalar = min(timeit.repeat(
        lambda: [kernels.solve_cubic(a[i], b[i], c[i], d[i]) for i in range(m)],
        number=1, repeat=repeat)) / m
    return batch, scalar


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    args = ap.parse_args()

    coeffs = random_cubics(make_rng(args.seed), args.n)
    print(f"{args.n} random cubics, best of {args.repeat}")
    print(f"{'backend':<8} {'batch [s]':>10} {'per call [us]':>14}")
    py_batch, py_scalar = bench(_pykernels, coeffs, args.repeat)
    print(f"{'python':<8} {py_batch:>10.4f} {py_scalar * 1e6:>14.2f}")
    if _ckernels is None:
        print("cython   (not built)")
        return
    c_batch, c_scalar = bench(_ckernels, coeffs, args.repeat)
    print(f"{'cython':<8} {c_batch:>10.4f} {c_scalar * 1e6:>14.2f}")
    print(f"speedup  {py_batch / c_batch:>10.1f}x {py_scalar / c_scalar:>13.1f}x")

    kp, rp, _, _ = _pykernels.solve_batch(*coeffs)
    kc, rc, _, _ = _ckernels.solve_batch(*coeffs)
    finite = np.isfinite(rp)
    print(f"kinds identical: {bool(np.array_equal(kp, kc))}; "
          f"max root difference: {float(np.max(np.abs(rp[finite] - rc[finite]))):.2e}")


if __name__ == "__main__":
    main()
