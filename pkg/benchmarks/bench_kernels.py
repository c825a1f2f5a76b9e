"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from shannonkit import _pykernels

try:
    from shannonkit import _kernels
except ImportError:
    _kernels = None


def cases():
    x = np.random.default_rng(0).normal(size=4096)
    return [
        ("splitmix_uniform 1e6", lambda k: k.splitmix_uniform(12345, 0, 1_000_000)),
        ("polar_pairs 5e5", lambda k: k.polar_pairs(12345, 500_000)),
        ("dft_direct M=4096", lambda k: k.dft_direct(x, 2048)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; timing the numpy fallback only")
    print(f"{'kernel':24s} {'numpy ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for name, fn in cases():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _kernels is None:
            print(f"{name:24s} {py:10.2f} {'-':>10s} {'-':>8s}")
            continue
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:24s} {py:10.2f} {cy:10.2f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
