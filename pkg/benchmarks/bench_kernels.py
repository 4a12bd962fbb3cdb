"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--samples N] [--n N] [--repeat R]
"""
import argparse
import timeit

import numpy as np

from cubeint import _fallback

try:
    from cubeint import _kernels
except ImportError:
    _kernels = None


def bench(label, fn, repeat):
    best = min(timeit.repeat(fn, number=1, repeat=repeat))
    print(f"  {label:34s} {best * 1e3:9.2f} ms")
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1 << 20)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = [_fallback] + ([_kernels] if _kernels else [])
    if _kernels is None:
        print("compiled kernels not built; timing the fallback only")
    xs = np.random.default_rng(0).uniform(1e-6, 100, args.samples)
    coeffs = np.array([1.0, -0.5, 0.25])
    times = {}
    for k in backends:
        print(f"{k.NAME}:")
        times[k.NAME] = (
            bench(f"loggamma_array ({args.samples} pts)", lambda: k.loggamma_array(xs), args.repeat),
            bench(f"mc_block loggamma (n={args.n})",
                  lambda: k.mc_block(1, args.n, 0, args.samples, 0, coeffs), args.repeat),
            bench(f"mc_block poly (n={args.n})",
                  lambda: k.mc_block(1, args.n, 0, args.samples, 1, coeffs), args.repeat),
        )
    if len(times) == 2:
        ratios = [a / b for a, b in zip(times["numpy"], times["cython"])]
        print("speedup (numpy / cython): " + ", ".join(f"{r:.1f}x" for r in ratios))
        a = _fallback.mc_block(1, args.n, 0, 4096, 0, coeffs)
        b = _kernels.mc_block(1, args.n, 0, 4096, 0, coeffs)
        print(f"block totals agree to {abs(a[0] - b[0]) / abs(a[0]):.1e} relative")


if __name__ == "__main__":
    main()
