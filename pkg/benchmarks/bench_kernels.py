"""Time the compiled coefficient recurrences against the pure-Python fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from modelspace import _kernels


def cases(rng):
    zeros = list(0.8 * rng.uniform(size=8) * np.exp(2j * np.pi * rng.uniform(size=8)))
    g = -2.0 * np.exp(-1j * np.arange(1024)) / np.arange(1, 1025)
    theta = rng.standard_normal(1024) + 1j * rng.standard_normal(1024)
    return {
        "blaschke_expand(deg 8, n=1024)": lambda m: m.blaschke_expand(zeros, 1024),
        "exp_series(n=1024)": lambda m: m.exp_series(g),
        "synthetic_division(n=1024)": lambda m: m.synthetic_division(theta, 0.3 + 0.2j),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if _kernels.compiled is None:
        print("compiled extension not built; only the fallback is available")
    backends = {"python": _kernels.fallback}
    if _kernels.compiled is not None:
        backends["cython"] = _kernels.compiled
    print(f"{'kernel':34s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) == 2 else ""))
    for name, fn in cases(np.random.default_rng(0)).items():
        times = {b: min(timeit.repeat(lambda: fn(m), number=1, repeat=args.repeat)) for b, m in backends.items()}
        row = f"{name:34s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times.values())
        if len(times) == 2:
            row += f"{times['python'] / times['cython']:11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
