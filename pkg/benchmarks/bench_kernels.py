"""Compare the compiled kernels against the numpy fallback.

Times the individual kernels on the matrix sizes the simulator uses (2 and 4
modes) and a full ``simulate`` sweep run once per backend in a subprocess,
since the backend is fixed at import.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat N] [--sweep-points N]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from qsagnac import _kernels_py

try:
    from qsagnac import _kernels_c
except ImportError:
    _kernels_c = None

SWEEP_SNIPPET = """
import time
from qsagnac import BACKEND
from qsagnac.presets import preset
from qsagnac.sweep import SweepConfig, run_sweep
doc = preset("nested-nondegenerate-dual")
cfg = SweepConfig.parse("omega=-1e-2:1e-2:{points}")
t0 = time.perf_counter()
run_sweep(doc, cfg)
print(BACKEND, time.perf_counter() - t0)
"""


def _random_pair(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a, b


def kernel_cases(n, rng):
    """Named zero-argument callables for one module, per register size."""
    a, b = _random_pair(rng, n)
    a_stack = np.stack([_random_pair(rng, n)[0] for _ in range(12)])
    b_stack = np.stack([_random_pair(rng, n)[1] for _ in range(12)])
    v = rng.normal(size=(2 * n, 2 * n))
    v = v + v.T
    alpha = rng.normal(size=n) + 1j * rng.normal(size=n)

    def cases(k):
        s = k.to_symplectic(a, b)
        return {
            "compose": lambda: k.compose(a, b, a, b),
            "compose_chain(12)": lambda: k.compose_chain(a_stack, b_stack),
            "to_symplectic": lambda: k.to_symplectic(a, b),
            "congruence": lambda: k.congruence(s, v),
            "transform_mean": lambda: k.transform_mean(a, b, alpha),
            "residuals": lambda: k.bogoliubov_residuals(a, b),
        }
    return cases


def time_call(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def sweep_time(points, pure):
    env = dict(os.environ)
    if pure:
        env["QSAGNAC_PURE_PYTHON"] = "1"
    else:
        env.pop("QSAGNAC_PURE_PYTHON", None)
    out = subprocess.run([sys.executable, "-c", SWEEP_SNIPPET.format(points=points)],
                         env=env, capture_output=True, text=True, check=True)
    backend, seconds = out.stdout.split()
    return backend, float(seconds)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--number", type=int, default=2000, help="calls per timing repeat")
    parser.add_argument("--sweep-points", type=int, default=400)
    args = parser.parse_args(argv)

    if _kernels_c is None:
        print("compiled extension not built; only the numpy fallback is available")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'modes':>6}{'python (us)':>14}{'cython (us)':>14}{'speedup':>10}")
    for n in (2, 4):
        cases = kernel_cases(n, rng)
        py_cases = cases(_kernels_py)
        c_cases = cases(_kernels_c) if _kernels_c is not None else {}
        for name, fn in py_cases.items():
            t_py = time_call(fn, args.repeat, args.number) * 1e6
            if name in c_cases:
                t_c = time_call(c_cases[name], args.repeat, args.number) * 1e6
                print(f"{name:<22}{n:>6}{t_py:>14.2f}{t_c:>14.2f}{t_py / t_c:>9.1f}x")
            else:
                print(f"{name:<22}{n:>6}{t_py:>14.2f}{'-':>14}{'-':>10}")

    print(f"\nfull sweep, nested-nondegenerate-dual preset, {args.sweep_points} points:")
    results = {}
    for pure in (True, False):
        backend, seconds = sweep_time(args.sweep_points, pure)
        results[backend] = seconds
        print(f"  {backend:<8}{seconds * 1e3:>10.1f} ms")
    if len(results) == 2:
        print(f"  speedup {results['python'] / results['cython']:.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
