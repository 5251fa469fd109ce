"""Compare the compiled and numpy backends of the hot kernels.

Usage: python benchmarks/bench_kernels.py [--repeat R] [--seed S]
"""

import argparse
import timeit

import numpy as np

from monorel import _kernels_py
from monorel.fitzpatrick import _monotone_form
from monorel.harness import GeneratorSpec, gen_maximal, sample_points
from monorel.linalg import DEFAULT_TOL

try:
    from monorel import _kernels_cy
except ImportError:
    _kernels_cy = None


def cases(rng):
    """(label, kernel name, args) tuples at a few problem sizes."""
    out = []
    for n, count in ((2, 1000), (4, 10000), (6, 10000)):
        A = gen_maximal(GeneratorSpec(n, n - 1), rng)
        gf = _monotone_form(A, DEFAULT_TOL)
        Z = sample_points(A, rng, count)
        out.append((f"range_quadratic n={n} points={count}", "range_quadratic", (gf.C, gf.Q.pseudo_inverse, gf.Nt, Z, 1e-9)))
    for n, npts in ((1, 20001), (2, 401)):
        A = gen_maximal(GeneratorSpec(n, n), rng)
        x, xs = rng.standard_normal(n), rng.standard_normal(n)
        args = (A.U, A.V, x, xs, np.zeros(A.U.shape[1]), 10.0, npts)
        out.append((f"grid_sup n={n} grid={npts}^{A.U.shape[1]}", "grid_sup", args))
    return out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    backends = [("numpy", _kernels_py)] + ([("cython", _kernels_cy)] if _kernels_cy else [])
    if _kernels_cy is None:
        print("compiled extension not built; timing numpy only")
    print(f"{'case':<40}" + "".join(f"{b:>12}" for b, _ in backends) + ("   speedup" if len(backends) == 2 else ""))
    for label, name, a in cases(np.random.default_rng(args.seed)):
        ref = getattr(_kernels_py, name)(*a)
        times = []
        for _, mod in backends:
            fn = getattr(mod, name)
            got = fn(*a)
            np.testing.assert_allclose(np.asarray(got[0]), np.asarray(ref[0]), rtol=1e-10, atol=1e-12)
            times.append(min(timeit.repeat(lambda: fn(*a), number=1, repeat=args.repeat)))
        row = f"{label:<40}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
