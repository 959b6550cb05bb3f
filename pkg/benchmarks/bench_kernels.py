"""Timing of the compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Each backend evaluates the
mixture survival function and density on the grids used by the error tables.
"""
import argparse
import importlib
import time

from mst_extremes import _kernels_py
from mst_extremes.distributions import example_spec
from mst_extremes.tail_expansion import scale_constant


def _points(spec, x, ns):
    pts = []
    for n in ns:
        a = scale_constant(spec, n)
        pts += [a * x, a * x ** (1.0 / spec.vs[0])]
    return pts


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--tol", type=float, default=1e-12)
    args = ap.parse_args(argv)

    backends = {"python": _kernels_py}
    try:
        backends["cython"] = importlib.import_module("mst_extremes._kernels")
    except ImportError:
        print("compiled kernels not built; timing the fallback only")

    cases = [
        ("example1 x=2", example_spec(1), 2.0, range(25, 1001, 25)),
        ("example2 x=0.75", example_spec(2), 0.75, range(375, 15001, 375)),
    ]
    print("%-18s %-8s %12s %12s" % ("grid", "backend", "sf (ms)", "pdf (ms)"))
    for label, spec, x, ns in cases:
        xs = _points(spec, x, ns)
        args_ = (list(spec.vs), list(spec.betas), list(spec.weights), xs)
        ref = None
        for name, k in backends.items():
            t_sf = _best(lambda: k.mixture_sf_many(*args_, args.tol), args.repeat)
            t_pdf = _best(lambda: k.mixture_pdf_many(*args_), args.repeat)
            vals = k.mixture_sf_many(*args_, args.tol)
            if ref is None:
                ref = vals
            else:
                worst = max(abs(a - b) / b for a, b in zip(vals, ref))
                print("%-18s max relative difference between backends %.1e" % ("", worst))
            print("%-18s %-8s %12.2f %12.3f" % (label, name, 1e3 * t_sf, 1e3 * t_pdf))


if __name__ == "__main__":
    main()
