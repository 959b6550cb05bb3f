"""Adaptive Gauss-Kronrod integration of Python callables.

The skew-t survival function has its own typed integrator inside the
kernels; this module is the general-purpose front end used for densities of
the maximum and for normalization checks.
"""
import math
from typing import Callable

from mst_extremes._backend import kernels as _k


def integrate(f: Callable[[float], float], a: float, b: float,
              epsabs: float = 0.0, epsrel: float = 1e-12) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]``; either limit may be infinite.

    Infinite ranges are mapped onto finite ones, ``[a, inf)`` through
    ``t = a + u / (1 - u)`` and ``(-inf, inf)`` by splitting at 0.

    Returns
    -------
    (value, error_estimate)

    Raises
    ------
    NumericalFault
        When the subdivision limit is reached before the tolerance.
    """
    if a > b:
        value, err = integrate(f, b, a, epsabs, epsrel)
        return -value, err
    if math.isinf(a) and math.isinf(b):
        v1, e1 = integrate(f, -math.inf, 0.0, epsabs, epsrel)
        v2, e2 = integrate(f, 0.0, math.inf, epsabs, epsrel)
        return v1 + v2, e1 + e2
    if math.isinf(b):
        def g(u):
            if u >= 1.0:
                return 0.0
            w = 1.0 - u
            return f(a + u / w) / (w * w)
        return _k.integrate(g, 0.0, 1.0, epsabs, epsrel)
    if math.isinf(a):
        return integrate(lambda t: f(-t), -b, math.inf, epsabs, epsrel)
    return _k.integrate(f, float(a), float(b), epsabs, epsrel)
