"""Reference values for the maximum, error tables and Monte Carlo checks.

The distribution of ``M_n / a_n`` is evaluated directly from the quadrature
survival function ``S``: ``F^n = exp(n log1p(-S))``, which keeps full
precision when ``S`` is of order ``1/n`` or smaller.

Sampling uses NumPy's Philox generator (counter based, so streams for
different seeds are independent and reproducible across platforms).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import kolmogi

from mst_extremes import evt_expansions as evt
from mst_extremes.distributions import (
    MixtureSpec,
    check_tol,
    mixture_pdf_many,
    mixture_sf_many,
)
from mst_extremes.exceptions import ValidationError
from mst_extremes.tail_expansion import scale_constant

__all__ = [
    "ORACLE_TOL",
    "ErrorRecord",
    "exact_max_cdf",
    "exact_max_pdf",
    "exact_max_cdf_power",
    "exact_max_pdf_power",
    "error_table",
    "curve",
    "sample_mixture",
    "block_maxima",
    "ks_statistic",
    "ks_critical_value",
]

ORACLE_TOL = 1e-13
MODES = ("cdf", "pdf")


@dataclass(frozen=True)
class ErrorRecord:
    """Absolute errors of the three approximation orders at one ``n``.

    ``delta_l``/``delta_p`` hold orders 1 to 3 under linear and power
    normalization (cdf errors in cdf mode, density errors in pdf mode).
    """

    n: int
    x: float
    delta_l: tuple
    delta_p: tuple

    def row(self) -> tuple:
        """Values in the CSV column order ``d1_l, d1_p, d2_l, d2_p, d3_l, d3_p``."""
        return tuple(v for pair in zip(self.delta_l, self.delta_p) for v in pair)


def _tol(tol):
    return ORACLE_TOL if tol is None else check_tol(tol)


def _check(n, x):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValidationError("n must be a positive integer, got %r" % (n,))
    x = float(x)
    if not (x > 0 and math.isfinite(x)):
        raise ValidationError("x must be positive and finite, got %r" % x)
    return int(n), x


def _max_cdf(n, s):
    return math.exp(n * math.log1p(-s))


def _max_pdf(n, a, s, f):
    return n * a * math.exp((n - 1) * math.log1p(-s)) * f


def exact_max_cdf(spec: MixtureSpec, n: int, x: float, tol: float | None = None) -> float:
    """``P(M_n <= a_n x) = F^n(a_n x)``."""
    n, x = _check(n, x)
    a = scale_constant(spec, n)
    return _max_cdf(n, mixture_sf_many(spec, [a * x], _tol(tol))[0])


def exact_max_pdf(spec: MixtureSpec, n: int, x: float, tol: float | None = None) -> float:
    """Density of ``M_n / a_n``: ``n a_n F^{n-1}(a_n x) f(a_n x)``."""
    n, x = _check(n, x)
    a = scale_constant(spec, n)
    s = mixture_sf_many(spec, [a * x], _tol(tol))[0]
    f = mixture_pdf_many(spec, [a * x])[0]
    return _max_pdf(n, a, s, f)


def exact_max_cdf_power(spec: MixtureSpec, n: int, x: float, tol: float | None = None) -> float:
    """Distribution function of ``(M_n / alpha_n)^{v1}``."""
    n, x = _check(n, x)
    return exact_max_cdf(spec, n, x ** (1.0 / spec.vs[0]), tol)


def exact_max_pdf_power(spec: MixtureSpec, n: int, x: float, tol: float | None = None) -> float:
    """Density of ``(M_n / alpha_n)^{v1}``."""
    n, x = _check(n, x)
    v1 = spec.vs[0]
    return x ** (1.0 / v1 - 1.0) / v1 * exact_max_pdf(spec, n, x ** (1.0 / v1), tol)


def _check_mode(mode):
    if mode not in MODES:
        raise ValidationError("mode must be 'cdf' or 'pdf', got %r" % (mode,))
    return mode


def _check_grid(n_grid):
    grid = [int(n) for n in n_grid]
    if not grid:
        raise ValidationError("the n grid is empty")
    for n, raw in zip(grid, n_grid):
        if n != raw or n < 2:
            raise ValidationError("grid values must be integers >= 2, got %r" % (raw,))
    return grid


def _point(spec, mode, n, x, tol):
    """Exact and approximate values at one ``n``, linear then power."""
    v1 = spec.vs[0]
    xp = x ** (1.0 / v1)
    a = scale_constant(spec, n)
    s_l, s_p = mixture_sf_many(spec, [a * x, a * xp], tol)
    if mode == "cdf":
        exact = (_max_cdf(n, s_l), _max_cdf(n, s_p))
        approx_l = [evt.cdf_expansion(spec, n, x, k) for k in (1, 2, 3)]
        approx_p = [evt.cdf_expansion_power(spec, n, x, k) for k in (1, 2, 3)]
    else:
        f_l, f_p = mixture_pdf_many(spec, [a * x, a * xp])
        jac = x ** (1.0 / v1 - 1.0) / v1
        exact = (_max_pdf(n, a, s_l, f_l), jac * _max_pdf(n, a, s_p, f_p))
        approx_l = [evt.pdf_expansion(spec, n, x, k) for k in (1, 2, 3)]
        approx_p = [evt.pdf_expansion_power(spec, n, x, k) for k in (1, 2, 3)]
    return exact, [float(v) for v in approx_l], [float(v) for v in approx_p]


def _grid_map(fn: Callable, grid: Sequence[int], workers: int):
    if workers <= 1 or len(grid) < 2:
        return [fn(n) for n in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, grid))  # map keeps grid order


def error_table(spec: MixtureSpec, mode: str, x: float, n_grid: Sequence[int],
                tol: float | None = None, workers: int = 1) -> list:
    """Absolute errors of the order 1-3 approximations over ``n_grid``.

    Returns one :class:`ErrorRecord` per grid point, in grid order.
    """
    mode = _check_mode(mode)
    grid = _check_grid(n_grid)
    _, x = _check(2, x)
    tol = _tol(tol)

    def one(n):
        exact, al, ap = _point(spec, mode, n, x, tol)
        return ErrorRecord(n, x,
                           tuple(abs(exact[0] - v) for v in al),
                           tuple(abs(exact[1] - v) for v in ap))

    return _grid_map(one, grid, workers)


def curve(spec: MixtureSpec, mode: str, norm: str, x: float, n_grid: Sequence[int],
          tol: float | None = None, workers: int = 1) -> list:
    """Rows ``(n, actual, order1, order2, order3)`` for one normalization."""
    mode = _check_mode(mode)
    if norm not in ("linear", "power"):
        raise ValidationError("norm must be 'linear' or 'power', got %r" % (norm,))
    grid = _check_grid(n_grid)
    _, x = _check(2, x)
    tol = _tol(tol)
    j = 0 if norm == "linear" else 1

    def one(n):
        exact, al, ap = _point(spec, mode, n, x, tol)
        return (n, exact[j], *(al if j == 0 else ap))

    return _grid_map(one, grid, workers)


def _rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def _draw(spec: MixtureSpec, rng: np.random.Generator, count: int) -> np.ndarray:
    comp = rng.choice(spec.r, size=count, p=np.asarray(spec.weights) / math.fsum(spec.weights))
    v = np.asarray(spec.vs)[comp]
    beta = np.asarray(spec.betas)[comp]
    delta = beta / np.sqrt(1.0 + beta * beta)
    u0 = rng.standard_normal(count)
    u1 = rng.standard_normal(count)
    z = delta * np.abs(u0) + np.sqrt(1.0 - delta * delta) * u1
    w = rng.chisquare(v)
    return z / np.sqrt(w / v)


def sample_mixture(spec: MixtureSpec, count: int, seed: int) -> np.ndarray:
    """``count`` independent draws from the mixture.

    Each draw picks a component by weight and returns ``Z / sqrt(W / v)``
    with ``Z`` skew-normal(``beta``) and ``W ~ chi^2(v)``. Deterministic in
    ``(seed, count)``.
    """
    if int(count) != count or count < 1:
        raise ValidationError("count must be a positive integer, got %r" % (count,))
    return _draw(spec, _rng(seed), int(count))


def block_maxima(spec: MixtureSpec, n: int, blocks: int, seed: int,
                 chunk: int = 1000) -> np.ndarray:
    """Maxima of ``blocks`` independent samples of size ``n``, divided by ``a_n``."""
    rng = _rng(seed)
    out = np.empty(blocks)
    for start in range(0, blocks, chunk):
        m = min(chunk, blocks - start)
        out[start:start + m] = _draw(spec, rng, m * n).reshape(m, n).max(axis=1)
    return out / scale_constant(spec, n)


def ks_statistic(sample, cdf: Callable[[np.ndarray], np.ndarray]) -> float:
    """Two-sided Kolmogorov-Smirnov distance between ``sample`` and ``cdf``."""
    x = np.sort(np.asarray(sample, dtype=float))
    m = x.size
    f = np.asarray(cdf(x), dtype=float)
    upper = np.arange(1, m + 1) / m - f
    lower = f - np.arange(0, m) / m
    return float(max(upper.max(), lower.max()))


def ks_critical_value(count: int, level: float = 0.01) -> float:
    """Asymptotic KS critical value ``K^{-1}(level) / sqrt(count)``."""
    return float(kolmogi(level)) / math.sqrt(count)
