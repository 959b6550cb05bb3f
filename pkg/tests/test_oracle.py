"""Reference values of the maximum and the Monte Carlo helpers."""
import math

import numpy as np
import pytest

from mst_extremes import oracle
from mst_extremes.distributions import mixture_cdf
from mst_extremes.exceptions import ValidationError
from mst_extremes.quadrature import integrate
from mst_extremes.tail_expansion import scale_constant


def test_cdf_derivative_is_pdf(ex1, ex2):
    for spec in (ex1, ex2):
        for n in (25, 1000):
            for x in (0.7, 1.0, 2.0, 3.0):
                h = 1e-5 * x
                fd = (oracle.exact_max_cdf(spec, n, x + h) - oracle.exact_max_cdf(spec, n, x - h)) / (2 * h)
                assert fd == pytest.approx(oracle.exact_max_pdf(spec, n, x), rel=1e-7)


def test_density_integrates_to_one(ex1):
    total, _ = integrate(lambda t: oracle.exact_max_pdf(ex1, 200, t), 0.0, math.inf, epsrel=1e-10)
    assert total == pytest.approx(1.0, abs=1e-8)


def test_monotone_in_x(ex2):
    values = [oracle.exact_max_cdf(ex2, 300, 0.05 * k) for k in range(1, 200)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_matches_direct_power(ex1):
    n, x = 400, 1.7
    a = scale_constant(ex1, n)
    direct = mixture_cdf(ex1, a * x, 1e-13) ** n
    assert oracle.exact_max_cdf(ex1, n, x) == pytest.approx(direct, rel=1e-11)
    assert oracle.exact_max_cdf_power(ex1, n, x) == oracle.exact_max_cdf(ex1, n, math.sqrt(x))
    jac = x ** -0.5 / 2
    assert oracle.exact_max_pdf_power(ex1, n, x) == pytest.approx(
        jac * oracle.exact_max_pdf(ex1, n, math.sqrt(x)), rel=1e-15)


def test_error_table_layout(ex1):
    grid = [25, 75, 50]
    serial = oracle.error_table(ex1, "cdf", 2.0, grid)
    parallel = oracle.error_table(ex1, "cdf", 2.0, grid, workers=3)
    assert [r.n for r in serial] == grid
    assert serial == parallel
    rec = serial[0]
    assert rec.row() == (rec.delta_l[0], rec.delta_p[0], rec.delta_l[1], rec.delta_p[1],
                         rec.delta_l[2], rec.delta_p[2])


def test_curve_matches_table(ex2):
    rows = oracle.curve(ex2, "pdf", "power", 3.0, [100, 200])
    table = oracle.error_table(ex2, "pdf", 3.0, [100, 200])
    for (n, actual, *approx), rec in zip(rows, table):
        assert n == rec.n
        assert [abs(actual - v) for v in approx] == list(rec.delta_p)


@pytest.mark.parametrize("grid", [[], [1, 2], [2.5], [0]])
def test_grid_validation(ex1, grid):
    with pytest.raises(ValidationError):
        oracle.error_table(ex1, "cdf", 2.0, grid)


def test_argument_validation(ex1):
    with pytest.raises(ValidationError):
        oracle.error_table(ex1, "quantile", 2.0, [25])
    with pytest.raises(ValidationError):
        oracle.curve(ex1, "cdf", "log", 2.0, [25])
    with pytest.raises(ValidationError):
        oracle.exact_max_cdf(ex1, 25, 0.0)
    with pytest.raises(ValidationError):
        oracle.exact_max_cdf(ex1, 25, 1.0, tol=1e-2)


def test_sampler_is_deterministic(ex1):
    a = oracle.sample_mixture(ex1, 1000, seed=7)
    b = oracle.sample_mixture(ex1, 1000, seed=7)
    c = oracle.sample_mixture(ex1, 1000, seed=8)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


@pytest.mark.parametrize("which", [1, 2])
def test_sampler_matches_cdf(which, ex1, ex2):
    spec = ex1 if which == 1 else ex2
    count = 50000
    sample = oracle.sample_mixture(spec, count, seed=0)
    d = oracle.ks_statistic(sample, lambda xs: np.array([mixture_cdf(spec, x, 1e-10) for x in xs]))
    assert d <= oracle.ks_critical_value(count)


def test_block_maxima_match_exact_distribution(ex1):
    blocks, n = 4000, 100
    maxima = oracle.block_maxima(ex1, n, blocks, seed=5)
    d = oracle.ks_statistic(maxima, lambda xs: np.array([oracle.exact_max_cdf(ex1, n, x, 1e-10)
                                                          for x in xs]))
    assert d <= oracle.ks_critical_value(blocks)


def test_ks_helpers():
    assert oracle.ks_critical_value(10000) == pytest.approx(1.6276236 / 100, rel=1e-6)
    assert oracle.ks_statistic([0.5], lambda x: x) == 0.5
    uniform = (np.arange(1000) + 0.5) / 1000
    assert oracle.ks_statistic(uniform, lambda x: x) == pytest.approx(0.0005)
