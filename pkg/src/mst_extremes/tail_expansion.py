"""Large-x expansions of the mixture survival function and density.

For a skew-t component with parameters ``(v, beta)`` and weight ``p``,

    p (1 - F(x)) = L x^{-v} (1 + A1 x^{-2} + A2 x^{-4} + O(x^{-6})),
    L = 2 p C_v v^{(v-1)/2} T_{v+1}(beta sqrt(v+1)).

Summing the components and dividing by the leading one gives the mixture
expansion with ratios ``A3 = L_2/L_1``, ``A5 = L_3/L_1`` and the cross term
``A4 = A3 A1(v_2, beta_2)``. Differentiating term by term gives the density
coefficients; per component the ``x^{-2}`` and ``x^{-4}`` corrections of the
density are ``c1 = (v+2) A1 / v`` and ``c2 = (v+4) A2 / v``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mst_extremes import special_functions as sf
from mst_extremes.distributions import MixtureSpec, SkewTParams

__all__ = [
    "TailCoefficients",
    "PdfCoefficients",
    "component_lead",
    "component_a1",
    "component_a2",
    "component_c1",
    "component_c2",
    "mixture_tail_coefficients",
    "pdf_coefficients",
    "survival_expansion",
    "pdf_prefactor_expansion",
    "scale_constant",
]


@dataclass(frozen=True)
class TailCoefficients:
    """Coefficients of the mixture survival expansion.

    ``1 - F(x) ~ lead x^{-v1} (1 + a1 x^-2 + a2 x^-4 + a3 x^-(v2-v1)
    + a4 x^-(v2-v1+2) + a5 x^-(v3-v1))`` with remainder ``O(x^-eta)``.
    Absent components give zero coefficients and infinite exponents.
    """

    a1: float
    a2: float
    a3: float
    a4: float
    a5: float
    eta: float
    lead: float


@dataclass(frozen=True)
class PdfCoefficients:
    """Corrections to ``n a_n f(a_n x) ~ v1 x^{-v1-1}`` at orders ``a_n^-2``,
    ``a_n^-(v2-v1)-2`` and ``a_n^-4``."""

    k1: float
    k2: float
    k3: float


def _slant_terms(params: SkewTParams):
    """``(T, D)`` where ``T = T_{v+1}(beta sqrt(v+1))`` and
    ``D = C_{v+1} beta sqrt(v+1) (1+beta^2)^{-(v+2)/2} / T``."""
    v, b = params.v, params.beta
    s = math.sqrt(v + 1.0)
    t = sf.student_t_cdf(v + 1.0, b * s)
    d = sf.c_v(v + 1.0) * b * s * (1.0 + b * b) ** (-(v + 2.0) / 2.0) / t
    return t, d


def component_lead(params: SkewTParams, p: float = 1.0) -> float:
    """``2 p C_v v^{(v-1)/2} T_{v+1}(beta sqrt(v+1))``, the tail constant."""
    v = params.v
    t, _ = _slant_terms(params)
    return 2.0 * p * sf.c_v(v) * math.exp(0.5 * (v - 1.0) * math.log(v)) * t


def component_a1(params: SkewTParams) -> float:
    """``x^{-2}`` coefficient of a single component's survival expansion."""
    v = params.v
    _, d = _slant_terms(params)
    return -v * v * d / (2.0 * (v + 2.0)) - v * v * (v + 1.0) / (2.0 * (v + 2.0))


def component_a2(params: SkewTParams) -> float:
    """``x^{-4}`` coefficient of a single component's survival expansion."""
    v, b = params.v, params.beta
    _, d = _slant_terms(params)
    b2 = b * b
    slant = (v ** 3 * (v - 1.0) / (4.0 * (v + 2.0)) + 3.0 * v * v / 8.0
             - 3.0 * v * v / ((v + 2.0) * (v + 4.0))
             - (v + 2.0) * b2 * v ** 3 / (8.0 * (v + 4.0) * (1.0 + b2)))
    return (d * slant + v * v * (v * v - 1.0) / 8.0
            + 3.0 * v * v / ((v + 2.0) * (v + 4.0)) + v * v * (v - 1.0) / (2.0 * (v + 2.0)))


def component_c1(params: SkewTParams) -> float:
    """``x^{-2}`` coefficient of the density, ``f(x) ~ v L x^{-v-1}(1 + c1 x^-2 + ...)``."""
    v = params.v
    _, d = _slant_terms(params)
    return -v * ((v + 1.0) + d) / 2.0


def component_c2(params: SkewTParams) -> float:
    """``x^{-4}`` coefficient of the density expansion."""
    v, b = params.v, params.beta
    _, d = _slant_terms(params)
    b2 = b * b
    poly = 2.0 * v ** 3 + v ** 3 * b2 + 3.0 * v * v * b2 + 5.0 * v * v
    return v * v * (v + 3.0) * (v + 1.0) / 8.0 + d * poly / (8.0 * (1.0 + b2))


def _vs(spec: MixtureSpec, count: int):
    vs = list(spec.vs[:count])
    return vs + [math.inf] * (count - len(vs))


@lru_cache(maxsize=64)
def mixture_tail_coefficients(spec: MixtureSpec) -> TailCoefficients:
    """Survival-expansion coefficients of a mixture.

    Only the first three components contribute coefficients; a fourth only
    bounds the remainder order ``eta``. The result is cached per spec.
    """
    (c1, p1) = spec.components[0]
    lead = component_lead(c1, p1)
    a1 = component_a1(c1)
    a2 = component_a2(c1)
    a3 = a4 = a5 = 0.0
    if spec.r >= 2:
        c2, p2 = spec.components[1]
        a3 = component_lead(c2, p2) / lead
        a4 = a3 * component_a1(c2)
    if spec.r >= 3:
        c3, p3 = spec.components[2]
        a5 = component_lead(c3, p3) / lead
    v1, v2, v3, v4 = _vs(spec, 4)
    eta = min(6.0, v4 - v1, v2 - v1 + 4.0, v3 - v1 + 2.0)
    return TailCoefficients(a1, a2, a3, a4, a5, eta, lead)


@lru_cache(maxsize=64)
def pdf_coefficients(spec: MixtureSpec) -> PdfCoefficients:
    """Density-expansion coefficients ``K1, K2, K3`` (``K2 = 0`` when r = 1)."""
    c1 = spec.components[0][0]
    k1 = component_c1(c1)
    k3 = component_c2(c1)
    k2 = 0.0
    if spec.r >= 2:
        c2 = spec.components[1][0]
        tc = mixture_tail_coefficients(spec)
        k2 = c2.v / c1.v * tc.a3 * component_c1(c2)
    return PdfCoefficients(k1, k2, k3)


def scale_constant(spec: MixtureSpec, n) -> float:
    """``a_n = (lead n)^{1/v1}``, the linear norming constant."""
    tc = mixture_tail_coefficients(spec)
    v1 = spec.vs[0]
    return math.exp((math.log(tc.lead) + math.log(n)) / v1)


def survival_expansion(spec: MixtureSpec, x: float) -> float:
    """Truncated large-x expansion of ``1 - F(x)``."""
    tc = mixture_tail_coefficients(spec)
    v1, v2, v3 = _vs(spec, 3)
    x = float(x)
    series = 1.0 + tc.a1 * x ** -2 + tc.a2 * x ** -4
    if tc.a3:
        series += tc.a3 * x ** -(v2 - v1) + tc.a4 * x ** -(v2 - v1 + 2.0)
    if tc.a5:
        series += tc.a5 * x ** -(v3 - v1)
    return tc.lead * x ** -v1 * series


def pdf_prefactor_expansion(spec: MixtureSpec, n: int, x: float) -> float:
    """Truncated expansion of ``n a_n f(a_n x)``."""
    tc = mixture_tail_coefficients(spec)
    kc = pdf_coefficients(spec)
    v1, v2, v3 = _vs(spec, 3)
    a = scale_constant(spec, n)
    x = float(x)
    ax = a * x
    series = 1.0 + kc.k1 * ax ** -2 + kc.k3 * ax ** -4
    if tc.a3:
        series += v2 / v1 * tc.a3 * ax ** -(v2 - v1) + kc.k2 * ax ** -(v2 - v1 + 2.0)
    if tc.a5:
        series += v3 / v1 * tc.a5 * ax ** -(v3 - v1)
    return v1 * x ** (-v1 - 1.0) * series
