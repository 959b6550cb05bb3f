"""Higher-order expansions for the maximum of a skew-t mixture sample.

With ``a_n = (lead n)^{1/v1}`` the normalized maximum ``M_n / a_n`` tends to
the Frechet law ``Phi_{v1}(x) = exp(-x^{-v1})``. The refinements have the form

    F^n(a_n x) ~ Phi(x) (1 + k(x) a_n^{-rho} + w(x) a_n^{-rho-gamma})
    g_n(x)     ~ Phi'(x) (1 + s(x) a_n^{-rho} + q(x) a_n^{-rho-gamma})

where ``g_n`` is the density of ``M_n / a_n``. Which terms appear depends on
the regime of ``(v1, v2, v3)``; there are seven (``I`` to ``VII``, see
:func:`classify_case`). Inside a regime, each optional term is switched on by
a predicate in ``_PREDICATES``; a term is present exactly when its power of
``a_n`` equals ``rho + gamma``.

Under power normalization the limit is ``Phi_1(x) = exp(-1/x)`` and every
approximation is the linear one evaluated at ``x^{1/v1}`` (with the Jacobian
``x^{1/v1-1}/v1`` for densities).

Regime decisions use exact rational arithmetic on the decimal values of the
degrees of freedom, so boundary cases such as ``v2 = 2 v1`` are never decided
by rounding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from mst_extremes.distributions import MixtureSpec
from mst_extremes.exceptions import ValidationError
from mst_extremes.tail_expansion import (
    mixture_tail_coefficients,
    pdf_coefficients,
    scale_constant,
)

__all__ = [
    "CASES",
    "NormingConstants",
    "ExpansionCase",
    "ExpansionEvaluation",
    "norming_constant",
    "classify_case",
    "active_terms",
    "exact_powers",
    "cdf_terms",
    "pdf_terms",
    "cdf_expansion",
    "pdf_expansion",
    "cdf_expansion_power",
    "pdf_expansion_power",
]

CASES = ("I", "II", "III", "IV", "V", "VI", "VII")
INF = math.inf


@dataclass(frozen=True)
class NormingConstants:
    """``a_n`` for linear normalization; ``alpha_n = a_n`` and ``beta_n = 1/v1``
    for power normalization."""

    a_n: float
    alpha_n: float
    beta_n: float


@dataclass(frozen=True)
class ExpansionCase:
    """Regime of ``(v1, v2, v3)``.

    ``primary_power`` is ``rho``, the power of ``a_n`` on the first correction,
    and ``gamma`` the extra power on the second.
    """

    case_id: str
    gamma: float
    primary_power: float

    @property
    def second_power(self) -> float:
        return self.primary_power + self.gamma


@dataclass(frozen=True)
class ExpansionEvaluation:
    order: int
    value: float
    normalization: str


def _exact(v) -> Fraction | float:
    # shortest round-trip decimal, i.e. the value as the user wrote it
    return INF if v == INF else Fraction(repr(float(v)))


def _exact_vs(spec: MixtureSpec):
    vs = [_exact(v) for v in spec.vs[:3]]
    return tuple(vs + [INF] * (3 - len(vs)))


def _case_id(v1, v2) -> str:
    if v1 < 2:
        if v2 > 2 * v1:
            return "I"
        if v2 == 2 * v1:
            return "VI"
        return "III"
    if v1 > 2:
        if v2 > v1 + 2:
            return "II"
        if v2 == v1 + 2:
            return "V"
        return "III"
    if v2 > 4:
        return "IV"
    if v2 == 4:
        return "VII"
    return "III"


def _second_power(case_id, v1, v2, v3):
    """``rho + gamma`` as an exact value."""
    if case_id == "I":
        return min(2, v2 - v1, 2 * v1)
    if case_id == "II":
        return min(4, v2 - v1, v1)
    if case_id == "III":
        return min(2, v1, 2 * (v2 - v1), v3 - v1)
    if case_id == "IV":
        return min(v2 - 2, 4)
    if case_id == "V":
        return min(v1, 4, v3 - v1)
    if case_id == "VI":
        # shared by the cdf and density paths; min{v1, 4, v3 - v1} - v1
        # would give gamma <= 0 here
        return min(2, 2 * v1, v3 - v1)
    return min(v3 - 2, 4)


def _primary_power(case_id, v1, v2):
    if case_id in ("I", "VI"):
        return v1
    if case_id == "III":
        return v2 - v1
    return Fraction(2)


# Regime-predicate table. Keys are "<case>.<term>"; each predicate takes the
# exact (v1, v2, v3). Alternatives are joined with ``or`` so a term is never
# counted twice where two ranges share an endpoint.
_PREDICATES = {
    "I.A3": lambda v1, v2, v3: (0 < v1 < 1 and 2 * v1 < v2 <= 3 * v1)
    or (1 <= v1 < 2 and 2 * v1 < v2 <= v1 + 2),
    "I.P2": lambda v1, v2, v3: 0 < v1 <= 1 and v2 >= 3 * v1,
    "I.A1": lambda v1, v2, v3: 1 <= v1 < 2 and v2 >= v1 + 2,
    "II.A2": lambda v1, v2, v3: v1 >= 4 and v2 >= v1 + 4,
    "II.A3": lambda v1, v2, v3: (2 < v1 < 4 and v1 + 2 < v2 <= 2 * v1)
    or (v1 >= 4 and v1 + 2 < v2 <= v1 + 4),
    "II.P": lambda v1, v2, v3: 2 < v1 <= 4 and v2 >= 2 * v1,
    "III.A1": lambda v1, v2, v3: v1 >= 2 and v1 + 1 <= v2 < v1 + 2 and v3 >= v1 + 2,
    "III.P": lambda v1, v2, v3: 0 < v1 <= 2 and Fraction(3, 2) * v1 <= v2 < 2 * v1
    and v3 >= 2 * v1,
    "III.A5": lambda v1, v2, v3: (0 < v1 < 2 and (v1 + v3) / 2 <= v2 < 2 * v1
                                  and v2 < v3 <= 2 * v1)
    or (v1 >= 2 and (v1 + v3) / 2 <= v2 < v1 + 2 and v2 < v3 <= v1 + 2),
    "III.A3sq": lambda v1, v2, v3: (v1 >= 2 and v1 < v2 <= v1 + 1 and v3 >= v1 + 2)
    or (v1 >= 2 and v1 < v2 <= (v1 + v3) / 2 and v2 < v3 <= v1 + 2)
    or (0 < v1 < 2 and v1 < v2 <= Fraction(3, 2) * v1 and v3 >= 2 * v1)
    or (0 < v1 < 2 and v1 < v2 <= (v1 + v3) / 2 and v3 < 2 * v1),
    "IV.A3": lambda v1, v2, v3: 4 < v2 <= 6,
    "IV.hi": lambda v1, v2, v3: v2 >= 6,
    "V.P": lambda v1, v2, v3: 2 < v1 <= 4 and v3 >= 2 * v1,
    "V.A2": lambda v1, v2, v3: v1 >= 4 and v3 >= v1 + 4,
    "V.A5": lambda v1, v2, v3: (2 < v1 < 4 and v1 + 2 < v3 <= 2 * v1)
    or (v1 >= 4 and v1 + 2 < v3 <= v1 + 4),
    "VI.A1": lambda v1, v2, v3: 1 <= v1 < 2 and v3 >= v1 + 2,
    "VI.P2": lambda v1, v2, v3: 0 < v1 <= 1 and v3 >= 3 * v1,
    "VI.A5": lambda v1, v2, v3: (0 < v1 < 1 and 2 * v1 < v3 <= 3 * v1)
    or (1 <= v1 < 2 and 2 * v1 < v3 <= v1 + 2),
    "VII.A5": lambda v1, v2, v3: 4 < v3 <= 6,
    "VII.hi": lambda v1, v2, v3: v3 >= 6,
}


def _as_float(q) -> float:
    return INF if q == INF else float(q)


@lru_cache(maxsize=64)
def classify_case(spec: MixtureSpec) -> ExpansionCase:
    """Regime of the expansion for ``spec``.

    Missing ``v2``/``v3`` count as infinite, so a single component lands in
    case I (``v1 < 2``), II (``v1 > 2``) or IV (``v1 = 2``). The seven regions
    cover every ``v1 < v2``; the final check only guards against an internal
    inconsistency.
    """
    v1, v2, v3 = _exact_vs(spec)
    cid = _case_id(v1, v2)
    rho = _primary_power(cid, v1, v2)
    second = _second_power(cid, v1, v2, v3)
    gamma = second - rho
    if not gamma > 0:
        raise ValidationError(
            "degrees of freedom (%s, %s, %s) fall outside every expansion regime"
            % (spec.vs[0], _as_float(v2), _as_float(v3)))
    return ExpansionCase(cid, _as_float(gamma), _as_float(rho))


def exact_powers(spec: MixtureSpec):
    """``(rho, rho + gamma)`` as exact rationals (``Fraction``)."""
    v1, v2, v3 = _exact_vs(spec)
    cid = _case_id(v1, v2)
    return _primary_power(cid, v1, v2), _second_power(cid, v1, v2, v3)


@lru_cache(maxsize=64)
def active_terms(spec: MixtureSpec) -> frozenset:
    """Names of the optional terms switched on for ``spec`` (``"III.A1"`` etc.)."""
    v = _exact_vs(spec)
    cid = classify_case(spec).case_id + "."
    return frozenset(k for k, pred in _PREDICATES.items() if k.startswith(cid) and pred(*v))


def norming_constant(spec: MixtureSpec, n: int) -> NormingConstants:
    """``a_n = (2 p1 C_{v1} T_{v1+1}(beta1 sqrt(v1+1)))^{1/v1} v1^{(v1-1)/(2 v1)} n^{1/v1}``."""
    n = _check_n(n)
    a = scale_constant(spec, n)
    return NormingConstants(a, a, 1.0 / spec.vs[0])


@dataclass(frozen=True)
class _Consts:
    v1: float
    v2: float
    v3: float
    P: float
    A1: float
    A2: float
    A3: float
    A4: float
    A5: float
    K1: float
    K2: float
    K3: float


@lru_cache(maxsize=64)
def _consts(spec: MixtureSpec) -> _Consts:
    tc = mixture_tail_coefficients(spec)
    kc = pdf_coefficients(spec)
    vs = list(spec.vs[:3]) + [INF] * (3 - min(3, spec.r))
    return _Consts(vs[0], vs[1], vs[2], 0.5 * tc.lead, tc.a1, tc.a2, tc.a3, tc.a4, tc.a5,
                   kc.k1, kc.k2, kc.k3)


def _cdf_terms(cid, on, c: _Consts, x):
    v1, v2, v3 = c.v1, c.v2, c.v3
    P, A1, A2, A3, A4, A5 = c.P, c.A1, c.A2, c.A3, c.A4, c.A5
    zero = 0.0 * x
    w = zero
    if cid == "I":
        k = -P * x ** (-2 * v1)
        if "I.A3" in on:
            w = w - A3 * x ** -v2
        if "I.P2" in on:
            w = w - (4.0 / 3.0 * P * P * x ** (-3 * v1) - k * k / 2)
        if "I.A1" in on:
            w = w - A1 * x ** (-v1 - 2)
    elif cid == "II":
        k = -A1 * x ** (-v1 - 2)
        if "II.A2" in on:
            w = w - (A2 * x ** (-v1 - 4) - k * k / 2)
        if "II.A3" in on:
            w = w - A3 * x ** -v2
        if "II.P" in on:
            w = w - P * x ** (-2 * v1)
    elif cid == "III":
        k = -A3 * x ** -v2
        if "III.A1" in on:
            w = w - A1 * x ** (-v1 - 2)
        if "III.P" in on:
            w = w - P * x ** (-2 * v1)
        if "III.A5" in on:
            w = w - A5 * x ** -v3
        if "III.A3sq" in on:
            w = w + A3 * A3 * x ** (-2 * v2) / 2
    elif cid == "IV":
        k = -(A1 + P) * x ** -4.0
        if "IV.A3" in on:
            w = w - A3 * x ** -v2
        if "IV.hi" in on:
            w = w - ((A2 + 2 * P * A1 + 4.0 / 3.0 * P * P) * x ** -6.0 - k * k / 2)
    elif cid == "V":
        k = -A1 * x ** (-v1 - 2) - A3 * x ** -v2
        if "V.P" in on:
            w = w - P * x ** (-2 * v1)
        if "V.A2" in on:
            w = w - ((A2 + A4) * x ** (-v1 - 4) - k * k / 2)
        if "V.A5" in on:
            w = w - A5 * x ** -v3
    elif cid == "VI":
        k = -(A3 + P) * x ** (-2 * v1)
        if "VI.A1" in on:
            w = w - A1 * x ** (-v1 - 2)
        if "VI.P2" in on:
            w = w - (2 * A3 * P * x ** (-v2 - v1) + 4.0 / 3.0 * P * P * x ** (-3 * v1) - k * k / 2)
        if "VI.A5" in on:
            w = w - A5 * x ** -v3
    else:
        k = -(A1 + A3 + P) * x ** -4.0
        if "VII.A5" in on:
            w = w - A5 * x ** -v3
        if "VII.hi" in on:
            w = w - ((A2 + 2 * A3 * P + 2 * A1 * P + 4.0 / 3.0 * P * P + A4) * x ** -6.0
                     - k * k / 2)
    return k, w


def _pdf_terms(cid, on, c: _Consts, x):
    v1, v2, v3 = c.v1, c.v2, c.v3
    P, A1, A2, A3, A4, A5 = c.P, c.A1, c.A2, c.A3, c.A4, c.A5
    K1, K2, K3 = c.K1, c.K2, c.K3
    zero = 0.0 * x
    q = zero

    def a3_pair():
        return A3 * (v2 / v1 * x ** -(v2 - v1) - x ** -v2)

    def a5_pair():
        return A5 * (v3 / v1 * x ** -(v3 - v1) - x ** -v3)

    def a1_pair():
        return K1 * x ** -2.0 - A1 * x ** (-v1 - 2)

    def p_pair():
        return P * (2.0 - x ** -v1) * x ** -v1

    if cid == "I":
        s = p_pair()
        if "I.A3" in on:
            q = q + a3_pair()
        if "I.A1" in on:
            q = q + a1_pair()
        if "I.P2" in on:
            q = q + P * P * (4.0 - 10.0 / 3.0 * x ** -v1 + 0.5 * x ** (-2 * v1)) * x ** (-2 * v1)
    elif cid == "II":
        s = a1_pair()
        if "II.A2" in on:
            q = q + (K3 * x ** -4.0 - (A2 + K1 * A1) * x ** (-v1 - 4)
                     + 0.5 * A1 * A1 * x ** (-2 * v1 - 4))
        if "II.A3" in on:
            q = q + a3_pair()
        if "II.P" in on:
            q = q + p_pair()
    elif cid == "III":
        s = a3_pair()
        if "III.A5" in on:
            q = q + a5_pair()
        if "III.P" in on:
            q = q + p_pair()
        if "III.A1" in on:
            q = q + a1_pair()
        if "III.A3sq" in on:
            q = q + A3 * A3 * (0.5 * x ** (-2 * v2) - v2 / v1 * x ** (-2 * v2 + v1))
    elif cid == "IV":
        s = (K1 + 2 * P) * x ** -2.0 - (A1 + P) * x ** -4.0
        if "IV.A3" in on:
            q = q + A3 * (v2 / 2 * x ** -(v2 - 2) - x ** -v2)
        if "IV.hi" in on:
            q = q + (-(A2 + A1 * K1 + (2 * A1 + K1 / 2) * 2 * P + 5.0 / 6.0 * 4 * P * P) * x ** -6.0
                     + (K3 + (A1 + K1) * 2 * P + 4 * P * P) * x ** -4.0
                     + 0.5 * (A1 + P) ** 2 * x ** -8.0)
    elif cid == "V":
        s = (K1 + A3 * (1 + 2 / v1)) * x ** -2.0 - (A1 + A3) * x ** (-v1 - 2)
        if "V.P" in on:
            q = q + P * (2 * x ** -v1 - x ** (-2 * v1))
        if "V.A5" in on:
            q = q + a5_pair()
        if "V.A2" in on:
            q = q + (0.5 * (A1 + A3) ** 2 * x ** (-2 * v1 - 4) + (K2 + K3) * x ** -4.0
                     - (((1 + 2 / v1) * A3 + K1) * (A1 + A3) + A2 + A4) * x ** (-v1 - 4))
    elif cid == "VI":
        s = (P + A3) * (2 * x ** -v1 - x ** (-2 * v1))
        if "VI.A1" in on:
            q = q + a1_pair()
        if "VI.A5" in on:
            q = q + a5_pair()
        if "VI.P2" in on:
            q = q + (P * P * x ** (-2 * v1) * (4.0 - 10.0 / 3.0 * x ** -v1)
                     + 6 * P * A3 * (x ** (-2 * v1) - x ** (-3 * v1))
                     - 2 * A3 * A3 * x ** (-3 * v1)
                     + 0.5 * (A3 + P) ** 2 * x ** (-4 * v1))
    else:
        s = (K1 + 2 * A3 + 2 * P) * x ** -2.0 - (A1 + A3 + P) * x ** -4.0
        if "VII.A5" in on:
            q = q + A5 * (v3 / 2 * x ** -(v3 - 2) - x ** -v3)
        if "VII.hi" in on:
            q = q + (0.5 * (A1 + A3 + P) ** 2 * x ** -8.0
                     - (A4 + A2 + 2 * A3 * A3 + 2 * A1 * A3 + A1 * K1 + A3 * K1
                        + (2 * A1 + 3 * A3 + K1 / 2) * 2 * P + 5.0 / 6.0 * 4 * P * P) * x ** -6.0
                     + (K2 + K3 + (A1 + K1 + 3 * A3) * 2 * P + 4 * P * P) * x ** -4.0)
    return s, q


def cdf_terms(spec: MixtureSpec, x):
    """``(k(x), w(x))``, the first and second correction functions of the cdf."""
    return _cdf_terms(classify_case(spec).case_id, active_terms(spec), _consts(spec), _check_x(x))


def pdf_terms(spec: MixtureSpec, x):
    """``(s(x), q(x))``, the first and second correction functions of the density."""
    return _pdf_terms(classify_case(spec).case_id, active_terms(spec), _consts(spec), _check_x(x))


def _check_x(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(arr > 0) or not np.all(np.isfinite(arr)):
        raise ValidationError("x must be positive and finite")
    return float(arr) if arr.ndim == 0 else arr


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValidationError("n must be a positive integer, got %r" % (n,))
    return int(n)


def _check_order(order) -> int:
    if order not in (1, 2, 3):
        raise ValidationError("order must be 1, 2 or 3, got %r" % (order,))
    return int(order)


def _corrections(spec, n, order, first, second):
    case = classify_case(spec)
    a = scale_constant(spec, n)
    out = 1.0
    if order >= 2:
        out = out + first * a ** -case.primary_power
    if order == 3:
        out = out + second * a ** -case.second_power
    return out


def cdf_expansion(spec: MixtureSpec, n: int, x, order: int):
    """Approximation of ``F^n(a_n x)`` of the given order (1, 2 or 3)."""
    n, order, x = _check_n(n), _check_order(order), _check_x(x)
    v1 = spec.vs[0]
    phi = np.exp(-x ** -v1)
    if order == 1:
        return phi
    k, w = cdf_terms(spec, x)
    return _corrections(spec, n, order, k, w) * phi


def pdf_expansion(spec: MixtureSpec, n: int, x, order: int):
    """Approximation of the density of ``M_n / a_n`` at ``x``."""
    n, order, x = _check_n(n), _check_order(order), _check_x(x)
    v1 = spec.vs[0]
    dphi = v1 * x ** (-v1 - 1) * np.exp(-x ** -v1)
    if order == 1:
        return dphi
    s, q = pdf_terms(spec, x)
    return _corrections(spec, n, order, s, q) * dphi


def cdf_expansion_power(spec: MixtureSpec, n: int, x, order: int):
    """Approximation of ``P((M_n / alpha_n)^{v1} <= x)``; equals
    ``cdf_expansion`` at ``x^{1/v1}``."""
    x = _check_x(x)
    return cdf_expansion(spec, n, x ** (1.0 / spec.vs[0]), order)


def pdf_expansion_power(spec: MixtureSpec, n: int, x, order: int):
    """Density counterpart of :func:`cdf_expansion_power`."""
    x = _check_x(x)
    v1 = spec.vs[0]
    return x ** (1.0 / v1 - 1.0) / v1 * pdf_expansion(spec, n, x ** (1.0 / v1), order)
