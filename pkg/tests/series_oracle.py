"""Brute-force series expansion of F^n(a_n x) and its density in powers of 1/a_n.

Independent of the case-by-case closed forms in ``evt_expansions``: it starts
from the per-component tail expansions, forms ``n log(1 - S)`` and ``exp`` as
truncated power series with exact (rational) exponents, and reads off the
coefficients. At a fixed ``x`` every coefficient is a float.
"""
import math
from fractions import Fraction

from mst_extremes.tail_expansion import (
    component_a1,
    component_a2,
    component_c1,
    component_c2,
    component_lead,
)

CUTOFF = Fraction(4)


def _exact(v):
    return Fraction(repr(float(v)))


def _mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            if e <= CUTOFF:
                out[e] = out.get(e, 0.0) + c1 * c2
    return out


def _add(p, q, scale=1.0):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0.0) + scale * c
    return out


def _scale(p, s):
    return {e: s * c for e, c in p.items()}


def _powers(p, count):
    out = [{Fraction(0): 1.0}]
    for _ in range(count):
        out.append(_mul(out[-1], p))
    return out


def expand(spec, x):
    """Return ``(cdf, pdf)``: dicts exponent -> coefficient of ``F^n/Phi`` and
    ``g_n/Phi'`` in powers of ``1/a_n``."""
    x = float(x)
    comps = spec.components
    c1, p1 = comps[0]
    v1 = _exact(c1.v)
    lead1 = component_lead(c1, p1)
    btil = {}
    dser = {}
    for c, p in comps:
        dv = _exact(c.v) - v1
        r = component_lead(c, p) / lead1
        for extra, coef, dcoef in ((0, 1.0, 1.0), (2, component_a1(c), component_c1(c)),
                                   (4, component_a2(c), component_c2(c))):
            e = dv + extra
            if e <= CUTOFF:
                xe = x ** -float(e)
                btil[e] = btil.get(e, 0.0) + r * coef * xe
                dser[e] = dser.get(e, 0.0) + c.v / c1.v * r * dcoef * xe
    xv = x ** -float(v1)
    s = _scale({e + v1: c for e, c in btil.items() if e + v1 <= CUTOFF}, lead1 * xv)
    kmax = int(CUTOFF / v1) + 2
    spow = _powers(s, kmax)
    # sum_k S^{k-1} / k
    tail = {}
    for k in range(1, kmax + 1):
        tail = _add(tail, spow[k - 1], 1.0 / k)
    h = _scale(_mul(btil, tail), -xv)
    h[Fraction(0)] = h.get(Fraction(0), 0.0) + xv
    assert abs(h[Fraction(0)]) < 1e-12 * max(1.0, xv)
    h.pop(Fraction(0))
    hmin = min(h) if h else CUTOFF
    jmax = int(CUTOFF / hmin) + 1
    hpow = _powers(h, jmax)
    cdf = {}
    for j in range(jmax + 1):
        cdf = _add(cdf, hpow[j], 1.0 / math.factorial(j))
    geo = {}
    for k in range(kmax + 1):
        geo = _add(geo, spow[k])
    pdf = _mul(_mul(dser, geo), cdf)
    return cdf, pdf


def leading_terms(series, tol=1e-12):
    """Exponents and coefficients of the first two nonzero corrections."""
    scale = max(abs(c) for c in series.values())
    items = sorted((e, c) for e, c in series.items() if e > 0 and abs(c) > tol * scale)
    return items[:2]
