"""Skew-t components and their finite mixtures.

A component ``ST_v(beta)`` has density

    f(x) = 2 t_v(x) T_{v+1}(beta x sqrt((v+1)/(x^2+v)))

where ``t_v``/``T_v`` are the Student-t density and distribution function.
A mixture is a weighted sum of such components with strictly increasing
degrees of freedom.

Distribution functions are computed by adaptive Gauss-Kronrod quadrature of
the survival integral. The part beyond ``max(x, 1)`` is mapped onto a finite
interval through ``u = 1/t`` (and ``s = u**v`` when ``v < 2``) so that far
tail probabilities keep their relative accuracy.
"""
from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from numbers import Real
from pathlib import Path
from typing import Iterable, Sequence

from mst_extremes._backend import kernels as _k
from mst_extremes.exceptions import ValidationError

__all__ = [
    "DEFAULT_TOL",
    "SkewTParams",
    "MixtureSpec",
    "default_tol",
    "skew_t_pdf",
    "skew_t_cdf",
    "skew_t_sf",
    "mixture_pdf",
    "mixture_cdf",
    "mixture_sf",
    "parse_spec",
    "load_spec",
    "example_spec",
]

DEFAULT_TOL = 1e-12
MIN_TOL = 1e-13
MAX_TOL = 1e-6
WEIGHT_SUM_TOL = 1e-12
TOL_ENV = "MST_EXTREMES_TOL"

_DATA = Path(__file__).resolve().parent / "data"


def check_tol(tol) -> float:
    """Validate a quadrature tolerance and return it as a float."""
    try:
        tol = float(tol)
    except (TypeError, ValueError):
        raise ValidationError("tolerance must be a number, got %r" % (tol,)) from None
    if not MIN_TOL <= tol <= MAX_TOL:
        raise ValidationError("tolerance must lie in [%g, %g], got %r" % (MIN_TOL, MAX_TOL, tol))
    return tol


def default_tol() -> float:
    """Quadrature tolerance: ``$MST_EXTREMES_TOL`` if set, else ``DEFAULT_TOL``."""
    env = os.environ.get(TOL_ENV)
    if env is None or not env.strip():
        return DEFAULT_TOL
    try:
        return check_tol(env)
    except ValidationError as exc:
        raise ValidationError("%s: %s" % (TOL_ENV, exc)) from None


@dataclass(frozen=True)
class SkewTParams:
    """Degrees of freedom ``v > 0`` and slant ``beta`` of one skew-t law."""

    v: float
    beta: float = 0.0

    def __post_init__(self):
        v = _real("v", self.v)
        beta = _real("beta", self.beta)
        if not (v > 0.0 and math.isfinite(v)):
            raise ValidationError("v must be positive and finite, got %r" % v)
        if not math.isfinite(beta):
            raise ValidationError("beta must be finite, got %r" % beta)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class MixtureSpec:
    """Finite skew-t mixture.

    Parameters
    ----------
    components : sequence of (SkewTParams, weight)
        Stored sorted by ``v``. Weights must be positive and sum to one
        within ``1e-12``; equal degrees of freedom are rejected.

    Use :meth:`from_components` to build from plain tuples.
    """

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValidationError("a mixture needs at least one component")
        checked = []
        for i, item in enumerate(comps):
            try:
                params, p = item
            except (TypeError, ValueError):
                raise ValidationError("expected a (SkewTParams, weight) pair", i) from None
            if not isinstance(params, SkewTParams):
                raise ValidationError("expected SkewTParams, got %r" % (params,), i)
            try:
                p = _real("p", p)
            except ValidationError as exc:
                raise ValidationError(str(exc), i) from None
            if not (p > 0.0 and math.isfinite(p)):
                raise ValidationError("weight p must be positive, got %r" % p, i)
            checked.append((i, params, p))
        # stable sort keeps the original index for diagnostics
        checked.sort(key=lambda t: t[1].v)
        for (_, prev, _), (i, cur, _) in zip(checked, checked[1:]):
            if cur.v == prev.v:
                raise ValidationError(
                    "degrees of freedom must be distinct (v=%r repeats)" % cur.v, i)
        total = math.fsum(p for _, _, p in checked)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValidationError(
                "weights must sum to 1 within %g, got %.17g" % (WEIGHT_SUM_TOL, total),
                checked[-1][0] if len(checked) > 1 else 0)
        object.__setattr__(self, "components", tuple((c, p) for _, c, p in checked))

    @classmethod
    def from_components(cls, items: Iterable[Sequence[float]]) -> "MixtureSpec":
        """Build from ``(v, beta, p)`` triples."""
        comps = []
        for i, item in enumerate(items):
            try:
                v, beta, p = item
                comps.append((SkewTParams(v, beta), p))
            except ValidationError as exc:
                raise ValidationError(str(exc), i) from None
            except (TypeError, ValueError):
                raise ValidationError("expected a (v, beta, p) triple", i) from None
        return cls(tuple(comps))

    @property
    def r(self) -> int:
        return len(self.components)

    @property
    def vs(self) -> tuple:
        return tuple(c.v for c, _ in self.components)

    @property
    def betas(self) -> tuple:
        return tuple(c.beta for c, _ in self.components)

    @property
    def weights(self) -> tuple:
        return tuple(p for _, p in self.components)

    def to_dict(self) -> dict:
        return {"components": [{"v": c.v, "beta": c.beta, "p": p} for c, p in self.components]}


def _real(name, value) -> float:
    if isinstance(value, bool) or not isinstance(value, Real):
        raise ValidationError("%s must be a real number, got %r" % (name, value))
    return float(value)


def skew_t_pdf(params: SkewTParams, x: float) -> float:
    """Skew-t density at ``x``."""
    return _k.skew_t_pdf(params.v, params.beta, float(x))


def skew_t_sf(params: SkewTParams, x: float, tol: float | None = None) -> float:
    """Survival probability ``P(X > x)``, relative error about ``tol`` for ``x >= 0``."""
    tol = default_tol() if tol is None else check_tol(tol)
    return _k.skew_t_sf(params.v, params.beta, float(x), tol)


def skew_t_cdf(params: SkewTParams, x: float, tol: float | None = None) -> float:
    """Distribution function, absolute error at most ``tol``."""
    tol = default_tol() if tol is None else check_tol(tol)
    return _k.skew_t_cdf(params.v, params.beta, float(x), tol)


def mixture_pdf(spec: MixtureSpec, x: float) -> float:
    """Mixture density ``sum_i p_i f_i(x)``."""
    return _k.mixture_pdf_many(spec.vs, spec.betas, spec.weights, [float(x)])[0]


def mixture_sf(spec: MixtureSpec, x: float, tol: float | None = None) -> float:
    """Mixture survival probability; each component gets tolerance ``tol / r``."""
    tol = default_tol() if tol is None else check_tol(tol)
    return _k.mixture_sf_many(spec.vs, spec.betas, spec.weights, [float(x)], tol / spec.r)[0]


def mixture_cdf(spec: MixtureSpec, x: float, tol: float | None = None) -> float:
    """Mixture distribution function, absolute error at most ``tol``."""
    return 1.0 - mixture_sf(spec, x, tol)


def mixture_pdf_many(spec: MixtureSpec, xs: Iterable[float]) -> list:
    return _k.mixture_pdf_many(spec.vs, spec.betas, spec.weights, [float(x) for x in xs])


def mixture_sf_many(spec: MixtureSpec, xs: Iterable[float], tol: float | None = None) -> list:
    tol = default_tol() if tol is None else check_tol(tol)
    return _k.mixture_sf_many(spec.vs, spec.betas, spec.weights,
                              [float(x) for x in xs], tol / spec.r)


_FIELDS = ("v", "beta", "p")


def parse_spec(doc) -> MixtureSpec:
    """Validate a decoded JSON document ``{"components": [{"v", "beta", "p"}, ...]}``.

    Raises
    ------
    ValidationError
        On the first problem found; ``exc.component`` is its index when the
        problem belongs to a single component.
    """
    if not isinstance(doc, dict):
        raise ValidationError("spec must be a JSON object with a 'components' list")
    extra = set(doc) - {"components"}
    if extra:
        raise ValidationError("unknown top-level key(s): %s" % ", ".join(sorted(extra)))
    comps = doc.get("components")
    if not isinstance(comps, list) or not comps:
        raise ValidationError("'components' must be a non-empty list")
    items = []
    for i, c in enumerate(comps):
        if not isinstance(c, dict):
            raise ValidationError("component must be an object", i)
        missing = [k for k in _FIELDS if k not in c]
        if missing:
            raise ValidationError("missing field(s): %s" % ", ".join(missing), i)
        unknown = sorted(set(c) - set(_FIELDS))
        if unknown:
            raise ValidationError("unknown field(s): %s" % ", ".join(unknown), i)
        items.append((c["v"], c["beta"], c["p"]))
    return MixtureSpec.from_components(items)


def load_spec(path) -> MixtureSpec:
    """Read and validate a JSON mixture specification from ``path``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError("cannot read spec %s: %s" % (path, exc.strerror or exc)) from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("spec %s is not valid JSON: %s" % (path, exc)) from None
    return parse_spec(doc)


def example_spec(number: int) -> MixtureSpec:
    """One of the bundled example mixtures (1 or 2)."""
    if number not in (1, 2):
        raise ValidationError("bundled examples are 1 and 2, got %r" % (number,))
    return load_spec(_DATA / ("example%d.json" % number))
