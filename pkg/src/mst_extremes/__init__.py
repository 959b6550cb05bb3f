"""Extreme value expansions for maxima of skew-t mixtures.

The package evaluates the skew-t mixture distribution, its large-x tail
expansion, and the first three orders of the expansion of the distribution
and density of the normalized maximum under linear and power normalization,
together with quadrature reference values for checking them.
"""
__version__ = "0.1.0"

from mst_extremes.distributions import (  # noqa: E402
    MixtureSpec,
    SkewTParams,
    example_spec,
    load_spec,
    mixture_cdf,
    mixture_pdf,
    mixture_sf,
    parse_spec,
)
from mst_extremes.evt_expansions import (  # noqa: E402
    cdf_expansion,
    cdf_expansion_power,
    classify_case,
    pdf_expansion,
    pdf_expansion_power,
)
from mst_extremes.exceptions import NumericalFault, ValidationError  # noqa: E402
from mst_extremes.tail_expansion import mixture_tail_coefficients, pdf_coefficients  # noqa: E402

__all__ = [
    "__version__",
    "MixtureSpec",
    "SkewTParams",
    "example_spec",
    "load_spec",
    "parse_spec",
    "mixture_cdf",
    "mixture_pdf",
    "mixture_sf",
    "classify_case",
    "cdf_expansion",
    "cdf_expansion_power",
    "pdf_expansion",
    "pdf_expansion_power",
    "mixture_tail_coefficients",
    "pdf_coefficients",
    "NumericalFault",
    "ValidationError",
]
