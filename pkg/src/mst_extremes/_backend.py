"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``MST_EXTREMES_PURE_PYTHON=1`` to force the fallback (used by the test
suite to exercise both paths).
"""
import os

if os.environ.get("MST_EXTREMES_PURE_PYTHON"):
    from mst_extremes import _kernels_py as kernels
else:
    try:
        from mst_extremes import _kernels as kernels
    except ImportError:  # extension not built
        from mst_extremes import _kernels_py as kernels

BACKEND = kernels.BACKEND
