"""Backend selection for the hot kernels.

The compiled extension is used when it has been built; otherwise the numpy
fallback is used. Setting ``MONOREL_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

if os.environ.get("MONOREL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels_cy as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "cython" if _impl is not _kernels_py else "python"

range_quadratic = _impl.range_quadratic
grid_sup = _impl.grid_sup
