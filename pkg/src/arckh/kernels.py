"""Backend selection for the sparse integer kernels.

The compiled extension ``arckh._kernels`` is used when it is importable;
otherwise the pure-Python reference ``arckh._kernels_py`` is used.  Setting
the environment variable ``ARCKH_PURE_PYTHON=1`` forces the fallback.
"""

import os

if os.environ.get("ARCKH_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import diagonalize, eliminate_units
    BACKEND = "python"
else:
    try:
        from ._kernels import diagonalize, eliminate_units
        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        from ._kernels_py import diagonalize, eliminate_units
        BACKEND = "python"

__all__ = ["BACKEND", "diagonalize", "eliminate_units"]
