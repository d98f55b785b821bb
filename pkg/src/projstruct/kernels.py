"""Backend selection for the numerical transport kernels.

The compiled extension is used when it has been built; otherwise the
pure-Python implementation is used. Setting ``PROJSTRUCT_PURE_PYTHON=1``
forces the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("PROJSTRUCT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _kernels_py
else:
    _impl = _kernels_py

riccati_circle = _impl.riccati_circle
fuchsian_path = _impl.fuchsian_path

__all__ = ["BACKEND", "riccati_circle", "fuchsian_path"]
