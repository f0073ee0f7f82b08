"""Select the kernel implementation at import time.

The compiled extension is preferred. Setting ``QSAGNAC_PURE_PYTHON=1`` forces
the numpy fallback, which is also used when the extension was not built.
"""
import os

from . import _kernels_py

if os.environ.get("QSAGNAC_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels_c as kernels
        BACKEND = "cython"
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"
