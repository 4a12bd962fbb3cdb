"""Pick the compiled kernels when present, else the numpy fallback.

Set ``CUBEINT_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fallback

if os.environ.get("CUBEINT_PURE_PYTHON", "") not in ("", "0"):
    kernels = _fallback
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _fallback

BACKEND = kernels.NAME
