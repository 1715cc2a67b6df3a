"""Pick the cubic kernel implementation once, at import time.

The compiled ``_ckernels`` extension is preferred. Setting the environment
variable ``CUBIPROX_PURE_PYTHON`` to a non-empty value other than ``0`` forces
the pure-Python twin, which is also used whenever the extension is missing.
"""
import os

if os.environ.get("CUBIPROX_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as kernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        from . import _pykernels as kernels

BACKEND = kernels.BACKEND

__all__ = ["kernels", "BACKEND"]
