"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set CRITGB_FORCE_PYTHON_KERNEL=1 to ignore the extension (used by the
backend-comparison benchmark and tests).
"""

import os

from . import _pykernel

if os.environ.get("CRITGB_FORCE_PYTHON_KERNEL"):
    _impl = _pykernel
    BACKEND = "python"
else:
    try:
        from . import _kernel as _impl
        BACKEND = "compiled"
    except ImportError:
        _impl = _pykernel
        BACKEND = "python"

rref = _impl.rref
axpy_merge = _impl.axpy_merge


def backends():
    """(name, module) pairs for every available backend."""
    out = [("python", _pykernel)]
    try:
        from . import _kernel
        out.insert(0, ("compiled", _kernel))
    except ImportError:
        pass
    return out
