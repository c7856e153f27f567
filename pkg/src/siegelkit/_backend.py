"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``SIEGELKIT_PURE_PYTHON`` is set to a non-empty value
other than ``0``, the pure-Python reference kernels are used.
"""

import os

from . import _pykernels

_force_pure = os.environ.get("SIEGELKIT_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_pure:
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as kernels
    COMPILED = True
except ImportError:
    kernels = _pykernels
    COMPILED = False

BACKEND = "compiled" if COMPILED else "python"


def available_backends():
    """Map backend name to kernel module for every importable backend."""
    out = {"python": _pykernels}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["compiled"] = _kernels
    return out
