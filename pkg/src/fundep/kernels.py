"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
twin.  Set ``FUNDEP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from fundep import _kernels_py as python_backend

if os.environ.get("FUNDEP_PURE_PYTHON", "") not in ("", "0"):
    compiled_backend = None
else:
    try:
        from fundep import _kernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = active.BACKEND
nash_scan = active.nash_scan
closure_pass = active.closure_pass


def backends():
    """Available backends by name, compiled first."""
    out = {}
    if compiled_backend is not None:
        out[compiled_backend.BACKEND] = compiled_backend
    out[python_backend.BACKEND] = python_backend
    return out
