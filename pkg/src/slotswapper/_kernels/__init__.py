"""Kernel backend selection.

The compiled kernel is an optimization only; the pure-Python twin produces
bit-identical output. Set SLOTSWAPPER_PURE_PY=1 to force the Python kernel
(the compiled one is preferred whenever it imports cleanly).
"""
import os

from . import swap_py

if os.environ.get("SLOTSWAPPER_PURE_PY", "0") not in ("", "0"):
    _impl = swap_py
    _backend = "python"
else:
    try:
        from . import swap_cy as _impl

        _backend = "cython"
    except ImportError:
        _impl = swap_py
        _backend = "python"

run_pass = _impl.run_pass


def backend_name() -> str:
    """Name of the kernel chosen at import time: 'cython' or 'python'."""
    return _backend
