"""Backend selection for the conformal reduction kernel.

The compiled extension is used when it imports; otherwise, or when
``TORICDUAL_PURE_PYTHON`` is set, the pure-Python module is used.
"""

import os

from . import _pykernels

try:
    if os.environ.get("TORICDUAL_PURE_PYTHON"):
        raise ImportError("pure Python backend forced")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def reducer_set(n, backend=None):
    """Return an empty reducer set over Z^n for the requested backend."""
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernel not available")
        return _ckernels.ReducerSet(n)
    if backend == "python":
        return _pykernels.ReducerSet(n)
    raise ValueError(f"unknown backend {backend!r}")
