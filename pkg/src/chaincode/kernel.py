"""Backend selection for the hot kernels.

The compiled module is used when it imports; setting ``CHAINCODE_PURE=1``
forces the pure-Python reference implementation.
"""

from __future__ import annotations

import os

from . import _kernel_py

if os.environ.get("CHAINCODE_PURE"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

BACKEND = "python" if _impl is _kernel_py else "cython"

howell = _impl.howell
reduce_vec = _impl.reduce_vec
coset_reps = _impl.coset_reps

__all__ = ["BACKEND", "howell", "reduce_vec", "coset_reps"]
