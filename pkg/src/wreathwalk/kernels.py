"""Kernel backend selected at import time.

The compiled extension is used when it was built; otherwise, or when
``WREATH_PURE_PYTHON=1`` is set, the pure-Python reference implementation is used.
Both produce identical outputs for identical inputs.
"""

import os

from . import _pykernels

if os.environ.get("WREATH_PURE_PYTHON") == "1":
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"
    else:
        BACKEND = "cython"

build_right_mul_maps = _impl.build_right_mul_maps
walk_fixed_points = _impl.walk_fixed_points
walk_states = _impl.walk_states
twisted_coupons = _impl.twisted_coupons


def backends():
    """Every importable backend, keyed by name (used by tests and benchmarks)."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
