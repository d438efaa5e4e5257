"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``ARBOREAL_PURE_PYTHON=1``
to force the pure-Python fallback. ``BACKEND`` names the active one.
"""
import os

import numpy as np

from . import _kernels_py

if os.environ.get("ARBOREAL_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"


def _i64(a, shape2=None):
    arr = np.ascontiguousarray(a, dtype=np.int64)
    if shape2 is not None and arr.size == 0:
        arr = arr.reshape(0, shape2)
    return arr


def tree_triplets(child_ptr, child_idx, leaf_code, root, impl=None):
    impl = impl or _impl
    return impl.tree_triplets(_i64(child_ptr), _i64(child_idx), _i64(leaf_code), int(root))


def build(trip, leaves, n_codes, impl=None):
    impl = impl or _impl
    return impl.build(_i64(trip, 3), _i64(leaves), int(n_codes))


def closure_blocks(trip, duets, n_codes, impl=None):
    impl = impl or _impl
    return impl.closure_blocks(_i64(trip, 3), _i64(duets, 2), int(n_codes))


def pair_components(a, b, n, impl=None):
    impl = impl or _impl
    return impl.pair_components(_i64(a), _i64(b), int(n))
