"""Hot loops, with a compiled and a pure-array implementation.

The compiled (numba) path is used when importable. Set ``WCCKIT_BACKEND=numpy``
to force the fallback; both paths return identical results.
"""

import os
import warnings

from . import _numpy

BACKEND_ENV = "WCCKIT_BACKEND"


def _select():
    want = os.environ.get(BACKEND_ENV, "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"{BACKEND_ENV} must be 'numba' or 'numpy', got {want!r}")
    if want == "numpy":
        return _numpy
    try:
        from . import _numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        warnings.warn("numba not importable, using numpy kernels", RuntimeWarning)
        return _numpy
    return _numba


backend = _select()

edge_support = backend.edge_support
community_counts = backend.community_counts
best_partition = backend.best_partition
permutation_extreme_count = backend.permutation_extreme_count


def get_backend(name):
    """Return the kernel module called ``name`` ('numba' or 'numpy')."""
    if name == "numpy":
        return _numpy
    if name == "numba":
        from . import _numba

        return _numba
    raise ValueError(f"unknown backend {name!r}")
