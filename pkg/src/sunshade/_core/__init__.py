"""Numeric core: SMO solver and CART tree builder.

Two interchangeable backends implement the hot kernels:

* ``_fast``, a compiled Cython extension (built by setup.py);
* ``pure``, a vectorized NumPy fallback.

The compiled backend is selected at import when available. Set the
environment variable ``SUNSHADE_PURE_PYTHON=1`` to force the fallback
(used by the backend benchmark and for source checkouts without a
compiler). Both backends implement identical algorithms: tree builds are
bit-for-bit identical across backends, SMO solutions agree to floating
point roundoff.
"""

import importlib
import os

from sunshade._core import pure

_force_pure = os.environ.get("SUNSHADE_PURE_PYTHON", "").lower() in (
    "1", "true", "yes")

_fast = None
if not _force_pure:
    try:
        _fast = importlib.import_module("sunshade._core._fast")
    except ImportError:
        _fast = None

_impl = _fast if _fast is not None else pure


def backend_name() -> str:
    """Name of the active backend: 'cython' or 'pure'."""
    return "cython" if _impl is not pure else "pure"


def get_backend(name=None):
    """Return the backend module by name (None = the active one)."""
    if name is None:
        return _impl
    if name == "pure":
        return pure
    if name == "cython":
        if _fast is None:
            raise RuntimeError("compiled backend not available")
        return _fast
    raise ValueError(f"unknown backend {name!r}")


def smo_solve(X, y, C, kernel_id, gamma, coef0, degree, tol, max_passes,
              cache_mb=384.0):
    """Solve the soft-margin SVM dual by SMO. See `pure.smo_solve`."""
    return _impl.smo_solve(X, y, C, kernel_id, gamma, coef0, degree, tol,
                           max_passes, cache_mb)


def build_tree(X, y, max_features, min_samples_split, seed):
    """Grow a CART decision tree. See `pure.build_tree`."""
    return _impl.build_tree(X, y, max_features, min_samples_split, seed)
