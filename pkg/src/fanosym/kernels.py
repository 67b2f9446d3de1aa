"""Backend selection for the matrix kernels.

The compiled extension ``_kernels`` is used when it was built and imports
cleanly; otherwise the numpy reference implementation in ``_kernels_py``
takes over.  Setting ``FANOSYM_PURE_PYTHON=1`` forces the fallback.  Both
backends return identical integers: the wrappers below check magnitudes and
switch to Python-integer (object) arrays whenever int64 could overflow.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

_LIMIT = 1 << 62

try:
    if os.environ.get("FANOSYM_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _maxabs(x) -> int:
    if x.size == 0:
        return 0
    return int(np.max(np.abs(x)))


def _impl(name: str, backend: str | None):
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not available")
        return getattr(_compiled, name)
    return getattr(_kernels_py, name)


def mul_canon(a, ad, b, bd, backend: str | None = None):
    """Lowest-terms products ``(a[f]/ad[f]) @ (b[f]/bd[f])``.

    ``b``/``bd`` may carry a single matrix which is then applied to every f.
    """
    if b.ndim == 2:
        b = b[None]
        bd = np.asarray(bd).reshape(1)
    n = a.shape[-1]
    small = (
        a.dtype != object
        and b.dtype != object
        and n * _maxabs(a) * max(_maxabs(b), 1) < _LIMIT
        and _maxabs(ad) * _maxabs(bd) < _LIMIT
    )
    if small:
        return _impl("mul_canon", backend)(
            np.ascontiguousarray(a, dtype=np.int64),
            np.ascontiguousarray(ad, dtype=np.int64),
            np.ascontiguousarray(b, dtype=np.int64),
            np.ascontiguousarray(bd, dtype=np.int64),
        )
    c, d = _kernels_py.mul_canon(a.astype(object), ad.astype(object), b.astype(object), bd.astype(object))
    return _shrink(c), _shrink(d)


def charpoly_batch(a, backend: str | None = None):
    """Integer coefficients of det(x I - a[f]), highest degree first."""
    n = a.shape[-1]
    if a.dtype != object and (n * max(_maxabs(a), 1)) ** (n + 1) < _LIMIT:
        return _impl("charpoly_batch", backend)(np.ascontiguousarray(a, dtype=np.int64))
    return _kernels_py.charpoly_batch(a.astype(object))


def _shrink(x):
    """Return int64 when every entry fits, else keep Python integers."""
    if x.size == 0 or _maxabs(x) < _LIMIT:
        return x.astype(np.int64)
    return x
