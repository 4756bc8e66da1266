"""Hot-kernel dispatch.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
numpy versions in ``_pykernels`` are used. Set ``ABFLUX_PURE_PYTHON=1`` to
force the fallback.
"""
import os

import numpy as np

from . import _pykernels

_FORCE_PY = os.environ.get("ABFLUX_PURE_PYTHON", "") not in ("", "0")

try:
    if _FORCE_PY:
        raise ImportError("pure-python kernels forced")
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:
    _impl = _pykernels
    BACKEND = "numpy"


def _rows(a):
    return np.ascontiguousarray(a, dtype=float).reshape(-1, 3)


def charge_b(points, xe, qv):
    return _impl.charge_b(_rows(points), np.asarray(xe, float), np.asarray(qv, float))


def charge_a(points, xe, qv):
    return _impl.charge_a(_rows(points), np.asarray(xe, float), np.asarray(qv, float))


def biot_kernel(points, bvals, x):
    return _impl.biot_kernel(_rows(points), _rows(bvals), np.asarray(x, float))


def cell_sums(values, weights, volumes):
    values = np.ascontiguousarray(values, dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    return _impl.cell_sums(
        values,
        np.ascontiguousarray(weights, dtype=float),
        np.ascontiguousarray(volumes, dtype=float),
    )


def cyl_coords(points, center, axis):
    return _impl.cyl_coords(_rows(points), np.asarray(center, float), np.asarray(axis, float))
