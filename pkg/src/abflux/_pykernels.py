"""Pure-numpy implementations of the quadrature hot kernels.

These are the reference versions; ``_ckernels.pyx`` must agree with them to
rounding.
"""
import numpy as np

from .constants import MU0_OVER_4PI


def charge_b(points, xe, qv):
    """mu0/4pi * qv x (r - xe) / |r - xe|^3 for each row r of ``points``."""
    d = points - xe
    r2 = np.einsum("ij,ij->i", d, d)
    return (MU0_OVER_4PI / (r2 * np.sqrt(r2)))[:, None] * np.cross(qv, d)


def charge_a(points, xe, qv):
    """mu0/4pi * qv / |r - xe| (Coulomb gauge)."""
    d = points - xe
    r = np.sqrt(np.einsum("ij,ij->i", d, d))
    return (MU0_OVER_4PI / r)[:, None] * np.asarray(qv, dtype=float)[None, :]


def biot_kernel(points, bvals, x):
    """B(r) x (x - r) / |x - r|^3, without the 1/4pi prefactor."""
    d = x - points
    r2 = np.einsum("ij,ij->i", d, d)
    return np.cross(bvals, d) / (r2 * np.sqrt(r2))[:, None]


def cell_sums(values, weights, volumes):
    """Per-cell quadrature sums.

    ``values`` is (ncell*npts, m) laid out cell-major; returns (ncell, m).
    """
    ncell = volumes.shape[0]
    npts = weights.shape[0]
    v = values.reshape(ncell, npts, -1)
    return np.einsum("cpm,p->cm", v, weights) * volumes[:, None]


def cyl_coords(points, center, axis):
    """Distance from the axis line and axial coordinate of each point."""
    d = points - center
    z = d @ axis
    radial = d - z[:, None] * axis
    return np.sqrt(np.einsum("ij,ij->i", radial, radial)), z
