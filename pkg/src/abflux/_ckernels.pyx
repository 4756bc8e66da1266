# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the quadrature hot kernels (see _pykernels)."""
import numpy as np

from libc.math cimport sqrt

from .constants import MU0_OVER_4PI


def charge_b(const double[:, ::1] points, xe, qv):
    cdef Py_ssize_t n = points.shape[0], i
    cdef double k = MU0_OVER_4PI
    cdef double ex = xe[0], ey = xe[1], ez = xe[2]
    cdef double vx = qv[0], vy = qv[1], vz = qv[2]
    cdef double dx, dy, dz, r2, s
    out = np.empty((n, 3))
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            dx = points[i, 0] - ex
            dy = points[i, 1] - ey
            dz = points[i, 2] - ez
            r2 = dx * dx + dy * dy + dz * dz
            s = k / (r2 * sqrt(r2))
            o[i, 0] = s * (vy * dz - vz * dy)
            o[i, 1] = s * (vz * dx - vx * dz)
            o[i, 2] = s * (vx * dy - vy * dx)
    return out


def charge_a(const double[:, ::1] points, xe, qv):
    cdef Py_ssize_t n = points.shape[0], i
    cdef double k = MU0_OVER_4PI
    cdef double ex = xe[0], ey = xe[1], ez = xe[2]
    cdef double vx = qv[0], vy = qv[1], vz = qv[2]
    cdef double dx, dy, dz, s
    out = np.empty((n, 3))
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            dx = points[i, 0] - ex
            dy = points[i, 1] - ey
            dz = points[i, 2] - ez
            s = k / sqrt(dx * dx + dy * dy + dz * dz)
            o[i, 0] = s * vx
            o[i, 1] = s * vy
            o[i, 2] = s * vz
    return out


def biot_kernel(const double[:, ::1] points, const double[:, ::1] bvals, x):
    cdef Py_ssize_t n = points.shape[0], i
    cdef double px = x[0], py = x[1], pz = x[2]
    cdef double dx, dy, dz, bx, by, bz, r2, s
    out = np.empty((n, 3))
    cdef double[:, ::1] o = out
    with nogil:
        for i in range(n):
            dx = px - points[i, 0]
            dy = py - points[i, 1]
            dz = pz - points[i, 2]
            bx = bvals[i, 0]
            by = bvals[i, 1]
            bz = bvals[i, 2]
            r2 = dx * dx + dy * dy + dz * dz
            s = 1.0 / (r2 * sqrt(r2))
            o[i, 0] = s * (by * dz - bz * dy)
            o[i, 1] = s * (bz * dx - bx * dz)
            o[i, 2] = s * (bx * dy - by * dx)
    return out


def cell_sums(const double[:, ::1] values, const double[::1] weights,
              const double[::1] volumes):
    cdef Py_ssize_t ncell = volumes.shape[0], npts = weights.shape[0]
    cdef Py_ssize_t m = values.shape[1], c, p, j, row
    out = np.zeros((ncell, m))
    cdef double[:, ::1] o = out
    cdef double w
    with nogil:
        for c in range(ncell):
            for p in range(npts):
                row = c * npts + p
                w = weights[p]
                for j in range(m):
                    o[c, j] += w * values[row, j]
            for j in range(m):
                o[c, j] *= volumes[c]
    return out


def cyl_coords(const double[:, ::1] points, center, axis):
    cdef Py_ssize_t n = points.shape[0], i
    cdef double cx = center[0], cy = center[1], cz = center[2]
    cdef double ux = axis[0], uy = axis[1], uz = axis[2]
    cdef double dx, dy, dz, z, rx, ry, rz
    rho_arr = np.empty(n)
    z_arr = np.empty(n)
    cdef double[::1] rho = rho_arr
    cdef double[::1] zz = z_arr
    with nogil:
        for i in range(n):
            dx = points[i, 0] - cx
            dy = points[i, 1] - cy
            dz = points[i, 2] - cz
            z = dx * ux + dy * uy + dz * uz
            rx = dx - z * ux
            ry = dy - z * uy
            rz = dz - z * uz
            rho[i] = sqrt(rx * rx + ry * ry + rz * rz)
            zz[i] = z
    return rho_arr, z_arr
