# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo hot kernels.

Same per-element operation order as the NumPy fallback so outputs are
bitwise identical; reductions are left to the caller.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


def box_tube_mask(double[:, ::1] points, double[::1] half, double eps):
    cdef Py_ssize_t n = points.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.empty(n, dtype=np.uint8)
    cdef unsigned char[::1] mask = out
    cdef double eps2 = eps * eps
    cdef double h0 = half[0], h1 = half[1], h2 = half[2]
    cdef double dx, dy, dz, d2
    cdef Py_ssize_t i
    for i in range(n):
        dx = fabs(points[i, 0]) - h0
        if dx < 0.0:
            dx = 0.0
        dy = fabs(points[i, 1]) - h1
        if dy < 0.0:
            dy = 0.0
        dz = fabs(points[i, 2]) - h2
        if dz < 0.0:
            dz = 0.0
        d2 = (dx * dx + dy * dy) + dz * dz
        mask[i] = 1 if d2 <= eps2 else 0
    return out


def silhouette_areas(double[:, ::1] dirs, double a, double b, double c):
    cdef Py_ssize_t n = dirs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] areas = out
    cdef double bc = b * c, ca = c * a, ab = a * b
    cdef Py_ssize_t i
    for i in range(n):
        areas[i] = (bc * fabs(dirs[i, 0]) + ca * fabs(dirs[i, 1])) + ab * fabs(dirs[i, 2])
    return out


def corners_in_box(
    double[:, :, ::1] rotations,
    double[:, ::1] translations,
    double[:, ::1] corners,
    double[::1] half,
):
    cdef Py_ssize_t n = rotations.shape[0]
    cdef Py_ssize_t m = corners.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] out = np.empty(n, dtype=np.uint8)
    cdef unsigned char[::1] ok = out
    cdef double h0 = half[0], h1 = half[1], h2 = half[2]
    cdef double c0, c1, c2, w0, w1, w2
    cdef Py_ssize_t i, j
    cdef bint inside
    for i in range(n):
        inside = 1
        for j in range(m):
            c0 = corners[j, 0]
            c1 = corners[j, 1]
            c2 = corners[j, 2]
            w0 = ((rotations[i, 0, 0] * c0 + rotations[i, 0, 1] * c1) + rotations[i, 0, 2] * c2) + translations[i, 0]
            w1 = ((rotations[i, 1, 0] * c0 + rotations[i, 1, 1] * c1) + rotations[i, 1, 2] * c2) + translations[i, 1]
            w2 = ((rotations[i, 2, 0] * c0 + rotations[i, 2, 1] * c1) + rotations[i, 2, 2] * c2) + translations[i, 2]
            if not (fabs(w0) <= h0 and fabs(w1) <= h1 and fabs(w2) <= h2):
                inside = 0
                break
        ok[i] = inside
    return out
