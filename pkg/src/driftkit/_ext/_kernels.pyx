# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``_fallback``.

Same formulas, same comparison semantics; distances use the coordinate
difference form so identical points give an exact zero.
"""

from libc.math cimport INFINITY, fabs, sqrt

import numpy as np

cimport numpy as cnp

cnp.import_array()


def pairwise_distances(a, b):
    """Euclidean distance matrix between the rows of ``a`` and ``b``."""
    cdef double[:, ::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0], m = bv.shape[0], dim = av.shape[1]
    out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t i, j, d
    cdef double acc, diff
    with nogil:
        for i in range(n):
            for j in range(m):
                acc = 0.0
                for d in range(dim):
                    diff = av[i, d] - bv[j, d]
                    acc += diff * diff
                ov[i, j] = sqrt(acc)
    return out


def recurrence_matrix(a, b, double radius):
    """Boolean matrix marking row pairs within ``radius`` of each other."""
    cdef double[:, ::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef double[:, ::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t n = av.shape[0], m = bv.shape[0], dim = av.shape[1]
    out = np.zeros((n, m), dtype=np.uint8)
    cdef unsigned char[:, ::1] ov = out
    cdef Py_ssize_t i, j, d
    cdef double acc, diff
    with nogil:
        for i in range(n):
            for j in range(m):
                acc = 0.0
                for d in range(dim):
                    diff = av[i, d] - bv[j, d]
                    acc += diff * diff
                if sqrt(acc) <= radius:
                    ov[i, j] = 1
    return out.view(np.bool_)


def longest_diagonal_run(mask):
    """Longest run of True along any constant-offset diagonal of ``mask``."""
    cdef unsigned char[:, ::1] mv = np.ascontiguousarray(mask, dtype=np.uint8)
    cdef Py_ssize_t n = mv.shape[0], m = mv.shape[1]
    cdef Py_ssize_t best = 0, run, length, i, j, step
    cdef Py_ssize_t offset
    with nogil:
        for offset in range(-(n - 1), m):
            if offset >= 0:
                i = 0
                j = offset
                length = min(n, m - offset)
            else:
                i = -offset
                j = 0
                length = min(n + offset, m)
            run = 0
            for step in range(length):
                if mv[i + step, j + step]:
                    run += 1
                    if run > best:
                        best = run
                else:
                    run = 0
    return int(best)


def knn_radius(coords, Py_ssize_t k):
    """Mean over rows of the distance to each row's k-th nearest neighbour."""
    cdef double[:, ::1] cv = np.ascontiguousarray(coords, dtype=np.float64)
    cdef Py_ssize_t n = cv.shape[0], dim = cv.shape[1]
    best = np.empty(k, dtype=np.float64)
    cdef double[::1] bv = best
    cdef Py_ssize_t i, j, d, slot, pos
    cdef double acc, diff, dist, total = 0.0
    with nogil:
        for i in range(n):
            for slot in range(k):
                bv[slot] = INFINITY
            for j in range(n):
                if j == i:
                    continue
                acc = 0.0
                for d in range(dim):
                    diff = cv[i, d] - cv[j, d]
                    acc += diff * diff
                dist = sqrt(acc)
                if dist < bv[k - 1]:
                    # Insertion into the sorted k-best buffer; k stays small
                    # (ceil of log N) so this beats a full sort.
                    pos = k - 1
                    while pos > 0 and bv[pos - 1] > dist:
                        bv[pos] = bv[pos - 1]
                        pos -= 1
                    bv[pos] = dist
            total += bv[k - 1]
    return total / n


def adwin_scan(prefix, Py_ssize_t stride=1):
    """Best cut of a buffer by absolute difference of split means.

    Same contract as the fallback: ``prefix`` holds cumulative sums with a
    leading zero; returns ``(max_statistic, cut)`` with the smallest
    maximizing cut.
    """
    cdef double[::1] pv = np.ascontiguousarray(prefix, dtype=np.float64)
    cdef Py_ssize_t length = pv.shape[0] - 1
    cdef Py_ssize_t p, best_cut = 1
    cdef double stat, best = -1.0, total = pv[length]
    with nogil:
        p = 1
        while p < length:
            stat = fabs(pv[p] / p - (total - pv[p]) / (length - p))
            if stat > best:
                best = stat
                best_cut = p
            p += stride
    return float(best), int(best_cut)
