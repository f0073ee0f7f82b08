# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for small dense Bogoliubov algebra.

Registers here hold at most four modes, so numpy's per-call overhead
dominates the arithmetic. These loops do the same work in C.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs2(cplx z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef void _compose(const cplx[:, ::1] a1, const cplx[:, ::1] b1,
                   const cplx[:, ::1] a2, const cplx[:, ::1] b2,
                   cplx[:, ::1] a, cplx[:, ::1] b) noexcept nogil:
    cdef Py_ssize_t n = a1.shape[0]
    cdef Py_ssize_t i, j, k
    cdef cplx sa, sb
    for i in range(n):
        for j in range(n):
            sa = 0
            sb = 0
            for k in range(n):
                sa = sa + a2[i, k] * a1[k, j] + b2[i, k] * b1[k, j].conjugate()
                sb = sb + a2[i, k] * b1[k, j] + b2[i, k] * a1[k, j].conjugate()
            a[i, j] = sa
            b[i, j] = sb


def compose(a1, b1, a2, b2):
    cdef const cplx[:, ::1] va1 = np.ascontiguousarray(a1, dtype=complex)
    cdef const cplx[:, ::1] vb1 = np.ascontiguousarray(b1, dtype=complex)
    cdef const cplx[:, ::1] va2 = np.ascontiguousarray(a2, dtype=complex)
    cdef const cplx[:, ::1] vb2 = np.ascontiguousarray(b2, dtype=complex)
    n = va1.shape[0]
    a = np.empty((n, n), dtype=complex)
    b = np.empty((n, n), dtype=complex)
    _compose(va1, vb1, va2, vb2, a, b)
    return a, b


def compose_chain(a_stack, b_stack):
    cdef const cplx[:, :, ::1] va = np.ascontiguousarray(a_stack, dtype=complex)
    cdef const cplx[:, :, ::1] vb = np.ascontiguousarray(b_stack, dtype=complex)
    cdef Py_ssize_t depth = va.shape[0]
    cdef Py_ssize_t n = va.shape[1]
    cdef Py_ssize_t k, i, j
    a = np.eye(n, dtype=complex)
    b = np.zeros((n, n), dtype=complex)
    tmp_a = np.empty((n, n), dtype=complex)
    tmp_b = np.empty((n, n), dtype=complex)
    cdef cplx[:, ::1] ca = a
    cdef cplx[:, ::1] cb = b
    cdef cplx[:, ::1] ta = tmp_a
    cdef cplx[:, ::1] tb = tmp_b
    with nogil:
        for k in range(depth):
            _compose(ca, cb, va[k], vb[k], ta, tb)
            for i in range(n):
                for j in range(n):
                    ca[i, j] = ta[i, j]
                    cb[i, j] = tb[i, j]
    return a, b


def to_symplectic(a, b):
    cdef const cplx[:, ::1] va = np.ascontiguousarray(a, dtype=complex)
    cdef const cplx[:, ::1] vb = np.ascontiguousarray(b, dtype=complex)
    cdef Py_ssize_t n = va.shape[0]
    cdef Py_ssize_t i, j
    cdef cplx p, m
    s = np.empty((2 * n, 2 * n), dtype=np.float64)
    cdef double[:, ::1] vs = s
    for i in range(n):
        for j in range(n):
            p = va[i, j] + vb[i, j]
            m = va[i, j] - vb[i, j]
            vs[i, j] = p.real
            vs[i, n + j] = -m.imag
            vs[n + i, j] = p.imag
            vs[n + i, n + j] = m.real
    return s


def congruence(s, v):
    """``S V S^T`` for symmetric ``V``; only the upper triangle is computed."""
    cdef const double[:, ::1] vs = np.ascontiguousarray(s, dtype=np.float64)
    cdef const double[:, ::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t n = vs.shape[0]
    cdef Py_ssize_t i, j, k
    cdef double acc
    tmp = np.empty((n, n), dtype=np.float64)
    out = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] vt = tmp
    cdef double[:, ::1] vo = out
    for i in range(n):
        for j in range(n):
            acc = 0.0
            for k in range(n):
                acc = acc + vs[i, k] * vv[k, j]
            vt[i, j] = acc
    for i in range(n):
        for j in range(i, n):
            acc = 0.0
            for k in range(n):
                acc = acc + vt[i, k] * vs[j, k]
            vo[i, j] = acc
            vo[j, i] = acc
    return out


def transform_mean(a, b, alpha):
    cdef const cplx[:, ::1] va = np.ascontiguousarray(a, dtype=complex)
    cdef const cplx[:, ::1] vb = np.ascontiguousarray(b, dtype=complex)
    cdef const cplx[::1] val = np.ascontiguousarray(alpha, dtype=complex)
    cdef Py_ssize_t n = va.shape[0]
    cdef Py_ssize_t i, k
    cdef cplx acc
    out = np.empty(n, dtype=complex)
    cdef cplx[::1] vo = out
    for i in range(n):
        acc = 0
        for k in range(n):
            acc = acc + va[i, k] * val[k] + vb[i, k] * val[k].conjugate()
        vo[i] = acc
    return out


def bogoliubov_residuals(a, b):
    cdef const cplx[:, ::1] va = np.ascontiguousarray(a, dtype=complex)
    cdef const cplx[:, ::1] vb = np.ascontiguousarray(b, dtype=complex)
    cdef Py_ssize_t n = va.shape[0]
    cdef Py_ssize_t i, j, k
    cdef cplx r1, r2
    cdef double m1 = 0.0, m2 = 0.0, x
    for i in range(n):
        for j in range(n):
            r1 = -1.0 if i == j else 0.0
            r2 = 0
            for k in range(n):
                r1 = r1 + va[i, k] * va[j, k].conjugate() - vb[i, k] * vb[j, k].conjugate()
                r2 = r2 + va[i, k] * vb[j, k] - vb[i, k] * va[j, k]
            x = sqrt(cabs2(r1))
            if x > m1:
                m1 = x
            x = sqrt(cabs2(r2))
            if x > m2:
                m2 = x
    return m1, m2
