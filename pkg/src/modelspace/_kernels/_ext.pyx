# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coefficient recurrences; see ``_fallback`` for the reference."""
import numpy as np
cimport numpy as cnp
from libc.math cimport hypot

cnp.import_array()

ctypedef double complex cplx


def exp_series(g):
    cdef cnp.ndarray[cplx, ndim=1] gv = np.ascontiguousarray(g, dtype=complex)
    cdef Py_ssize_t n_out = gv.shape[0]
    cdef cnp.ndarray[cplx, ndim=1] f = np.zeros(n_out, dtype=complex)
    if n_out == 0:
        return f
    cdef cnp.ndarray[cplx, ndim=1] dg = np.zeros(n_out, dtype=complex)
    cdef Py_ssize_t n, k
    cdef cplx acc
    for k in range(1, n_out):
        dg[k - 1] = gv[k] * k
    f[0] = np.exp(gv[0])
    for n in range(n_out - 1):
        acc = 0
        for k in range(n + 1):
            acc = acc + dg[k] * f[n - k]
        f[n + 1] = acc / (n + 1)
    return f


def blaschke_expand(zeros, Py_ssize_t n_out):
    cdef cnp.ndarray[cplx, ndim=1] c = np.zeros(n_out, dtype=complex)
    cdef Py_ssize_t n
    cdef cplx a, ac, unit, prev, cur, acc
    cdef double r
    if n_out:
        c[0] = 1
    for z in zeros:
        a = complex(z)
        if a == 0:
            for n in range(n_out - 1, 0, -1):
                c[n] = c[n - 1]
            if n_out:
                c[0] = 0
            continue
        r = hypot(a.real, a.imag)
        unit = a.conjugate() / r
        # renormalize: |a| is inexact for subnormal zeros
        unit = unit / abs(unit)
        ac = a.conjugate()
        prev = 0
        for n in range(n_out):
            cur = c[n]
            c[n] = unit * (a * cur - prev)
            prev = cur
        acc = 0
        for n in range(n_out):
            acc = c[n] + ac * acc
            c[n] = acc
    return c


def synthetic_division(theta, lam):
    cdef cnp.ndarray[cplx, ndim=1] t = np.ascontiguousarray(theta, dtype=complex)
    cdef Py_ssize_t n = t.shape[0]
    cdef cnp.ndarray[cplx, ndim=1] b = np.zeros(n, dtype=complex)
    cdef cplx l = lam
    cdef cplx acc = 0
    cdef Py_ssize_t k
    for k in range(n - 2, -1, -1):
        acc = t[k + 1] + l * acc
        b[k] = acc
    return b

