# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled kernels: exact big-integer recurrences and circle sampling.

Same semantics as `qdensity._pykernels`.  The integer loops still operate
on Python ints (coefficients overflow machine words by thousands of bits),
but running the loop bodies at C level removes most interpreter overhead;
the complex Horner loop is fully typed.
"""

import numpy as np


def reciprocal_coeffs(list support, list values, long a0, Py_ssize_t n_max):
    """Truncated reciprocal of a sparse unit-constant series; see the
    pure-Python twin for the recurrence and the adaptive iteration order."""
    if a0 != 1 and a0 != -1:
        raise ValueError("constant term must be +1 or -1")
    cdef list c = [0] * (n_max + 1)
    c[0] = a0
    if n_max == 0:
        return c

    cdef list val_at = [0] * (n_max + 1)
    cdef list sup = []
    cdef Py_ssize_t k
    cdef object v
    for k, v in zip(support, values):
        if k <= n_max and v != 0:
            val_at[k] = v
            sup.append(k)

    cdef Py_ssize_t n_sup = len(sup)
    cdef Py_ssize_t[::1] sup_arr = np.zeros(max(n_sup, 1), dtype=np.intp)
    cdef Py_ssize_t i
    for i in range(n_sup):
        sup_arr[i] = <Py_ssize_t> sup[i]
    cdef Py_ssize_t[::1] count_le = np.zeros(n_max + 1, dtype=np.intp)
    cdef Py_ssize_t j = 0
    cdef Py_ssize_t n
    for n in range(1, n_max + 1):
        if j < n_sup and sup_arr[j] == n:
            j += 1
        count_le[n] = j

    cdef bint unit = True
    for v in values:
        if v != 1:
            unit = False
            break

    cdef list nz = [0]
    cdef Py_ssize_t n_nz = 1
    cdef object acc, ci
    cdef Py_ssize_t idx, kk
    for n in range(1, n_max + 1):
        acc = 0
        if n_nz <= count_le[n]:
            for idx in range(n_nz):
                i = <Py_ssize_t> nz[idx]
                v = val_at[n - i]
                if v != 0:
                    if v == 1:
                        acc = acc + c[i]
                    elif v == -1:
                        acc = acc - c[i]
                    else:
                        acc = acc + v * c[i]
        elif unit:
            for idx in range(count_le[n]):
                kk = sup_arr[idx]
                ci = c[n - kk]
                if ci != 0:
                    acc = acc + ci
        else:
            for idx in range(count_le[n]):
                kk = sup_arr[idx]
                ci = c[n - kk]
                if ci != 0:
                    v = val_at[kk]
                    if v == 1:
                        acc = acc + ci
                    elif v == -1:
                        acc = acc - ci
                    else:
                        acc = acc + v * ci
        if acc != 0:
            c[n] = -acc if a0 == 1 else acc
            nz.append(n)
            n_nz += 1
    return c


def convolve_trunc(list a, list b, Py_ssize_t n_max):
    """Truncated Cauchy product, iterating the sparser operand's nonzeros."""
    cdef list a_nz = []
    cdef list b_nz = []
    cdef Py_ssize_t i
    cdef object v
    for i in range(min(len(a), n_max + 1)):
        if a[i] != 0:
            a_nz.append(i)
    for i in range(min(len(b), n_max + 1)):
        if b[i] != 0:
            b_nz.append(i)
    cdef list outer_idx
    if len(b_nz) < len(a_nz):
        outer_idx = b_nz
        a, b = b, a
    else:
        outer_idx = a_nz

    cdef list out = [0] * (n_max + 1)
    cdef Py_ssize_t k, j, top
    cdef object bj
    for i in range(len(outer_idx)):
        k = <Py_ssize_t> outer_idx[i]
        v = a[k]
        top = n_max - k
        if v == 1:
            for j in range(top + 1):
                bj = b[j]
                if bj != 0:
                    out[k + j] = out[k + j] + bj
        elif v == -1:
            for j in range(top + 1):
                bj = b[j]
                if bj != 0:
                    out[k + j] = out[k + j] - bj
        else:
            for j in range(top + 1):
                bj = b[j]
                if bj != 0:
                    out[k + j] = out[k + j] + v * bj
    return out


def prefix_sums(list c):
    cdef list out = [0] * len(c)
    cdef object acc = 0
    cdef Py_ssize_t i
    for i in range(len(c)):
        acc = acc + c[i]
        out[i] = acc
    return out


def polyval_complex(coeffs, zs):
    """Horner evaluation of a real-coefficient polynomial at complex points.

    The multiply-add runs on explicit real/imaginary doubles; letting the C
    compiler see a plain double complex product would route every step
    through the branchy C99 helper and halve the throughput.
    """
    cdef double[::1] cv = np.ascontiguousarray(coeffs, dtype=np.float64)
    zs_arr = np.ascontiguousarray(zs, dtype=np.complex128)
    cdef Py_ssize_t n = cv.shape[0]
    cdef Py_ssize_t m = zs_arr.shape[0]
    zr_arr = np.ascontiguousarray(zs_arr.real)
    zi_arr = np.ascontiguousarray(zs_arr.imag)
    ar_arr = np.zeros(m, dtype=np.float64)
    ai_arr = np.zeros(m, dtype=np.float64)
    cdef double[::1] zr = zr_arr
    cdef double[::1] zi = zi_arr
    cdef double[::1] ar = ar_arr
    cdef double[::1] ai = ai_arr
    cdef Py_ssize_t i, k
    cdef double c, t
    for k in range(n - 1, -1, -1):
        c = cv[k]
        for i in range(m):
            t = ar[i] * zr[i] - ai[i] * zi[i] + c
            ai[i] = ar[i] * zi[i] + ai[i] * zr[i]
            ar[i] = t
    return ar_arr + 1j * ai_arr
