"""Pure-Python kernel implementations.

These are the reference versions of the inner loops that dominate runtime:
the reciprocal-coefficient recurrence, truncated Cauchy products, prefix
sums, and complex polynomial sampling.  `qdensity._ckernels` provides
compiled equivalents with identical signatures; `qdensity.kernels` picks
one at import time.

All integer arithmetic is exact (Python ints), so coefficients may grow to
thousands of bits without loss.
"""

from __future__ import annotations

import numpy as np


def reciprocal_coeffs(support: list, values: list, a0: int, n_max: int) -> list:
    """Coefficients c of the truncated reciprocal of a sparse series.

    The input series is a0 + sum(values[i] * q**support[i]); `support` is
    strictly increasing with entries >= 1 and a0 is +1 or -1.  The output
    satisfies the convolution identity sum_k a_k c_{n-k} = [n == 0] for
    0 <= n <= n_max.

    Each step sums over whichever index set is currently smaller: the
    support entries <= n, or the nonzero positions of c found so far.  For
    eventually-sparse reciprocals (e.g. the indicator of a full residue
    class) this makes the recurrence effectively linear in n_max.
    """
    if a0 not in (1, -1):
        raise ValueError("constant term must be +1 or -1")
    c = [0] * (n_max + 1)
    c[0] = a0
    if n_max == 0:
        return c

    # value lookup by exponent, plus a prefix count of support entries
    val_at = [0] * (n_max + 1)
    sup = []
    for k, v in zip(support, values):
        if k <= n_max and v:
            val_at[k] = v
            sup.append(k)
    count_le = [0] * (n_max + 1)
    j = 0
    for n in range(1, n_max + 1):
        if j < len(sup) and sup[j] == n:
            j += 1
        count_le[n] = j

    unit = all(v == 1 for v in values)
    nz = [0]  # nonzero positions of c, ascending
    for n in range(1, n_max + 1):
        acc = 0
        if len(nz) <= count_le[n]:
            for i in nz:
                v = val_at[n - i]
                if v:
                    if v == 1:
                        acc += c[i]
                    elif v == -1:
                        acc -= c[i]
                    else:
                        acc += v * c[i]
        elif unit:
            for k in sup:
                if k > n:
                    break
                ci = c[n - k]
                if ci:
                    acc += ci
        else:
            for k in sup:
                if k > n:
                    break
                ci = c[n - k]
                if ci:
                    v = val_at[k]
                    if v == 1:
                        acc += ci
                    elif v == -1:
                        acc -= ci
                    else:
                        acc += v * ci
        if acc:
            c[n] = -acc if a0 == 1 else acc
            nz.append(n)
    return c


def convolve_trunc(a: list, b: list, n_max: int) -> list:
    """Truncated Cauchy product: out[n] = sum_{k<=n} a[k] b[n-k], exact.

    Iterates over the nonzero entries of the sparser operand, so convolving
    a dense series against a thin indicator costs O(nnz * n_max).
    """
    a_nz = [(i, v) for i, v in enumerate(a[: n_max + 1]) if v]
    b_nz = [(i, v) for i, v in enumerate(b[: n_max + 1]) if v]
    if len(b_nz) < len(a_nz):
        a, b = b, a
        a_nz = b_nz
    out = [0] * (n_max + 1)
    for k, v in a_nz:
        top = n_max - k
        if v == 1:
            for j in range(0, top + 1):
                bj = b[j]
                if bj:
                    out[k + j] += bj
        elif v == -1:
            for j in range(0, top + 1):
                bj = b[j]
                if bj:
                    out[k + j] -= bj
        else:
            for j in range(0, top + 1):
                bj = b[j]
                if bj:
                    out[k + j] += v * bj
    return out


def prefix_sums(c: list) -> list:
    out = [0] * len(c)
    acc = 0
    for i, v in enumerate(c):
        acc += v
        out[i] = acc
    return out


def polyval_complex(coeffs: np.ndarray, zs: np.ndarray) -> np.ndarray:
    """Horner evaluation of a real-coefficient polynomial at complex points."""
    coeffs = np.asarray(coeffs, dtype=np.float64)
    zs = np.asarray(zs, dtype=np.complex128)
    acc = np.zeros_like(zs)
    for k in range(len(coeffs) - 1, -1, -1):
        acc *= zs
        acc += coeffs[k]
    return acc
