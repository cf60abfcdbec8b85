"""Kernel backend selection.

Imports the compiled Cython kernels when available, otherwise falls back to
the pure-Python implementations.  Set ``QDENSITY_PURE_PYTHON=1`` to force
the fallback (used by the benchmark and for debugging).

Both backends expose the same functions with identical exact-integer
semantics; `tests/test_kernels.py` checks them against each other.
"""

from __future__ import annotations

import os

if os.environ.get("QDENSITY_PURE_PYTHON"):
    from . import _pykernels as _impl

    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        from . import _pykernels as _impl

        BACKEND = "python"

reciprocal_coeffs = _impl.reciprocal_coeffs
convolve_trunc = _impl.convolve_trunc
prefix_sums = _impl.prefix_sums
polyval_complex = _impl.polyval_complex


def composition_counts(support: list, n_max: int) -> list:
    """Counts of compositions by exact size, parts restricted to `support`.

    count[0] = 1 (the empty composition) and
    count[j] = sum over k in support, k <= j of count[j - k],
    which is the coefficient recurrence of 1 / (1 - sum_k q**k).
    """
    return reciprocal_coeffs(support, [-1] * len(support), 1, n_max)
