"""Truncated power-series arithmetic with exact integer coefficients.

The reciprocal is computed by the convolution recurrence implied by
f * (1/f) = 1 (linear in the support size per coefficient), never by
enumerating partitions; agreement with the enumeration oracle is a tested
property.  Evaluation inside the unit disk runs at a configurable binary
precision (MPFR via gmpy2) and always reports an explicit geometric tail
bound next to the value, because truncation error near |q| = 1 routinely
dwarfs rounding error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .subsets import IndicatorPrefix

import gmpy2
from gmpy2 import mpc, mpfr


class NotInvertibleError(ValueError):
    """The series has no exact-integer reciprocal."""


class PrecisionError(ArithmeticError):
    """Rounding error at the requested precision swamps the computed value."""


@dataclass(frozen=True)
class IntSeries:
    """Coefficients of a truncated power series, index n holding q**n."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    @classmethod
    def from_coeffs(cls, coeffs) -> "IntSeries":
        return cls(coeffs=tuple(int(c) for c in coeffs))

    @classmethod
    def identity(cls, n_max: int) -> "IntSeries":
        """The multiplicative identity 1 + 0q + 0q^2 + ..."""
        return cls(coeffs=(1,) + (0,) * n_max)

    def nonzero_items(self) -> list[tuple[int, int]]:
        return [(i, v) for i, v in enumerate(self.coeffs) if v]


def indicator_series(prefix: IndicatorPrefix) -> IntSeries:
    """Lift an indicator prefix into a series (coefficients of 1 + sum q^n)."""
    return IntSeries(coeffs=prefix.coeffs)


def reciprocal(a: IntSeries) -> IntSeries:
    """Truncated reciprocal c of a, with sum_k a_k c_{n-k} = [n == 0] exactly.

    Requires a constant term of +1 or -1: that is the only case where the
    reciprocal keeps integer coefficients (the -1 case is handled by sign
    scaling).  For a 0/1 indicator input this reduces to
    c_n = -sum over k in S, k <= n of c_{n-k}.
    """
    a0 = a.coeffs[0]
    if a0 == 0:
        raise NotInvertibleError("series with constant term 0 has no reciprocal")
    if a0 not in (1, -1):
        raise NotInvertibleError(
            f"constant term {a0} is not a unit; the reciprocal would have rational coefficients"
        )
    support = []
    values = []
    for i, v in enumerate(a.coeffs):
        if i >= 1 and v:
            support.append(i)
            values.append(v)
    return IntSeries(coeffs=tuple(kernels.reciprocal_coeffs(support, values, a0, a.n_max)))


def cauchy_product(a: IntSeries, b: IntSeries) -> IntSeries:
    """Coefficient-wise convolution, truncated to the shorter operand."""
    n_max = min(a.n_max, b.n_max)
    return IntSeries(coeffs=tuple(kernels.convolve_trunc(list(a.coeffs), list(b.coeffs), n_max)))


def partial_sum_transform(c: IntSeries) -> IntSeries:
    """Running sums: coefficient n becomes sum_{i<=n} c_i.

    Identical to the Cauchy product with the all-ones series, i.e.
    multiplication by 1/(1-q).
    """
    return IntSeries(coeffs=tuple(kernels.prefix_sums(list(c.coeffs))))


# ---------------------------------------------------------------------------
# evaluation

@dataclass(frozen=True)
class EvalPoint:
    """A point strictly inside the unit disk plus a working precision in bits."""

    q: float | complex
    precision: int = 128

    def __post_init__(self):
        if abs(self.q) >= 1.0:
            raise ValueError(f"evaluation point must satisfy |q| < 1, got {self.q!r}")
        if self.precision < 8:
            raise ValueError("precision below 8 bits is meaningless")


@dataclass(frozen=True)
class EvalResult:
    value: float | complex
    tail_bound: float


def suggest_truncation(q: float, eps: float, alpha: float = 1.0) -> int:
    """Truncation order making the geometric tail of a bounded-coefficient
    series smaller than eps at the point q."""
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    return math.ceil(alpha / (1.0 - q) * math.log(1.0 / eps))


def tail_bound_estimate(coeffs, q_abs: float, coeff_bound: float | None = None) -> float:
    """Bound on the discarded tail sum_{n > n_max} |c_n| |q|^n.

    With `coeff_bound` supplied (a bound on every truncated coefficient)
    this is the certified geometric bound B |q|^(n_max+1) / (1 - |q|).
    Otherwise B and a growth ratio are *estimated* from a trailing window
    of the stored coefficients, so geometrically growing series get an
    honest (if heuristic) bound instead of a silently wrong one; an
    estimated growth that puts the tail past divergence reports inf.
    """
    if q_abs == 0.0:
        return 0.0
    n_max = len(coeffs) - 1
    if coeff_bound is not None:
        bound = float(coeff_bound)
        if bound == 0.0:
            return 0.0
        growth = 1.0
        log_b = math.log(bound)
    else:
        w = min(64, max(8, len(coeffs) // 8))
        w = min(w, len(coeffs))
        window = [abs(int(c)) for c in coeffs[-w:]]
        biggest = max(window)
        if biggest == 0:
            return 0.0
        half = w // 2
        older = max(window[:half]) if half else biggest
        newer = max(window[half:])
        if older == 0:
            return math.inf  # coefficients emerging from nothing: no usable growth estimate
        if newer == 0:
            growth = 1.0
        else:
            growth = math.exp((math.log(newer) - math.log(older)) * 2.0 / w)
            growth = max(growth, 1.0)
        log_b = math.log(biggest)
    gq = growth * q_abs
    if gq >= 1.0:
        return math.inf
    # sum_{n > n_max} B g^(n - n_max) q^n = B q^n_max * gq / (1 - gq)
    log_bound = log_b + n_max * math.log(q_abs) + math.log(gq) - math.log1p(-gq)
    if log_bound > 700.0:
        return math.inf
    if log_bound < -745.0:
        return 0.0
    return math.exp(log_bound)


def evaluate(s: IntSeries, point: EvalPoint, coeff_bound: float | None = None) -> EvalResult:
    """Evaluate the truncated series at `point` with a reported tail bound.

    Uses Horner's rule at the configured MPFR precision (sparse series sum
    term-by-term instead).  The reported bound covers truncation only; a
    PrecisionError is raised if accumulated rounding could swamp the value
    itself, rather than returning digits that mean nothing.
    """
    q = point.q
    is_complex = isinstance(q, complex)
    n_nonzero = sum(1 for c in s.coeffs if c)
    with gmpy2.context(precision=point.precision):
        qq = mpc(q) if is_complex else mpfr(q)
        q_abs = abs(qq)
        if n_nonzero * 24 < len(s.coeffs):
            acc = _eval_sparse(s, qq)
            acc_abs = _eval_sparse_abs(s, q_abs)
        else:
            acc = _eval_horner(s.coeffs, qq)
            acc_abs = _eval_horner([abs(c) for c in s.coeffs], q_abs)
        value = complex(acc) if is_complex else float(acc)
        magnitude = abs(acc)
        # worst-case rounding: one rounding per multiply-add, each bounded
        # relative to the running absolute sum
        rounding = acc_abs * (2 * len(s.coeffs)) * mpfr(2) ** (1 - point.precision)
        if magnitude > 0 and rounding > magnitude / 2:
            raise PrecisionError(
                f"rounding bound {float(rounding):.3g} swamps value magnitude "
                f"{float(magnitude):.3g} at precision {point.precision}"
            )
    tail = tail_bound_estimate(s.coeffs, float(abs(q)), coeff_bound=coeff_bound)
    return EvalResult(value=value, tail_bound=tail)


def _eval_horner(coeffs, qq):
    acc = qq - qq  # zero of the right type
    for c in reversed(coeffs):
        acc = acc * qq + c
    return acc


def _eval_sparse(s: IntSeries, qq):
    acc = qq - qq
    for i, v in s.nonzero_items():
        acc += v * qq**i
    return acc


def _eval_sparse_abs(s: IntSeries, q_abs):
    acc = q_abs - q_abs
    for i, v in s.nonzero_items():
        acc += abs(v) * q_abs**i
    return acc
