"""Non-alternating composition counts and their divergence analysis.

Dropping the signs from the cumulative composition sums gives a rapidly
growing statistic: the cumulative count of all compositions with parts in
S and size at most n.  Its generating function equals
1 / ((1 - q) (2 - f(q))) with f the indicator generating function, so for
any set with two or more elements the series blows up at the point
q* < 1 where f(q*) = 2.  This module computes the counts exactly, the
closed form numerically, and q* by bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import kernels
from .series import EvalPoint, EvalResult, IntSeries, evaluate, indicator_series
from .subsets import SubsetSpec, indicator_prefix, is_exactly_represented, support_upto


class OutsideDomainError(ValueError):
    """Closed form requested at a point where |f(q)| >= 2 (past the blow-up)."""


@dataclass(frozen=True)
class VariantReport:
    """Summary of the unsigned-count analysis for one set."""

    cplus: IntSeries
    radius_estimate: float
    smallest_real_singularity: float | None
    diverges_at_1: bool


def composition_count_series(spec: SubsetSpec, n_max: int) -> IntSeries:
    """Exact counts of compositions with parts in S, by size 0..n_max."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    support = support_upto(spec, n_max)
    return IntSeries(coeffs=tuple(kernels.composition_counts(support, n_max)))


def cplus_series(spec: SubsetSpec, n_max: int) -> IntSeries:
    """Cumulative unsigned composition counts: entry n counts compositions
    with parts in S and size <= n (the empty composition included)."""
    counts = composition_count_series(spec, n_max)
    return IntSeries(coeffs=tuple(kernels.prefix_sums(list(counts.coeffs))))


def variant_closed_form(spec: SubsetSpec, point: EvalPoint, n_max: int) -> EvalResult:
    """Evaluate 1 / ((1 - q) (2 - f(q))) with f truncated at n_max.

    Valid only while |f(q)| < 2; beyond that the unsigned series has
    already diverged and the closed form stops meaning anything, so an
    OutsideDomainError is raised.
    """
    prefix = indicator_prefix(spec, n_max)
    f_bound = 0.0 if is_exactly_represented(spec, n_max) else 1.0
    f_res = evaluate(indicator_series(prefix), point, coeff_bound=f_bound)
    f_val = f_res.value
    if abs(f_val) >= 2.0:
        raise OutsideDomainError(
            f"|f(q)| = {abs(f_val):.6g} >= 2 at q = {point.q!r}; outside the variant's domain"
        )
    q = point.q
    denom = (1.0 - q) * (2.0 - f_val)
    value = 1.0 / denom
    # first-order propagation of the f tail through the closed form
    gap = 2.0 - abs(f_val)
    if f_res.tail_bound < gap:
        tail = f_res.tail_bound / (abs(1.0 - q) * gap * (gap - f_res.tail_bound))
    else:
        tail = math.inf
    return EvalResult(value=value, tail_bound=tail)


def variant_radius(spec: SubsetSpec, n_max: int, tol: float = 1e-10) -> float:
    """Smallest q* in (0, 1] with f(q*) = 2, located by bisection.

    f is strictly increasing on (0, 1) for nonempty S, so the root is
    unique when it exists.  When f stays below 2 on the whole interval
    (exactly the one-element sets) the returned radius is 1: the unsigned
    series then converges on the full unit disk.

    The bisection runs on the truncated f; the root shift this causes is
    bounded by the geometric tail at q*, negligible at desk scales since
    q* is bounded away from 1 once S has two members within n_max.
    """
    members = support_upto(spec, n_max)
    if not members:
        raise ValueError(f"{spec.name} has no members up to {n_max}; radius undefined")
    if len(members) == 1:
        return 1.0

    def f_minus_2(q: float) -> float:
        return sum(q**k for k in members) - 1.0

    lo, hi = 0.0, 0.5
    while f_minus_2(hi) < 0.0:
        lo, hi = hi, 0.5 * (1.0 + hi)
        if 1.0 - hi < 1e-15:
            # even the truncated f never reaches 2 strictly inside (0, 1)
            return 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f_minus_2(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def analyze_variant(spec: SubsetSpec, n_max: int, tol: float = 1e-10) -> VariantReport:
    """Counts plus blow-up diagnostics in one report."""
    radius = variant_radius(spec, n_max, tol=tol)
    return VariantReport(
        cplus=cplus_series(spec, n_max),
        radius_estimate=radius,
        smallest_real_singularity=radius if radius < 1.0 else None,
        diverges_at_1=radius < 1.0,
    )


def growth_ratio(counts: IntSeries, stride: int = 1) -> float:
    """Per-step growth (c[n] / c[n - stride])**(1/stride) at the last index
    with both entries nonzero; a ratio-test probe for 1/q*."""
    coeffs = counts.coeffs
    n = len(coeffs) - 1
    while n - stride >= 0 and (coeffs[n] == 0 or coeffs[n - stride] == 0):
        n -= 1
    if n - stride < 0:
        raise ValueError("no nonzero pair at this stride")
    return math.exp((math.log(coeffs[n]) - math.log(coeffs[n - stride])) / stride)
