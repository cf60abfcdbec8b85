"""Density estimation, limit classification, extrapolation, zero checks."""

from __future__ import annotations

import math

import pytest

import qdensity as qd
from qdensity.density import (
    VERDICT_DIVERGENT,
    VERDICT_HYPOTHESIS_VIOLATED,
    VERDICT_INCONSISTENT,
    VERDICT_OK,
    DensityReport,
    PathPoint,
    ZeroCheckResult,
    extrapolate_to_zero,
)


def bisect_root(f, lo, hi, tol=1e-12):
    """Sign-change bisection; the independent root oracle for zero checks."""
    f_lo = f(lo)
    assert f_lo * f(hi) < 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) * f_lo > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def make_report(limit, diverged=False, hypothesis=None):
    if hypothesis is None:
        hypothesis = ZeroCheckResult(0.9, 0, 1.0, 0.0, True, 64)
    return DensityReport(
        set_name="synthetic",
        mode="series",
        n_max=16,
        path_descriptor="explicit",
        per_point=(PathPoint(0.5, limit or 1.0, 0.0, True),),
        diverged=diverged,
        extrapolated_limit=limit,
        extrapolation_error=0.0,
        density_estimate=None,
        hypothesis=hypothesis,
        verdict="",
    )


class TestRadialPath:
    def test_geometric_default(self):
        path = qd.RadialPath.geometric()
        assert len(path.points) == 20
        assert path.points[0] == 0.5
        assert path.points[-1] == 1 - 2**-20
        assert path.descriptor == "geometric:1:20"

    def test_validation(self):
        with pytest.raises(ValueError):
            qd.RadialPath(points=(0.5, 0.5))
        with pytest.raises(ValueError):
            qd.RadialPath(points=(0.5, 1.0))
        with pytest.raises(ValueError):
            qd.RadialPath.geometric(scale=2.5)


class TestExtrapolation:
    def test_linear_sequence_is_nailed(self):
        hs = [2.0**-k for k in range(1, 10)]
        vals = [3.0 - 7.0 * h for h in hs]
        out = extrapolate_to_zero(hs, vals)
        assert out.value == pytest.approx(3.0, abs=1e-12)
        assert out.converged

    def test_cubic_sequence(self):
        hs = [2.0**-k for k in range(1, 12)]
        vals = [5 - 10 * h + 10 * h**2 - 5 * h**3 for h in hs]
        out = extrapolate_to_zero(hs, vals)
        assert out.value == pytest.approx(5.0, abs=1e-10)

    def test_constant_sequence(self):
        hs = [2.0**-k for k in range(1, 8)]
        out = extrapolate_to_zero(hs, [1.0] * 7)
        assert out.value == 1.0
        assert out.error == 0.0

    def test_non_monotone_falls_back_to_last(self):
        hs = [2.0**-k for k in range(1, 8)]
        vals = [1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.5]
        out = extrapolate_to_zero(hs, vals)
        assert out.value == 1.5
        assert not out.converged

    def test_diverging_sequence_not_converged(self):
        hs = [2.0**-k for k in range(1, 10)]
        out = extrapolate_to_zero(hs, [1.0 / h for h in hs])
        assert not out.converged


class TestEstimate:
    def test_residue_class_reproduces_modulus(self):
        report = qd.estimate_density_reciprocal(
            qd.multiples(3), qd.RadialPath.geometric(), n_max=1024
        )
        assert report.verdict == VERDICT_OK
        assert report.extrapolated_limit == pytest.approx(3.0, abs=1e-9)
        assert report.density_estimate == pytest.approx(1 / 3, abs=1e-9)
        # density and limit are reciprocal
        assert report.density_estimate * report.extrapolated_limit == pytest.approx(1.0)

    def test_all_naturals_is_identically_one(self):
        report = qd.estimate_density_reciprocal(
            qd.all_naturals(), qd.RadialPath.geometric(), n_max=256
        )
        assert all(p.value == 1.0 for p in report.per_point)
        assert report.density_estimate == 1.0
        assert report.verdict == VERDICT_OK

    def test_primes_diverge(self):
        report = qd.estimate_density_reciprocal(
            qd.primes(), qd.RadialPath.geometric(scale=1.0, count=12), n_max=1024
        )
        assert report.verdict == VERDICT_DIVERGENT
        assert report.diverged
        assert report.extrapolated_limit is None
        assert report.density_estimate == 0.0

    def test_modes_agree_where_converged(self, fixture_specs):
        path = qd.RadialPath.geometric(scale=1.0, count=8)
        for spec in fixture_specs:
            series = qd.estimate_density_reciprocal(spec, path, n_max=4096, mode="series")
            closed = qd.estimate_density_reciprocal(spec, path, n_max=4096, mode="closed-form")
            for ps, pc in zip(series.per_point, closed.per_point):
                if ps.converged and pc.converged:
                    combined = ps.tail_bound + pc.tail_bound
                    assert abs(ps.value - pc.value) <= combined + 1e-9 * max(1.0, abs(ps.value))

    def test_closed_form_flags_zero_hypothesis(self):
        # odd numbers: the indicator generating function has a real zero
        # inside the disk, although the radial limit itself exists
        report = qd.estimate_density_reciprocal(
            qd.arithmetic_progression(1, 2),
            qd.RadialPath.geometric(scale=1.0, count=8),
            n_max=8192,
            mode="closed-form",
        )
        assert report.verdict == VERDICT_HYPOTHESIS_VIOLATED
        assert report.hypothesis.winding_number >= 1
        assert report.hypothesis.conclusive
        assert report.density_estimate == pytest.approx(0.5, abs=1e-2)

    def test_density_always_in_unit_interval(self, fixture_specs):
        for spec in fixture_specs:
            for mode in ("series", "closed-form"):
                report = qd.estimate_density_reciprocal(
                    spec, qd.RadialPath.geometric(count=10), n_max=2048, mode=mode
                )
                if report.density_estimate is not None:
                    assert 0.0 <= report.density_estimate <= 1.0


class TestClassifyLimit:
    def test_finite_limit_ok(self):
        assert qd.classify_limit(make_report(3.0)) == VERDICT_OK

    def test_divergent(self):
        assert qd.classify_limit(make_report(None, diverged=True)) == VERDICT_DIVERGENT

    def test_below_one_flagged(self):
        assert qd.classify_limit(make_report(0.8)) == VERDICT_INCONSISTENT

    def test_within_tolerance_of_one_is_ok(self):
        assert qd.classify_limit(make_report(0.9995)) == VERDICT_OK

    def test_conclusive_zeros_downgrade(self):
        hyp = ZeroCheckResult(0.9, 1, 0.5, 0.0, True, 64)
        assert qd.classify_limit(make_report(2.0, hypothesis=hyp)) == VERDICT_HYPOTHESIS_VIOLATED
        inconclusive = ZeroCheckResult(0.9, 1, 0.5, 0.6, False, 64)
        assert qd.classify_limit(make_report(2.0, hypothesis=inconclusive)) == VERDICT_OK


class TestZeroCheck:
    def test_even_multiples_zero_free(self):
        res = qd.zero_check(qd.multiples(2), 0.9, n_max=200)
        assert res.winding_number == 0
        assert res.conclusive

    def test_one_and_three_has_a_zero(self):
        # independent root oracle: 1 + q + q^3 vanishes on (-1, 0)
        root = bisect_root(lambda q: 1 + q + q**3, -1.0, 0.0)
        assert root == pytest.approx(-0.6823278, abs=1e-6)
        res = qd.zero_check(qd.finite([1, 3]), 0.9, n_max=64)
        assert res.winding_number >= 1
        assert res.conclusive
        assert res.tail_bound_on_circle == 0.0  # finite set, exact polynomial

    def test_all_naturals_truncation_is_zero_free(self):
        res = qd.zero_check(qd.all_naturals(), 0.9, n_max=100)
        assert res.winding_number == 0
        assert res.conclusive

    def test_winding_stable_under_sample_doubling(self):
        for text in ("finite:1,3", "multiples:2", "primes"):
            spec = qd.parse_set_spec(text)
            a = qd.zero_check(spec, 0.9, n_max=512, samples=128)
            b = qd.zero_check(spec, 0.9, n_max=512, samples=256)
            assert a.winding_number == b.winding_number

    def test_conclusive_requires_beating_the_tail(self):
        # tiny truncation: the tail bound exceeds everything
        res = qd.zero_check(qd.primes(), 0.99, n_max=64)
        assert res.tail_bound_on_circle > res.min_modulus_on_circle
        assert not res.conclusive

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            qd.zero_check(qd.all_naturals(), 1.2, n_max=64)
        with pytest.raises(ValueError):
            qd.zero_check(qd.all_naturals(), 0.9, n_max=64, samples=32)


class TestConsistencyInvariants:
    @pytest.mark.parametrize("text", ["all", "multiples:2", "multiples:3", "squarefree"])
    def test_certified_zero_free_estimates_match_counting(self, text):
        # wherever the zero check certifies winding 0 at 0.5/0.9/0.99 and the
        # estimate converges, the density must match direct counting
        spec = qd.parse_set_spec(text)
        checks = [qd.zero_check(spec, r, n_max=1500) for r in (0.5, 0.9, 0.99)]
        if not all(c.conclusive and c.winding_number == 0 for c in checks):
            pytest.skip(f"{text}: no zero-free certificate at all three radii")
        report = qd.estimate_density_reciprocal(
            spec, qd.RadialPath.geometric(count=14), n_max=4096
        )
        if report.verdict != VERDICT_OK:
            pytest.skip(f"{text}: estimate did not converge")
        counted = float(qd.counting_density(spec, 10**5))
        assert abs(report.density_estimate - counted) <= 1e-2

    @pytest.mark.parametrize("t", [2, 3, 5])
    def test_frobenius_agrees_with_reciprocal_limit(self, t):
        # truncation must cover the deepest path point: n_max from the helper
        spec = qd.multiples(t)
        path = qd.RadialPath.geometric(count=10)
        n_max = qd.suggest_truncation(path.points[-1], 1e-9)
        report = qd.estimate_density_reciprocal(spec, path, n_max=1024)
        mean = qd.frobenius_mean(spec, path, n_max=n_max)
        assert abs(mean - 1.0 / report.extrapolated_limit) <= 1e-3


class TestFrobeniusMean:
    def test_even_multiples(self):
        path = qd.RadialPath.geometric(scale=1.024, count=10)
        value = qd.frobenius_mean(qd.multiples(2), path, n_max=20000)
        assert value == pytest.approx(0.5, abs=1e-3)

    def test_all_naturals(self):
        value = qd.frobenius_mean(qd.all_naturals(), qd.RadialPath.geometric(count=10), n_max=20000)
        assert value == pytest.approx(1.0, abs=1e-6)

    def test_squarefree_mid_scale(self):
        path = qd.RadialPath.geometric(scale=1.024, count=8)
        value = qd.frobenius_mean(qd.squarefree(), path, n_max=30000)
        assert value == pytest.approx(6 / math.pi**2, abs=1e-2)
