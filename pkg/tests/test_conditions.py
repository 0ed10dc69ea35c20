import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scalespace2x2.conditions import (
    constraint_slacks,
    discriminant,
    eta,
    is_feasible,
    numeric_validate,
    sample_feasible,
    theorem2_check,
    vartheta,
    xi,
    xi_delta,
    xi_psi,
    zeta,
)
from scalespace2x2.spectral import (
    DesignParams,
    cross_product,
    equivalent_response,
    sigma_aa,
    sigma_xx,
    spectral_point,
)

from conftest import GRID, NON_GAUSSIAN, REFERENCE_FILTERS, SHARP, feasible_params

W = np.linspace(-1.0, 1.0, 101)


class TestRegion:
    @pytest.mark.parametrize("p", REFERENCE_FILTERS, ids=str)
    def test_reference_filters_are_feasible(self, p):
        report = theorem2_check(p)
        assert report.feasible and report.violations == []

    def test_sharp_design_sits_on_two_constraints(self):
        slacks = theorem2_check(SHARP).slacks
        assert slacks["b+c ≤ 2+2d"] == pytest.approx(0.0, abs=1e-12)
        assert slacks["-2d ≤ b-c"] == pytest.approx(0.0, abs=1e-12)

    def test_b_minus_c_violation(self):
        report = theorem2_check(DesignParams(0.0, 0.0, -0.1))
        names = [v.constraint for v in report.violations]
        assert not report.feasible
        assert "-2d ≤ b-c" in names
        assert "-d ≤ b" in names

    def test_positive_d(self):
        report = theorem2_check(DesignParams(1.0, 0.0, 0.1))
        assert "d ≤ 0" in [v.constraint for v in report.violations]

    def test_box_bound_named_for_large_b(self):
        report = theorem2_check(DesignParams(3.0, 0.0, 0.0))
        assert "b ≤ 2+d" in [v.constraint for v in report.violations]

    def test_tolerance_admits_rounding(self):
        assert is_feasible(1.0, 1.0 + 1e-13, 0.0)
        assert not is_feasible(1.0, 1.0 + 1e-9, 0.0)

    @given(feasible_params())
    def test_region_implies_box(self, p):
        tol = 1e-12
        assert -p.d - tol <= p.b <= 2 + p.d + tol
        assert -1 - tol <= p.c <= 1 + 2 * p.d + tol

    def test_report_serializes(self):
        out = theorem2_check(DesignParams(0.0, 0.0, -0.1)).to_dict()
        assert out["feasible"] is False and out["violations"][0]["slack"] < 0


class TestWitnesses:
    def test_eta_at_dc(self, reference_filter):
        # At w = 1 both symbols are single-channel: sigma_xx = 1 and sigma_aa = 1 - 2(b - c)t.
        p = reference_filter
        assert eta(p, 0.25, 1.0) == pytest.approx(1 - 2 * (p.b - p.c) * 0.25, abs=1e-15)
        assert eta(NON_GAUSSIAN, 0.25, 1.0) == pytest.approx(0.5, abs=1e-15)

    def test_eta_at_zero_step(self):
        np.testing.assert_array_equal(eta(SHARP, 0.0, W), 1.0)

    @given(feasible_params())
    def test_eta_identity(self, p):
        direct = sigma_xx(p, GRID) * sigma_aa(p, GRID) - cross_product(p, GRID)
        np.testing.assert_allclose(eta(p, p.t, np.cos(GRID)), direct, atol=1e-12, rtol=0)

    def test_zeta_values(self):
        assert zeta(NON_GAUSSIAN, 1.0) == 4.0
        assert zeta(NON_GAUSSIAN, 0.0) == pytest.approx(3.5)
        for p in REFERENCE_FILTERS:
            assert zeta(p, -1.0) == pytest.approx(4 - 2 * (p.b + p.c))

    @given(feasible_params())
    def test_discriminant_matches_spectral(self, p):
        np.testing.assert_allclose(
            discriminant(p, p.t, np.cos(GRID)), spectral_point(p, GRID).delta, atol=1e-12, rtol=0
        )

    def test_vartheta_vanishes_for_c_one_gaussian(self):
        # b = c = 1, d = 0: Delta = 0 and xi_Delta = 0.
        np.testing.assert_allclose(vartheta(DesignParams(1, 1, 0), 0.25, W), 0.0, atol=1e-15)

    @given(feasible_params(), st.floats(0.01, 0.25))
    def test_vartheta_at_dc_scales_with_t4(self, p, t):
        b, c, d = p.b, p.c, p.d
        reduced = (b - c) ** 2 * (1 + c) ** 2 - ((1 - c) * (b - c) + 4 * d) ** 2
        assert vartheta(p, t, 1.0) == pytest.approx(64 * t**4 * reduced, abs=1e-12)

    @given(feasible_params(), st.floats(0.0, 0.25))
    def test_mixing_derivative_identity(self, p, t):
        psi = 2 * t * ((p.b - 1) + (1 - p.c) * W)
        lhs = 2 * discriminant(p, t, W) * xi_psi(p, t) - psi * xi_delta(p, t, W)
        rhs = -64 * p.d * t**3 * ((1 - p.c) - (1 - p.b) * W)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12, rtol=0)

    def test_xi_delta_is_rate_of_discriminant(self):
        th = np.linspace(0.1, 3.0, 40)
        h = 1e-6
        for p in REFERENCE_FILTERS:
            fd = (discriminant(p, p.t, np.cos(th + h)) - discriminant(p, p.t, np.cos(th - h))) / (2 * h)
            np.testing.assert_allclose(fd, -xi_delta(p, p.t, np.cos(th)) * np.sin(th), atol=1e-8)

    @pytest.mark.parametrize("l", [1, 2, 10, 100])
    @pytest.mark.parametrize("p", [NON_GAUSSIAN, SHARP], ids=str)
    def test_xi_matches_finite_difference(self, p, l):
        th = np.linspace(0.05, 3.05, 60)
        h = 1e-6
        fd = (equivalent_response(p, th + h, l) - equivalent_response(p, th - h, l)) / (2 * h)
        np.testing.assert_allclose(fd, -xi(p, np.cos(th), l) * np.sin(th), atol=1e-7)

    @given(feasible_params(), st.floats(0.0, 0.25))
    @settings(max_examples=100)
    def test_witnesses_nonnegative_on_region(self, p, t):
        assert eta(p, t, W).min() >= -1e-12
        assert zeta(p, W).min() >= -1e-12
        assert discriminant(p, t, W).min() >= -1e-12
        assert vartheta(p, t, W).min() >= -1e-12

    @given(feasible_params())
    @settings(max_examples=40)
    def test_response_slope_nonpositive(self, p):
        for l in (1, 7, 60):
            assert np.diff(equivalent_response(p, GRID, l)).max() <= 1e-12


class TestNumericValidate:
    @pytest.mark.parametrize("p", REFERENCE_FILTERS, ids=str)
    def test_reference_filters_pass(self, p):
        report = numeric_validate(p)
        assert report.passed, report.failures
        assert set(report.results) == {
            "real", "positive", "unimodal", "consistent_reduction", "normalized", "linear_diffusion"
        }

    def test_positive_d_fails(self):
        report = numeric_validate(DesignParams(1.0, 0.0, 0.1))
        assert not report.passed
        assert {"real", "positive"} & set(report.failures)

    def test_failure_has_witness(self):
        r = numeric_validate(DesignParams(1.0, 0.0, 0.1)).results["real"]
        assert r.margin < 0 and 0 <= r.theta <= np.pi and r.l >= 1

    def test_large_b_fails_positivity(self):
        # sigma_aa(pi) = 1 - 2t(b + c) is negative here.
        report = numeric_validate(DesignParams(3.0, 0.0, -0.5))
        assert not report.passed

    def test_uncoupled_point_outside_region_passes(self):
        # d = 0 always gives linear diffusion, whatever the auxiliary channel does.
        assert not is_feasible(-0.5, -1.5, 0.0)
        assert numeric_validate(DesignParams(-0.5, -1.5, 0.0), l_max=150).passed

    def test_argument_checks(self):
        with pytest.raises(ValueError):
            numeric_validate(NON_GAUSSIAN, grid_size=32)
        with pytest.raises(ValueError):
            numeric_validate(NON_GAUSSIAN, l_max=1)

    def test_report_serializes(self):
        out = numeric_validate(SHARP).to_dict()
        assert out["passed"] is True and out["params"]["c"] == 0.48

    @given(feasible_params())
    @settings(max_examples=25, deadline=None)
    def test_feasible_params_pass(self, p):
        assert numeric_validate(p, grid_size=128, l_max=60).passed


class TestSampleFeasible:
    def test_deterministic(self):
        assert sample_feasible(10, 5) == sample_feasible(10, 5)
        assert sample_feasible(10, 5) != sample_feasible(10, 6)

    def test_all_feasible(self):
        assert all(theorem2_check(p).feasible for p in sample_feasible(50, 1))

    def test_d_slice(self):
        pts = sample_feasible(20, 2, d=0.0, t=0.1)
        assert all(p.d == 0.0 and p.t == 0.1 for p in pts)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            sample_feasible(0)
        with pytest.raises(ValueError):
            sample_feasible(3, d=0.5)


def _single_violation_probes(count, seed):
    rng = np.random.default_rng(seed)
    probes = []
    while len(probes) < count:
        d, b, c = rng.uniform(-1.2, 0.3), rng.uniform(-1.5, 3.5), rng.uniform(-1.5, 2.0)
        s = np.array(list(constraint_slacks(b, c, d).values()))
        if (s < 0).sum() == 1 and s.min() <= -0.05:
            probes.append(DesignParams(b, c, d, 0.25))
    return probes


@pytest.mark.xfail(
    strict=True,
    reason="the region is sufficient, not necessary: about a quarter of single-constraint "
    "violations still give valid scale-space kernels",
)
def test_single_violations_usually_fail_numerically():
    probes = _single_violation_probes(300, 3)
    failing = sum(not numeric_validate(p, l_max=300).passed for p in probes)
    assert failing / len(probes) >= 0.9


def test_sufficiency_gap_example():
    # Violates only b + c <= 2 + 2d, yet behaves as a scale space at every step size.
    b, c, d = 1.315, 0.221, -0.413
    assert [k for k, v in constraint_slacks(b, c, d).items() if v < 0] == ["b+c ≤ 2+2d"]
    for t in (0.05, 0.125, 0.25):
        assert numeric_validate(DesignParams(b, c, d, t), l_max=300).passed
