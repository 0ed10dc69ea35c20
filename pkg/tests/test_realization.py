import numpy as np
import pytest
from hypothesis import given, settings

from scalespace2x2.errors import PositiveD
from scalespace2x2.realization import (
    FilterTaps,
    MatrixOfFilters,
    realize_balanced,
    realize_multiplier_free_cross,
    taps_to_sigma,
    verify_realization,
)
from scalespace2x2.spectral import DesignParams, cross_product, sigma_aa

from conftest import GRID, NON_GAUSSIAN, feasible_params

REALIZATIONS = [realize_balanced, realize_multiplier_free_cross]


def test_balanced_cross_taps():
    (f_xx, f_xa), (f_ax, f_aa) = realize_balanced(NON_GAUSSIAN).taps
    r = np.sqrt(0.5)
    assert f_ax == pytest.approx((r, 0.0, -r))
    assert f_xa == pytest.approx((-r, 0.0, r))
    assert f_xx == (1.0, -2.0, 1.0)
    assert f_aa == (0.0, -2.0, 0.0)


def test_multiplier_free_cross_taps():
    (_, f_xa), (f_ax, _) = realize_multiplier_free_cross(NON_GAUSSIAN).taps
    assert f_ax == (1.0, 0.0, -1.0)
    assert f_xa == (-0.5, 0.0, 0.5)


@pytest.mark.parametrize("realize", REALIZATIONS)
def test_d_zero_gives_zero_cross_filters(realize):
    m = realize(DesignParams(1.0, 1.0, 0.0))
    assert m.taps[0][1] == FilterTaps.zero() or m.taps[1][0] == FilterTaps.zero()
    prod = taps_to_sigma(m.taps[0][1], 0.25, False, GRID) * taps_to_sigma(m.taps[1][0], 0.25, False, GRID)
    assert np.all(prod == 0)


@pytest.mark.parametrize("realize", REALIZATIONS)
def test_positive_d_rejected(realize):
    with pytest.raises(PositiveD):
        realize(DesignParams(1.0, 0.0, 0.1))


def test_sigma_aa_from_taps_is_flat_for_c_zero():
    f_aa = realize_balanced(NON_GAUSSIAN).taps[1][1]
    np.testing.assert_allclose(taps_to_sigma(f_aa, 0.25, True, GRID), 0.5, atol=1e-15)


def test_multiplier_free_cross_product_for_sharp_design():
    p = DesignParams(1.0, 0.48, -0.26)
    (_, f_xa), (f_ax, _) = realize_multiplier_free_cross(p).taps
    assert f_xa == pytest.approx((-0.26, 0.0, 0.26))
    prod = taps_to_sigma(f_xa, p.t, False, GRID) * taps_to_sigma(f_ax, p.t, False, GRID)
    np.testing.assert_allclose(prod, cross_product(p, GRID), atol=1e-12)


class TestTapsToSigma:
    def test_diffusion_kernel_at_nyquist(self):
        assert taps_to_sigma((1, -2, 1), 0.25, True, np.pi) == pytest.approx(0.0, abs=1e-15)

    def test_zero_filter(self):
        assert np.all(taps_to_sigma((0, 0, 0), 0.2, False, GRID) == 0)

    def test_balanced_pair_product(self):
        r = np.sqrt(0.5)
        prod = taps_to_sigma((r, 0, -r), 0.25, False, np.pi / 2) * taps_to_sigma((-r, 0, r), 0.25, False, np.pi / 2)
        assert prod == pytest.approx(0.125, abs=1e-15)
        assert prod == pytest.approx(cross_product(NON_GAUSSIAN, np.pi / 2), abs=1e-15)

    def test_antisymmetric_symbol_is_imaginary(self):
        s = taps_to_sigma((0.3, 0, -0.3), 0.25, False, GRID)
        assert np.all(np.abs(s.real) < 1e-15)


class TestVerifyRealization:
    @given(feasible_params())
    @settings(max_examples=40)
    def test_both_realizations_pass(self, p):
        for realize in REALIZATIONS:
            report = verify_realization(realize(p), p)
            assert report.passed, report.diagnostics

    def test_symmetric_cross_pair_also_accepted(self):
        # beta_xa * beta_ax = -4d gives the same cross product as the anti-symmetric pair.
        p = NON_GAUSSIAN
        f_xa = FilterTaps(0.5, 1.0, 0.5)
        f_ax = FilterTaps(-1.0, 2.0, -1.0)
        m = MatrixOfFilters(((FilterTaps(1, -2, 1), f_xa), (f_ax, FilterTaps(0, -2, 0))))
        assert verify_realization(m, p).passed

    def test_asymmetric_primary_filter_fails(self):
        good = realize_balanced(NON_GAUSSIAN)
        bad = MatrixOfFilters(((FilterTaps(1.0, -2.0, 0.9), good.taps[0][1]), good.taps[1]))
        report = verify_realization(bad, NON_GAUSSIAN)
        assert not report.passed
        assert any("f_xx is not symmetric" in d for d in report.diagnostics)

    def test_wrong_params_fail(self):
        report = verify_realization(realize_balanced(NON_GAUSSIAN), NON_GAUSSIAN.replace(c=0.1))
        assert not report.passed
        assert report.max_errors["sigma_aa"] > 1e-3

    def test_order_must_be_two(self):
        z = FilterTaps.zero()
        m = MatrixOfFilters(((z, z, z), (z, z, z), (z, z, z)))
        with pytest.raises(ValueError):
            verify_realization(m, NON_GAUSSIAN)


def test_matrix_of_filters_shape_checks():
    z = FilterTaps.zero()
    with pytest.raises(ValueError):
        MatrixOfFilters(((z,),))
    with pytest.raises(ValueError):
        MatrixOfFilters(((z, z), (z,)))


def test_full_update_kernel():
    assert FilterTaps(1, -2, 1).full_update(0.25, True) == (0.25, 0.5, 0.25)


def test_symbol_matrix_matches_closed_form():
    m = realize_balanced(NON_GAUSSIAN)
    for theta in (0.0, 0.4, np.pi / 2, 3.0):
        H = m.symbol(0.25, theta)
        assert H[1, 1] == pytest.approx(sigma_aa(NON_GAUSSIAN, theta))
        assert H[0, 1] * H[1, 0] == pytest.approx(cross_product(NON_GAUSSIAN, theta), abs=1e-15)
