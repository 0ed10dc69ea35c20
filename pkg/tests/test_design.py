import numpy as np
import pytest

from scalespace2x2.conditions import is_feasible
from scalespace2x2.design import compare, optimize, sign_changes
from scalespace2x2.errors import EmptyFeasibleGrid
from scalespace2x2.spectral import DesignParams, falloff, sigma_xx

LO, HI = np.pi / 16, np.pi / 4


@pytest.fixture(scope="module")
def sharp():
    return optimize(100, LO, HI, 0.25)


class TestOptimize:
    def test_reaches_sharp_design(self, sharp):
        p = sharp.params
        assert sharp.objective == pytest.approx(0.9234, abs=0.005)
        assert p.b == pytest.approx(1.0, abs=0.05)
        assert p.c == pytest.approx(1 + 2 * p.d, abs=0.01)

    def test_optimum_is_feasible_and_objective_consistent(self, sharp):
        p = sharp.params
        assert is_feasible(p.b, p.c, p.d)
        assert sharp.objective == falloff(p, 100, LO, HI)

    def test_active_constraints(self, sharp):
        assert "b+c ≤ 2+2d" in sharp.active_constraints

    def test_trace_marks_rejections(self, sharp):
        assert len(sharp.trace) > 0
        for e in sharp.trace:
            assert e.feasible == is_feasible(e.b, e.c, e.d)
            assert (e.objective == -np.inf) == (not e.feasible)
        assert sharp.rejected == sum(not e.feasible for e in sharp.trace)
        assert max(e.objective for e in sharp.trace) == pytest.approx(sharp.objective, abs=1e-12)

    def test_same_seed_same_trace(self):
        a = optimize(50, LO, HI, grid_density=9, refinement_iters=60, seed=4)
        b = optimize(50, LO, HI, grid_density=9, refinement_iters=60, seed=4)
        assert a.trace == b.trace and a.params == b.params

    def test_grid_density_stability(self, sharp):
        coarse = optimize(100, LO, HI, 0.25, grid_density=15)
        assert coarse.objective == pytest.approx(sharp.objective, abs=0.005)

    def test_single_step_objective(self):
        r = optimize(1, LO, HI, 0.25, grid_density=9, refinement_iters=50)
        # F^1 = sigma_xx whatever (b, c, d) is.
        expected = sigma_xx(r.params, LO) - sigma_xx(r.params, HI)
        assert r.objective == pytest.approx(expected, abs=1e-12)

    def test_gaussian_slice(self):
        r = optimize(100, LO, HI, 0.25, fix_d=0.0)
        assert r.params.d == 0.0
        assert r.objective == pytest.approx(np.cos(LO / 2) ** 200 - np.cos(HI / 2) ** 200, abs=1e-10)
        assert r.objective == pytest.approx(0.38, abs=0.01)

    def test_empty_grid(self):
        # On the d = 0 slice a 2x2 grid holds only the box corners, all infeasible.
        with pytest.raises(EmptyFeasibleGrid):
            optimize(10, LO, HI, grid_density=2, fix_d=0.0)

    @pytest.mark.parametrize(
        "kwargs",
        [dict(theta_lo=HI, theta_hi=LO), dict(l=0), dict(grid_density=1)],
    )
    def test_argument_checks(self, kwargs):
        with pytest.raises(ValueError):
            optimize(**kwargs)

    def test_serialization(self, sharp):
        out = sharp.to_dict()
        assert "trace" not in out and out["evaluations"] == len(sharp.trace)
        assert len(sharp.to_dict(include_trace=True)["trace"]) == len(sharp.trace)


class TestSignChanges:
    def test_linear_crossing(self):
        th = np.linspace(0, 1, 11)
        assert sign_changes(th, th - 0.35) == pytest.approx([0.35])

    def test_touching_zero_is_not_a_crossing(self):
        th = np.linspace(-1, 1, 21)
        assert sign_changes(th, th**2) == []

    def test_crossing_through_exact_zero(self):
        th = np.linspace(-1, 1, 21)
        assert sign_changes(th, th) == pytest.approx([0.0], abs=1e-12)


class TestCompare:
    def test_gaussian_and_matrix_filter_cross(self):
        table = compare([(DesignParams(1, 0, 0), 5), (DesignParams(1, 0, -0.5), 35)])
        assert len(table.crossings[(0, 1)]) >= 1
        assert all(0 < x < np.pi for x in table.crossings[(0, 1)])

    def test_identical_configs_never_cross(self):
        table = compare([(DesignParams(1, 0, -0.5), 10)] * 2)
        assert table.crossings[(0, 1)] == []
        np.testing.assert_array_equal(table.responses[0], table.responses[1])

    def test_gaussian_steps_do_not_cross(self):
        table = compare([(DesignParams(1, 0, 0), 5), (DesignParams(1, 0, 0), 6)])
        assert table.crossings[(0, 1)] == []

    def test_three_configs_give_three_pairs(self):
        table = compare([(DesignParams(1, 0, 0), 5), (DesignParams(1, 0, -0.5), 35), (DesignParams(1, 0.48, -0.26), 20)])
        assert set(table.crossings) == {(0, 1), (0, 2), (1, 2)}
        assert table.responses.shape == (3, 512)

    def test_needs_two_configs(self):
        with pytest.raises(ValueError):
            compare([(DesignParams(1, 0, 0), 5)])

    def test_serialization(self):
        out = compare([(DesignParams(1, 0, 0), 5), (DesignParams(1, 0, -0.5), 35)], 64).to_dict()
        assert list(out["crossings"]) == ["0,1"] and len(out["thetas"]) == 64
