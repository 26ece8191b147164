import math

import numpy as np
import pytest

from gmink.exceptions import DegenerateStartError
from gmink.exceptions import GridMismatchError
from gmink.exceptions import NewtonFailure
from gmink.geometry import ball
from gmink.geometry import build_grid
from gmink.geometry import differentiate
from gmink.geometry import hausdorff_distance
from gmink.geometry import support_field
from gmink.isotropic import solve_constant_roots
from gmink.measures import small_branch_mass_threshold
from gmink.solver import apriori_check
from gmink.solver import assemble_jacobian
from gmink.solver import branch_ordering
from gmink.solver import homotopy_solve
from gmink.solver import isotropic_start
from gmink.solver import newton_solve
from gmink.solver import residual
from gmink.solver import residual_sup
from gmink.types import Branch
from gmink.types import MeasureDensity
from gmink.types import SolveConfig
from gmink.types import SolveReport
from gmink.verification import even_perturbation
from gmink.verification import random_even_body
from gmink.verification import random_even_density


def constant_density(grid, level):
    return MeasureDensity.from_values(grid, level)


def perturbed_density(grid):
    return MeasureDensity.from_values(
        grid, 0.04 * (1.0 + 0.1 * np.cos(2.0 * grid.theta))
    )


class TestResidual:
    def test_vanishes_at_constant_root(self, circle, disk_roots):
        f = constant_density(circle, 0.04)
        for r in disk_roots:
            assert residual_sup(ball(circle, r), f) <= 1e-10

    def test_spec_level_root(self, circle):
        f = constant_density(circle, 0.04)
        assert residual_sup(ball(circle, 0.26), f) <= 1e-4

    def test_linear_in_density(self, circle):
        h = random_even_body(2, 3, 0.1, circle)
        f = random_even_density(circle, 3, 0.2)
        doubled = MeasureDensity.from_values(circle, 2.0 * f.values)
        once, twice = residual(h, f), residual(h, doubled)
        dets = differentiate(h).gauss_map_dets
        np.testing.assert_allclose(2.0 * once - twice, dets, atol=1e-10)
        assert np.all(twice < once)

    def test_grid_mismatch(self, circle, coarse_circle):
        with pytest.raises(GridMismatchError):
            residual(ball(circle, 1.0), constant_density(coarse_circle, 0.04))


class TestJacobian:
    @pytest.mark.parametrize("p, C", [(1.0, 2.0 * math.pi * 0.04), (1.5, 0.3)])
    def test_spectrum_at_constant_solution(self, coarse_circle, p, C):
        f = constant_density(coarse_circle, C / (2.0 * math.pi))
        for r0 in solve_constant_roots(2, p, C):
            jacobian = assemble_jacobian(ball(coarse_circle, r0, p), f)
            eigenvalues = np.linalg.eigvalsh(0.5 * (jacobian + jacobian.T))
            for k in range(5):
                expected = (2.0 - p) - r0 ** 2 - k * k
                assert np.min(np.abs(eigenvalues - expected)) < 1e-6

    @pytest.mark.parametrize("seed", range(10))
    def test_finite_differences_on_circle(self, coarse_circle, seed):
        self._check_finite_differences(coarse_circle, seed)

    @pytest.mark.parametrize("seed", range(3))
    def test_finite_differences_on_sphere(self, seed):
        self._check_finite_differences(build_grid(3, (12, 24)), seed)

    @staticmethod
    def _check_finite_differences(grid, seed):
        p = 1.0 + 0.5 * (seed % 2)
        h = random_even_body(grid.dim, seed, 0.05, grid, p)
        f = random_even_density(grid, seed, 0.2)
        delta = h.values * even_perturbation(grid, np.random.default_rng(seed))
        eps = 1e-5
        forward = residual(h.with_values(h.values + eps * delta), f)
        backward = residual(h.with_values(h.values - eps * delta), f)
        expected = (forward - backward) / (2.0 * eps)
        actual = assemble_jacobian(h, f) @ delta
        scale = max(1.0, np.max(np.abs(delta)))
        np.testing.assert_allclose(actual, expected, atol=1e-6 * scale)

    def test_preserves_evenness(self, circle):
        h = random_even_body(2, 11, 0.1, circle)
        f = random_even_density(circle, 11, 0.25)
        delta = even_perturbation(circle, np.random.default_rng(11))
        image = assemble_jacobian(h, f) @ delta
        np.testing.assert_allclose(image, image[circle.antipode], atol=1e-9)


class TestNewton:
    def test_small_root(self, circle, disk_roots):
        f = constant_density(circle, 0.04)
        report = newton_solve(ball(circle, 0.3), f)
        np.testing.assert_allclose(
            report.solution.values, disk_roots[0], atol=1e-8
        )
        assert len(report.newton_history) - 1 <= 8
        assert report.residual_sup <= 1e-10

    def test_large_root(self, circle, disk_roots):
        f = constant_density(circle, 0.04)
        report = newton_solve(ball(circle, 2.2), f)
        np.testing.assert_allclose(
            report.solution.values, disk_roots[1], atol=1e-8
        )

    def test_fixed_point(self, circle, disk_roots):
        f = constant_density(circle, 0.04)
        report = newton_solve(ball(circle, disk_roots[0]), f)
        assert len(report.newton_history) == 1

    def test_iterates_stay_even(self, circle):
        f = perturbed_density(circle)
        report = newton_solve(ball(circle, 0.3), f)
        assert report.solution.is_even()
        assert report.residual_sup <= 1e-10

    def test_non_convex_start(self, circle):
        h0 = support_field(circle, 1.0 + 0.5 * np.cos(2.0 * circle.theta))
        with pytest.raises(NewtonFailure) as info:
            newton_solve(h0, constant_density(circle, 0.04))
        assert info.value.reason == NewtonFailure.CONVEXITY_LOSS

    def test_iteration_cap(self, circle):
        with pytest.raises(NewtonFailure) as info:
            newton_solve(
                ball(circle, 2.2),
                constant_density(circle, 0.04),
                SolveConfig(max_newton_iters=1),
            )
        assert info.value.reason == NewtonFailure.ITERATION_CAP
        assert len(info.value.history) == 2
        assert info.value.last_iterate is not None


class TestHomotopy:
    def test_small_branch_of_constant_density(self, circle, disk_roots):
        report = homotopy_solve(constant_density(circle, 0.04), Branch.SMALL)
        np.testing.assert_allclose(
            report.solution.values, disk_roots[0], atol=1e-8
        )
        assert report.gamma_n == pytest.approx(0.03324, abs=1e-4)
        assert report.branch == "small"
        trace = report.homotopy_trace
        assert trace[0].t == 0.0 and trace[-1].t == 1.0
        assert trace[0].residual_sup <= 1e-10
        assert not report.gamma_crossing

    def test_large_branch_of_constant_density(self, circle, disk_roots):
        report = homotopy_solve(constant_density(circle, 0.04), "large")
        np.testing.assert_allclose(
            report.solution.values, disk_roots[1], atol=1e-8
        )
        assert report.gamma_n == pytest.approx(0.8773, abs=1e-3)

    def test_two_solutions(self, circle):
        f = perturbed_density(circle)
        assert f.l1_norm == pytest.approx(0.2513, abs=1e-4)
        small = homotopy_solve(f, Branch.SMALL)
        large = homotopy_solve(f, Branch.LARGE)
        for report in (small, large):
            assert report.residual_sup <= 1e-8
            assert report.residual_sup == residual_sup(report.solution, f)
            assert report.solution.is_even()
            assert report.apriori.positive_and_finite
            ts = [point.t for point in report.homotopy_trace]
            assert ts == sorted(set(ts))
        assert small.gamma_n < 0.5 < large.gamma_n
        assert hausdorff_distance(small.solution, large.solution) > 1.0
        assert 0.2 < small.apriori.h_min and small.apriori.h_max < 0.4
        ordering = branch_ordering(small, large)
        assert ordering.start_ordered
        assert ordering.gamma_ordered
        assert ordering.min_gap > 0.0
        assert ordering.pointwise_ordered

    def test_mass_above_threshold_warns(self, coarse_circle, caplog):
        f = constant_density(coarse_circle, 0.07)
        with caplog.at_level("WARNING", logger="gmink.solver.homotopy"):
            report = homotopy_solve(f, Branch.SMALL)
        assert "not below" in caplog.text
        assert report.gamma_n < 0.5

    def test_no_isotropic_start(self, coarse_circle):
        with pytest.raises(DegenerateStartError):
            homotopy_solve(constant_density(coarse_circle, 0.1), Branch.SMALL)

    @pytest.mark.slow
    @pytest.mark.parametrize("p", [1.0, 1.5])
    @pytest.mark.parametrize("seed", range(5))
    def test_small_branch_of_admissible_densities(self, circle, p, seed):
        mass = 0.5 * small_branch_mass_threshold(2, p)
        f = random_even_density(circle, seed, mass, amplitude=0.3)
        report = homotopy_solve(f, Branch.SMALL, p=p)
        assert report.residual_sup <= 1e-8
        assert report.gamma_n < 0.5
        assert not report.gamma_crossing
        assert report.solution.p == p
        assert report.apriori.positive_and_finite
        assert report.apriori.h_min > 0.0
        assert report.apriori.eigenvalue_min > 0.0

    def test_degenerate_level_is_perturbed(self):
        c0 = math.exp(-0.5) / (2.0 * math.pi)
        level, r0 = isotropic_start(2, 1.0, c0, Branch.SMALL)
        assert level == pytest.approx(0.99 * c0, rel=1e-12)
        assert r0 < 1.0

    @pytest.mark.slow
    def test_sphere(self, sphere):
        f = MeasureDensity.from_values(
            sphere,
            0.02 * (1.0 + 0.05 * (3.0 * sphere.nodes[:, 2] ** 2 - 1.0)),
        )
        report = homotopy_solve(f, Branch.SMALL)
        assert report.residual_sup <= 1e-8
        assert report.gamma_n < 0.5
        assert report.apriori.positive_and_finite


class TestApriori:
    def test_ball(self, circle, disk_roots):
        f = constant_density(circle, 0.04)
        report = newton_solve(ball(circle, disk_roots[1]), f)
        checked = apriori_check(report, f)
        r = disk_roots[1]
        for value in (
            checked.h_min,
            checked.h_max,
            checked.support_norm_min,
            checked.support_norm_max,
            checked.eigenvalue_min,
            checked.eigenvalue_max,
        ):
            assert value == pytest.approx(r, rel=1e-8)
        assert checked.euclidean_volume == pytest.approx(math.pi * r * r)
        assert checked.positive_and_finite
        assert not checked.near_degenerate


class TestBranchOrdering:
    def report(self, grid, values, gamma, start):
        return SolveReport(
            solution=support_field(grid, values),
            gamma_n=gamma,
            residual_sup=0.0,
            start_radius=start,
        )

    def test_ordered_balls(self, coarse_circle, disk_roots):
        small = self.report(coarse_circle, disk_roots[0], 0.03, disk_roots[0])
        large = self.report(coarse_circle, disk_roots[1], 0.88, disk_roots[1])
        ordering = branch_ordering(small, large)
        assert ordering.start_ordered
        assert ordering.gamma_ordered
        assert ordering.pointwise_ordered
        assert ordering.min_gap == pytest.approx(disk_roots[1] - disk_roots[0])
        assert ordering.hausdorff_distance == ordering.min_gap

    def test_crossing_fields_are_reported(self, coarse_circle):
        wave = 0.3 * np.cos(2.0 * coarse_circle.theta)
        small = self.report(coarse_circle, 1.0 + wave, 0.3, 0.5)
        large = self.report(coarse_circle, 1.1 - wave, 0.6, 1.5)
        ordering = branch_ordering(small, large)
        assert ordering.start_ordered
        assert ordering.gamma_ordered
        assert not ordering.pointwise_ordered
        assert ordering.min_gap == pytest.approx(-0.5)

    def test_grid_mismatch(self, circle, coarse_circle):
        with pytest.raises(GridMismatchError):
            branch_ordering(
                self.report(circle, 0.3, 0.1, 0.3),
                self.report(coarse_circle, 2.0, 0.8, 2.0),
            )
