import math

import numpy as np
import pytest

from gmink.exceptions import GridMismatchError
from gmink.exceptions import InvalidInputError
from gmink.exceptions import NonConvexBodyError
from gmink.geometry import ball
from gmink.geometry import build_grid
from gmink.geometry import convexity_check
from gmink.geometry import differentiate
from gmink.geometry import euclidean_volume
from gmink.geometry import hausdorff_distance
from gmink.geometry import hessian_eigenvalues
from gmink.geometry import radial_at_nodes
from gmink.geometry import radial_from_support
from gmink.geometry import require_convex
from gmink.geometry import support_field
from gmink.geometry import symmetrize_even
from gmink.verification import random_even_body


def translated_ball(grid, radius, centre):
    return support_field(grid, radius + grid.nodes @ np.asarray(centre))


class TestDifferentiate:
    @pytest.mark.parametrize("radius", [0.5, 1.0, 2.0])
    def test_ball(self, circle, sphere, radius):
        for grid in (circle, sphere):
            geometry = differentiate(ball(grid, radius))
            np.testing.assert_allclose(geometry.gradient, 0.0, atol=1e-8)
            np.testing.assert_allclose(
                geometry.gauss_map_dets, radius ** (grid.dim - 1), rtol=1e-9
            )
            np.testing.assert_allclose(
                geometry.boundary_points, radius * grid.nodes, atol=1e-8
            )

    def test_circle_is_spectral(self, circle):
        h = support_field(circle, 1.0 + 0.1 * np.cos(2 * circle.theta))
        geometry = differentiate(h)
        np.testing.assert_allclose(
            geometry.gradient[:, 0],
            -0.2 * np.sin(2 * circle.theta),
            atol=1e-10,
        )
        np.testing.assert_allclose(
            geometry.gauss_map_dets,
            1.0 - 0.3 * np.cos(2 * circle.theta),
            atol=1e-10,
        )

    def test_translated_disk(self, circle):
        h = translated_ball(circle, 1.0, [0.3, -0.2])
        geometry = differentiate(h)
        np.testing.assert_allclose(geometry.gauss_map_dets, 1.0, atol=1e-10)
        np.testing.assert_allclose(
            geometry.boundary_points,
            np.array([0.3, -0.2]) + circle.nodes,
            atol=1e-10,
        )

    def test_translated_ball_on_sphere(self, sphere):
        centre = np.array([0.2, -0.1, 0.15])
        h = translated_ball(sphere, 1.0, centre)
        geometry = differentiate(h)
        np.testing.assert_allclose(geometry.gauss_map_dets, 1.0, atol=1e-3)
        np.testing.assert_allclose(
            geometry.boundary_points, centre + sphere.nodes, atol=1e-3
        )

    def test_with_radial(self, circle):
        geometry = differentiate(ball(circle, 1.5), with_radial=True)
        np.testing.assert_allclose(geometry.radial, 1.5, rtol=1e-12)


class TestRadial:
    @pytest.mark.parametrize("radius", [0.5, 1.17741, 2.0])
    def test_ball_at_nodes(self, circle, sphere, radius):
        for grid in (circle, sphere):
            rho, alpha = radial_at_nodes(ball(grid, radius))
            np.testing.assert_allclose(rho, radius, rtol=1e-9)
            np.testing.assert_allclose(alpha, grid.nodes, atol=1e-6)

    def test_single_direction(self, circle):
        u = np.array([math.cos(0.3), math.sin(0.3)])
        assert radial_from_support(ball(circle, 2.0), u) == pytest.approx(
            2.0, rel=1e-6
        )

    def test_ellipse(self, circle):
        a, b = 2.0, 1.0
        c, s = np.cos(circle.theta), np.sin(circle.theta)
        h = support_field(circle, np.sqrt((a * c) ** 2 + (b * s) ** 2))
        rho, _ = radial_at_nodes(h)
        expected = 1.0 / np.sqrt((c / a) ** 2 + (s / b) ** 2)
        np.testing.assert_allclose(rho, expected, rtol=1e-3)

    def test_radial_is_even(self, circle):
        values = 1.0 + 0.05 * np.cos(2 * circle.theta) + 0.02 * np.sin(
            4 * circle.theta
        )
        rho, _ = radial_at_nodes(support_field(circle, values))
        np.testing.assert_array_equal(rho, rho[circle.antipode])

    def test_ball_next_to_poles(self, sphere):
        rho, _ = radial_at_nodes(ball(sphere, 1.3))
        n_lon = sphere.resolution[1]
        np.testing.assert_allclose(rho[:n_lon], 1.3, rtol=1e-12)
        np.testing.assert_allclose(rho[-n_lon:], 1.3, rtol=1e-12)

    @pytest.mark.parametrize("seed", range(5))
    def test_agrees_with_boundary_points(self, circle, seed):
        h = random_even_body(2, seed, 0.1, circle)
        x = differentiate(h).boundary_points
        norms = np.linalg.norm(x, axis=1)
        rho = radial_from_support(h, x / norms[:, None])
        np.testing.assert_allclose(rho, norms, rtol=5e-3)

    @pytest.mark.parametrize("seed", range(5))
    def test_boundary_points_lie_in_body(self, circle, fine_sphere, seed):
        for grid in (circle, fine_sphere):
            h = random_even_body(grid.dim, seed, 0.1, grid)
            x = differentiate(h).boundary_points
            ratios = (x @ grid.nodes.T) / h.values[None, :]
            assert np.max(ratios) <= 1.0 + 5e-3


class TestMetrics:
    def test_convexity(self, circle):
        assert convexity_check(ball(circle, 1.0)).is_convex
        wavy = support_field(circle, 1.0 + 0.5 * np.cos(2 * circle.theta))
        report = convexity_check(wavy)
        assert not report.is_convex
        assert report.min_eigenvalue == pytest.approx(-0.5, abs=1e-8)
        with pytest.raises(NonConvexBodyError):
            require_convex(wavy, "test")

    def test_eigenvalues_of_ball(self, sphere):
        h = ball(sphere, 1.3)
        eigenvalues = hessian_eigenvalues(h, differentiate(h))
        assert eigenvalues.shape == (sphere.size, 2)
        np.testing.assert_allclose(eigenvalues, 1.3, rtol=1e-8)

    def test_hausdorff(self, circle, coarse_circle):
        assert hausdorff_distance(ball(circle, 1.0), ball(circle, 1.5)) == 0.5
        with pytest.raises(GridMismatchError):
            hausdorff_distance(ball(circle, 1.0), ball(coarse_circle, 1.0))

    def test_hausdorff_is_a_metric(self, coarse_circle):
        a, b, c = (
            random_even_body(2, seed, 0.1, coarse_circle) for seed in (1, 2, 3)
        )
        assert hausdorff_distance(a, a) == 0.0
        assert hausdorff_distance(a, b) > 0.0
        assert hausdorff_distance(a, b) == hausdorff_distance(b, a)
        assert hausdorff_distance(a, c) <= (
            hausdorff_distance(a, b) + hausdorff_distance(b, c)
        )

    def test_symmetrize_even(self, circle):
        c = np.cos(circle.theta)
        values = 1.0 + 0.1 * c + 0.1 * np.cos(2 * circle.theta)
        even = symmetrize_even(values, circle)
        np.testing.assert_array_equal(even, even[circle.antipode])
        np.testing.assert_allclose(
            even, 1.0 + 0.1 * np.cos(2 * circle.theta), atol=1e-14
        )
        with pytest.raises(GridMismatchError):
            symmetrize_even(values[:-1], circle)

    @pytest.mark.parametrize("radius", [0.5, 2.0])
    def test_euclidean_volume(self, circle, sphere, radius):
        assert euclidean_volume(ball(circle, radius)) == pytest.approx(
            math.pi * radius ** 2, rel=1e-10
        )
        assert euclidean_volume(ball(sphere, radius)) == pytest.approx(
            4.0 / 3.0 * math.pi * radius ** 3, rel=1e-8
        )


class TestSupportField:
    def test_rejects_non_positive(self, circle):
        with pytest.raises(InvalidInputError):
            support_field(circle, np.zeros(circle.size))

    def test_rejects_wrong_length(self, circle):
        with pytest.raises(InvalidInputError):
            support_field(circle, np.ones(10))

    def test_values_are_read_only(self, circle):
        h = ball(circle, 1.0)
        with pytest.raises(ValueError):
            h.values[0] = 2.0

    def test_is_even(self):
        grid = build_grid(2, 16)
        assert ball(grid, 1.0).is_even()
        odd = support_field(grid, 1.0 + 0.1 * grid.nodes[:, 0])
        assert not odd.is_even()
