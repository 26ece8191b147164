import math

import numpy as np
import pytest

from gmink.exceptions import DomainError
from gmink.isotropic import count_constant_solutions
from gmink.isotropic import isotropic_report
from gmink.isotropic import isotropic_threshold
from gmink.isotropic import linearized_spectrum
from gmink.isotropic import solve_constant_log_roots
from gmink.isotropic import solve_constant_roots


def profile(r, n, p):
    return r ** (n - p) * math.exp(-0.5 * r * r)


class TestThreshold:
    @pytest.mark.parametrize(
        "n, p, expected",
        [
            (3, 1.0, 2.0 / math.e),
            (2, 1.0, math.exp(-0.5)),
            (3, 2.0, math.exp(-0.5)),
        ],
    )
    def test_values(self, n, p, expected):
        assert isotropic_threshold(n, p) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("n, p", [(2, 2.0), (3, 3.5), (3, 0.5)])
    def test_domain(self, n, p):
        with pytest.raises(DomainError):
            isotropic_threshold(n, p)


class TestTrichotomy:
    @pytest.mark.parametrize(
        "C, count", [(0.5, 2), (2.0 / math.e, 1), (1.0, 0)]
    )
    def test_counts(self, C, count):
        assert count_constant_solutions(3, 1.0, C) == count

    def test_roots_straddle_maximizer(self):
        small, large = solve_constant_roots(3, 1.0, 0.5)
        assert small < math.sqrt(2.0) < large
        for r in (small, large):
            assert profile(r, 3, 1.0) == pytest.approx(0.5, abs=1e-12)

    def test_disk_level(self, disk_roots):
        small, large = disk_roots
        assert small == pytest.approx(0.2600, abs=1e-4)
        assert large == pytest.approx(2.0485, abs=1e-3)
        for r in disk_roots:
            assert r * math.exp(-0.5 * r * r) == pytest.approx(
                2.0 * math.pi * 0.04, abs=1e-12
            )

    def test_threshold_root(self):
        assert solve_constant_roots(3, 1.0, 2.0 / math.e) == [math.sqrt(2.0)]

    def test_tiny_level(self):
        small, large = solve_constant_roots(2, 1.0, 1e-8)
        assert small == pytest.approx(1e-8, rel=1e-6)
        assert large > 6.0
        assert profile(large, 2, 1.0) == pytest.approx(1e-8, rel=1e-10)

    def test_small_root_near_underflow(self):
        # r^{0.1} e^{-r^2/2} = 1e-25 puts the small root near 1e-250
        small, large = solve_constant_roots(3, 2.9, 1e-25)
        assert 0.0 < small < 1e-240
        assert 0.1 * math.log(small) - 0.5 * small ** 2 == pytest.approx(
            math.log(1e-25), abs=1e-10
        )
        assert profile(large, 3, 2.9) == pytest.approx(1e-25, rel=1e-9)

    def test_log_roots_beyond_double_range(self):
        log_small, log_large = solve_constant_log_roots(3, 2.9, 1e-40)
        assert log_small < -900.0
        for s in (log_small, log_large):
            assert 0.1 * s - 0.5 * math.exp(2.0 * s) == pytest.approx(
                math.log(1e-40), abs=1e-9
            )
        with pytest.raises(DomainError):
            solve_constant_roots(3, 2.9, 1e-40)

    def test_no_root_above_threshold(self):
        with pytest.raises(DomainError):
            solve_constant_roots(3, 1.0, 1.0)

    def test_root_count_consistency(self):
        rng = np.random.default_rng(7)
        for _ in range(300):
            n = int(rng.integers(2, 4))
            p = rng.uniform(1.0, n - 0.05)
            C = isotropic_threshold(n, p) * rng.uniform(1e-6, 0.999)
            roots = solve_constant_roots(n, p, C)
            assert len(roots) == count_constant_solutions(n, p, C) == 2
            for r in roots:
                assert math.log(profile(r, n, p)) == pytest.approx(
                    math.log(C), abs=1e-12
                )

    def test_unimodal_profile(self):
        r = np.linspace(1e-3, 6.0, 10_000)
        slope = np.gradient(r * np.exp(-0.5 * r * r), r)
        assert np.all(slope[r < 0.99] > 0)
        assert np.all(slope[r > 1.01] < 0)

    def test_report(self):
        report = isotropic_report(3, 1.0, 0.5)
        assert report.root_count == 2
        assert report.threshold == pytest.approx(2.0 / math.e)
        assert isotropic_report(3, 1.0, 1.0).roots == []


class TestSpectrum:
    def test_small_disk_root(self):
        spectrum = linearized_spectrum(2, 1.0, 0.26, 2)
        np.testing.assert_allclose(
            spectrum.eigenvalues, [0.9324, -0.0676, -3.0676], atol=1e-12
        )
        assert spectrum.invertible
        assert spectrum.resonant_degree is None

    def test_unit_disk_is_resonant(self):
        spectrum = linearized_spectrum(2, 1.0, 1.0)
        assert spectrum.eigenvalues[0] == 0.0
        assert spectrum.eigenvalues[1] == -1.0
        assert not spectrum.invertible
        assert spectrum.resonant_degree == 0

    def test_threshold_constant_is_resonant(self):
        spectrum = linearized_spectrum(3, 1.0, math.sqrt(2.0))
        assert not spectrum.invertible

    def test_k_max(self):
        spectrum = linearized_spectrum(3, 1.0, 0.5, k_max=6)
        assert len(spectrum.eigenvalues) == 7
        assert spectrum.eigenvalues[2] == pytest.approx(2.0 - 0.25 - 6.0)
        assert spectrum.invertible

    def test_domain(self):
        with pytest.raises(DomainError):
            linearized_spectrum(2, 1.0, 0.0)
