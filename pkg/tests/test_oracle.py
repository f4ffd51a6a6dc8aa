import numpy as np
import pytest

from helpers import philox
from sparseproj import (
    SparsenessTarget,
    derive_norms,
    jacobian_fd,
    project,
    project_bruteforce,
    project_sorted,
)

TARGET_3 = SparsenessTarget(n=3, lambda1=1.5, lambda2=1.0)
TARGET_2 = SparsenessTarget(n=2, lambda1=1.2, lambda2=1.0)

P_321 = np.array([0.85355339059327376, 0.5, 0.14644660940672624])
ALPHA_10 = -0.30178372573727315


class TestSorted:
    def test_increase_example(self):
        report = project_sorted([3.0, 2.0, 1.0], TARGET_3)
        np.testing.assert_allclose(report.p_oracle, P_321, atol=1e-12)
        assert report.support_oracle.size == 3

    def test_decrease_full_support(self):
        report = project_sorted([1.0, 0.0], TARGET_2)
        assert report.alpha_oracle == pytest.approx(ALPHA_10, abs=1e-12)
        assert report.support_oracle.size == 2

    def test_unsorted_input_matches_sorted_input(self):
        rng = philox(51)
        target = derive_norms(0.6, 16)
        x = rng.random(16)
        xs = np.sort(x)[::-1].copy()
        a = project_sorted(x, target)
        b = project_sorted(xs, target)
        np.testing.assert_allclose(np.sort(a.p_oracle), np.sort(b.p_oracle), atol=1e-12)

    def test_agrees_with_project_including_zero_entries(self):
        rng = philox(52)
        target = derive_norms(0.55, 24)
        for _ in range(50):
            x = rng.random(24)
            x[rng.integers(0, 24, size=4)] = 0.0
            res = project(x, target)
            report = project_sorted(x, target)
            np.testing.assert_allclose(report.p_oracle, res.p, atol=1e-9 * target.lambda2)
            assert report.support_oracle.size == res.d

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError, match="reject-negative"):
            project_sorted([1.0, -1.0, 2.0], TARGET_3)


class TestBruteforce:
    def test_matches_closed_form_example(self):
        report = project_bruteforce([3.0, 2.0, 1.0], TARGET_3)
        np.testing.assert_allclose(report.p_oracle, P_321, atol=1e-9)
        assert not report.tie
        assert report.distance == pytest.approx(
            float(np.linalg.norm(P_321 - np.array([3.0, 2.0, 1.0]))), abs=1e-9
        )

    def test_symmetric_input_is_flagged_as_tie(self):
        target = derive_norms(0.5, 2)
        report = project_bruteforce([2.0, 2.0], target)
        assert report.tie

    def test_point_already_in_target_set(self):
        p = project([3.0, 2.0, 1.0], TARGET_3).p
        report = project_bruteforce(p, TARGET_3)
        assert report.distance <= 1e-12
        assert not report.tie

    def test_size_limit(self):
        target = derive_norms(0.5, 13)
        with pytest.raises(ValueError, match="n <= 12"):
            project_bruteforce(np.ones(13) + np.arange(13), target)

    @pytest.mark.parametrize("n", [3, 5, 8])
    @pytest.mark.parametrize("sigma_star", [0.2, 0.5, 0.8])
    def test_agrees_with_project_on_random_inputs(self, n, sigma_star):
        rng = philox(53)
        target = derive_norms(sigma_star, n)
        for _ in range(60):
            x = rng.random(n)
            report = project_bruteforce(x, target)
            if report.tie:
                continue
            res = project(x, target)
            np.testing.assert_allclose(report.p_oracle, res.p, atol=1e-9)
            assert np.linalg.norm(res.p - x) <= report.distance + 1e-9


class TestJacobianFD:
    def test_dead_coordinate_gives_zero_column(self):
        # the smallest entry is far below the shift for this target
        target = SparsenessTarget(n=3, lambda1=1.2, lambda2=1.0)
        res = project([3.0, 2.0, 0.2], target)
        assert res.d == 2
        fd = jacobian_fd([3.0, 2.0, 0.2], target, h=1e-6)
        assert not fd.suspect[2]
        np.testing.assert_array_equal(fd.matrix[:, 2], np.zeros(3))

    def test_large_step_near_boundary_is_flagged(self):
        # an entry close to the shift flips support under a large step
        target = SparsenessTarget(n=3, lambda1=1.2, lambda2=1.0)
        res = project([3.0, 2.0, 0.2], target)
        boundary = res.alpha
        x = np.array([3.0, 2.0, boundary - 0.01])
        fd = jacobian_fd(x, target, h=0.05)
        assert fd.suspect[2]

    def test_invalid_step_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            jacobian_fd([3.0, 2.0, 1.0], TARGET_3, h=0.0)
