import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import naive_psi, naive_shrunk_norms, philox
from sparseproj import evaluate_aux

X = np.array([3.0, 2.0, 1.0])
LAM1, LAM2 = 1.5, 1.0

# Frozen 50-digit evaluations of the closed formulas at alpha=0 for X:
PSI_0 = 0.10356745147454631
PSI_PRIME_0 = -0.11454053224818188
PSI_SECOND_0 = -0.14726639860480527
PSI_TILDE_0 = 0.32142857142857145
PSI_TILDE_PRIME_0 = -0.36734693877551022


class TestHandExample:
    def test_accumulators_at_zero(self):
        aux = evaluate_aux(X, LAM1, LAM2, 0.0)
        assert aux.ell1 == 6.0
        assert aux.ell2_sq == 14.0
        assert aux.d == 3

    def test_values_at_zero(self):
        aux = evaluate_aux(X, LAM1, LAM2, 0.0)
        assert aux.psi == pytest.approx(PSI_0, abs=1e-14)
        assert aux.psi_prime == pytest.approx(PSI_PRIME_0, abs=1e-14)
        assert aux.psi_second == pytest.approx(PSI_SECOND_0, abs=1e-14)
        assert aux.psi_tilde == pytest.approx(PSI_TILDE_0, abs=1e-14)
        assert aux.psi_tilde_prime == pytest.approx(PSI_TILDE_PRIME_0, abs=1e-14)

    def test_bracket_and_finished_at_zero(self):
        # l1(1) = 3, l2(1)^2 = 5 and 3 < 1.5*sqrt(5), so the interval
        # [0, 1) is already certified at the first evaluation.
        aux = evaluate_aux(X, LAM1, LAM2, 0.0)
        assert aux.bracket_lo == 0.0
        assert aux.bracket_hi == 1.0
        assert aux.finished

    def test_symmetric_two_vector(self):
        aux = evaluate_aux([1.0, 1.0], 1.2, 1.0, 0.5)
        assert aux.d == 2
        assert aux.ell1 - aux.d * 0.5 == pytest.approx(1.0, abs=1e-15)
        assert aux.psi == pytest.approx(math.sqrt(2.0) - 1.2, abs=1e-14)

    def test_tie_falls_on_lower_side(self):
        # entries equal to the shift do not survive the shrink
        aux = evaluate_aux(X, LAM1, LAM2, 1.0)
        assert aux.d == 2
        assert aux.ell1 == 5.0
        assert aux.ell2_sq == 13.0
        assert aux.bracket_lo == 1.0
        assert aux.bracket_hi == 2.0


class TestDomainErrors:
    def test_shift_at_max(self):
        with pytest.raises(ValueError):
            evaluate_aux(X, LAM1, LAM2, 3.0)

    def test_shift_above_max(self):
        with pytest.raises(ValueError):
            evaluate_aux(X, LAM1, LAM2, 7.5)

    def test_negative_shift(self):
        with pytest.raises(ValueError):
            evaluate_aux(X, LAM1, LAM2, -0.25)

    def test_invalid_norm_targets(self):
        with pytest.raises(ValueError):
            evaluate_aux(X, 1.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            evaluate_aux(X, 2.0, 1.0, 0.5)  # above sqrt(3)


class TestAgainstNaiveReference:
    def test_psi_matches_two_pass_evaluation(self):
        rng = philox(11)
        for _ in range(25):
            x = rng.random(40)
            second = np.sort(np.unique(x))[-2]
            for alpha in rng.uniform(0.0, second, size=8):
                aux = evaluate_aux(x, 1.2, 1.0, alpha)
                ref = naive_psi(x, 1.2, 1.0, alpha)
                assert aux.psi == pytest.approx(ref, rel=1e-12, abs=1e-12)
                # the squared-ratio variant shares psi's sign and zero
                assert np.sign(aux.psi_tilde) == np.sign(aux.psi)

    def test_finished_flag_matches_direct_sign_check(self):
        rng = philox(12)
        hits = 0
        for _ in range(40):
            x = rng.random(24)
            xmax = x.max()
            second = np.sort(np.unique(x))[-2]
            alpha = float(rng.uniform(0.0, second))
            aux = evaluate_aux(x, 1.6, 1.0, alpha)
            lo_ok = naive_psi(x, 1.6, 1.0, aux.bracket_lo) >= 0.0
            if aux.bracket_hi < xmax:
                hi_ok = naive_psi(x, 1.6, 1.0, aux.bracket_hi) < 0.0
            else:
                # at the maximum the shrunk vector vanishes; the flag treats
                # this side as not-a-sign-change
                hi_ok = False
            assert aux.finished == (lo_ok and hi_ok)
            hits += aux.finished
        assert hits > 0  # the sweep must exercise both outcomes
        assert hits < 40


class TestAnalyticProperties:
    def test_strictly_decreasing_then_constant(self):
        rng = philox(13)
        x = rng.random(64)
        values = np.sort(np.unique(x))
        second, top = values[-2], values[-1]
        grid = np.linspace(0.0, second * 0.999, 40)
        psis = [evaluate_aux(x, 1.4, 1.0, a).psi for a in grid]
        assert all(p1 > p2 for p1, p2 in zip(psis, psis[1:]))
        plateau_grid = np.linspace(second, second + 0.5 * (top - second), 7)
        plateau = [evaluate_aux(x, 1.4, 1.0, a).psi for a in plateau_grid]
        assert max(plateau) - min(plateau) <= 1e-9 * (1.0 + abs(plateau[0]))

    def test_continuity_at_entry_values(self):
        rng = philox(14)
        x = rng.random(32)
        values = np.sort(np.unique(x))
        second = values[-2]
        inner = values[(values > 0.05) & (values < second * 0.95)]
        for v in inner[:6]:
            jumps = []
            for eps in (1e-4, 1e-6, 1e-8):
                lo = evaluate_aux(x, 1.4, 1.0, v - eps).psi
                hi = evaluate_aux(x, 1.4, 1.0, v + eps).psi
                jumps.append(abs(hi - lo))
            assert jumps[0] > jumps[1] > jumps[2] or jumps[0] < 1e-12
            assert jumps[-1] <= 1e-6

    def test_derivatives_match_central_differences(self):
        rng = philox(15)
        x = rng.random(48)
        values = np.sort(np.unique(x))
        second = values[-2]
        mids = (values[:-1] + values[1:]) / 2.0
        mids = mids[mids < second]
        h = 1e-6 * float(values[-1])
        for alpha in mids[::4]:
            lo = evaluate_aux(x, 1.3, 1.0, alpha - h)
            hi = evaluate_aux(x, 1.3, 1.0, alpha + h)
            mid = evaluate_aux(x, 1.3, 1.0, alpha)
            fd_psi = (hi.psi - lo.psi) / (2.0 * h)
            fd_psi_tilde = (hi.psi_tilde - lo.psi_tilde) / (2.0 * h)
            fd_psi_prime = (hi.psi_prime - lo.psi_prime) / (2.0 * h)
            assert abs(fd_psi - mid.psi_prime) <= 1e-5 * max(1.0, abs(mid.psi_prime))
            assert abs(fd_psi_tilde - mid.psi_tilde_prime) <= 1e-5 * max(
                1.0, abs(mid.psi_tilde_prime)
            )
            assert abs(fd_psi_prime - mid.psi_second) <= 1e-5 * max(
                1.0, abs(mid.psi_second)
            )

    def test_shift_identity_against_recomputation(self):
        rng = philox(16)
        for _ in range(20):
            x = rng.random(32)
            second = np.sort(np.unique(x))[-2]
            alpha = float(rng.uniform(0.0, second))
            aux = evaluate_aux(x, 1.4, 1.0, alpha)
            for xi in (aux.bracket_lo, alpha, aux.bracket_hi):
                l1_shift = aux.ell1 - aux.d * xi
                l2_shift_sq = aux.ell2_sq - 2.0 * xi * aux.ell1 + aux.d * xi * xi
                l1_ref, l2_ref = naive_shrunk_norms(x, xi)
                assert l1_shift == pytest.approx(l1_ref, rel=1e-12, abs=1e-12)
                assert max(l2_shift_sq, 0.0) == pytest.approx(
                    l2_ref * l2_ref, rel=1e-12, abs=1e-12
                )

    def test_derivative_sign_characterizes_plateau(self):
        rng = philox(17)
        x = rng.random(16)
        values = np.sort(np.unique(x))
        second, top = values[-2], values[-1]
        inside = evaluate_aux(x, 1.4, 1.0, 0.5 * second)
        assert inside.psi_prime < 0.0
        assert inside.d >= 2
        plateau = evaluate_aux(x, 1.4, 1.0, 0.5 * (second + top))
        assert plateau.d == 1
        assert plateau.psi_prime == 0.0

    @settings(deadline=None, max_examples=50)
    @given(
        data=st.lists(st.floats(0.0, 10.0), min_size=3, max_size=24),
        frac=st.floats(0.0, 0.999),
    )
    def test_shrunk_masses_positive_below_max(self, data, frac):
        x = np.asarray(data)
        if np.unique(x[x > 0]).size < 2:
            return
        alpha = frac * float(np.sort(np.unique(x))[-2])
        aux = evaluate_aux(x, 1.2, 1.0, alpha)
        assert aux.d >= 1
        assert aux.ell1 - aux.d * alpha > 0.0
        assert aux.ell2_sq - 2 * alpha * aux.ell1 + aux.d * alpha**2 > 0.0
