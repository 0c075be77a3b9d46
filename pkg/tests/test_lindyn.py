"""Tests for drift/diffusion construction, stability, and the Lyapunov solve."""

import numpy as np
import pytest
from scipy.linalg import solve_continuous_lyapunov

from conftest import random_effective
from mcom.errors import SingularSolve, UnstableSystem
from mcom.lindyn import (build_diffusion, build_drift, characteristic_polynomial,
                         is_stable_eigen, is_stable_rh, max_real_eigenvalue,
                         solve_lyapunov, symplectic_spectrum)
from mcom.model import effective_direct


class TestDrift:
    def test_exact_pattern(self):
        e = effective_direct(0.7, -1.2, 0.01, 0.02, 0.3, 0.4, 0.05, omega_m=1.0)
        expected = np.array([
            [-0.3,  0.7,  0.0,  0.0,  0.00, 0.0],
            [-0.7, -0.3,  0.0,  0.0, -0.02, 0.0],
            [0.0,   0.0, -0.4, -1.2,  0.00, 0.0],
            [0.0,   0.0,  1.2, -0.4, -0.04, 0.0],
            [0.0,   0.0,  0.0,  0.0, -0.05, 1.0],
            [-0.02, 0.0, -0.04, 0.0, -1.00, -0.05],
        ])
        assert np.array_equal(build_drift(e), expected)

    def test_trace(self, rng):
        for _ in range(20):
            e = random_effective(rng)
            a = build_drift(e)
            assert np.trace(a) == pytest.approx(
                -2.0 * (e.kappa_a + e.kappa_c + e.gamma_m), rel=1e-14)

    def test_decoupled_is_block_diagonal(self):
        e = effective_direct(1.0, -1.0, 0.0, 0.0, 0.1, 0.2, 0.05)
        a = build_drift(e)
        for i in range(6):
            for j in range(6):
                if (i // 2) != (j // 2):
                    assert a[i, j] == 0.0

    def test_caption_point_coupling_entry(self):
        e = effective_direct(1.0, -1.0, 0.003, 0.003, 0.003, 0.003, 0.005)
        a = build_drift(e)
        assert a[1, 4] == pytest.approx(-0.006, rel=1e-15)
        assert a[3, 4] == pytest.approx(-0.006, rel=1e-15)


class TestDiffusion:
    def test_zero_occupation(self):
        e = effective_direct(1.0, -1.0, 0.1, 0.1, 0.2, 0.3, 0.005, n_th=0.0)
        d = build_diffusion(e)
        assert np.array_equal(d, [0.2, 0.2, 0.3, 0.3, 0.005, 0.005])

    def test_thermal_point(self):
        e = effective_direct(1.0, -1.0, 0.1, 0.1, 1.0, 0.0166, 0.005, n_th=0.31)
        d = build_diffusion(e)
        assert d[4] == pytest.approx(0.005 * 1.62, rel=1e-12)
        assert d[0] == 1.0 and d[1] == 1.0


class TestStability:
    def test_minus_identity(self):
        assert is_stable_eigen(-np.eye(6))
        assert is_stable_rh(-np.eye(6))

    def test_decoupled_damped(self):
        e = effective_direct(1.0, -1.0, 0.0, 0.0, 0.1, 0.2, 0.05)
        a = build_drift(e)
        assert is_stable_eigen(a) and is_stable_rh(a)

    def test_antidamped_mode_unstable(self):
        a = -np.eye(6)
        a[5, 5] = 1e-3
        assert not is_stable_eigen(a)
        assert not is_stable_rh(a)

    def test_marginal_rotation_reports_unstable(self):
        a = np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert not is_stable_rh(a)

    def test_degenerate_input_signaled(self):
        from mcom.errors import EigenFailure
        with pytest.raises(EigenFailure):
            is_stable_eigen(np.full((6, 6), np.nan))

    def test_leverrier_matches_numpy_poly(self, rng):
        for _ in range(25):
            a = build_drift(random_effective(rng))
            assert np.allclose(characteristic_polynomial(a), np.poly(a),
                               rtol=1e-10, atol=1e-12)

    def test_rh_matches_eigen_on_random_drifts(self, rng):
        checked = 0
        for _ in range(600):
            a = build_drift(random_effective(rng))
            margin = max_real_eigenvalue(a)
            if abs(margin) < 1e-8:
                continue
            checked += 1
            assert is_stable_rh(a) == (margin < 0.0)
        assert checked > 550

    def test_rh_exact_path_at_triple_resonance(self):
        # kappa, gamma << 1 with all three modes near one frequency drives the
        # high-order Hurwitz minors down to ~1e-18, far below the float64
        # determinant noise floor; the exact-arithmetic path must decide.
        e = effective_direct(1.0, -1.0, 0.003, 0.003, 0.003, 0.003, 0.005)
        a = build_drift(e)
        assert is_stable_eigen(a)
        assert is_stable_rh(a)

    def test_stable_blue_detuned_threshold(self):
        # two-mode-squeezing instability: crossing the coupling threshold at
        # blue detuning must flip both verdicts together
        for g, expected in ((0.001, True), (0.1, False)):
            e = effective_direct(1.0, -1.0, 0.0, g, 0.003, 0.003, 0.0005)
            a = build_drift(e)
            assert is_stable_eigen(a) is expected
            assert is_stable_rh(a) is expected

    def test_methods_agree_across_instability_grid(self):
        # 50x50 (coupling, decay) grid straddling the blue-detuned
        # instability boundary: the two verdicts must agree cell by cell
        gs = np.linspace(1e-4, 0.05, 50)
        ks = np.linspace(5e-4, 0.05, 50)
        verdicts = []
        for g in gs:
            for k in ks:
                e = effective_direct(1.0, -1.0, 0.0, g, k, k, 0.0005)
                a = build_drift(e)
                margin = max_real_eigenvalue(a)
                if abs(margin) < 1e-10:
                    continue
                stable = margin < 0.0
                verdicts.append(stable)
                assert is_stable_rh(a) == stable
        # the boundary crosses the grid: both verdicts are well represented
        assert 100 < sum(verdicts) < len(verdicts) - 100


class TestLyapunov:
    def test_isotropic_identity(self):
        kappa = 0.7
        a = -kappa * np.eye(6)
        d = np.full(6, 2.0 * kappa * 0.5)
        cm = solve_lyapunov(a, d)
        assert np.allclose(cm.matrix, 0.5 * np.eye(6), atol=1e-14)
        assert cm.residual < 1e-14

    def test_decoupled_thermal_blocks(self):
        n_th = 0.31
        e = effective_direct(1.0, -1.0, 0.0, 0.0, 0.3, 0.4, 0.05, n_th=n_th)
        cm = solve_lyapunov(build_drift(e), build_diffusion(e))
        v = cm.matrix
        assert np.allclose(v[:2, :2], 0.5 * np.eye(2), atol=1e-12)
        assert np.allclose(v[2:4, 2:4], 0.5 * np.eye(2), atol=1e-12)
        assert np.allclose(v[4:, 4:], (2 * n_th + 1) / 2.0 * np.eye(2), atol=1e-12)
        off = v.copy()
        off[:2, :2] = off[2:4, 2:4] = off[4:, 4:] = 0.0
        assert np.abs(off).max() < 1e-14

    def test_matches_schur_solver(self, rng):
        for _ in range(40):
            e = random_effective(rng)
            a = build_drift(e)
            if not is_stable_eigen(a, margin=1e-6):
                continue
            d = build_diffusion(e)
            cm = solve_lyapunov(a, d)
            ref = solve_continuous_lyapunov(a, -np.diag(d))
            assert np.allclose(cm.matrix, ref, rtol=1e-9, atol=1e-11)

    def test_residual_bound_in_operating_ranges(self, rng):
        d_checked = 0
        for _ in range(200):
            e = random_effective(rng)
            a = build_drift(e)
            if not is_stable_eigen(a, margin=1e-5):
                continue
            d = build_diffusion(e)
            cm = solve_lyapunov(a, d)
            assert cm.residual <= 1e-10 * d.max()
            d_checked += 1
        assert d_checked > 100

    def test_basis_permutation_uniqueness(self, rng):
        e = effective_direct(1.0, -1.0, 0.003, 0.01, 0.05, 0.02, 0.005, n_th=0.1)
        a = build_drift(e)
        d = np.diag(build_diffusion(e))
        v = solve_lyapunov(a, build_diffusion(e)).matrix
        for _ in range(5):
            perm = rng.permutation(6)
            p = np.eye(6)[perm]
            v2 = solve_lyapunov(p @ a @ p.T, p @ d @ p.T).matrix
            assert np.allclose(p.T @ v2 @ p, v, atol=1e-10)

    def test_physicality_of_solutions(self, rng):
        checked = 0
        for _ in range(120):
            e = random_effective(rng)
            a = build_drift(e)
            if not is_stable_eigen(a):
                continue
            cm = solve_lyapunov(a, build_diffusion(e))
            nus = symplectic_spectrum(cm.matrix)
            assert np.all(nus >= 0.5 - 1e-9)
            checked += 1
        assert checked > 60

    def test_zero_coupling_vacuum_optical_blocks(self):
        e = effective_direct(0.4, -1.3, 0.0, 0.0, 0.25, 0.6, 0.01, n_th=1.2)
        v = solve_lyapunov(build_drift(e), build_diffusion(e)).matrix
        assert np.allclose(v[:2, :2], 0.5 * np.eye(2), atol=1e-13)
        assert np.allclose(v[2:4, 2:4], 0.5 * np.eye(2), atol=1e-13)

    def test_unstable_refused(self):
        e = effective_direct(1.0, -1.0, 0.0, 0.1, 0.003, 0.003, 0.0005)
        a = build_drift(e)
        with pytest.raises(UnstableSystem):
            solve_lyapunov(a, build_diffusion(e))

    def test_singular_solve(self):
        a = np.diag([0.0, -1.0, -1.0, -1.0, -1.0, -1.0])
        with pytest.raises(SingularSolve):
            solve_lyapunov(a, np.ones(6), check_stability=False)

    def test_symmetry_and_asymmetry_metric(self, rng):
        e = random_effective(rng)
        a = build_drift(e)
        if not is_stable_eigen(a):
            e = effective_direct(1.0, -1.0, 0.003, 0.003, 0.003, 0.003, 0.005)
            a = build_drift(e)
        cm = solve_lyapunov(a, build_diffusion(e))
        assert np.array_equal(cm.matrix, cm.matrix.T)
        assert cm.asymmetry >= 0.0

    def test_extended_precision_near_margin(self):
        # bisect the blue-detuned two-mode-squeezing threshold down to a
        # stability margin ~1e-7, where the float64 residual bound degrades
        def drift_at(g):
            e = effective_direct(1.0, -1.0, 0.0, g, 0.01, 0.01, 0.001)
            return build_drift(e), build_diffusion(e)

        lo, hi = 0.001, 0.2
        assert max_real_eigenvalue(drift_at(lo)[0]) < 0 < max_real_eigenvalue(drift_at(hi)[0])
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if max_real_eigenvalue(drift_at(mid)[0]) < -1e-7:
                lo = mid
            else:
                hi = mid
        a, d = drift_at(lo)
        margin = -max_real_eigenvalue(a)
        assert margin < 1e-4
        plain = solve_lyapunov(a, d)
        refined = solve_lyapunov(a, d, extended=True)
        assert refined.residual <= plain.residual
        assert refined.residual <= 1e-10 * d.max()
        assert np.allclose(refined.matrix.astype(float), plain.matrix,
                           rtol=1e-4, atol=1e-8)


class TestSymplecticSpectrum:
    def test_vacuum(self):
        assert np.allclose(symplectic_spectrum(0.5 * np.eye(6)), [0.5, 0.5, 0.5])

    def test_thermal(self):
        v = np.diag([1.5, 1.5, 0.7, 0.7, 2.5, 2.5])
        assert np.allclose(sorted(symplectic_spectrum(v)), [0.7, 1.5, 2.5])
