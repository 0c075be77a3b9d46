"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).

Two structural criteria (03 and 05) encode claims about the density-plot
grids that the model's own mathematics contradicts; they are implemented
verbatim and fail honestly. Their docstrings carry the analysis.
"""

import os
import time

import numpy as np
import pytest

from conftest import random_effective, random_two_mode_cm, rotation, tmsv_cm
from mcom.lindyn import build_drift, is_stable_rh, max_real_eigenvalue
from mcom.measures import TwoModeCM, gaussian_discord, log_negativity, steering
from mcom.model import PhysicalParams, solve_steady_state, thermal_occupation
from mcom.serialize import write_result
from mcom.sweep import figure_preset, run_sweep

WORKERS = min(os.cpu_count() or 1, 8)

GRID_PRESETS = [f"fig{n}{s}" for n in range(2, 9) for s in "abc"]
CUT_PRESETS = [f"fig{n}{s}" for n in (9, 10) for s in "abc"]
TOL = 1e-9


class _Criterion:
    """Prints one PASS/FAIL line per acceptance criterion."""

    def __init__(self, num, description):
        self.num = num
        self.description = description

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        verdict = "PASS" if exc_type is None else "FAIL"
        print(f"ACCEPTANCE {self.num:02d} {verdict}  {self.description}")
        return False


@pytest.fixture(scope="module")
def preset_runs():
    """All 27 presets at full resolution, with per-preset wall times."""
    # warm the kernel so compilation is not billed to the first preset
    run_sweep(figure_preset("fig2a", grid=(3, 3)), workers=WORKERS)
    results, timings = {}, {}
    for name in GRID_PRESETS + CUT_PRESETS:
        t0 = time.perf_counter()
        results[name] = run_sweep(figure_preset(name), workers=WORKERS)
        timings[name] = time.perf_counter() - t0
    return results, timings


def _cell_diffusion_max(result):
    """Per-cell max diffusion entry, reconstructed from the axes."""
    spec = result.spec
    n1, n2 = result.status.shape
    base = spec.base
    v1 = result.axis1_values
    v2 = result.axis2_values if result.axis2_values is not None else [None]
    out = np.empty((n1, n2))
    for i in range(n1):
        for j in range(n2):
            ka, kc, nth = base.kappa_a, base.kappa_c, base.n_th
            for axis, val in ((spec.axis1, v1[i]),
                              (spec.axis2, v2[j] if spec.axis2 else None)):
                if axis is None:
                    continue
                if axis.parameter == "kappa_joint":
                    ka = kc = val
                elif axis.parameter == "kappa_a":
                    ka = val
                elif axis.parameter == "kappa_c":
                    kc = val
                elif axis.parameter == "temperature":
                    nth = thermal_occupation(spec.omega_m_si, val)
                elif axis.parameter == "n_th":
                    nth = val
            out[i, j] = max(ka, kc, base.gamma_m * (2.0 * nth + 1.0))
    return out


def test_criterion_01_lyapunov_residuals_and_runtime(preset_runs):
    """Every stable cell of the 2-D presets meets the residual bound, fast."""
    results, timings = preset_runs
    with _Criterion(1, "Lyapunov residual <= 1e-10 * max(D) on every stable "
                       "cell of the 21 density-plot presets, < 60 s each"):
        for name in GRID_PRESETS:
            res = results[name]
            ok = res.status == 0
            assert ok.any(), f"{name}: no stable cells"
            dmax = _cell_diffusion_max(res)
            worst = np.nanmax(res.residual[ok] / dmax[ok])
            assert worst <= 1e-10, f"{name}: worst relative residual {worst:.3e}"
            assert timings[name] < 60.0, f"{name}: took {timings[name]:.1f}s"


def test_criterion_02_squeezed_vacuum_oracle():
    """Closed-form two-mode squeezed vacuum values reproduced to 1e-9."""
    with _Criterion(2, "TMSV oracle: E_n = 2r, steering = ln cosh 2r, "
                       "symplectic eigenvalues 1/2"):
        from mcom.measures import symplectic_eigenvalues
        for r in (0.1, 0.5, 1.0, 2.0):
            t = TwoModeCM(tmsv_cm(r))
            assert log_negativity(t) == pytest.approx(2.0 * r, abs=TOL)
            expected = np.log(np.cosh(2.0 * r))
            assert steering(t, "1->2") == pytest.approx(expected, abs=TOL)
            assert steering(t, "2->1") == pytest.approx(expected, abs=TOL)
            nm, np_ = symplectic_eigenvalues(t)
            assert nm == pytest.approx(0.5, abs=TOL)
            assert np_ == pytest.approx(0.5, abs=TOL)


def test_criterion_03_detuning_map_peak_location(preset_runs):
    """Cavity-cavity entanglement peaking near the red sideband, per column.

    KNOWN FAILURE. Pair creation of one photon in each cavity conserves
    energy along delta_a_eff = -delta_c, so each delta_c column of the map
    peaks on that anti-diagonal, not at delta_a_eff ~ 1: at the point
    (delta_a_eff, delta_c) = (1, -2) the partial transpose is separable and
    E_ca is exactly 0 while the column's ridge cell is positive. Only
    columns near delta_c = -1 satisfy the asserted window; this holds in
    both the direct and the mean-field-resolved parameterization.
    """
    results, _ = preset_runs
    with _Criterion(3, "detuning map: per-column argmax of E_ca inside "
                       "[0.9, 1.1] for every delta_c in [-2, 0]"):
        res = results["fig2a"]
        grid = res.measures["CA"]["E_n"].copy()
        grid[res.status != 0] = -np.inf
        argmax_rows = np.argmax(grid, axis=0)
        locations = res.axis1_values[argmax_rows]
        bad = (locations < 0.9) | (locations > 1.1)
        assert not bad.any(), (
            f"{bad.sum()} of {len(locations)} columns peak outside [0.9, 1.1]; "
            f"first at delta_c = {res.axis2_values[np.argmax(bad)]:g}, "
            f"argmax delta_a_eff = {locations[np.argmax(bad)]:g}")


def test_criterion_04_thermal_robustness(preset_runs):
    """Vibration-cavity entanglement survives to 1000 K and decays with T."""
    results, _ = preset_runs
    with _Criterion(4, "thermal robustness: E_Bc > 0 at T = 1000 K for some "
                       "coupling, non-increasing in T"):
        res = results["fig8c"]
        assert res.axis2_values[-1] == 1000.0
        e = res.measures["BC"]["E_n"]
        ok = res.status == 0
        last_col = e[:, -1]
        hot = last_col[ok[:, -1]]
        assert hot.size and np.nanmax(hot) > 0.0
        for i in range(e.shape[0]):
            row_ok = ok[i]
            vals = e[i][row_ok]
            if vals.size > 1:
                assert np.all(np.diff(vals) <= TOL), (
                    f"E_Bc increases with T at coupling row {i}")


def test_criterion_05_discord_hierarchy(preset_runs):
    """Peak discord ordering D_Ba > D_ca > D_Bc across the discord maps.

    KNOWN FAILURE. The cavity-cavity map runs at kappa_j = 0.003 while the
    vibration-cavity maps run at kappa_j = 0.05; the 17x smaller decay keeps
    far more correlation in the cavity-cavity pair, so its grid maximum
    exceeds the B-a maximum under every measured-mode convention (checked
    with both orderings and with the mean-field parameterization as well).
    """
    results, _ = preset_runs
    with _Criterion(5, "discord maps: max D_Ba > max D_ca > max D_Bc"):
        d_ca = np.nanmax(results["fig4a"].measures["CA"]["discord_12"])
        d_ba = np.nanmax(results["fig4b"].measures["BA"]["discord_12"])
        d_bc = np.nanmax(results["fig4c"].measures["BC"]["discord_12"])
        assert d_ba > d_ca > d_bc, (
            f"max discord: Ba {d_ba:.4g}, ca {d_ca:.4g}, Bc {d_bc:.4g}")


def test_criterion_06_measure_theory_invariants(preset_runs):
    """Steering/PT/discord consistency on every computed cell of every preset.

    The D > 1 entanglement witness is compared with the package-wide 1e-9
    rounding band, matching the clamping policy of the measures.
    """
    results, _ = preset_runs
    with _Criterion(6, "measure invariants on all presets: steerable => "
                       "entangled, E_n > 0 <=> PT violation, discord >= 0, "
                       "discord > 1 => entangled"):
        cells = 0
        for name, res in results.items():
            ok = res.status == 0
            for b in res.spec.bipartitions:
                m = res.measures[b]
                e = m["E_n"][ok]
                nu = m["nu_minus_pt"][ok]
                s = np.maximum(m["steer_12"][ok], m["steer_21"][ok])
                d = np.maximum(m["discord_12"][ok], m["discord_21"][ok])
                cells += e.size
                steer_bad = (s > TOL) & ~(e > TOL)
                assert not steer_bad.any(), f"{name}/{b}: steerable but separable"
                ent_bad = ((e > TOL) & (nu >= 0.5)) | ((e <= 0) & (nu < 0.5 - TOL))
                assert not ent_bad.any(), f"{name}/{b}: E_n vs PT mismatch"
                assert np.all(m["discord_12"][ok] >= 0.0), f"{name}/{b}: negative discord"
                assert np.all(m["discord_21"][ok] >= 0.0), f"{name}/{b}: negative discord"
                disc_bad = (d > 1.0 + TOL) & ~(e > 0.0)
                assert not disc_bad.any(), f"{name}/{b}: discord > 1 but separable"
        assert cells > 200_000


def test_criterion_07_stability_method_equivalence(rng):
    """Routh-Hurwitz and eigenvalue verdicts agree on 10^4 random drifts."""
    with _Criterion(7, "stability: Routh-Hurwitz == eigenvalue test on 1e4 "
                       "random physical drift matrices"):
        compared = 0
        disagreements = 0
        for _ in range(10_000):
            a = build_drift(random_effective(rng))
            margin = max_real_eigenvalue(a)
            if abs(margin) < 1e-8:
                continue
            compared += 1
            if is_stable_rh(a) != (margin < 0.0):
                disagreements += 1
        assert disagreements == 0, f"{disagreements} disagreements in {compared}"
        assert compared > 9_500


def test_criterion_08_local_symplectic_invariance(rng):
    """All five measures invariant under single-mode rotations, 1e3 states."""
    with _Criterion(8, "local rotation invariance of all measures on 1e3 "
                       "random two-mode states"):
        for _ in range(1_000):
            v = random_two_mode_cm(rng)
            t = TwoModeCM(v)
            base = np.array([
                log_negativity(t), steering(t, "1->2"), steering(t, "2->1"),
                gaussian_discord(t, "first"), gaussian_discord(t, "second")])
            r = np.eye(4)
            r[:2, :2] = rotation(rng.uniform(0.0, 2.0 * np.pi))
            r[2:, 2:] = rotation(rng.uniform(0.0, 2.0 * np.pi))
            w = r @ v @ r.T
            t2 = TwoModeCM(0.5 * (w + w.T))
            rotated = np.array([
                log_negativity(t2), steering(t2, "1->2"), steering(t2, "2->1"),
                gaussian_discord(t2, "first"), gaussian_discord(t2, "second")])
            assert np.abs(base - rotated).max() <= TOL


def test_criterion_09_mean_field_solver():
    """Laboratory parameter set: residual bound and exact zero-drive point."""
    with _Criterion(9, "mean-field solver: residual <= 1e-10 * drive at the "
                       "laboratory point; zero drive gives exact zeros"):
        p = PhysicalParams(
            omega_m=1.0, kappa_a=1.0, kappa_c=0.0166, gamma_m=0.16 / 30.0,
            g_a=2.66e-6, g_c=3.3e-6, n_molecules=10**6, delta_a=1.0,
            delta_c=-1.0, drive_a=16.0, drive_c=16.0, temperature=0.0, n_th=0.0)
        ss = solve_steady_state(p)
        assert ss.converged
        assert ss.residual <= 1e-10 * 16.0
        from dataclasses import replace
        quiet = solve_steady_state(replace(p, drive_a=0.0, drive_c=0.0))
        assert quiet.alpha_a == 0 and quiet.alpha_c == 0 and quiet.beta == 0
        assert quiet.residual == 0.0


def test_criterion_10_parallel_determinism(tmp_path):
    """Worker count cannot change a single output byte."""
    with _Criterion(10, "fig9a CSV bit-identical with 1 worker and with "
                        f"{WORKERS} workers"):
        spec = figure_preset("fig9a")
        out1, outn = tmp_path / "w1", tmp_path / "wN"
        paths1 = write_result(run_sweep(spec, workers=1), str(out1))
        pathsn = write_result(run_sweep(spec, workers=WORKERS), str(outn))
        assert [os.path.basename(p) for p in paths1] == \
               [os.path.basename(p) for p in pathsn]
        for p1, pn in zip(paths1, pathsn):
            with open(p1, "rb") as f1, open(pn, "rb") as f2:
                assert f1.read() == f2.read(), f"{os.path.basename(p1)} differs"
