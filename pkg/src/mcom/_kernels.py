"""Hot per-cell grid evaluation.

The kernel body exists once, written in numba-compatible numpy. The
module-level names it calls (determinants, symplectic roots, measures) are
bound to the pure scalar core by default, giving ``eval_grid_py``: the plain
numpy path that always works and that the backend benchmark times. When
numba is active (see ``_accel``), a second instantiation of the same body is
compiled against jitted copies of those scalars and exported as
``eval_grid``; both instantiations are compared in the test suite.

Per-cell parameter layout (float64, shape (n_cells, 9)):
    0 delta_a_eff  1 delta_c  2 coupling_a_lin  3 coupling_c
    4 kappa_a      5 kappa_c  6 gamma_m         7 omega_m     8 n_th

Per-cell outputs:
    status        0 ok, 1 unstable, 2 solver error, 3 non-physical measures
    max_re        largest eigenvalue real part of the drift matrix
    residual      max-abs Lyapunov residual
    asymmetry     max-abs asymmetry of the raw Lyapunov solution
    needs_refine  1 when the residual exceeded rtol * max(D); the sweep
                  driver re-solves those cells in extended precision
    measures      (n_cells, n_bips, 6): e_n, steer_12, steer_21,
                  discord_12, discord_21, nu_minus_pt
"""

import types

import numpy as np

from . import _scalars as S
from ._accel import USE_NUMBA, njit, prange

STATUS_OK = 0
STATUS_UNSTABLE = 1
STATUS_ERROR = 2
STATUS_NONPHYSICAL = 3

N_MEASURES = 6

# Default (pure) bindings of the scalar core; the jit instantiation rebinds
# these names to compiled copies.
_det2 = S.det2
_det4 = S.det4
_symplectic_pair = S.symplectic_pair
_pt_min = S.pt_min_symplectic
_log_neg = S.log_negativity_from_invariants
_steer = S.steering_from_invariants
_discord = S.discord_from_invariants


def _cell_measures(v, bips, out_row):
    """Fill out_row[(n_bips, 6)] from one 6x6 covariance matrix; returns a status."""
    for b in range(bips.shape[0]):
        f0 = bips[b, 0]
        s0 = bips[b, 1]
        sub = np.empty((4, 4))
        for r in range(2):
            for c in range(2):
                sub[r, c] = v[f0 + r, f0 + c]
                sub[r, 2 + c] = v[f0 + r, s0 + c]
                sub[2 + r, c] = v[s0 + r, f0 + c]
                sub[2 + r, 2 + c] = v[s0 + r, s0 + c]
        i1 = _det2(sub[:2, :2])
        i2 = _det2(sub[2:, 2:])
        i3 = _det2(sub[:2, 2:])
        i4 = _det4(sub)
        if i4 <= 1e-30 or i1 <= 0.0 or i2 <= 0.0:
            return STATUS_NONPHYSICAL
        nu_minus, nu_plus = _symplectic_pair(i1, i2, i3, i4)
        if nu_minus < 0.5 - 1e-6:
            return STATUS_NONPHYSICAL
        e_n = _log_neg(i1, i2, i3, i4)
        s12 = _steer(i1, i4)
        s21 = _steer(i2, i4)
        d12 = _discord(i1, i2, i3, i4)
        d21 = _discord(i2, i1, i3, i4)
        if d12 < -1e-9 or d21 < -1e-9:
            return STATUS_NONPHYSICAL
        if d12 < 0.0:
            d12 = 0.0
        if d21 < 0.0:
            d21 = 0.0
        out_row[b, 0] = e_n
        out_row[b, 1] = s12
        out_row[b, 2] = s21
        out_row[b, 3] = d12
        out_row[b, 4] = d21
        out_row[b, 5] = _pt_min(i1, i2, i3, i4)
    return STATUS_OK


_cell_measures_impl = _cell_measures


def _eval_grid(params, bips, margin, residual_rtol,
               status, max_re, residual, asymmetry, needs_refine, measures):
    n = params.shape[0]
    eye6 = np.eye(6)
    for i in prange(n):
        if status[i] == STATUS_ERROR:
            # Pre-marked by the driver: parameter resolution failed.
            continue
        da = params[i, 0]
        dc = params[i, 1]
        ga = params[i, 2]
        gc = params[i, 3]
        ka = params[i, 4]
        kc = params[i, 5]
        gm = params[i, 6]
        wm = params[i, 7]
        nth = params[i, 8]

        a = np.zeros((6, 6))
        a[0, 0] = -ka
        a[0, 1] = da
        a[1, 0] = -da
        a[1, 1] = -ka
        a[1, 4] = -2.0 * ga
        a[2, 2] = -kc
        a[2, 3] = dc
        a[3, 2] = -dc
        a[3, 3] = -kc
        a[3, 4] = -2.0 * gc
        a[4, 4] = -gm
        a[4, 5] = wm
        a[5, 0] = -2.0 * ga
        a[5, 2] = -2.0 * gc
        a[5, 4] = -wm
        a[5, 5] = -gm

        ev = np.linalg.eigvals(a.astype(np.complex128))
        mre = ev.real.max()
        max_re[i] = mre
        if mre >= -margin:
            status[i] = STATUS_UNSTABLE
            continue

        mech = gm * (2.0 * nth + 1.0)
        d = np.empty(6)
        d[0] = ka
        d[1] = ka
        d[2] = kc
        d[3] = kc
        d[4] = mech
        d[5] = mech

        m = np.kron(a, eye6) + np.kron(eye6, a)
        rhs = np.zeros(36)
        for k in range(6):
            rhs[7 * k] = -d[k]
        v = np.linalg.solve(m, rhs).reshape(6, 6)

        asym = np.abs(v - v.T).max()
        v = 0.5 * (v + v.T)
        r = a @ v + v @ a.T
        for k in range(6):
            r[k, k] += d[k]
        resid = np.abs(r).max()

        asymmetry[i] = asym
        residual[i] = resid
        if resid > residual_rtol * d.max():
            needs_refine[i] = 1

        status[i] = _cell_measures_impl(v, bips, measures[i])


eval_grid_py = _eval_grid


def _rebind(func, mapping):
    """Copy of ``func`` whose module globals are overridden by ``mapping``.

    Produces a closure-free function object, which numba can both compile
    and cache on disk (closures cannot be cached).
    """
    g = dict(func.__globals__)
    g.update(mapping)
    clone = types.FunctionType(func.__code__, g, func.__name__,
                               func.__defaults__, func.__closure__)
    clone.__module__ = func.__module__
    return clone


if USE_NUMBA:
    _j_det2 = njit(cache=True)(S.det2)
    _j_det4 = njit(cache=True)(S.det4)
    _j_entropy = njit(cache=True)(S.entropy_f)
    _j_split = njit(cache=True)(S._split_roots)
    _j_sympl = njit(cache=True)(_rebind(S.symplectic_pair, {"_split_roots": _j_split}))
    _j_ptmin = njit(cache=True)(_rebind(S.pt_min_symplectic, {"_split_roots": _j_split}))
    _j_steer = njit(cache=True)(S.steering_from_invariants)
    _j_discord_w = njit(cache=True)(S.discord_w)
    _j_log_neg = njit(cache=True)(_rebind(
        S.log_negativity_from_invariants, {"pt_min_symplectic": _j_ptmin}))
    _j_discord = njit(cache=True)(_rebind(
        S.discord_from_invariants,
        {"symplectic_pair": _j_sympl, "discord_w": _j_discord_w, "entropy_f": _j_entropy}))
    _cell_measures_jit = njit(cache=True)(_rebind(_cell_measures, {
        "_det2": _j_det2,
        "_det4": _j_det4,
        "_symplectic_pair": _j_sympl,
        "_pt_min": _j_ptmin,
        "_log_neg": _j_log_neg,
        "_steer": _j_steer,
        "_discord": _j_discord,
    }))
    eval_grid = njit(parallel=True, cache=True)(
        _rebind(_eval_grid, {"_cell_measures_impl": _cell_measures_jit}))
else:
    eval_grid = eval_grid_py
