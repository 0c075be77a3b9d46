"""Drift/diffusion construction, stability tests, and the steady-state Lyapunov solve.

Quadrature basis ordering: (x_a, y_a, x_c, y_c, q, p), i.e. amplitude and
phase quadratures of the two cavities followed by the collective vibrational
pair. Vacuum variance is 1/2.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import EigenFailure, SingularSolve, UnstableSystem
from .model import EffectiveParams

log = logging.getLogger(__name__)

#: Default stability margin: cells whose slowest eigenvalue decays slower
#: than this (in omega_m units) are treated as unstable.
DEFAULT_MARGIN = 1e-9

#: Default bound on the Lyapunov residual, relative to the largest diffusion entry.
DEFAULT_RESIDUAL_RTOL = 1e-10


def build_drift(e: EffectiveParams) -> np.ndarray:
    """Drift matrix of the linearized quadrature dynamics.

    Each mode pair is a damped rotation at its (effective) frequency; the
    vibrational position drives both cavity phase quadratures and both
    cavity amplitude quadratures drive the vibrational momentum, with
    weight -2x the respective linearized coupling.
    """
    da, dc = e.delta_a_eff, e.delta_c
    ga, gc = e.coupling_a_lin, e.coupling_c
    ka, kc, gm, wm = e.kappa_a, e.kappa_c, e.gamma_m, e.omega_m
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
    return a


def build_diffusion(e: EffectiveParams) -> np.ndarray:
    """Diagonal of the noise diffusion matrix.

    Optical inputs are vacuum; the vibrational bath carries 2 n_th + 1.
    """
    mech = e.gamma_m * (2.0 * e.n_th + 1.0)
    return np.array([e.kappa_a, e.kappa_a, e.kappa_c, e.kappa_c, mech, mech])


def max_real_eigenvalue(a: np.ndarray) -> float:
    """Largest real part among the eigenvalues of a drift matrix."""
    try:
        ev = np.linalg.eigvals(np.asarray(a, dtype=np.complex128))
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"eigensolver failed on drift matrix: {exc}") from exc
    return float(ev.real.max())


def is_stable_eigen(a: np.ndarray, margin: float = DEFAULT_MARGIN) -> bool:
    """Spectral stability test: every eigenvalue real part below -margin."""
    if margin < 0:
        raise ValueError("margin must be >= 0")
    return max_real_eigenvalue(a) < -margin


def characteristic_polynomial(a: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial coefficients by the Leverrier-Faddeev recursion.

    Returns [1, c1, ..., cn] for det(sI - A), computed with plain matrix
    products so every intermediate is inspectable.
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    coeffs = np.empty(n + 1)
    coeffs[0] = 1.0
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[k - 1] * np.eye(n)
        coeffs[k] = -np.trace(a @ m) / k
    return coeffs


def _hurwitz_matrix(coeffs: np.ndarray) -> np.ndarray:
    n = len(coeffs) - 1
    h = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            k = 2 * (j + 1) - (i + 1)
            if 0 <= k <= n:
                h[i, j] = coeffs[k]
    return h


def _charpoly_exact(a: np.ndarray) -> list:
    """Leverrier-Faddeev recursion in exact rational arithmetic."""
    n = a.shape[0]
    rows = [[Fraction(float(x)) for x in row] for row in a]
    coeffs = [Fraction(1)]
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # m <- a @ m + c_{k-1} I
        am = [[sum(rows[i][l] * m[l][j] for l in range(n)) for j in range(n)]
              for i in range(n)]
        for i in range(n):
            am[i][i] += coeffs[k - 1]
        m = am
        trace = sum(sum(rows[i][l] * m[l][i] for l in range(n)) for i in range(n))
        coeffs.append(-trace / k)
    return coeffs


def _det_exact(rows: list) -> Fraction:
    """Fraction determinant by Gaussian elimination with row swaps."""
    n = len(rows)
    rows = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def _minors_exact(a: np.ndarray) -> list:
    coeffs = _charpoly_exact(np.asarray(a, dtype=float))
    n = len(coeffs) - 1
    h = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k = 2 * (j + 1) - (i + 1)
            if 0 <= k <= n:
                h[i][j] = coeffs[k]
    return [_det_exact([row[: k] for row in h[: k]]) for k in range(1, n + 1)]


def is_stable_rh(a: np.ndarray) -> bool:
    """Routh-Hurwitz stability verdict from the characteristic polynomial.

    All leading principal minors of the Hurwitz matrix must be positive;
    an exactly vanishing minor is marginal and reports as unstable. Minors
    are evaluated in floating point first and re-evaluated in exact rational
    arithmetic when they land below the round-off trust band: weakly damped
    near-resonant systems produce minors many orders below 1, where the sign
    of a floating-point determinant is noise.
    """
    a = np.asarray(a, dtype=float)
    coeffs = characteristic_polynomial(a)
    h = _hurwitz_matrix(coeffs)
    n = h.shape[0]
    minors = []
    exact_needed = False
    for k in range(1, n + 1):
        minor = float(np.linalg.det(h[:k, :k]))
        # Hadamard bound scales the round-off of an order-k determinant.
        scale = float(np.prod(np.linalg.norm(h[:k, :k], axis=1))) or 1.0
        if abs(minor) <= 1e-9 * scale:
            exact_needed = True
            break
        minors.append(minor)
    if exact_needed:
        return all(m > 0 for m in _minors_exact(a))
    return all(m > 0.0 for m in minors)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Steady-state symmetrized second moments with solve quality metrics.

    ``residual`` is the max-abs entry of A V + V A^T + D for the stored V;
    ``asymmetry`` is the max-abs asymmetry of the raw solution before the
    mandatory symmetrization.
    """

    matrix: np.ndarray
    residual: float
    asymmetry: float


def _lyapunov_residual(a, v, d):
    r = a @ v + v @ a.T + np.diag(d)
    return float(np.abs(r).max())


def solve_lyapunov(a: np.ndarray, d: np.ndarray, *,
                   margin: float = DEFAULT_MARGIN,
                   check_stability: bool = True,
                   extended: bool = False) -> CovarianceMatrix:
    """Solve A V + V A^T + D = 0 by Kronecker vectorization.

    The 36x36 dense solve is exact at this size and cheap enough that grid
    sweeps dominated by it stay fast. With ``extended=True`` the float64
    solution is polished by iterative refinement with extended-precision
    residual accumulation, which keeps the residual bound attainable for
    nearly marginal drift matrices.

    Parameters
    ----------
    a : (6, 6) array
        Drift matrix (any square size accepted).
    d : array
        Diffusion diagonal (1-D) or full diffusion matrix.

    Raises
    ------
    UnstableSystem
        If ``check_stability`` and the drift matrix is not stable at ``margin``.
    SingularSolve
        If the vectorized system is numerically singular (marginal input).
    """
    a = np.asarray(a, dtype=float)
    d = np.asarray(d, dtype=float)
    if d.ndim == 2:
        d = np.diag(d).copy()
    n = a.shape[0]
    if check_stability and not is_stable_eigen(a, margin):
        raise UnstableSystem(
            f"drift matrix is not stable at margin {margin:g} "
            f"(max Re eigenvalue {max_real_eigenvalue(a):.3e})")
    eye = np.eye(n)
    m = np.kron(a, eye) + np.kron(eye, a)
    rhs = -np.diag(d).ravel()
    try:
        vec = np.linalg.solve(m, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSolve(f"vectorized Lyapunov system is singular: {exc}") from exc

    if extended:
        # Mixed-precision iterative refinement: residuals accumulate in
        # longdouble and the solution is carried in longdouble, so the final
        # residual is limited by the extended epsilon, not float64's.
        m_ld = m.astype(np.longdouble)
        rhs_ld = rhs.astype(np.longdouble)
        x = vec.astype(np.longdouble)
        for _ in range(4):
            r = rhs_ld - m_ld @ x
            x = x + np.linalg.solve(m, np.asarray(r, dtype=float)).astype(np.longdouble)
        v = x.reshape(n, n)
        asym = float(np.abs(v - v.T).max())
        v = 0.5 * (v + v.T)
        resid = float(np.abs(a.astype(np.longdouble) @ v + v @ a.T.astype(np.longdouble)
                             + np.diag(d.astype(np.longdouble))).max())
    else:
        v = vec.reshape(n, n)
        asym = float(np.abs(v - v.T).max())
        v = 0.5 * (v + v.T)
        resid = _lyapunov_residual(a, v, d)

    if asym > 1e-8 * max(1.0, float(np.abs(v).max())):
        log.debug("Lyapunov solution asymmetry before symmetrization: %.3e", asym)
    return CovarianceMatrix(matrix=v, residual=resid, asymmetry=asym)


def symplectic_spectrum(v: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a 2k-mode covariance matrix, ascending.

    Physical Gaussian states have every value >= 1/2 in this convention.
    """
    v = np.asarray(v, dtype=float)
    k = v.shape[0] // 2
    omega = np.kron(np.eye(k), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    ev = np.linalg.eigvals(omega @ v)
    return np.sort(np.abs(ev))[::2].copy()
