"""Shared fixtures and analytic state constructors for the test suite."""

import numpy as np
import pytest
from scipy.linalg import expm

from mcom.model import EffectiveParams


def tmsv_cm(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum covariance matrix (vacuum variance 1/2).

    Local blocks cosh(2r)/2 * I, cross block sinh(2r)/2 * diag(1, -1).
    """
    c = np.cosh(2 * r) / 2.0
    s = np.sinh(2 * r) / 2.0
    v = np.diag([c, c, c, c])
    v[0, 2] = v[2, 0] = s
    v[1, 3] = v[3, 1] = -s
    return v


def lossy_arm(v: np.ndarray, eta: float, mode: int) -> np.ndarray:
    """Pure-loss channel of transmissivity eta applied to one mode of a 4x4 CM."""
    g = np.eye(4)
    sl = slice(2 * mode, 2 * mode + 2)
    g[sl, sl] = np.sqrt(eta) * np.eye(2)
    out = g @ v @ g.T
    out[sl, sl] += (1.0 - eta) / 2.0 * np.eye(2)
    return out


def thermal_pair_cm(n1: float, n2: float) -> np.ndarray:
    """Product of two thermal states with occupations n1, n2."""
    return np.diag([n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5])


def rotation(theta: float) -> np.ndarray:
    """Single-mode quadrature rotation, a symplectic orthogonal 2x2 block."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def random_symplectic(rng, n_modes: int = 2, strength: float = 0.6) -> np.ndarray:
    """Random symplectic matrix exp(Omega K) with K symmetric."""
    omega = np.kron(np.eye(n_modes), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    k = rng.normal(scale=strength, size=(2 * n_modes, 2 * n_modes))
    k = 0.5 * (k + k.T)
    return expm(omega @ k)


def random_two_mode_cm(rng, max_occupation: float = 2.0) -> np.ndarray:
    """Random physical two-mode covariance matrix via reverse Williamson form."""
    s = random_symplectic(rng, 2)
    nus = 0.5 + rng.uniform(0.0, max_occupation, size=2)
    d = np.diag(np.repeat(nus, 2))
    v = s @ d @ s.T
    return 0.5 * (v + v.T)


def random_effective(rng) -> EffectiveParams:
    """Random effective parameter set with physical sign pattern."""
    return EffectiveParams(
        delta_a_eff=rng.uniform(-3.0, 3.0),
        delta_c=rng.uniform(-3.0, 3.0),
        coupling_a_lin=rng.uniform(0.0, 0.8),
        coupling_c=rng.uniform(0.0, 0.8),
        kappa_a=rng.uniform(1e-3, 2.0),
        kappa_c=rng.uniform(1e-3, 2.0),
        gamma_m=rng.uniform(1e-4, 0.5),
        omega_m=1.0,
        n_th=rng.uniform(0.0, 2.0),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
