"""Physical parameters, unit conventions, and the mean-field steady state.

Internally everything is hbar = 1 and, for the linearized dynamics, all
rates and detunings are expressed in units of the vibrational frequency.
Kelvin temperatures are converted to thermal occupations through the ratio
hbar*omega_m / (k_B T) with CODATA constants, which requires ``omega_m`` to
be the angular frequency in rad/s; dimensionless studies should supply the
occupation directly instead.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.constants as const

from .errors import InvalidParameter, NonConvergence

#: Angular vibrational frequency (rad/s) used by the bundled figure presets
#: when converting a kelvin axis to a thermal occupation: omega_m/2pi = 30 THz.
DEFAULT_OMEGA_M_SI = 2.0 * np.pi * 30.0e12


def collective_coupling(g, n):
    """Collective optomechanical coupling of n identical emitters, g*sqrt(n)."""
    if g < 0:
        raise InvalidParameter(f"coupling must be non-negative, got {g}")
    if n < 1:
        raise InvalidParameter(f"emitter count must be >= 1, got {n}")
    return g * np.sqrt(n)


def thermal_occupation(omega_m, temperature):
    """Bose-Einstein occupation 1/(exp(hbar*omega/kT) - 1); zero at T = 0.

    Parameters
    ----------
    omega_m : float
        Angular frequency in rad/s.
    temperature : float
        Bath temperature in kelvin.
    """
    if omega_m <= 0:
        raise InvalidParameter(f"omega_m must be positive, got {omega_m}")
    if temperature < 0:
        raise InvalidParameter(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 0.0
    x = const.hbar * omega_m / (const.k * temperature)
    if x > 700.0:
        return 0.0
    return 1.0 / np.expm1(x)


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory-frame inputs of the two-cavity molecular optomechanical model.

    All rates, detunings, and drive amplitudes must share one unit system
    with ``omega_m``. ``omega_m`` must be in rad/s whenever ``temperature``
    is used for the bath occupation; set ``n_th`` to bypass the conversion.
    """

    omega_m: float
    kappa_a: float
    kappa_c: float
    gamma_m: float
    g_a: float
    g_c: float
    n_molecules: int
    delta_a: float
    delta_c: float
    drive_a: float
    drive_c: float
    temperature: float = 0.0
    n_th: float | None = None

    def __post_init__(self):
        if self.omega_m <= 0:
            raise InvalidParameter("omega_m must be positive")
        for name in ("kappa_a", "kappa_c", "gamma_m"):
            if getattr(self, name) <= 0:
                raise InvalidParameter(f"{name} must be positive")
        if self.g_a < 0 or self.g_c < 0:
            raise InvalidParameter("couplings must be non-negative")
        if self.n_molecules < 1:
            raise InvalidParameter("n_molecules must be >= 1")
        if self.drive_a < 0 or self.drive_c < 0:
            raise InvalidParameter("drive amplitudes must be non-negative")
        if self.temperature < 0:
            raise InvalidParameter("temperature must be >= 0")
        if self.n_th is not None and self.n_th < 0:
            raise InvalidParameter("n_th must be >= 0")

    @property
    def coupling_a(self):
        """Collective coupling g_a*sqrt(N)."""
        return collective_coupling(self.g_a, self.n_molecules)

    @property
    def coupling_c(self):
        """Collective coupling g_c*sqrt(N)."""
        return collective_coupling(self.g_c, self.n_molecules)

    def bath_occupation(self):
        """Thermal occupation of the vibrational bath (explicit n_th wins)."""
        if self.n_th is not None:
            return float(self.n_th)
        return float(thermal_occupation(self.omega_m, self.temperature))


@dataclass(frozen=True)
class EffectiveParams:
    """Direct inputs of the linearized six-quadrature model, in units of omega_m."""

    delta_a_eff: float
    delta_c: float
    coupling_a_lin: float
    coupling_c: float
    kappa_a: float
    kappa_c: float
    gamma_m: float
    omega_m: float = 1.0
    n_th: float = 0.0

    def __post_init__(self):
        for name in ("kappa_a", "kappa_c", "gamma_m", "omega_m"):
            if getattr(self, name) <= 0:
                raise InvalidParameter(f"{name} must be positive")
        if self.coupling_a_lin < 0 or self.coupling_c < 0:
            raise InvalidParameter("couplings must be non-negative")
        if self.n_th < 0:
            raise InvalidParameter("n_th must be >= 0")


def effective_direct(delta_a_eff, delta_c, coupling_a_lin, coupling_c,
                     kappa_a, kappa_c, gamma_m, omega_m=1.0, n_th=0.0):
    """Construct EffectiveParams verbatim, bypassing the mean-field solver.

    This is the figure-reproduction path: density-plot presets specify the
    effective detuning and the linearized couplings directly.
    """
    return EffectiveParams(
        delta_a_eff=delta_a_eff,
        delta_c=delta_c,
        coupling_a_lin=coupling_a_lin,
        coupling_c=coupling_c,
        kappa_a=kappa_a,
        kappa_c=kappa_c,
        gamma_m=gamma_m,
        omega_m=omega_m,
        n_th=n_th,
    )


@dataclass(frozen=True)
class SteadyState:
    """Converged mean amplitudes of the driven system (dimensionless).

    ``residual`` is the largest modulus among the three stationarity
    conditions evaluated at the returned triple, in omega_m units.
    """

    alpha_a: complex
    alpha_c: complex
    beta: complex
    converged: bool
    iterations: int
    residual: float
    multistable: bool = False
    branches: tuple = field(default_factory=tuple)


def _mean_field_residual(alpha_a, alpha_c, beta, da, dc, ka, kc, gm, ga, gc, ea, ec, wm=1.0):
    s = beta + np.conj(beta)
    r1 = -(1j * da + ka) * alpha_a - 1j * ga * alpha_a * s + ea
    r2 = -(1j * dc + kc) * alpha_c - 1j * gc * s + ec
    r3 = -(1j * wm + gm) * beta + 1j * ga * abs(alpha_a) ** 2 + gc * (np.conj(alpha_c) + alpha_c)
    return max(abs(r1), abs(r2), abs(r3))


def _iterate(beta0, da, dc, ka, kc, gm, ga, gc, ea, ec, tol, max_iter, relaxation):
    """Damped fixed-point iteration for the mean-field equations, omega_m = 1 units."""
    beta = complex(beta0)
    alpha_a = 0.0j
    alpha_c = 0.0j
    for it in range(max_iter):
        s = (beta + np.conj(beta)).real
        alpha_a = ea / (1j * (da + ga * s) + ka)
        alpha_c = (ec - 1j * gc * s) / (1j * dc + kc)
        beta_new = (1j * ga * abs(alpha_a) ** 2 + gc * 2.0 * alpha_c.real) / (1j + gm)
        beta = (1.0 - relaxation) * beta + relaxation * beta_new
        resid = _mean_field_residual(alpha_a, alpha_c, beta, da, dc, ka, kc, gm, ga, gc, ea, ec)
        if resid <= tol:
            return alpha_a, alpha_c, beta, True, it + 1, resid
    return alpha_a, alpha_c, beta, False, max_iter, resid


def solve_steady_state(p: PhysicalParams, tol=1e-12, max_iter=100_000, relaxation=0.5):
    """Solve the cubic mean-field equations by damped fixed-point iteration.

    Starts from beta = 0 and, when the radiation-pressure coupling allows a
    displaced branch, also from the heuristic beta = -delta_a/(2 G_a) to
    detect bistability. Distinct converged solutions set ``multistable`` and
    are all reported in ``branches``; the primary result is the beta = 0
    branch. The zero-drive system returns exact zeros without drifting.

    Raises
    ------
    NonConvergence
        If the primary start exhausts max_iter. The exception carries the
        final residual; retrying with a smaller relaxation may help.
    """
    if tol <= 0:
        raise InvalidParameter("tol must be positive")
    wm = p.omega_m
    da, dc = p.delta_a / wm, p.delta_c / wm
    ka, kc, gm = p.kappa_a / wm, p.kappa_c / wm, p.gamma_m / wm
    ga, gc = p.coupling_a / wm, p.coupling_c / wm
    ea, ec = p.drive_a / wm, p.drive_c / wm

    if ea == 0.0 and ec == 0.0:
        return SteadyState(0.0j, 0.0j, 0.0j, True, 0, 0.0)

    starts = [0.0j]
    if ga > 0 and da != 0:
        starts.append(complex(-da / (2.0 * ga)))

    solutions = []
    primary = None
    for k, b0 in enumerate(starts):
        alpha_a, alpha_c, beta, ok, its, resid = _iterate(
            b0, da, dc, ka, kc, gm, ga, gc, ea, ec, tol, max_iter, relaxation)
        if k == 0:
            if not ok:
                raise NonConvergence(
                    f"mean-field iteration did not reach tol={tol} "
                    f"(residual {resid:.3e} after {its} iterations)",
                    residual=resid, iterations=its)
            primary = (alpha_a, alpha_c, beta, its, resid)
        if ok:
            solutions.append((alpha_a, alpha_c, beta))

    alpha_a, alpha_c, beta, its, resid = primary
    distinct = [sol for sol in solutions
                if abs(sol[2] - beta) > 1e-6 * max(1.0, abs(beta))]
    return SteadyState(
        alpha_a=alpha_a,
        alpha_c=alpha_c,
        beta=beta,
        converged=True,
        iterations=its,
        residual=resid,
        multistable=bool(distinct),
        branches=tuple(solutions),
    )


def effective_from_physical(p: PhysicalParams, ss: SteadyState):
    """Linearize around a converged mean field.

    The effective cavity-a detuning absorbs the static vibrational
    displacement, and the linearized coupling is G_a |alpha_a|; the phase
    reference is chosen so the cavity amplitudes are real, which taking the
    magnitude realizes without rotating stored states.
    """
    if not ss.converged:
        raise NonConvergence("steady state did not converge", residual=ss.residual,
                             iterations=ss.iterations)
    wm = p.omega_m
    shift = (ss.beta + np.conj(ss.beta)).real
    return EffectiveParams(
        delta_a_eff=p.delta_a / wm + (p.coupling_a / wm) * shift,
        delta_c=p.delta_c / wm,
        coupling_a_lin=(p.coupling_a / wm) * abs(ss.alpha_a),
        coupling_c=p.coupling_c / wm,
        kappa_a=p.kappa_a / wm,
        kappa_c=p.kappa_c / wm,
        gamma_m=p.gamma_m / wm,
        omega_m=1.0,
        n_th=p.bath_occupation(),
    )
