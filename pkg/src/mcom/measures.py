"""Bipartite Gaussian correlation measures on 4x4 covariance sub-blocks.

All measures are functions of the four local-symplectic invariants of the
two-mode block (the determinants of the two local blocks, of the cross
block, and of the full block), with vacuum variance 1/2 and natural
logarithms throughout.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _scalars as S
from .errors import DegenerateDeterminant, DomainError, NonPhysicalCM

#: Measure values in (-NEG_CLAMP, 0) are rounding debris and report as 0;
#: anything more negative raises NonPhysicalCM instead of being clipped.
NEG_CLAMP = S.NEG_CLAMP


@dataclass(frozen=True)
class Bipartition:
    """An ordered pair of modes, each a pair of quadrature indices into the 6x6 basis."""

    label: str
    first_mode: tuple
    second_mode: tuple

    def indices(self):
        return (*self.first_mode, *self.second_mode)


#: The three mode pairs of the model. Ordering fixes directional labels:
#: steer_12 of "CA" is cavity c steering cavity a, discord_12 of "BA" is the
#: discord with the vibrational mode measured, and so on.
BIPARTITIONS = {
    "CA": Bipartition("CA", (2, 3), (0, 1)),
    "BA": Bipartition("BA", (4, 5), (0, 1)),
    "BC": Bipartition("BC", (4, 5), (2, 3)),
}

#: Short pair suffixes used in file names and summaries.
PAIR_LABELS = {"CA": "ca", "BA": "Ba", "BC": "Bc"}


@dataclass(frozen=True)
class TwoModeCM:
    """A two-mode covariance matrix in canonical block form with cached invariants."""

    matrix: np.ndarray
    det_first: float = field(init=False)
    det_second: float = field(init=False)
    det_cross: float = field(init=False)
    det_full: float = field(init=False)

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.shape != (4, 4):
            raise NonPhysicalCM(f"expected a 4x4 covariance matrix, got {m.shape}")
        if np.abs(m - m.T).max() > 1e-10 * max(1.0, float(np.abs(m).max())):
            raise NonPhysicalCM("two-mode covariance matrix is not symmetric")
        object.__setattr__(self, "matrix", m)
        i1, i2, i3, i4 = S.two_mode_invariants(m)
        object.__setattr__(self, "det_first", float(i1))
        object.__setattr__(self, "det_second", float(i2))
        object.__setattr__(self, "det_cross", float(i3))
        object.__setattr__(self, "det_full", float(i4))

    @property
    def first(self):
        """Local 2x2 block of the first mode."""
        return self.matrix[:2, :2]

    @property
    def second(self):
        """Local 2x2 block of the second mode."""
        return self.matrix[2:, 2:]

    @property
    def cross(self):
        """2x2 inter-mode block."""
        return self.matrix[:2, 2:]

    def invariants(self):
        return (self.det_first, self.det_second, self.det_cross, self.det_full)

    def swapped(self):
        """The same state with the two modes exchanged."""
        order = [2, 3, 0, 1]
        return TwoModeCM(self.matrix[np.ix_(order, order)])


def extract_two_mode(v: np.ndarray, b: Bipartition) -> TwoModeCM:
    """Gather the 4x4 sub-block of a 6x6 covariance matrix for one mode pair."""
    if isinstance(b, str):
        b = BIPARTITIONS[b]
    idx = list(b.indices())
    v = np.asarray(v)
    return TwoModeCM(v[np.ix_(idx, idx)])


def _checked_invariants(t: TwoModeCM):
    i1, i2, i3, i4 = t.invariants()
    s = i1 + i2 + 2.0 * i3
    # The discriminant tolerance scales with the squared invariant magnitude:
    # the absolute rounding error of the determinants grows with it.
    scale = i1 + i2 + 2.0 * abs(i3)
    if s * s < 4.0 * i4 - 1e-12 * max(1.0, scale * scale):
        raise NonPhysicalCM(
            f"symplectic discriminant negative beyond tolerance ({s * s - 4 * i4:.3e})")
    if i4 <= 0.0 or i1 <= 0.0 or i2 <= 0.0:
        raise NonPhysicalCM("non-positive determinant invariant")
    nu_minus, _ = S.symplectic_pair(i1, i2, i3, i4)
    if nu_minus < 0.5 - S.NU_MIN_TOL:
        raise NonPhysicalCM(
            f"minimal symplectic eigenvalue {nu_minus:.9f} is below the vacuum bound")
    return i1, i2, i3, i4


def symplectic_eigenvalues(t: TwoModeCM):
    """Symplectic eigenvalue pair (nu_minus, nu_plus) of a physical two-mode CM."""
    i1, i2, i3, i4 = _checked_invariants(t)
    nu_minus, nu_plus = S.symplectic_pair(i1, i2, i3, i4)
    return float(nu_minus), float(nu_plus)


def log_negativity(t: TwoModeCM) -> float:
    """Logarithmic negativity, -ln(2 nu_minus_pt) clipped at zero."""
    i1, i2, i3, i4 = _checked_invariants(t)
    return float(S.log_negativity_from_invariants(i1, i2, i3, i4))


def pt_min_symplectic(t: TwoModeCM) -> float:
    """Minimal symplectic eigenvalue of the partially transposed state."""
    i1, i2, i3, i4 = _checked_invariants(t)
    return float(S.pt_min_symplectic(i1, i2, i3, i4))


def steering(t: TwoModeCM, direction: str = "1->2") -> float:
    """One-way Gaussian steerability, max(0, ln(det_local / (4 det_full)) / 2).

    ``direction`` names the steering party: "1->2" uses the first mode's
    local determinant, "2->1" the second's.
    """
    i1, i2, i3, i4 = _checked_invariants(t)
    if i4 <= S.DET_FLOOR:
        raise DegenerateDeterminant(f"det of the full block is {i4:.3e}")
    if direction in ("1->2", "12"):
        return float(S.steering_from_invariants(i1, i4))
    if direction in ("2->1", "21"):
        return float(S.steering_from_invariants(i2, i4))
    raise ValueError(f"direction must be '1->2' or '2->1', got {direction!r}")


def entropy_f(x: float) -> float:
    """Bosonic entropy function; 0 at the vacuum point x = 1/2.

    Arguments within NEG_CLAMP below 1/2 are clamped up; anything below
    1/2 - 1e-6 is a domain error.
    """
    if x < 0.5 - S.NU_MIN_TOL:
        raise DomainError(f"entropy argument {x} is below 1/2")
    if x < 0.5:
        x = 0.5
    return float(S.entropy_f(x))


def gaussian_discord(t: TwoModeCM, measured: str = "first") -> float:
    """Gaussian quantum discord with an optimal Gaussian measurement on one mode.

    The closed form has two branches selected by an invariant ratio test; a
    vanishing cross block makes the test singular and falls through to the
    second branch, whose limit gives zero for product states.
    """
    i1, i2, i3, i4 = _checked_invariants(t)
    if measured == "first":
        value = S.discord_from_invariants(i1, i2, i3, i4)
    elif measured == "second":
        value = S.discord_from_invariants(i2, i1, i3, i4)
    else:
        raise ValueError(f"measured must be 'first' or 'second', got {measured!r}")
    if value < -NEG_CLAMP:
        raise NonPhysicalCM(f"discord evaluated to {value:.3e}")
    return float(max(value, 0.0))


@dataclass(frozen=True)
class CorrelationReport:
    """All bipartite measures of one mode pair computed from the same state.

    steer_12/discord_12 follow the Bipartition ordering (first mode steers /
    is measured); the _21 variants swap the roles.
    """

    e_n: float
    steer_12: float
    steer_21: float
    discord_12: float
    discord_21: float
    nu_minus_pt: float
    stable: bool = True

    def __post_init__(self):
        if not self.stable:
            return
        if self.e_n > NEG_CLAMP and self.nu_minus_pt >= 0.5:
            raise NonPhysicalCM(
                "positive log-negativity with a separable partial transpose: "
                f"e_n={self.e_n:.3e}, nu_pt={self.nu_minus_pt:.12f}")
        if self.e_n <= 0.0 and self.nu_minus_pt < 0.5 - NEG_CLAMP:
            raise NonPhysicalCM(
                "vanishing log-negativity despite a violated partial transpose: "
                f"nu_pt={self.nu_minus_pt:.12f}")
        if (self.steer_12 > NEG_CLAMP or self.steer_21 > NEG_CLAMP) and self.nu_minus_pt >= 0.5:
            raise NonPhysicalCM("steerable but separable")
        if min(self.discord_12, self.discord_21) < 0.0:
            raise NonPhysicalCM("negative discord")


def full_report(v: np.ndarray, b) -> CorrelationReport:
    """Compute every measure of one bipartition from a 6x6 covariance matrix."""
    t = extract_two_mode(v, b)
    return CorrelationReport(
        e_n=log_negativity(t),
        steer_12=steering(t, "1->2"),
        steer_21=steering(t, "2->1"),
        discord_12=gaussian_discord(t, "first"),
        discord_21=gaussian_discord(t, "second"),
        nu_minus_pt=pt_min_symplectic(t),
    )
