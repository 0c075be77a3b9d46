"""Scalar formula core shared by the public measure API and the grid kernels.

Every function here is plain arithmetic on floats and small ndarrays: no
exceptions, no Python objects. That keeps them compilable by numba (the
kernels in ``_kernels`` wrap jitted copies) while the originals remain
callable on ``np.longdouble`` inputs for the extended-precision fallback.

Conventions: vacuum quadrature variance 1/2, natural logarithms.
"""

import numpy as np

# Clamp bands shared with the public wrappers.
NEG_CLAMP = 1e-9          # measure values in (-NEG_CLAMP, 0) round to 0
NU_MIN_TOL = 1e-6         # smallest tolerated defect of nu_minus below 1/2
DET_FLOOR = 1e-30         # determinants below this cannot sit inside a log


def det2(m):
    """Determinant of a 2x2 block."""
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def det4(m):
    """Determinant of a 4x4 block via the 2x2-minor (Laplace) expansion.

    Exact in exact arithmetic and dtype-preserving, unlike LAPACK's LU.
    """
    a01 = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    a02 = m[0, 0] * m[1, 2] - m[0, 2] * m[1, 0]
    a03 = m[0, 0] * m[1, 3] - m[0, 3] * m[1, 0]
    a12 = m[0, 1] * m[1, 2] - m[0, 2] * m[1, 1]
    a13 = m[0, 1] * m[1, 3] - m[0, 3] * m[1, 1]
    a23 = m[0, 2] * m[1, 3] - m[0, 3] * m[1, 2]
    b01 = m[2, 0] * m[3, 1] - m[2, 1] * m[3, 0]
    b02 = m[2, 0] * m[3, 2] - m[2, 2] * m[3, 0]
    b03 = m[2, 0] * m[3, 3] - m[2, 3] * m[3, 0]
    b12 = m[2, 1] * m[3, 2] - m[2, 2] * m[3, 1]
    b13 = m[2, 1] * m[3, 3] - m[2, 3] * m[3, 1]
    b23 = m[2, 2] * m[3, 3] - m[2, 3] * m[3, 2]
    return a01 * b23 - a02 * b13 + a03 * b12 + a12 * b03 - a13 * b02 + a23 * b01


def two_mode_invariants(sub):
    """(det first block, det second block, det cross block, det full) of a 4x4 CM."""
    i1 = det2(sub[:2, :2])
    i2 = det2(sub[2:, 2:])
    i3 = det2(sub[:2, 2:])
    i4 = det4(sub)
    return i1, i2, i3, i4


def entropy_f(x):
    """Bosonic entropy function (x + 1/2)ln(x + 1/2) - (x - 1/2)ln(x - 1/2).

    Defined for x >= 1/2 with the limit value 0 at x = 1/2; the large-x
    rewrite avoids cancellation between the two terms.
    """
    if x <= 0.5:
        return 0.0
    if x < 1.0:
        return (x + 0.5) * np.log(x + 0.5) - (x - 0.5) * np.log(x - 0.5)
    return x * np.log1p(1.0 / (x - 0.5)) + 0.5 * np.log((x + 0.5) * (x - 0.5))


# Discriminants below this fraction of the squared invariant scale mean a
# degenerate spectrum: the quadratic split would turn O(eps) rounding into
# O(sqrt(eps)) eigenvalue noise, so they collapse to the exact double root.
DEGENERATE_DISC = 1e-13


def _split_roots(s, scale, i4):
    """Roots nu^2 of z^2 - s z + i4 = 0, robust against degenerate spectra."""
    disc = s * s - 4.0 * i4
    if disc < DEGENERATE_DISC * scale * scale:
        disc = 0.0
    nu_plus = np.sqrt((s + np.sqrt(disc)) / 2.0)
    i4c = i4 if i4 > 0.0 else 0.0
    nu_minus = np.sqrt(i4c) / nu_plus
    return nu_minus, nu_plus


def symplectic_pair(i1, i2, i3, i4):
    """Symplectic eigenvalues (nu_minus, nu_plus) of a two-mode CM.

    Roots of z^2 - s z + i4 with s = i1 + i2 + 2 i3; the small root comes
    from the product identity nu-^2 nu+^2 = i4 to dodge cancellation.
    """
    s = i1 + i2 + 2.0 * i3
    scale = i1 + i2 + 2.0 * np.abs(i3)
    return _split_roots(s, scale, i4)


def pt_min_symplectic(i1, i2, i3, i4):
    """Minimal symplectic eigenvalue after partial transposition.

    Partial transposition flips the sign of the cross-block determinant, so
    the quadratic uses s = i1 + i2 - 2 i3; the full determinant is invariant.
    """
    s = i1 + i2 - 2.0 * i3
    scale = i1 + i2 + 2.0 * np.abs(i3)
    nu_minus, _ = _split_roots(s, scale, i4)
    return nu_minus


def log_negativity_from_invariants(i1, i2, i3, i4):
    gamma = pt_min_symplectic(i1, i2, i3, i4)
    value = -np.log(2.0 * gamma)
    return value if value > 0.0 else 0.0


def steering_from_invariants(i_local, i4):
    """One-way steerability of the partner by the mode whose local determinant is given."""
    value = 0.5 * np.log(i_local / (4.0 * i4))
    return value if value > 0.0 else 0.0


def discord_w(i1, i2, i3, i4):
    """Conditional-variance term of the Gaussian discord, measurement on the first mode.

    Two-branch closed form of the optimal Gaussian measurement. A vanishing
    cross determinant makes the branch test singular; the second branch is
    the correct limit there (product states then give zero discord).
    """
    branch1 = False
    if i3 * i3 > DET_FLOOR and 4.0 * i1 - 1.0 > 1e-12:
        test = 4.0 * (i1 * i2 - i4) ** 2 / ((i2 + 4.0 * i4) * (1.0 + 4.0 * i1) * i3 * i3)
        branch1 = test <= 1.0
    if branch1:
        inner = 4.0 * i3 * i3 + (4.0 * i1 - 1.0) * (4.0 * i4 - i2)
        if inner < 0.0:
            inner = 0.0
        root = (2.0 * np.abs(i3) + np.sqrt(inner)) / (4.0 * i1 - 1.0)
        return root * root
    s = i1 * i2 + i4 - i3 * i3
    disc = s * s - 4.0 * i1 * i2 * i4
    if disc < 0.0:
        disc = 0.0
    return 2.0 * i2 * i4 / (s + np.sqrt(disc))


def discord_from_invariants(i1, i2, i3, i4):
    """Gaussian quantum discord with the first mode measured (unclamped)."""
    nu_minus, nu_plus = symplectic_pair(i1, i2, i3, i4)
    w = discord_w(i1, i2, i3, i4)
    return (
        entropy_f(np.sqrt(i1))
        - entropy_f(nu_minus)
        - entropy_f(nu_plus)
        + entropy_f(np.sqrt(w))
    )
