"""mcom: steady-state quantum correlations of a double-cavity molecular
optomechanical system.

The linearized quadrature dynamics of two driven cavities coupled to a
collective molecular vibration are solved for their steady-state covariance
matrix (via the continuous Lyapunov equation), from which bipartite
logarithmic negativity, one-way Gaussian steering, and Gaussian quantum
discord are computed over parameter grids.
"""

from .errors import (ConfigError, DegenerateDeterminant, DomainError, EigenFailure,
                     InvalidParameter, InvalidSpec, McomError, NonConvergence,
                     NonPhysicalCM, SingularSolve, UnknownPreset, UnstableSystem)
from .lindyn import (CovarianceMatrix, build_diffusion, build_drift,
                     characteristic_polynomial, is_stable_eigen, is_stable_rh,
                     max_real_eigenvalue, solve_lyapunov, symplectic_spectrum)
from .measures import (BIPARTITIONS, Bipartition, CorrelationReport, TwoModeCM,
                       entropy_f, extract_two_mode, full_report, gaussian_discord,
                       log_negativity, pt_min_symplectic, steering,
                       symplectic_eigenvalues)
from .model import (DEFAULT_OMEGA_M_SI, EffectiveParams, PhysicalParams, SteadyState,
                    collective_coupling, effective_direct, effective_from_physical,
                    solve_steady_state, thermal_occupation)
from .serialize import read_csv, write_result
from ._version import __version__
from .sweep import (Axis, PRESETS, SweepResult, SweepSpec, figure_preset,
                    list_presets, run_sweep)
