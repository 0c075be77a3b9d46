"""Parameter-grid evaluation of the correlation measures, with figure presets.

A sweep resolves every grid cell to one set of effective parameters, builds
the drift and diffusion matrices, tests stability, solves the Lyapunov
equation, and computes the requested bipartite measures. Cells are fully
independent, so the grid is evaluated as an embarrassingly parallel map and
the result is bit-identical regardless of worker count.
"""

import concurrent.futures
import logging
import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels as K
from . import _scalars as S
from ._accel import USE_NUMBA, thread_count
from ._version import __version__
from .errors import InvalidSpec, McomError, UnknownPreset
from .lindyn import DEFAULT_MARGIN, DEFAULT_RESIDUAL_RTOL, build_diffusion, build_drift, solve_lyapunov
from .measures import BIPARTITIONS, PAIR_LABELS, CorrelationReport
from .model import (DEFAULT_OMEGA_M_SI, EffectiveParams, PhysicalParams,
                    effective_from_physical, solve_steady_state, thermal_occupation)

log = logging.getLogger(__name__)

AXIS_PARAMETERS = (
    "delta_a_eff", "delta_c", "G_joint", "kappa_joint", "temperature",
    "G_a_lin", "G_c", "kappa_a", "kappa_c", "n_th",
)

MEASURE_FAMILIES = ("entanglement", "steering", "discord")
_MEASURE_ALIASES = {"steering_both": "steering", "discord_both": "discord"}

#: Result/CSV column names per family; nu_minus_pt rides with entanglement.
FAMILY_COLUMNS = {
    "entanglement": ("E_n", "nu_minus_pt"),
    "steering": ("steer_12", "steer_21"),
    "discord": ("discord_12", "discord_21"),
}
ALL_COLUMNS = ("E_n", "steer_12", "steer_21", "discord_12", "discord_21", "nu_minus_pt")
_COLUMN_SLOT = {"E_n": 0, "steer_12": 1, "steer_21": 2,
                "discord_12": 3, "discord_21": 4, "nu_minus_pt": 5}


@dataclass(frozen=True)
class Axis:
    """One swept parameter: an inclusive range sampled on a linear or log scale."""

    parameter: str
    min: float
    max: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if self.parameter not in AXIS_PARAMETERS:
            raise InvalidSpec(f"unknown axis parameter {self.parameter!r}; "
                              f"valid: {', '.join(AXIS_PARAMETERS)}")
        if not self.min < self.max:
            raise InvalidSpec(f"axis {self.parameter}: min must be < max")
        if self.steps < 2:
            raise InvalidSpec(f"axis {self.parameter}: steps must be >= 2")
        if self.scale == "logarithmic":
            object.__setattr__(self, "scale", "log")
        if self.scale not in ("linear", "log"):
            raise InvalidSpec(f"axis {self.parameter}: scale must be 'linear' or 'log'")
        if self.scale == "log" and self.min <= 0:
            raise InvalidSpec(f"axis {self.parameter}: log scale requires min > 0")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.logspace(np.log10(self.min), np.log10(self.max), self.steps)
        return np.linspace(self.min, self.max, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """A resolved sweep request.

    In the default (direct) mode the axes act on the effective parameters of
    ``base``. With ``physical=True`` each cell instead parameterizes the
    laboratory-frame model: the cavity-a coupling is linearized around the
    solved mean field, with the detuning axes read as bare detunings, the
    coupling axes as pre-linearization collective couplings, and the drive
    and molecule count taken from ``drive`` and ``n_molecules``.
    """

    base: EffectiveParams
    axis1: Axis
    axis2: Axis | None = None
    bipartitions: tuple = ("CA", "BA", "BC")
    measures: tuple = MEASURE_FAMILIES
    name: str = "custom"
    physical: bool = False
    omega_m_si: float = DEFAULT_OMEGA_M_SI
    temperature: float | None = None
    drive: float = 16.0
    n_molecules: int = 10**6
    stability_margin: float = DEFAULT_MARGIN
    residual_rtol: float = DEFAULT_RESIDUAL_RTOL
    ss_tol: float = 1e-12

    def __post_init__(self):
        if self.axis2 is not None and self.axis1.parameter == self.axis2.parameter:
            raise InvalidSpec("the two axes must sweep distinct parameters")
        if not self.bipartitions:
            raise InvalidSpec("at least one bipartition is required")
        for b in self.bipartitions:
            if b not in BIPARTITIONS:
                raise InvalidSpec(f"unknown bipartition {b!r}; valid: CA, BA, BC")
        measures = tuple(_MEASURE_ALIASES.get(m, m) for m in self.measures)
        for m in measures:
            if m not in MEASURE_FAMILIES:
                raise InvalidSpec(f"unknown measure family {m!r}; "
                                  f"valid: {', '.join(MEASURE_FAMILIES)}")
        if not measures:
            raise InvalidSpec("at least one measure family is required")
        object.__setattr__(self, "measures", measures)
        object.__setattr__(self, "bipartitions", tuple(self.bipartitions))

    def shape(self):
        n2 = self.axis2.steps if self.axis2 is not None else 1
        return self.axis1.steps, n2


def _apply_axis(fields: dict, parameter: str, value: float, omega_m_si: float):
    if parameter == "delta_a_eff":
        fields["delta_a_eff"] = value
    elif parameter == "delta_c":
        fields["delta_c"] = value
    elif parameter == "G_joint":
        fields["coupling_a_lin"] = value
        fields["coupling_c"] = value
    elif parameter == "kappa_joint":
        fields["kappa_a"] = value
        fields["kappa_c"] = value
    elif parameter == "temperature":
        fields["n_th"] = thermal_occupation(omega_m_si, value)
        fields["_temperature"] = value
    elif parameter == "G_a_lin":
        fields["coupling_a_lin"] = value
    elif parameter == "G_c":
        fields["coupling_c"] = value
    elif parameter == "kappa_a":
        fields["kappa_a"] = value
    elif parameter == "kappa_c":
        fields["kappa_c"] = value
    elif parameter == "n_th":
        fields["n_th"] = value


def _cell_effective(spec: SweepSpec, v1: float, v2) -> EffectiveParams:
    """Effective parameters of one cell in direct mode."""
    b = spec.base
    fields = dict(
        delta_a_eff=b.delta_a_eff, delta_c=b.delta_c,
        coupling_a_lin=b.coupling_a_lin, coupling_c=b.coupling_c,
        kappa_a=b.kappa_a, kappa_c=b.kappa_c, gamma_m=b.gamma_m,
        omega_m=b.omega_m, n_th=b.n_th,
    )
    _apply_axis(fields, spec.axis1.parameter, v1, spec.omega_m_si)
    if spec.axis2 is not None:
        _apply_axis(fields, spec.axis2.parameter, v2, spec.omega_m_si)
    fields.pop("_temperature", None)
    return EffectiveParams(**fields)


def _cell_physical(spec: SweepSpec, v1: float, v2) -> EffectiveParams:
    """Effective parameters of one cell via the mean-field pipeline."""
    b = spec.base
    fields = dict(
        delta_a_eff=b.delta_a_eff, delta_c=b.delta_c,
        coupling_a_lin=b.coupling_a_lin, coupling_c=b.coupling_c,
        kappa_a=b.kappa_a, kappa_c=b.kappa_c, gamma_m=b.gamma_m,
        omega_m=b.omega_m, n_th=b.n_th, _temperature=spec.temperature,
    )
    _apply_axis(fields, spec.axis1.parameter, v1, spec.omega_m_si)
    if spec.axis2 is not None:
        _apply_axis(fields, spec.axis2.parameter, v2, spec.omega_m_si)
    temperature = fields.pop("_temperature")
    w = spec.omega_m_si
    root_n = np.sqrt(spec.n_molecules)
    phys = PhysicalParams(
        omega_m=w,
        kappa_a=fields["kappa_a"] * w,
        kappa_c=fields["kappa_c"] * w,
        gamma_m=fields["gamma_m"] * w,
        g_a=fields["coupling_a_lin"] / root_n * w,
        g_c=fields["coupling_c"] / root_n * w,
        n_molecules=spec.n_molecules,
        delta_a=fields["delta_a_eff"] * w,
        delta_c=fields["delta_c"] * w,
        drive_a=spec.drive * w,
        drive_c=spec.drive * w,
        temperature=temperature if temperature is not None else 0.0,
        n_th=None if temperature is not None else fields["n_th"],
    )
    ss = solve_steady_state(phys, tol=spec.ss_tol)
    return effective_from_physical(phys, ss)


@dataclass
class SweepResult:
    """Grid of correlation reports plus per-cell solve diagnostics.

    ``status`` codes: 0 ok, 1 unstable, 2 resolution/solver error,
    3 non-physical measures. Unstable and error cells carry NaN in every
    measure array and are masked on serialization.
    """

    spec: SweepSpec
    axis1_values: np.ndarray
    axis2_values: np.ndarray | None
    status: np.ndarray
    max_real_eig: np.ndarray
    residual: np.ndarray
    asymmetry: np.ndarray
    measures: dict
    provenance: dict = field(default_factory=dict)

    @property
    def columns(self):
        """Measure columns populated for this sweep, in canonical order."""
        cols = []
        for family in self.spec.measures:
            cols.extend(FAMILY_COLUMNS[family])
        return tuple(c for c in ALL_COLUMNS if c in cols)

    def report_at(self, i: int, j: int, bipartition: str) -> CorrelationReport | None:
        """The full report of one stable cell, or None for unstable/error cells."""
        if self.status[i, j] != K.STATUS_OK:
            return None
        m = self.measures[bipartition]
        return CorrelationReport(
            e_n=float(m["E_n"][i, j]),
            steer_12=float(m["steer_12"][i, j]),
            steer_21=float(m["steer_21"][i, j]),
            discord_12=float(m["discord_12"][i, j]),
            discord_21=float(m["discord_21"][i, j]),
            nu_minus_pt=float(m["nu_minus_pt"][i, j]),
        )

    def stable_fraction(self) -> float:
        return float((self.status == K.STATUS_OK).mean())

    def error_fraction(self) -> float:
        return float((self.status >= K.STATUS_ERROR).mean())

    def summary(self) -> list:
        """One summary record per bipartition: measure ranges over stable cells."""
        ok = self.status == K.STATUS_OK
        records = []
        for b in self.spec.bipartitions:
            rec = {"bipartition": b, "pair": PAIR_LABELS[b],
                   "stable_fraction": self.stable_fraction()}
            for col in self.columns:
                grid = self.measures[b][col]
                vals = grid[ok]
                rec[col] = (float(np.min(vals)), float(np.max(vals))) if vals.size else (np.nan, np.nan)
            records.append(rec)
        return records


def _resolve_cells(spec: SweepSpec):
    """Per-cell effective parameters as a dense float64 array.

    Returns (params (n,9), status (n,)) with resolution failures pre-marked
    as error cells rather than aborting the grid.
    """
    v1 = spec.axis1.values()
    v2 = spec.axis2.values() if spec.axis2 is not None else np.array([np.nan])
    n1, n2 = spec.shape()
    params = np.full((n1 * n2, 9), np.nan)
    status = np.zeros(n1 * n2, dtype=np.int64)
    resolver = _cell_physical if spec.physical else _cell_effective
    for i in range(n1):
        for j in range(n2):
            k = i * n2 + j
            try:
                e = resolver(spec, float(v1[i]), float(v2[j]) if spec.axis2 is not None else None)
                params[k] = (e.delta_a_eff, e.delta_c, e.coupling_a_lin, e.coupling_c,
                             e.kappa_a, e.kappa_c, e.gamma_m, e.omega_m, e.n_th)
            except McomError as exc:
                status[k] = K.STATUS_ERROR
                log.debug("cell (%d, %d) failed to resolve: %s", i, j, exc)
    return params, status


def _refine_cells(params, bips, indices, residual, asymmetry, measures, status, margin):
    """Extended-precision re-solve of cells whose float64 residual missed the bound.

    The stored measures and residual of a refined cell come from the
    longdouble covariance matrix actually used.
    """
    for k in indices:
        row = params[k]
        e = EffectiveParams(
            delta_a_eff=row[0], delta_c=row[1], coupling_a_lin=row[2],
            coupling_c=row[3], kappa_a=row[4], kappa_c=row[5],
            gamma_m=row[6], omega_m=row[7], n_th=row[8])
        cm = solve_lyapunov(build_drift(e), build_diffusion(e),
                            margin=margin, extended=True)
        residual[k] = cm.residual
        asymmetry[k] = cm.asymmetry
        v = cm.matrix
        for b in range(bips.shape[0]):
            f0, s0 = bips[b]
            idx = [f0, f0 + 1, s0, s0 + 1]
            sub = v[np.ix_(idx, idx)]
            i1, i2, i3, i4 = S.two_mode_invariants(sub)
            nu_minus, _ = S.symplectic_pair(i1, i2, i3, i4)
            if i4 <= S.DET_FLOOR or nu_minus < 0.5 - S.NU_MIN_TOL:
                status[k] = K.STATUS_NONPHYSICAL
                break
            measures[k, b, 0] = S.log_negativity_from_invariants(i1, i2, i3, i4)
            measures[k, b, 1] = S.steering_from_invariants(i1, i4)
            measures[k, b, 2] = S.steering_from_invariants(i2, i4)
            measures[k, b, 3] = max(S.discord_from_invariants(i1, i2, i3, i4), 0.0)
            measures[k, b, 4] = max(S.discord_from_invariants(i2, i1, i3, i4), 0.0)
            measures[k, b, 5] = S.pt_min_symplectic(i1, i2, i3, i4)


def _default_workers() -> int:
    env = os.environ.get("MCOM_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer MCOM_WORKERS=%r", env)
    return os.cpu_count() or 1


def run_sweep(spec: SweepSpec, workers: int | None = None) -> SweepResult:
    """Evaluate a sweep grid.

    Cells are independent; serial and parallel execution produce identical
    grids, and per-cell failures are recorded in the cell status instead of
    aborting the run.
    """
    if workers is None:
        workers = _default_workers()
    if workers < 1:
        raise InvalidSpec("workers must be >= 1")

    n1, n2 = spec.shape()
    n = n1 * n2
    params, status = _resolve_cells(spec)
    bips = np.array([(BIPARTITIONS[b].first_mode[0], BIPARTITIONS[b].second_mode[0])
                     for b in spec.bipartitions], dtype=np.int64)

    max_re = np.full(n, np.nan)
    residual = np.full(n, np.nan)
    asymmetry = np.full(n, np.nan)
    needs_refine = np.zeros(n, dtype=np.int64)
    measures = np.full((n, len(spec.bipartitions), K.N_MEASURES), np.nan)

    args = (params, bips, spec.stability_margin, spec.residual_rtol,
            status, max_re, residual, asymmetry, needs_refine, measures)

    if USE_NUMBA:
        try:
            with thread_count(workers):
                K.eval_grid(*args)
        except Exception:  # singular cell aborts the compiled grid; redo in python
            log.warning("compiled grid kernel failed; re-running cell-by-cell")
            status[status != K.STATUS_ERROR] = 0
            _run_python(spec, params, bips, status, max_re, residual,
                        asymmetry, needs_refine, measures, workers=1, per_cell=True)
    else:
        _run_python(spec, params, bips, status, max_re, residual,
                    asymmetry, needs_refine, measures, workers=workers)

    refine_idx = np.flatnonzero((needs_refine == 1) & (status == K.STATUS_OK))
    if refine_idx.size:
        log.info("re-solving %d near-marginal cells in extended precision", refine_idx.size)
        _refine_cells(params, bips, refine_idx, residual, asymmetry, measures,
                      status, spec.stability_margin)

    bad = measures[status == K.STATUS_OK]
    if bad.size and np.isnan(bad).any():
        raise McomError("internal: NaN measures on ok-status cells")
    # Masking: only ok cells expose numbers.
    mask = status != K.STATUS_OK
    measures[mask] = np.nan

    measure_dict = {}
    for bi, b in enumerate(spec.bipartitions):
        cols = {}
        for col, slot in _COLUMN_SLOT.items():
            cols[col] = measures[:, bi, slot].reshape(n1, n2)
        measure_dict[b] = cols

    result = SweepResult(
        spec=spec,
        axis1_values=spec.axis1.values(),
        axis2_values=spec.axis2.values() if spec.axis2 is not None else None,
        status=status.reshape(n1, n2),
        max_real_eig=max_re.reshape(n1, n2),
        residual=residual.reshape(n1, n2),
        asymmetry=asymmetry.reshape(n1, n2),
        measures=measure_dict,
        provenance=_provenance(spec),
    )
    return result


def _run_python(spec, params, bips, status, max_re, residual, asymmetry,
                needs_refine, measures, workers: int, per_cell: bool = False):
    """Pure-numpy execution path, optionally chunked over a thread pool.

    ``per_cell`` trades speed for isolation: each cell runs in its own
    try/except so a singular solve marks only that cell as failed.
    """
    n = params.shape[0]

    def run_slice(lo, hi):
        sl = slice(lo, hi)
        K.eval_grid_py(params[sl], bips, spec.stability_margin, spec.residual_rtol,
                       status[sl], max_re[sl], residual[sl], asymmetry[sl],
                       needs_refine[sl], measures[sl])

    def run_cells(lo, hi):
        for k in range(lo, hi):
            try:
                run_slice(k, k + 1)
            except Exception as exc:
                status[k] = K.STATUS_ERROR
                log.debug("cell %d failed: %s", k, exc)

    runner = run_cells if per_cell else run_slice
    if workers <= 1 or n < 64:
        runner(0, n)
        return
    chunk = max(1, (n + workers - 1) // workers)
    bounds = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(runner, lo, hi) for lo, hi in bounds]
        for f in futures:
            f.result()


def _provenance(spec: SweepSpec) -> dict:
    b = spec.base
    prov = {
        "generator": f"mcom {__version__}",
        "backend": "numba" if USE_NUMBA else "numpy",
        "preset": spec.name,
        "mode": "physical" if spec.physical else "direct",
        "bipartitions": ",".join(spec.bipartitions),
        "measures": ",".join(spec.measures),
        "axis1": f"{spec.axis1.parameter} {spec.axis1.min:g}..{spec.axis1.max:g} "
                 f"n={spec.axis1.steps} {spec.axis1.scale}",
        "base.delta_a_eff": f"{b.delta_a_eff:.17g}",
        "base.delta_c": f"{b.delta_c:.17g}",
        "base.coupling_a_lin": f"{b.coupling_a_lin:.17g}",
        "base.coupling_c": f"{b.coupling_c:.17g}",
        "base.kappa_a": f"{b.kappa_a:.17g}",
        "base.kappa_c": f"{b.kappa_c:.17g}",
        "base.gamma_m": f"{b.gamma_m:.17g}",
        "base.omega_m": f"{b.omega_m:.17g}",
        "base.n_th": f"{b.n_th:.17g}",
        "stability_margin": f"{spec.stability_margin:.17g}",
        "residual_rtol": f"{spec.residual_rtol:.17g}",
        "omega_m_si": f"{spec.omega_m_si:.17g}",
    }
    if spec.axis2 is not None:
        prov["axis2"] = (f"{spec.axis2.parameter} {spec.axis2.min:g}..{spec.axis2.max:g} "
                         f"n={spec.axis2.steps} {spec.axis2.scale}")
    if spec.physical:
        prov["drive"] = f"{spec.drive:.17g}"
        prov["n_molecules"] = str(spec.n_molecules)
        if spec.temperature is not None:
            prov["temperature_K"] = f"{spec.temperature:.17g}"
    return prov


# ---------------------------------------------------------------------------
# Figure presets
# ---------------------------------------------------------------------------

_GAMMA_M = 0.005
_T_BATH = 210.0
_N_TH_210 = thermal_occupation(DEFAULT_OMEGA_M_SI, _T_BATH)

_DETUNING_AXES = (Axis("delta_a_eff", 0.0, 2.0, 101), Axis("delta_c", -2.0, 0.0, 101))
_DECAY_COUPLING_AXES = (Axis("kappa_joint", 0.001, 0.1, 101), Axis("G_joint", 1e-4, 0.01, 101))
_THERMAL_AXES = (Axis("G_joint", 1e-4, 0.01, 101), Axis("temperature", 0.0, 1000.0, 101))


def _eff(da, dc, g, ka, kc):
    return EffectiveParams(delta_a_eff=da, delta_c=dc, coupling_a_lin=g, coupling_c=g,
                           kappa_a=ka, kappa_c=kc, gamma_m=_GAMMA_M, omega_m=1.0,
                           n_th=_N_TH_210)


def _preset(name, caption, bip, family, base, axes):
    return {
        "name": name,
        "caption": caption,
        "bipartition": bip,
        "measures": (family,) if isinstance(family, str) else tuple(family),
        "base": base,
        "axes": axes,
    }


def _detuning_preset(name, pair, family, g, k):
    caption = (f"{family} of pair {PAIR_LABELS[pair]} vs (delta_a_eff, delta_c); "
               f"kappa_j={k:g}, G_j={g:g}, gamma_m={_GAMMA_M:g}, T={_T_BATH:g} K")
    return _preset(name, caption, pair, family, _eff(1.0, -1.0, g, k, k), _DETUNING_AXES)


def _decay_preset(name, pair, family, da, dc):
    caption = (f"{family} of pair {PAIR_LABELS[pair]} vs (kappa_j, G_j); "
               f"delta_a_eff={da:g}, delta_c={dc:g}, gamma_m={_GAMMA_M:g}, T={_T_BATH:g} K")
    return _preset(name, caption, pair, family, _eff(da, dc, 1e-3, 1e-2, 1e-2),
                   _DECAY_COUPLING_AXES)


def _thermal_preset(name, pair, da, dc):
    caption = (f"entanglement of pair {PAIR_LABELS[pair]} vs (G_j, T); "
               f"delta_a_eff={da:g}, delta_c={dc:g}, kappa_a=1, kappa_c=0.0166, "
               f"gamma_m={_GAMMA_M:g}")
    return _preset(name, caption, pair, "entanglement",
                   _eff(da, dc, 1e-3, 1.0, 0.0166), _THERMAL_AXES)


def _cut_detuning_preset(name, pair, dc, g, k):
    caption = (f"all measures of pair {PAIR_LABELS[pair]} vs delta_a_eff; "
               f"delta_c={dc:g}, kappa_j={k:g}, G_j={g:g}, gamma_m={_GAMMA_M:g}, "
               f"T={_T_BATH:g} K")
    return _preset(name, caption, pair, MEASURE_FAMILIES, _eff(1.0, dc, g, k, k),
                   (Axis("delta_a_eff", 0.0, 2.0, 101),))


def _cut_coupling_preset(name, pair, da, dc, k):
    caption = (f"all measures of pair {PAIR_LABELS[pair]} vs G_j; "
               f"delta_a_eff={da:g}, delta_c={dc:g}, kappa_j={k:g}, "
               f"gamma_m={_GAMMA_M:g}, T={_T_BATH:g} K")
    return _preset(name, caption, pair, MEASURE_FAMILIES, _eff(da, dc, 1e-3, k, k),
                   (Axis("G_joint", 1e-4, 0.01, 101),))


PRESETS = {}
for _p in (
    _detuning_preset("fig2a", "CA", "entanglement", 0.003, 0.003),
    _detuning_preset("fig2b", "BA", "entanglement", 0.005, 0.05),
    _detuning_preset("fig2c", "BC", "entanglement", 0.005, 0.05),
    _detuning_preset("fig3a", "CA", "steering", 0.003, 0.003),
    _detuning_preset("fig3b", "BA", "steering", 0.005, 0.05),
    _detuning_preset("fig3c", "BC", "steering", 0.005, 0.05),
    _detuning_preset("fig4a", "CA", "discord", 0.003, 0.003),
    _detuning_preset("fig4b", "BA", "discord", 0.005, 0.05),
    _detuning_preset("fig4c", "BC", "discord", 0.005, 0.05),
    _decay_preset("fig5a", "CA", "entanglement", 1.0, -1.0),
    _decay_preset("fig5b", "BA", "entanglement", 0.5, -1.0),
    _decay_preset("fig5c", "BC", "entanglement", 1.0, -1.0),
    _decay_preset("fig6a", "CA", "steering", 1.0, -1.0),
    _decay_preset("fig6b", "BA", "steering", 0.005, -1.0),
    _decay_preset("fig6c", "BC", "steering", 1.0, -1.0),
    _decay_preset("fig7a", "CA", "discord", 1.0, -1.0),
    _decay_preset("fig7b", "BA", "discord", 0.5, -1.0),
    _decay_preset("fig7c", "BC", "discord", 1.0, -1.0),
    _thermal_preset("fig8a", "CA", 1.0, -1.0),
    _thermal_preset("fig8b", "BA", 0.005, -1.0),
    _thermal_preset("fig8c", "BC", 1.0, -1.0),
    _cut_detuning_preset("fig9a", "CA", -1.0, 0.003, 0.003),
    _cut_detuning_preset("fig9b", "BA", -0.5, 0.005, 0.05),
    _cut_detuning_preset("fig9c", "BC", -1.0, 0.005, 0.05),
    _cut_coupling_preset("fig10a", "CA", 1.0, -0.99, 0.003),
    _cut_coupling_preset("fig10b", "BA", 0.5, -0.5, 0.05),
    _cut_coupling_preset("fig10c", "BC", 1.5, -1.0, 0.05),
):
    PRESETS[_p["name"]] = _p


def figure_preset(name: str, grid: tuple | None = None, physical: bool = False) -> SweepSpec:
    """SweepSpec for one bundled preset, optionally at a different resolution.

    ``grid`` is (steps1, steps2) for 2-D presets or (steps1,) for 1-D cuts.
    """
    try:
        p = PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown preset {name!r}; run list_presets() for the catalogue") from None
    axes = p["axes"]
    if grid is not None:
        grid = tuple(int(g) for g in grid)
        if len(grid) != len(axes):
            raise InvalidSpec(
                f"preset {name} has {len(axes)} axis(es); --grid gave {len(grid)} sizes")
        axes = tuple(replace(ax, steps=g) for ax, g in zip(axes, grid))
    return SweepSpec(
        base=p["base"],
        axis1=axes[0],
        axis2=axes[1] if len(axes) > 1 else None,
        bipartitions=(p["bipartition"],),
        measures=p["measures"],
        name=name,
        physical=physical,
        temperature=_T_BATH,
    )


def list_presets() -> list:
    """Catalogue of presets with their resolved parameters, for display."""
    rows = []
    for name, p in PRESETS.items():
        b = p["base"]
        rows.append({
            "name": name,
            "pair": PAIR_LABELS[p["bipartition"]],
            "measures": ",".join(p["measures"]),
            "axis1": p["axes"][0].parameter,
            "axis2": p["axes"][1].parameter if len(p["axes"]) > 1 else "-",
            "delta_a_eff": b.delta_a_eff,
            "delta_c": b.delta_c,
            "G": b.coupling_a_lin,
            "kappa_a": b.kappa_a,
            "kappa_c": b.kappa_c,
            "gamma_m": b.gamma_m,
            "n_th": b.n_th,
            "caption": p["caption"],
        })
    return rows
