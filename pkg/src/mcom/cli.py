"""Command-line front end: preset execution, config files, serialization.

Exit codes: 0 success, 2 configuration/usage error, 3 numerical failure
affecting more than half of the grid cells, 4 output I/O error.
"""

import argparse
import configparser
import os
import sys

from .errors import ConfigError, McomError
from .model import EffectiveParams
from .serialize import write_result
from .sweep import (Axis, SweepSpec, figure_preset, list_presets, run_sweep)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

CONFIG_VERSION = 1


def _parse_grid(text: str) -> tuple:
    try:
        parts = [int(p) for p in text.lower().split("x")]
    except ValueError:
        raise ConfigError(f"--grid expects N or N1xN2, got {text!r}") from None
    if len(parts) not in (1, 2) or any(p < 2 for p in parts):
        raise ConfigError(f"--grid expects sizes >= 2, got {text!r}")
    return tuple(parts)


def _parse_formats(text: str) -> tuple:
    formats = tuple(f.strip() for f in text.split(",") if f.strip())
    for f in formats:
        if f not in ("csv", "matrix"):
            raise ConfigError(f"unknown output format {f!r}; valid: csv, matrix")
    if not formats:
        raise ConfigError("at least one output format is required")
    return formats


def _axis_from_section(cfg, section: str) -> Axis:
    s = cfg[section]
    try:
        return Axis(
            parameter=s.get("parameter"),
            min=s.getfloat("min"),
            max=s.getfloat("max"),
            steps=s.getint("steps", 101),
            scale=s.get("scale", "linear"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [{section}] section: {exc}") from exc


def _base_from_section(cfg) -> EffectiveParams:
    if "base" not in cfg:
        raise ConfigError("custom sweeps need a [base] section")
    s = cfg["base"]
    from .model import DEFAULT_OMEGA_M_SI, thermal_occupation

    n_th = s.getfloat("n_th", fallback=None)
    if n_th is None and s.get("temperature", fallback=None) is not None:
        omega_si = s.getfloat("omega_m_si", fallback=DEFAULT_OMEGA_M_SI)
        n_th = thermal_occupation(omega_si, s.getfloat("temperature"))
    try:
        return EffectiveParams(
            delta_a_eff=s.getfloat("delta_a_eff"),
            delta_c=s.getfloat("delta_c"),
            coupling_a_lin=s.getfloat("G_a_lin"),
            coupling_c=s.getfloat("G_c"),
            kappa_a=s.getfloat("kappa_a"),
            kappa_c=s.getfloat("kappa_c"),
            gamma_m=s.getfloat("gamma_m"),
            omega_m=s.getfloat("omega_m", 1.0),
            n_th=n_th if n_th is not None else 0.0,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad [base] section: {exc}") from exc


def _spec_from_config(path: str) -> tuple:
    """Parse a config file into (SweepSpec, run options dict)."""
    if not os.path.exists(path):
        raise ConfigError(f"config file not found: {path}")
    cfg = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        cfg.read(path)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if "run" not in cfg:
        raise ConfigError("config file needs a [run] section")
    run = cfg["run"]
    version = run.getint("config_version", fallback=CONFIG_VERSION)
    if version != CONFIG_VERSION:
        raise ConfigError(f"unsupported config_version {version} (expected {CONFIG_VERSION})")

    options = {
        "out": run.get("out", "results"),
        "workers": run.getint("workers", fallback=None),
        "formats": _parse_formats(run.get("formats", "csv,matrix")),
        "physical": run.getboolean("physical", fallback=False),
    }

    preset = run.get("preset", fallback=None)
    custom = "axis1" in cfg or "base" in cfg
    if preset and custom:
        raise ConfigError("config must give either a preset or a custom sweep, not both")
    if preset:
        grid = _parse_grid(run.get("grid")) if run.get("grid", fallback=None) else None
        spec = figure_preset(preset, grid=grid, physical=options["physical"])
    else:
        if "axis1" not in cfg:
            raise ConfigError("custom sweeps need an [axis1] section")
        axis1 = _axis_from_section(cfg, "axis1")
        axis2 = _axis_from_section(cfg, "axis2") if "axis2" in cfg else None
        base = _base_from_section(cfg)
        sweep_sec = cfg["sweep"] if "sweep" in cfg else {}
        bips = tuple(b.strip() for b in sweep_sec.get("bipartitions", "CA,BA,BC").split(","))
        families = tuple(m.strip() for m in
                         sweep_sec.get("measures", "entanglement,steering,discord").split(","))
        spec = SweepSpec(base=base, axis1=axis1, axis2=axis2, bipartitions=bips,
                         measures=families, name=run.get("name", "custom"),
                         physical=options["physical"])

    if "tolerances" in cfg:
        t = cfg["tolerances"]
        from dataclasses import replace
        spec = replace(
            spec,
            stability_margin=t.getfloat("stability_margin", spec.stability_margin),
            residual_rtol=t.getfloat("residual_rtol", spec.residual_rtol),
            ss_tol=t.getfloat("steady_state_tol", spec.ss_tol),
        )
    return spec, options


def _print_summary(result):
    print(f"run {result.spec.name}: grid {result.status.shape[0]}x{result.status.shape[1]}, "
          f"stable {result.stable_fraction():.1%}, errors {result.error_fraction():.1%}")
    for rec in result.summary():
        parts = [f"pair {rec['pair']}"]
        for col in result.columns:
            lo, hi = rec[col]
            parts.append(f"{col} [{lo:.6g}, {hi:.6g}]")
        parts.append(f"stable {rec['stable_fraction']:.1%}")
        print("  " + " | ".join(parts))


def _cmd_run(args) -> int:
    try:
        if args.config:
            spec, options = _spec_from_config(args.config)
        else:
            grid = _parse_grid(args.grid) if args.grid else None
            spec = figure_preset(args.preset, grid=grid, physical=args.physical)
            options = {"out": "results", "workers": None,
                       "formats": ("csv", "matrix"), "physical": args.physical}
        if args.out:
            options["out"] = args.out
        if args.workers is not None:
            options["workers"] = args.workers
        if args.formats:
            options["formats"] = _parse_formats(args.formats)
        if args.physical and not spec.physical:
            from dataclasses import replace
            spec = replace(spec, physical=True)
    except McomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    result = run_sweep(spec, workers=options["workers"])

    try:
        paths = write_result(result, options["out"], formats=options["formats"])
    except OSError as exc:
        print(f"error writing outputs: {exc}", file=sys.stderr)
        return EXIT_IO

    _print_summary(result)
    for p in paths:
        print(f"wrote {p}")
    if result.error_fraction() > 0.5:
        print("error: numerical failure on more than half of the grid", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_list_presets(args) -> int:
    rows = list_presets()
    if args.machine:
        for r in rows:
            fields = " ".join(f"{k}={r[k]}" for k in
                              ("name", "pair", "measures", "axis1", "axis2",
                               "delta_a_eff", "delta_c", "G", "kappa_a", "kappa_c",
                               "gamma_m", "n_th"))
            print(fields)
        return EXIT_OK
    fmt = "{name:<8} {pair:<4} {axis1:<12} {axis2:<12} {delta_a_eff:<12} " \
          "{delta_c:<8} {kappa_a:<8} {kappa_c:<8} {gamma_m:<8} {caption}"
    print(fmt.format(name="name", pair="pair", axis1="axis1", axis2="axis2",
                     delta_a_eff="delta_a_eff", delta_c="delta_c",
                     kappa_a="kappa_a", kappa_c="kappa_c", gamma_m="gamma_m",
                     caption="description"))
    for r in rows:
        print(fmt.format(name=r["name"], pair=r["pair"],
                         axis1=r["axis1"], axis2=r["axis2"],
                         delta_a_eff=f"{r['delta_a_eff']:g}", delta_c=f"{r['delta_c']:g}",
                         kappa_a=f"{r['kappa_a']:g}", kappa_c=f"{r['kappa_c']:g}",
                         gamma_m=f"{r['gamma_m']:g}", caption=r["caption"]))
    print(f"{len(rows)} presets")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcom",
        description="Steady-state quantum correlations of a double-cavity "
                    "molecular optomechanical model.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a sweep from a preset or a config file")
    src = run.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="bundled preset name (see list-presets)")
    src.add_argument("--config", help="INI run-configuration file")
    run.add_argument("--out", help="output directory (default: results)")
    run.add_argument("--workers", type=int, default=None,
                     help="worker count (default: MCOM_WORKERS or all cores)")
    run.add_argument("--grid", help="override grid resolution, N or N1xN2")
    run.add_argument("--physical", action="store_true",
                     help="resolve cells through the mean-field pipeline")
    run.add_argument("--formats", help="comma list of outputs: csv,matrix")
    run.set_defaults(func=_cmd_run)

    lp = sub.add_parser("list-presets", help="catalogue of bundled presets")
    lp.add_argument("--machine", action="store_true",
                    help="machine-readable key=value output")
    lp.set_defaults(func=_cmd_list_presets)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except McomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
