"""CSV and plain-matrix serialization of sweep results.

Floats are written with 17 significant digits, which round-trips IEEE
doubles exactly; the round-trip is covered by tests. Every output file
carries the run provenance as leading ``#`` comment lines. Unstable (and
errored) cells serialize as empty fields in CSV and as ``nan`` sentinels in
matrix files.
"""

import csv
import os

import numpy as np

from . import _kernels as K
from .measures import PAIR_LABELS
from .sweep import ALL_COLUMNS, SweepResult

CSV_COLUMNS = ("axis1", "axis2", "bipartition", "stable", "E_n", "steer_12",
               "steer_21", "discord_12", "discord_21", "nu_minus_pt", "residual")

_FAMILY_LETTER = {"entanglement": "E", "steering": "G", "discord": "D"}


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _header_lines(result: SweepResult) -> list:
    lines = []
    for key, value in result.provenance.items():
        lines.append(f"# {key} = {value}")
    return lines


def csv_basename(result: SweepResult, bipartition: str) -> str:
    """File stem like ``fig2a_E_ca``: run name, leading measure family, pair."""
    letter = _FAMILY_LETTER[result.spec.measures[0]]
    return f"{result.spec.name}_{letter}_{PAIR_LABELS[bipartition]}"


def write_csv(result: SweepResult, outdir: str) -> list:
    """One CSV per bipartition with the full per-cell record.

    Row order is row-major in the grid (axis1 outer, axis2 inner), which
    makes the output bit-reproducible for a given configuration.
    """
    paths = []
    n1, n2 = result.status.shape
    populated = set(result.columns)
    for b in result.spec.bipartitions:
        path = os.path.join(outdir, csv_basename(result, b) + ".csv")
        grids = result.measures[b]
        with open(path, "w", newline="") as fh:
            for line in _header_lines(result):
                fh.write(line + "\n")
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for i in range(n1):
                for j in range(n2):
                    status = result.status[i, j]
                    ok = status == K.STATUS_OK
                    row = [
                        _fmt(result.axis1_values[i]),
                        _fmt(result.axis2_values[j]) if result.axis2_values is not None else "",
                        b,
                        "" if status >= K.STATUS_ERROR else ("1" if ok else "0"),
                    ]
                    for col in ALL_COLUMNS:
                        if ok and col in populated:
                            row.append(_fmt(grids[col][i, j]))
                        else:
                            row.append("")
                    row.append(_fmt(result.residual[i, j]) if ok else "")
                    writer.writerow(row)
        paths.append(path)
    return paths


def read_csv(path: str):
    """Parse a CSV written by write_csv back into grids.

    Returns (provenance dict, rows) where rows is a list of dicts with float
    values (empty fields become NaN).
    """
    provenance = {}
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = None
        for record in reader:
            if not record:
                continue
            if record[0].startswith("#"):
                text = ",".join(record)[1:].strip()
                if "=" in text:
                    key, _, value = text.partition("=")
                    provenance[key.strip()] = value.strip()
                continue
            if header is None:
                header = record
                continue
            row = {}
            for key, value in zip(header, record):
                if key in ("bipartition",):
                    row[key] = value
                elif value == "":
                    row[key] = float("nan")
                else:
                    row[key] = float(value)
            rows.append(row)
    return provenance, rows


def write_matrices(result: SweepResult, outdir: str) -> list:
    """One plain-text matrix per (measure, bipartition), plus axis sidecars.

    Matrices are laid out axis1 x axis2 for direct heatmap plotting;
    non-computed cells hold ``nan``.
    """
    paths = []
    header = "\n".join(line[2:] for line in _header_lines(result))
    name = result.spec.name

    axis1_path = os.path.join(outdir, f"{name}_axis1.txt")
    np.savetxt(axis1_path, result.axis1_values, fmt="%.17g",
               header=header + f"\naxis1 values ({result.spec.axis1.parameter})")
    paths.append(axis1_path)
    if result.axis2_values is not None:
        axis2_path = os.path.join(outdir, f"{name}_axis2.txt")
        np.savetxt(axis2_path, result.axis2_values, fmt="%.17g",
                   header=header + f"\naxis2 values ({result.spec.axis2.parameter})")
        paths.append(axis2_path)

    for b in result.spec.bipartitions:
        pair = PAIR_LABELS[b]
        for col in result.columns:
            path = os.path.join(outdir, f"{name}_{col}_{pair}.txt")
            np.savetxt(path, result.measures[b][col], fmt="%.17g",
                       header=header + f"\n{col} of pair {pair}; rows = axis1, "
                                       "columns = axis2; nan = not computed")
            paths.append(path)
    return paths


def write_result(result: SweepResult, outdir: str, formats=("csv", "matrix")) -> list:
    """Serialize a sweep result into outdir; returns the written paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    if "csv" in formats:
        paths.extend(write_csv(result, outdir))
    if "matrix" in formats:
        paths.extend(write_matrices(result, outdir))
    return paths
