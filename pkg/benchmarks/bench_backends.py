#!/usr/bin/env python3
"""Benchmark the compiled grid kernel against the pure-numpy fallback.

Both backends evaluate the same resolved parameter grid through the same
kernel source (see mcom._kernels); this script times them side by side and
checks they agree. Run after installing the package:

    python benchmarks/bench_backends.py [--grid 61x61] [--preset fig2a] [--repeat 3]
"""

import argparse
import time

import numpy as np

from mcom import _kernels as K
from mcom._accel import USE_NUMBA
from mcom.measures import BIPARTITIONS
from mcom.sweep import _resolve_cells, figure_preset


def allocate(n, n_bips):
    return dict(
        status=np.zeros(n, dtype=np.int64),
        max_re=np.full(n, np.nan),
        residual=np.full(n, np.nan),
        asymmetry=np.full(n, np.nan),
        needs_refine=np.zeros(n, dtype=np.int64),
        measures=np.full((n, n_bips, K.N_MEASURES), np.nan),
    )


def run(kernel, params, bips, spec, out):
    kernel(params, bips, spec.stability_margin, spec.residual_rtol,
           out["status"], out["max_re"], out["residual"], out["asymmetry"],
           out["needs_refine"], out["measures"])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", default="fig2a")
    ap.add_argument("--grid", default="61x61")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    grid = tuple(int(g) for g in args.grid.lower().split("x"))
    spec = figure_preset(args.preset, grid=grid)
    params, base_status = _resolve_cells(spec)
    bips = np.array([(BIPARTITIONS[b].first_mode[0], BIPARTITIONS[b].second_mode[0])
                     for b in spec.bipartitions], dtype=np.int64)
    n = params.shape[0]
    print(f"preset {args.preset}, {n} cells, numba available: {USE_NUMBA}")

    results = {}
    lanes = [("numpy", K.eval_grid_py)]
    if USE_NUMBA:
        lanes.append(("numba", K.eval_grid))
        warm = allocate(n, len(bips))
        warm["status"][:] = base_status
        run(K.eval_grid, params, bips, spec, warm)  # JIT warm-up

    for name, kernel in lanes:
        best = np.inf
        out = None
        for _ in range(args.repeat):
            out = allocate(n, len(bips))
            out["status"][:] = base_status
            t0 = time.perf_counter()
            run(kernel, params, bips, spec, out)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, out)
        print(f"  {name:>6}: {best * 1e3:9.1f} ms   "
              f"({best / n * 1e6:6.1f} us/cell)")

    if len(results) == 2:
        t_np, out_np = results["numpy"]
        t_nb, out_nb = results["numba"]
        diff = np.nanmax(np.abs(out_np["measures"] - out_nb["measures"]))
        print(f"  speedup: {t_np / t_nb:.1f}x, max measure deviation: {diff:.2e}")
        if not np.array_equal(out_np["status"], out_nb["status"]):
            raise SystemExit("backend status grids disagree")
        if diff > 1e-10:
            raise SystemExit("backend measures disagree beyond 1e-10")


if __name__ == "__main__":
    main()
