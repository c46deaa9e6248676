"""Shared driver for the experiment scripts: run, write CSV + SVG, print summary."""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from wielandt.lab import ExperimentConfig, emit_csv, emit_plot, run_experiment, summarize
from wielandt.lab.experiment import per_n_stats


def drive(kind, n_range, g_range, trials, description, default_out):
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--n", type=int, nargs="+", default=n_range)
    p.add_argument("--g", type=int, nargs="+", default=g_range)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=default_out, help="output directory")
    args = p.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    cfg = ExperimentConfig(kind, args.n, args.g, trials=args.trials, seed=args.seed, workers=args.workers)
    rows = run_experiment(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for g in sorted(set(cfg.g_range)):
        sub = [r for r in rows if r.g == g]
        stem = out / f"{kind.value}_g{g}"
        emit_csv(sub, stem.with_suffix(".csv"))
        emit_plot(sub, stem.with_suffix(".svg"), title=f"{kind.value}, g = {g}")
        print(f"g = {g}")
        for n, (lo, med, hi) in per_n_stats(sub).items():
            b = next(r for r in sub if r.n == n)
            print(f"  n={n:3d}  observed min/median/max {lo}/{med}/{hi}  bounds [{b.lower_bound}, {b.upper_bound_generic}]")
    print(summarize(cfg.kind, rows).line())
    print(f"wrote CSV and SVG files to {out}/")
