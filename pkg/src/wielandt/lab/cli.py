"""Command line interface: ``wielandt <subcommand> ...``.

Inputs come from a matrix JSON file or from ``--random N G`` (seeded by
``--seed``, default taken from the WIELANDT_SEED environment variable).
A NotGenerating outcome is a normal result and exits with status 0; exit
status 1 means some computation did not complete, 2 means bad input.
"""

from __future__ import annotations

import argparse
import dataclasses
import enum
import json
import logging
import os
import sys

import numpy as np

from ..channels import KrausChannel, analyze_channel, primitivity_bounds
from ..ensembles import (
    RngSpec,
    ginibre_system,
    haar_isometry_kraus,
    random_peps_tensor,
    random_su_system,
)
from ..liespan import LieGeneratingSystem, lie_length, witt_lower_bound
from ..numkernel import Tolerance
from ..tensornets import BudgetExceeded, MpsTensor, mps_injectivity_index, peps_injective
from ..wordspan import counting_lower_bound, generic_wie_bound, length, wie_length
from .experiment import ExperimentConfig, ExperimentKind, run_experiment, summarize
from .io import emit_csv, parse_matrices, parse_peps
from .plot import emit_plot

SEED_ENV = "WIELANDT_SEED"


def _jsonable(x):
    if dataclasses.is_dataclass(x) and not isinstance(x, type):
        return {f.name: _jsonable(getattr(x, f.name)) for f in dataclasses.fields(x)}
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return _jsonable(np.stack([x.real, x.imag], axis=-1))
        return x.tolist()
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, np.generic):
        return x.item()
    return x


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{SEED_ENV}={raw!r} is not an integer")


def _tolerance(args) -> Tolerance:
    return Tolerance(rank_rel=args.tol) if args.tol is not None else Tolerance()


def _system(args, sampler):
    if args.random is not None:
        n, g = args.random
        return sampler(n, g, RngSpec(args.seed))
    if args.path is None:
        raise ValueError("give a matrix file or --random N G")
    return parse_matrices(args.path)


def _fmt(v) -> str:
    return "NotGenerating" if v is None else str(v)


def cmd_wie_length(args, tol):
    S = _system(args, ginibre_system)
    rep = wie_length(S, cap=args.cap, tol=tol)
    lines = [f"Wie-length: {_fmt(rep.value)}"]
    if rep.period is not None:
        lines.append(f"exact-length spans cycle with period {rep.period}")
    if rep.cap_hit:
        lines.append(f"search cap {rep.search_cap} reached")
    if S.g >= 2 and S.n >= 2:
        lines.append(f"counting bound {counting_lower_bound(S.n, S.g)}, generic bound {generic_wie_bound(S.n, S.g)}")
    return rep, lines


def cmd_length(args, tol):
    rep = length(_system(args, ginibre_system), tol=tol)
    return rep, [f"length: {_fmt(rep.value)}", f"dims per step: {rep.dims_per_step}"]


def cmd_lie_length(args, tol):
    if args.random is not None:
        U = random_su_system(*args.random, RngSpec(args.seed))
    else:
        U = LieGeneratingSystem(list(_system(args, None).mats))
    rep = lie_length(U, cap=args.cap, tol=tol)
    lines = [f"Lie-length: {_fmt(rep.value)}", f"dims per depth: {rep.dims_per_depth}"]
    if U.g >= 2:
        lines.append(f"Witt lower bound: {witt_lower_bound(U.g, U.n)}")
    return rep, lines


def cmd_channel(args, tol):
    if args.random is not None:
        E = haar_isometry_kraus(*args.random, RngSpec(args.seed))
    else:
        S = _system(args, None)
        E = KrausChannel.normalized(S.mats) if args.normalize else KrausChannel(S.mats)
    rep = analyze_channel(E, tol)
    out = {"report": rep}
    lines = [
        f"full Kraus rank index: {_fmt(rep.kraus_rank_index)}",
        f"strongly irreducible: {rep.strongly_irreducible}",
        f"fixed point rank: {rep.fixed_point_rank}",
        f"zero-error dichotomy: {rep.dichotomy.kind.value}"
        + ("" if rep.dichotomy.q_upper is None else f" (block length {rep.dichotomy.q_upper})"),
    ]
    if args.primitivity:
        pb = primitivity_bounds(E, tol=tol, seed=args.seed)
        out["primitivity"] = {"upper": pb.upper, "certified_lower": pb.certified_lower}
        lines.append(f"primitivity index in [{pb.certified_lower}, {_fmt(pb.upper)}]")
    return out, lines


def cmd_mps(args, tol):
    T = MpsTensor(_system(args, ginibre_system))
    index = mps_injectivity_index(T, cross_check=args.cross_check, tol=tol)
    return {"injectivity_index": index}, [f"MPS injectivity index: {_fmt(index)}"]


def cmd_peps(args, tol):
    if args.random is not None:
        T = random_peps_tensor(*args.random, RngSpec(args.seed))
    elif args.path is not None:
        T = parse_peps(args.path)
    else:
        raise ValueError("give a PEPS tensor file or --random N G")
    rep = peps_injective(T, args.L, tol)
    verdict = "injective" if rep.injective else "not injective"
    return rep, [f"L = {rep.region_side}: {verdict} (rank {rep.gamma_rank} of {rep.full_rank_target})"]


def cmd_experiment(args, tol):
    cfg = ExperimentConfig(
        kind=ExperimentKind(args.kind),
        n_range=args.n,
        g_range=args.g,
        trials=args.trials,
        seed=args.seed,
        tol=tol,
        timing=args.timing,
        workers=args.workers,
        row_timeout=args.row_timeout,
    )
    rows = run_experiment(cfg)
    summary = summarize(cfg.kind, rows)
    if args.csv_out:
        emit_csv(rows, args.csv_out)
    if args.plot_out:
        emit_plot(rows, args.plot_out, title=cfg.kind.value)
    out = {"summary": summary.line(), "rows": rows}
    lines = [
        f"n={r.n} g={r.g} trial={r.trial} observed={_fmt(r.observed) if r.status == 'ok' else r.status} "
        f"bounds=[{r.lower_bound}, {r.upper_bound_generic}]"
        for r in rows
    ]
    lines.append(summary.line())
    return out, lines, summary.incomplete == 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default ${SEED_ENV} or 0)")
    common.add_argument("--tol", type=float, default=None, help="relative rank tolerance")
    common.add_argument("--json-out", help="write the full result as JSON")
    common.add_argument("--csv-out", help="experiment rows as CSV")
    common.add_argument("--plot-out", help="experiment plot as SVG")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="wielandt", description="Lengths of matrix generating systems.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("path", nargs="?", help="matrix JSON file")
        sp.add_argument("--random", nargs=2, type=int, metavar=("N", "G"), help="sample instead of reading a file")
        sp.set_defaults(func=func)
        return sp

    with_input("wie-length", cmd_wie_length, "Wie-length of a generating system").add_argument(
        "--cap", type=int, default=None
    )
    with_input("length", cmd_length, "length of a generating system")
    with_input("lie-length", cmd_lie_length, "Lie-length of su(n) elements").add_argument(
        "--cap", type=int, default=None
    )
    ch = with_input("channel", cmd_channel, "quantum channel analysis from Kraus operators")
    ch.add_argument("--normalize", action="store_true", help="make the Kraus operators trace preserving")
    ch.add_argument("--primitivity", action="store_true", help="also bound the primitivity index")
    with_input("mps", cmd_mps, "MPS injectivity index").add_argument("--cross-check", action="store_true")
    with_input("peps", cmd_peps, "PEPS injectivity on an L x L region").add_argument("--L", type=int, default=2)

    ex = sub.add_parser("experiment", parents=[common], help="seeded scaling experiment")
    ex.add_argument("--kind", required=True, choices=[k.value for k in ExperimentKind])
    ex.add_argument("--n", type=int, nargs="+", required=True)
    ex.add_argument("--g", type=int, nargs="+", default=[2])
    ex.add_argument("--trials", type=int, default=5)
    ex.add_argument("--workers", type=int, default=1)
    ex.add_argument("--timing", action="store_true", help="record wall_ms (makes CSV output run-dependent)")
    ex.add_argument("--row-timeout", type=float, default=60.0)
    ex.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.seed is None:
        args.seed = _default_seed()
    try:
        tol = _tolerance(args)
        result = args.func(args, tol)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    complete = True
    if len(result) == 3:
        out, lines, complete = result
    else:
        out, lines = result
    print("\n".join(lines))
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(_jsonable(out), fh, indent=2)
            fh.write("\n")
    return 0 if complete else 1


if __name__ == "__main__":
    sys.exit(main())
