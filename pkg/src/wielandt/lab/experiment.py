"""Seeded scaling experiments over the random ensembles.

Each (n, g, trial) row draws from its own substream
``RngSpec(seed).substream(n, g, trial)``, so rows are independent of each
other and of execution order. Rows can run in a process pool; the output is
always sorted by (n, g, trial).
"""

from __future__ import annotations

import enum
import logging
import multiprocessing
import signal
import statistics
import threading
import time
from dataclasses import dataclass, field

from ..channels import full_kraus_rank_index
from ..ensembles import (
    RngSpec,
    ginibre_system,
    haar_isometry_kraus,
    random_peps_tensor,
    random_su_system,
)
from ..liespan import lie_length, witt_lower_bound
from ..numkernel import DEFAULT_TOL, Tolerance
from ..tensornets import (
    BudgetExceeded,
    generic_injectivity_bound,
    peps_counting_lower_bound,
    peps_injective,
)
from ..wordspan import counting_lower_bound, generic_wie_bound, wie_length, worst_case_pair

log = logging.getLogger(__name__)


class ExperimentKind(enum.Enum):
    WIE_SCALING = "WieScaling"
    LIE_SCALING = "LieScaling"
    CHANNEL_SCALING = "ChannelScaling"
    PEPS_GENERIC = "PepsGeneric"
    WORST_CASE = "WorstCase"


# kinds whose rows must satisfy lower <= observed <= upper
SANDWICH_KINDS = frozenset(
    {
        ExperimentKind.WIE_SCALING,
        ExperimentKind.CHANNEL_SCALING,
        ExperimentKind.LIE_SCALING,
        ExperimentKind.PEPS_GENERIC,
    }
)


@dataclass
class ExperimentConfig:
    kind: ExperimentKind
    n_range: list[int]
    g_range: list[int]
    trials: int = 1
    seed: int = 0
    tol: Tolerance | None = None
    timing: bool = False  # record wall_ms; off by default so CSV output is reproducible
    workers: int = 1
    row_timeout: float = 60.0

    def __post_init__(self):
        if isinstance(self.kind, str):
            self.kind = ExperimentKind(self.kind)
        self.n_range = [int(n) for n in self.n_range]
        self.g_range = [int(g) for g in self.g_range]
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.n_range or not self.g_range:
            raise ValueError("n_range and g_range must be non-empty")
        if min(self.n_range) < 2:
            raise ValueError("every n must be at least 2")
        if min(self.g_range) < 2:
            raise ValueError("every g must be at least 2")
        if self.kind is ExperimentKind.PEPS_GENERIC and min(self.g_range) < 4:
            raise ValueError("PepsGeneric needs g >= 4 for the two-dimensional generic bound")
        if self.kind is ExperimentKind.WORST_CASE and self.g_range != [2]:
            raise ValueError("WorstCase pairs have g = 2")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.workers < 1 or self.row_timeout <= 0:
            raise ValueError("workers and row_timeout must be positive")

    @property
    def tolerance(self) -> Tolerance:
        return self.tol or DEFAULT_TOL


@dataclass
class ExperimentRow:
    n: int
    g: int
    trial: int
    observed: int | None  # None: NotGenerating
    lower_bound: int
    upper_bound_generic: int
    wall_ms: int = 0
    status: str = "ok"  # ok | timeout | budget | error
    message: str = field(default="", compare=False)

    def in_sandwich(self) -> bool:
        return self.observed is not None and self.lower_bound <= self.observed <= self.upper_bound_generic


def bounds(kind: ExperimentKind, n: int, g: int) -> tuple[int, int]:
    if kind is ExperimentKind.LIE_SCALING:
        return witt_lower_bound(g, n), n * n - 1
    if kind is ExperimentKind.PEPS_GENERIC:
        return peps_counting_lower_bound(n, g), generic_injectivity_bound(n, g, 2)
    return counting_lower_bound(n, g), generic_wie_bound(n, g)


def _observe(kind: ExperimentKind, n: int, g: int, rng: RngSpec, tol: Tolerance) -> int | None:
    if kind is ExperimentKind.WIE_SCALING:
        return wie_length(ginibre_system(n, g, rng), tol=tol).value
    if kind is ExperimentKind.CHANNEL_SCALING:
        return full_kraus_rank_index(haar_isometry_kraus(n, g, rng), tol)
    if kind is ExperimentKind.LIE_SCALING:
        return lie_length(random_su_system(n, g, rng), tol=tol).value
    if kind is ExperimentKind.WORST_CASE:
        return wie_length(worst_case_pair(n), tol=tol).value
    if kind is ExperimentKind.PEPS_GENERIC:
        T = random_peps_tensor(n, g, rng)
        lo, hi = bounds(kind, n, g)
        # below the counting bound Gamma_L has fewer rows than columns
        for L in range(lo, hi + 1):
            if peps_injective(T, L, tol).injective:
                return L
        return None
    raise ValueError(f"unknown kind {kind}")


class _RowTimeout(Exception):
    pass


def _alarm(signum, frame):
    raise _RowTimeout


def _run_row(args) -> ExperimentRow:
    kind, n, g, trial, seed, tol, timing, timeout = args
    lo, hi = bounds(kind, n, g)
    rng = RngSpec(seed).substream(n, g, trial)
    # SIGALRM only works in the main thread; pool workers run tasks there
    use_alarm = hasattr(signal, "setitimer") and threading.current_thread() is threading.main_thread()
    if use_alarm:
        old = signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, timeout)
    t0 = time.perf_counter()
    status, message, observed = "ok", "", None
    try:
        observed = _observe(kind, n, g, rng, tol)
    except _RowTimeout:
        status, message = "timeout", f"exceeded {timeout:g} s"
    except BudgetExceeded as exc:
        status, message = "budget", str(exc)
    except Exception as exc:  # recorded per row; one bad row must not abort the batch
        status, message = "error", f"{type(exc).__name__}: {exc}"
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, old)
    ms = int(round((time.perf_counter() - t0) * 1000)) if timing else 0
    if status != "ok":
        log.warning("row n=%d g=%d trial=%d: %s %s", n, g, trial, status, message)
    return ExperimentRow(n, g, trial, observed, lo, hi, ms, status, message)


def run_experiment(cfg: ExperimentConfig) -> list[ExperimentRow]:
    tasks = [
        (cfg.kind, n, g, t, cfg.seed, cfg.tolerance, cfg.timing, cfg.row_timeout)
        for n in sorted(set(cfg.n_range))
        for g in sorted(set(cfg.g_range))
        for t in range(cfg.trials)
    ]
    if cfg.workers > 1 and len(tasks) > 1:
        with multiprocessing.get_context("fork").Pool(cfg.workers) as pool:
            rows = pool.map(_run_row, tasks, chunksize=1)
    else:
        rows = [_run_row(t) for t in tasks]
    rows.sort(key=lambda r: (r.n, r.g, r.trial))
    return rows


@dataclass
class ExperimentSummary:
    kind: ExperimentKind
    total: int
    incomplete: int
    violations: list[ExperimentRow]
    at_lower: int  # rows whose observed value equals the counting lower bound

    @property
    def failed(self) -> bool:
        return bool(self.violations) or self.incomplete > 0

    def line(self) -> str:
        verdict = "FAILED" if self.failed else "ok"
        return (
            f"{self.kind.value}: {self.total} rows, {self.incomplete} incomplete, "
            f"{len(self.violations)} bound violations, {self.at_lower} at the lower bound -> {verdict}"
        )


def summarize(kind: ExperimentKind, rows: list[ExperimentRow]) -> ExperimentSummary:
    done = [r for r in rows if r.status == "ok"]
    checked = kind in SANDWICH_KINDS
    violations = [r for r in done if checked and not r.in_sandwich()]
    at_lower = sum(r.observed == r.lower_bound for r in done)
    return ExperimentSummary(kind, len(rows), len(rows) - len(done), violations, at_lower)


def per_n_stats(rows: list[ExperimentRow]) -> dict[int, tuple[int, float, int]]:
    """(min, median, max) of the finite observed values for each n."""
    by_n: dict[int, list[int]] = {}
    for r in rows:
        if r.status == "ok" and r.observed is not None:
            by_n.setdefault(r.n, []).append(r.observed)
    return {n: (min(v), statistics.median(v), max(v)) for n, v in sorted(by_n.items())}
