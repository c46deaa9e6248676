"""Acceptance criteria 1-11.

Each ``criterion_N`` returns ``(ok, detail)``; the wall-clock budget of the
criterion is part of its verdict. Under pytest every criterion prints one
PASS/FAIL line (collected again in the terminal summary); run this file
directly with ``python3 tests/test_acceptance.py`` for just the lines.
"""

from __future__ import annotations

import itertools
import os
import sys
import tempfile
import time

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from wielandt.channels import full_kraus_rank_index, kraus_rank_of_power, strong_irreducibility  # noqa: E402
from wielandt.ensembles import (  # noqa: E402
    RngSpec,
    ginibre_system,
    haar_isometry_kraus,
    random_peps_tensor,
    random_su_system,
)
from wielandt.lab import ExperimentConfig, ExperimentKind, emit_csv, run_experiment, summarize  # noqa: E402
from wielandt.liespan import lie_length, witt_dimension, witt_lower_bound  # noqa: E402
from wielandt.tensornets import peps_injective, string_bond_tensor  # noqa: E402
from wielandt.wordspan import (  # noqa: E402
    check_sandwich,
    counting_lower_bound,
    generic_wie_bound,
    length,
    span_at_exact_length,
    wie_length,
    worst_case_pair,
)

SEED = 20240611


def criterion_1():
    cfg = ExperimentConfig(
        ExperimentKind.WIE_SCALING, list(range(2, 13)), [2, 3], trials=25, seed=SEED
    )
    rows = run_experiment(cfg)
    s = summarize(cfg.kind, rows)
    ok = len(rows) == 550 and s.incomplete == 0 and not s.violations
    return ok, f"{len(rows)} trials, {len(s.violations)} violations, {s.at_lower} equal to ceil(log_g n^2)"


def criterion_2():
    bad = 0
    for i in range(20):
        n = 2 + i % 5
        S = ginibre_system(n, 2, RngSpec(SEED, 2).substream(i))
        w = wie_length(S).value
        dims = [span_at_exact_length(S, w + j)[0] for j in (1, 2, 3)]
        bad += any(d != n * n for d in dims)
    return bad == 0, f"20 systems (n = 2..6), {bad} violations"


def criterion_3():
    systems = [worst_case_pair(n) for n in range(2, 7)]
    for i in range(45):
        n, g = 2 + i % 5, 2 + (i // 5) % 2
        systems.append(ginibre_system(n, g, RngSpec(SEED, 3).substream(i)))
    bad = 0
    for S in systems:
        lo, hi = check_sandwich(S)
        bad += not (lo and hi)
    return len(systems) == 50 and bad == 0, f"{len(systems)} systems (5 worst-case pairs), {bad} violations"


def criterion_4():
    parts, ok = [], True
    for n in (4, 5, 6):
        w = wie_length(worst_case_pair(n)).value
        ref = oracles.worst_case_wie_length(n, 40)
        ok &= w == ref and w > generic_wie_bound(n, 2)
        parts.append(f"n={n}: {w} (oracle {ref}, generic {generic_wie_bound(n, 2)})")
    return ok, "; ".join(parts)


def criterion_5():
    bad = 0
    for i in range(100):
        n = 2 + i % 2
        S = ginibre_system(n, 2, RngSpec(SEED, 5).substream(i))
        mats = list(S.mats)
        bad += wie_length(S).value != oracles.brute_wie_length(mats, 8)
        bad += length(S).value != oracles.brute_length(mats, 8)
    return bad == 0, f"100 systems (n = 2, 3), {bad} mismatches"


def criterion_6():
    bad = 0
    for g in (2, 3):
        counts = {}
        for w in oracles.lyndon_words(g, 10):
            counts[len(w)] = counts.get(len(w), 0) + 1
        bad += sum(witt_dimension(g, k) != counts.get(k, 0) for k in range(1, 11))
    return bad == 0, f"g = 2, 3 and k = 1..10, {bad} mismatches"


def criterion_7():
    curve, ok, notes = [], True, []
    for n in range(2, 11):
        vals = [
            lie_length(random_su_system(n, 2, RngSpec(SEED, 7).substream(n, t))).value for t in range(10)
        ]
        same = len(set(vals)) == 1
        above = all(v is not None and v >= witt_lower_bound(2, n) for v in vals)
        ok &= same and above
        if not (same and above):
            notes.append(f"n={n}: {vals}")
        curve.append(vals[0])
    monotone = all(a is not None and b is not None and a <= b for a, b in zip(curve, curve[1:]))
    shape = curve[-1] is not None and curve[1] is not None and curve[-1] <= 3 * curve[1]
    ok &= monotone and shape
    return ok, f"Lie-lengths n=2..10: {curve}" + (f"; {notes}" if notes else "")


def criterion_8():
    bad = []
    for i in range(100):
        n, g = 2 + i % 7, 2 + (i // 7) % 3
        E = haar_isometry_kraus(n, g, RngSpec(SEED, 8).substream(i))
        idx = full_kraus_rank_index(E)
        w = wie_length(E.kraus).value
        good = (
            idx is not None
            and idx == w
            and counting_lower_bound(n, g) <= idx <= generic_wie_bound(n, g)
            and strong_irreducibility(E)
            and kraus_rank_of_power(E, idx) == n * n
        )
        if not good:
            bad.append((n, g, i))
    return not bad, f"100 channels (n = 2..8, g = 2..4), {len(bad)} violations {bad[:3] if bad else ''}".rstrip()


def criterion_9():
    ranks = [peps_injective(random_peps_tensor(2, 4, RngSpec(SEED, 9).substream(s)), 2) for s in range(20)]
    rand_ok = all(r.injective and r.gamma_rank == 256 for r in ranks)
    r = RngSpec(SEED, 90)
    B, Bt = ginibre_system(2, 2, r.substream(0)), ginibre_system(2, 2, r.substream(1))
    sb = peps_injective(string_bond_tensor(2, 2, B, Bt), 2)
    g3 = peps_injective(random_peps_tensor(2, 3, RngSpec(SEED, 91)), 2)
    counting = 3**4 < 2 ** (4 * 2)  # 81 rows cannot reach rank 256
    ok = rand_ok and sb.injective and counting and not g3.injective
    return ok, (
        f"{sum(x.injective for x in ranks)}/20 random injective; string-bond rank {sb.gamma_rank}/256; "
        f"g=3 rank {g3.gamma_rank} <= 81 rows -> not injective"
    )


def _invertible(r, n):
    while True:
        P = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
        if np.linalg.cond(P) < 1e3:
            return P


def criterion_10():
    r = np.random.default_rng(SEED)
    bad = 0
    for i in range(20):
        n, g = 2 + i % 4, 2 + i % 2
        S = ginibre_system(n, g, RngSpec(SEED, 10).substream(i))
        P = _invertible(r, n)
        Pinv = np.linalg.inv(P)
        c = complex(*r.standard_normal(2))
        w, ell = wie_length(S).value, length(S).value
        for T in (S.transformed(lambda A: P @ A @ Pinv), S.transformed(lambda A: c * A)):
            bad += wie_length(T).value != w
            bad += length(T).value != ell
    for i in range(20):
        n = 2 + i % 4
        U = random_su_system(n, 2, RngSpec(SEED, 11).substream(i))
        Q, _ = np.linalg.qr(r.standard_normal((n, n)) + 1j * r.standard_normal((n, n)))
        c = float(r.standard_normal()) or 1.0
        base = lie_length(U).value
        bad += lie_length(U.transformed(lambda X: Q @ X @ Q.conj().T)).value != base
        bad += lie_length(U.transformed(lambda X: c * X)).value != base
    return bad == 0, f"20 + 20 instances (n = 2..5), {bad} violations"


def criterion_11():
    cfg = ExperimentConfig(ExperimentKind.WIE_SCALING, [2, 3, 4, 5, 6], [2, 3], trials=3, seed=SEED)
    with tempfile.TemporaryDirectory() as d:
        a, b = os.path.join(d, "a.csv"), os.path.join(d, "b.csv")
        emit_csv(run_experiment(cfg), a)
        emit_csv(run_experiment(cfg), b)
        with open(a, "rb") as fa, open(b, "rb") as fb:
            da, db = fa.read(), fb.read()
    return da == db, f"two runs, {len(da)} bytes each, identical={da == db}"


CRITERIA = {
    1: ("generic Wielandt bound", criterion_1, 60),
    2: ("stabilization", criterion_2, 10),
    3: ("sandwich bound", criterion_3, 30),
    4: ("worst-case pair", criterion_4, 120),
    5: ("brute-force equivalence", criterion_5, 60),
    6: ("Witt formula", criterion_6, 5),
    7: ("Lie genericity and bounds", criterion_7, 120),
    8: ("channel layer", criterion_8, 120),
    9: ("PEPS injectivity", criterion_9, 60),
    10: ("invariance suite", criterion_10, 30),
    11: ("reproducibility", criterion_11, 10),
}


def evaluate(k: int) -> tuple[bool, str]:
    name, fn, budget = CRITERIA[k]
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < budget
    line = f"{'PASS' if ok else 'FAIL'} criterion {k:2d} ({name}): {detail} [{elapsed:.1f} s of {budget} s]"
    return ok, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, acceptance_log):
    ok, line = evaluate(k)
    print(line)
    acceptance_log.append(line)
    assert ok, line


if __name__ == "__main__":
    results = [evaluate(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
