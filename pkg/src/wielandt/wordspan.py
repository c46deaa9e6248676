"""Length and Wie-length of generating systems of M_n(C).

A word is a tuple of generator indices ``(i_1, ..., i_k)`` (0-based) standing
for the product ``A[i_1] @ A[i_2] @ ... @ A[i_k]``; the empty tuple is the
identity.

Both lengths are computed by propagating a small set of representative words
instead of enumerating all g**k products: if the representatives of one level
span that level, then ``A @ rep`` for every generator ``A`` spans the next.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .numkernel import (
    DEFAULT_TOL,
    InsertOutcome,
    SpanTracker,
    Tolerance,
    as_cmatrix,
    frobenius_normalize,
    matrix_rank,
    vectorize,
)

log = logging.getLogger(__name__)

Word = tuple


class NotGeneratingError(ValueError):
    """Raised where a finite (Wie-)length is a precondition."""


class CapExceeded(RuntimeError):
    """The Wie-length search hit its cap although the system generates.

    The cap comes from a proven bound, so this signals a tolerance problem.
    """


class GeneratingSystem:
    """Ordered tuple of g square n x n complex matrices."""

    def __init__(self, mats):
        if isinstance(mats, GeneratingSystem):
            mats = mats.mats
        arr = np.asarray(mats, dtype=np.complex128)
        if arr.ndim == 2:
            arr = arr[np.newaxis]
        if arr.ndim != 3 or arr.shape[0] < 1:
            raise ValueError(f"expected a non-empty stack of matrices, got shape {arr.shape}")
        if arr.shape[1] != arr.shape[2]:
            raise ValueError(f"generators must be square, got {arr.shape[1]}x{arr.shape[2]}")
        for i, M in enumerate(arr):
            as_cmatrix(M, name=f"generator {i}")
        self.mats = arr

    @property
    def n(self) -> int:
        return self.mats.shape[1]

    @property
    def g(self) -> int:
        return self.mats.shape[0]

    def __len__(self):
        return self.g

    def __getitem__(self, i):
        return self.mats[i]

    def __iter__(self):
        return iter(self.mats)

    def __repr__(self):
        return f"GeneratingSystem(n={self.n}, g={self.g})"

    def duplicates(self) -> list[tuple[int, int]]:
        """Index pairs of exactly equal generators."""
        return [
            (i, j)
            for i in range(self.g)
            for j in range(i + 1, self.g)
            if np.array_equal(self.mats[i], self.mats[j])
        ]

    def transformed(self, f) -> "GeneratingSystem":
        return GeneratingSystem([f(A) for A in self.mats])

    def word(self, w: Sequence[int]) -> np.ndarray:
        M = np.eye(self.n, dtype=np.complex128)
        for i in w:
            if not 0 <= i < self.g:
                raise ValueError(f"word index {i} out of range for g={self.g}")
            M = M @ self.mats[i]
        return M


class LengthKind(enum.Enum):
    LENGTH = "length"
    WIE_LENGTH = "wie_length"


@dataclass
class LengthReport:
    kind: LengthKind
    value: int | None  # None: not generating
    dims_per_step: list[int]
    search_cap: int
    witness_words: list[Word] | None = None
    duplicate_generators: list[tuple[int, int]] = field(default_factory=list)
    borderline: bool = False
    cap_hit: bool = False  # value is None because a user cap ran out, not a proof
    period: int | None = None  # exact-length spans cycle with this period below M_n

    @property
    def generating(self) -> bool:
        return self.value is not None


@dataclass
class _Level:
    k: int
    tracker: SpanTracker
    reps: list[np.ndarray]  # normalized representative words
    words: list[Word]


def _as_system(S) -> GeneratingSystem:
    return S if isinstance(S, GeneratingSystem) else GeneratingSystem(S)


def exact_length_levels(S, tol: Tolerance = DEFAULT_TOL) -> Iterator[_Level]:
    """Yield the spans of words of length exactly k = 1, 2, ... (endless)."""
    S = _as_system(S)
    n2 = S.n * S.n
    gnorms = [np.linalg.norm(A, 2) for A in S.mats]
    prev: list[tuple[np.ndarray, Word]] = [(np.eye(S.n, dtype=np.complex128), ())]
    k = 0
    while True:
        k += 1
        tracker = SpanTracker(n2, tol)
        reps, words = [], []
        for M, w in prev:
            for a in range(S.g):
                P = frobenius_normalize(S.mats[a] @ M, tol.rank_rel * gnorms[a] * np.linalg.norm(M))
                if P is None:
                    continue
                if tracker.insert(vectorize(P)) is InsertOutcome.ADDED:
                    reps.append(P)
                    words.append((a,) + w)
                    if tracker.full:
                        break
            if tracker.full:
                break
        yield _Level(k, tracker, reps, words)
        prev = list(zip(reps, words))


def span_at_exact_length(S, k: int, tol: Tolerance = DEFAULT_TOL) -> tuple[int, SpanTracker]:
    """Dimension of span{words of length exactly k}, with its tracker."""
    if k < 1:
        raise ValueError("k must be positive")
    for level in exact_length_levels(S, tol):
        if level.k == k:
            return level.tracker.count, level.tracker
    raise AssertionError("unreachable")


def length(S, tol: Tolerance = DEFAULT_TOL) -> LengthReport:
    """Length: least l with words of length <= l (identity allowed) spanning M_n."""
    S = _as_system(S)
    n2 = S.n * S.n
    gnorms = [np.linalg.norm(A, 2) for A in S.mats]
    tracker = SpanTracker(n2, tol)
    eye = np.eye(S.n, dtype=np.complex128)
    tracker.insert(vectorize(eye) / np.sqrt(S.n))
    frontier = [(eye / np.sqrt(S.n), ())]
    witness: list[Word] = [()]
    dims = [tracker.count]
    ell = 0
    while not tracker.full:
        new = []
        for M, w in frontier:
            for a in range(S.g):
                P = frobenius_normalize(S.mats[a] @ M, tol.rank_rel * gnorms[a] * np.linalg.norm(M))
                if P is None:
                    continue
                if tracker.insert(vectorize(P)) is InsertOutcome.ADDED:
                    new.append((P, (a,) + w))
                    witness.append((a,) + w)
        if not new:
            # a stalled cumulative chain is a proper subalgebra
            return LengthReport(
                LengthKind.LENGTH, None, dims, n2, None, S.duplicates(), tracker.borderline()
            )
        ell += 1
        dims.append(tracker.count)
        frontier = new
    return LengthReport(
        LengthKind.LENGTH, ell, dims, n2, witness, S.duplicates(), tracker.borderline()
    )


def sandwich_cap(n: int, ell: int) -> int:
    return (n * n + n) * ell


def wie_length(S, cap: int | None = None, tol: Tolerance = DEFAULT_TOL) -> LengthReport:
    """Wie-length: least k with words of length exactly k spanning M_n.

    The length is computed first; a non-generating system is returned as
    such immediately. Otherwise the search runs up to ``(n^2 + n) * length``
    unless ``cap`` is given.

    A generating system need not Wie-generate: for imprimitive systems such
    as ``{|1><2|, |2><1|}`` the exact-length spans cycle with some period
    p <= n. Such a cycle is detected and returned as ``value=None`` with
    ``period=p``. Exhausting the default cap without a cycle raises
    ``CapExceeded``; exhausting a user cap returns ``value=None`` with
    ``cap_hit=True``.
    """
    S = _as_system(S)
    base = length(S, tol)
    if not base.generating:
        return LengthReport(
            LengthKind.WIE_LENGTH, None, [], cap or 0, None, base.duplicate_generators, base.borderline
        )
    user_cap = cap is not None
    if cap is None:
        cap = sandwich_cap(S.n, base.value)
    dims: list[int] = []
    borderline = False
    window: list[SpanTracker] = []  # the last n levels, for cycle detection
    for level in exact_length_levels(S, tol):
        tr = level.tracker
        dims.append(tr.count)
        borderline = borderline or tr.borderline()
        if tr.full:
            return LengthReport(
                LengthKind.WIE_LENGTH,
                level.k,
                dims,
                cap,
                level.words,
                base.duplicate_generators,
                borderline,
            )
        period = _cycle_period(tr, window)
        if period is not None:
            # V_{k+1} depends on V_k alone, so a repeat means the sequence cycles forever
            return LengthReport(
                LengthKind.WIE_LENGTH,
                None,
                dims,
                cap,
                None,
                base.duplicate_generators,
                borderline,
                period=period,
            )
        window = (window + [tr])[-S.n :]
        if level.k >= cap:
            break
    if user_cap:
        return LengthReport(
            LengthKind.WIE_LENGTH, None, dims, cap, None, base.duplicate_generators, borderline, True
        )
    raise CapExceeded(
        f"no spanning level up to the cap {cap} (n={S.n}, length={base.value}) and no cycle "
        "detected; the rank tolerance is likely too strict or too loose"
    )


def _same_span(a: SpanTracker, b: SpanTracker) -> bool:
    if a.count != b.count:
        return False
    return all(b.residual(v) <= a.tol.rank_rel for v in a.basis)


def _cycle_period(tracker: SpanTracker, window: list[SpanTracker]) -> int | None:
    for p, prev in enumerate(reversed(window), start=1):
        if _same_span(tracker, prev):
            return p
    return None


def check_stabilization(S, extra: int, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether words of lengths Wie+1 ... Wie+extra all still span M_n."""
    rep = wie_length(S, tol=tol)
    if not rep.generating:
        raise NotGeneratingError("system does not generate M_n")
    k = rep.value
    for level in exact_length_levels(S, tol):
        if level.k <= k:
            continue
        if not level.tracker.full:
            return False
        if level.k >= k + extra:
            return True
    raise AssertionError("unreachable")


def check_sandwich(S, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, bool]:
    S = _as_system(S)
    ell = length(S, tol)
    if not ell.generating:
        raise NotGeneratingError("system does not generate M_n")
    wie = wie_length(S, tol=tol)
    if not wie.generating:
        raise NotGeneratingError(f"system generates M_n but does not Wie-generate (period {wie.period})")
    return ell.value <= wie.value, wie.value <= sandwich_cap(S.n, ell.value)


def worst_case_pair(n: int, cyclic: bool = True) -> GeneratingSystem:
    """Shift A = sum_i |i+1><i| and rank-one B = |2><n| (1-based kets).

    With ``cyclic`` the i = n term wraps to |1><n|; otherwise it is dropped
    and A is the nilpotent shift.
    """
    if n < 2:
        raise ValueError("worst_case_pair needs n >= 2")
    A = np.zeros((n, n), dtype=np.complex128)
    for i in range(n - 1):
        A[i + 1, i] = 1.0
    if cyclic:
        A[0, n - 1] = 1.0
    B = np.zeros((n, n), dtype=np.complex128)
    B[1, n - 1] = 1.0
    return GeneratingSystem([A, B])


def word_matrix(S, words: Sequence[Sequence[int]]) -> np.ndarray:
    """n^2 x len(words) matrix whose columns are the vectorized words."""
    S = _as_system(S)
    cols = []
    for w in words:
        if any((not isinstance(i, (int, np.integer))) or i < 0 or i >= S.g for i in w):
            raise ValueError(f"malformed word {tuple(w)!r} for g={S.g}")
        cols.append(vectorize(S.word(w)))
    return np.stack(cols, axis=1)


def verify_spanning_words(
    S, words: Sequence[Sequence[int]], tol: Tolerance = DEFAULT_TOL, same_length: bool = True
) -> bool:
    """Certificate check: do these n^2 words span M_n?

    Evaluates each word, stacks the vectorized products as the columns of an
    n^2 x n^2 matrix and tests it for full rank.
    """
    S = _as_system(S)
    n2 = S.n * S.n
    words = [tuple(w) for w in words]
    if len(words) != n2:
        raise ValueError(f"expected {n2} words, got {len(words)}")
    if same_length and len({len(w) for w in words}) > 1:
        raise ValueError("words must all have the same length")
    W = word_matrix(S, words)
    # per-column normalization, as in the incremental engine
    norms = np.linalg.norm(W, axis=0)
    if np.any(norms == 0):
        return False
    return matrix_rank(W / norms, tol) == n2


def counting_lower_bound(n: int, g: int) -> int:
    """Least k with g**k >= n**2."""
    return ceil_log(g, n * n)


def generic_wie_bound(n: int, g: int) -> int:
    """2 * ceil(log_g n), the almost-sure upper bound on the Wie-length."""
    return 2 * ceil_log(g, n)


def ceil_log(base: int, x: int) -> int:
    """ceil(log_base x) in exact integer arithmetic, for base >= 2, x >= 1."""
    if base < 2 or x < 1:
        raise ValueError("ceil_log needs base >= 2 and x >= 1")
    k, p = 0, 1
    while p < x:
        p *= base
        k += 1
    return k
