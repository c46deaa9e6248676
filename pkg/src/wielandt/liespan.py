"""Lie-length of Lie-generating systems of su(n).

The breadth-first Lie-Tree search expands right-nested commutators
``[u_1, [u_2, ... [u_{k-1}, u_k]]]`` layer by layer, keeps a node only if it
is linearly independent (over R) of everything kept so far, and expands only
kept nodes. Pruning is exact: brackets of U with a discarded node lie in the
span of brackets with earlier kept nodes, which earlier layers already hold.

Also here: the Moebius function and Witt's dimension formula for the free Lie
algebra, which give the counting lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .numkernel import (
    DEFAULT_TOL,
    InsertOutcome,
    SpanTracker,
    Tolerance,
    as_cmatrix,
    frobenius_normalize,
)

SKEW_TOL = 1e-12


class SuElement:
    """Traceless skew-Hermitian n x n matrix."""

    def __init__(self, mat, atol: float = SKEW_TOL):
        mat = as_cmatrix(mat, "su(n) element")
        n = mat.shape[0]
        if mat.shape != (n, n):
            raise ValueError("su(n) element must be square")
        scale = max(1.0, float(np.linalg.norm(mat)))
        if np.linalg.norm(mat + mat.conj().T) > atol * scale:
            raise ValueError("matrix is not skew-Hermitian")
        if abs(np.trace(mat)) > atol * scale:
            raise ValueError("matrix is not traceless")
        self.mat = mat

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def __repr__(self):
        return f"SuElement(n={self.n})"


class LieGeneratingSystem:
    def __init__(self, elems: Sequence):
        elems = [e if isinstance(e, SuElement) else SuElement(e) for e in elems]
        if not elems:
            raise ValueError("need at least one generator")
        ns = {e.n for e in elems}
        if len(ns) != 1:
            raise ValueError(f"generators of mixed sizes {sorted(ns)}")
        self.elems = elems

    @property
    def n(self) -> int:
        return self.elems[0].n

    @property
    def g(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __len__(self):
        return self.g

    def transformed(self, f) -> "LieGeneratingSystem":
        return LieGeneratingSystem([SuElement(f(e.mat), atol=1e-10) for e in self.elems])


def commutator(X, Y) -> SuElement:
    Xm = X.mat if isinstance(X, SuElement) else np.asarray(X)
    Ym = Y.mat if isinstance(Y, SuElement) else np.asarray(Y)
    if Xm.shape != Ym.shape:
        raise ValueError(f"commutator of {Xm.shape} and {Ym.shape} matrices")
    return SuElement(Xm @ Ym - Ym @ Xm, atol=1e-10)


@dataclass
class SuBasis:
    """Real basis of su(n), in this order:

    1. ``i (E_hh - E_{h+1,h+1})`` for h = 1 .. n-1,
    2. ``E_jk - E_kj`` for 1 <= j < k <= n (lexicographic in (j, k)),
    3. ``i (E_jk + E_kj)`` for 1 <= j < k <= n (same order).
    """

    n: int
    basis_mats: list[SuElement]

    def __len__(self):
        return len(self.basis_mats)

    def matrices(self) -> np.ndarray:
        return np.stack([b.mat for b in self.basis_mats])


def su_basis(n: int) -> SuBasis:
    if n < 2:
        raise ValueError("su(n) needs n >= 2")
    mats = []
    for h in range(n - 1):
        M = np.zeros((n, n), dtype=np.complex128)
        M[h, h], M[h + 1, h + 1] = 1j, -1j
        mats.append(M)
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    for j, k in pairs:
        M = np.zeros((n, n), dtype=np.complex128)
        M[j, k], M[k, j] = 1.0, -1.0
        mats.append(M)
    for j, k in pairs:
        M = np.zeros((n, n), dtype=np.complex128)
        M[j, k] = M[k, j] = 1j
        mats.append(M)
    return SuBasis(n, [SuElement(M) for M in mats])


def _coords(M: np.ndarray) -> np.ndarray:
    # closed-form inverse of the basis map; M assumed skew-Hermitian traceless
    n = M.shape[0]
    d = np.cumsum(M.diagonal().imag)[: n - 1]
    ju, ku = np.triu_indices(n, k=1)
    upper = M[ju, ku]
    return np.concatenate([d, upper.real, upper.imag])


def su_coords(X, B: SuBasis | None = None) -> np.ndarray:
    """Real coordinates of ``X`` in ``su_basis(n)``."""
    if not isinstance(X, SuElement):
        X = SuElement(X, atol=1e-10)
    if B is not None and B.n != X.n:
        raise ValueError(f"basis for n={B.n} given an element with n={X.n}")
    return _coords(X.mat)


def su_from_coords(c, B: SuBasis) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    return np.tensordot(c, B.matrices(), axes=1)


@dataclass
class LieLengthReport:
    value: int | None  # None: not Lie-generating
    dims_per_depth: list[int]
    nodes_expanded: int
    nodes_kept: int
    kept_words: list[tuple] | None = None  # index tuples (u_1, ..., u_k) of kept brackets
    borderline: bool = False

    @property
    def generating(self) -> bool:
        return self.value is not None


def lie_length(U, cap: int | None = None, tol: Tolerance = DEFAULT_TOL) -> LieLengthReport:
    """Breadth-first Lie-Tree search for the Lie-length of ``U`` in su(n)."""
    if not isinstance(U, LieGeneratingSystem):
        U = LieGeneratingSystem(U)
    n = U.n
    dim = n * n - 1
    if cap is None:
        cap = dim
    gens = [e.mat for e in U.elems]
    gnorms = [np.linalg.norm(X) for X in gens]
    tracker = SpanTracker(dim, tol, dtype=np.float64)
    dims: list[int] = []
    kept_words: list[tuple] = []
    expanded = 0

    layer: list[tuple[np.ndarray, tuple]] = []
    for i, X in enumerate(gens):
        expanded += 1
        nrm = np.linalg.norm(X)
        if nrm == 0:
            continue
        if tracker.insert(_coords(X / nrm)) is InsertOutcome.ADDED:
            layer.append((X / nrm, (i,)))
            kept_words.append((i,))
    dims.append(tracker.count)
    depth = 1
    while tracker.count < dim:
        if not layer or depth >= cap:
            return LieLengthReport(None, dims, expanded, tracker.count, kept_words, tracker.borderline())
        nxt = []
        for W, w in layer:
            for i, X in enumerate(gens):
                expanded += 1
                # |[X, W]| <= 2 |X| |W| with |W| = 1; below that scale it is rounding noise
                C = frobenius_normalize(X @ W - W @ X, 2 * tol.rank_rel * gnorms[i])
                if C is None:
                    continue
                if tracker.insert(_coords(C)) is InsertOutcome.ADDED:
                    nxt.append((C, (i,) + w))
                    kept_words.append((i,) + w)
                    if tracker.count == dim:
                        break
            if tracker.count == dim:
                break
        depth += 1
        dims.append(tracker.count)
        layer = nxt
    return LieLengthReport(depth, dims, expanded, tracker.count, kept_words, tracker.borderline())


def bracket_from_word(U, word: Sequence[int]) -> np.ndarray:
    """Evaluate the right-nested bracket [u_{w0}, [u_{w1}, ... u_{wk}]]."""
    if not isinstance(U, LieGeneratingSystem):
        U = LieGeneratingSystem(U)
    mats = [e.mat for e in U.elems]
    M = mats[word[-1]]
    for i in reversed(word[:-1]):
        M = mats[i] @ M - M @ mats[i]
    return M


def mobius(d: int) -> int:
    """Moebius function by trial division."""
    if d < 1:
        raise ValueError("mobius needs d >= 1")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def witt_dimension(g: int, k: int) -> int:
    """Dimension of the degree-k part of the free Lie algebra on g letters."""
    if g < 1 or k < 1:
        raise ValueError("witt_dimension needs g >= 1 and k >= 1")
    total = sum(mobius(d) * g ** (k // d) for d in divisors(k))
    q, r = divmod(total, k)
    assert r == 0, "Witt sum not divisible by k"
    return q


def witt_lower_bound(g: int, n: int) -> int:
    """Least depth whose cumulative free-Lie dimension reaches dim su(n) = n^2 - 1."""
    if g < 2 or n < 2:
        raise ValueError("witt_lower_bound needs g >= 2 and n >= 2")
    target = n * n - 1
    total, k = 0, 0
    while total < target:
        k += 1
        total += witt_dimension(g, k)
    return k
