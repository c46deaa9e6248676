"""Injectivity of translation-invariant MPS and 2-D PEPS.

PEPS site tensors are arrays of shape ``(g, n, n, n, n)`` with axes
(physical, up, down, left, right). On an L x L region the vertical bonds join
``down`` of site (r, c) to ``up`` of (r+1, c) and the horizontal bonds join
``right`` of (r, c) to ``left`` of (r, c+1). The 4L legs on the region's edge
stay open. They are the domain of Gamma_L and are ordered as: top edge left
to right, bottom edge left to right, left edge top to bottom, right edge top
to bottom. Physical configurations are ordered row-major over the sites.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numkernel import DEFAULT_TOL, Tolerance, matrix_rank
from .wordspan import GeneratingSystem, ceil_log, wie_length

MPS_ROW_BUDGET = 2**20
PEPS_COL_BUDGET = 2**10
PEPS_ROW_BUDGET = 2**20


class BudgetExceeded(ValueError):
    pass


class MpsTensor:
    """Translation-invariant MPS given by g bond matrices of size n x n."""

    def __init__(self, mats):
        self.system = mats if isinstance(mats, GeneratingSystem) else GeneratingSystem(mats)

    @property
    def n(self) -> int:
        return self.system.n

    @property
    def g(self) -> int:
        return self.system.g

    @property
    def mats(self) -> np.ndarray:
        return self.system.mats


def _all_words(mats: np.ndarray, L: int) -> np.ndarray:
    """All g**L products, lexicographic in (i_1, ..., i_L)."""
    g, n, _ = mats.shape
    words = mats.copy()
    for _ in range(L - 1):
        words = np.einsum("wab,kbc->wkac", words, mats).reshape(-1, n, n)
    return words


def mps_gamma_matrix(T, L: int) -> np.ndarray:
    """Matrix of Gamma_L: X -> sum_w tr[X A_w] |w>, shape (g**L, n**2).

    Column ``a * n + b`` is the matrix unit X = |a><b|, so the entry in row w
    is ``A_w[b, a]``.
    """
    if not isinstance(T, MpsTensor):
        T = MpsTensor(T)
    if L < 1:
        raise ValueError("L must be positive")
    if T.g**L > MPS_ROW_BUDGET:
        raise BudgetExceeded(f"g**L = {T.g ** L} exceeds the budget {MPS_ROW_BUDGET}")
    words = _all_words(T.mats, L)
    return words.transpose(0, 2, 1).reshape(len(words), -1)


def mps_injectivity_index(T, cross_check: bool = False, tol: Tolerance = DEFAULT_TOL) -> int | None:
    """Least L with Gamma_L injective (= Wie-length); ``None`` if never injective.

    With ``cross_check`` the rank of the Gamma matrix is verified at L - 1,
    L and L + 1 whenever those fit the row budget.
    """
    if not isinstance(T, MpsTensor):
        T = MpsTensor(T)
    index = wie_length(T.system, tol=tol).value
    if cross_check and index is not None:
        n2 = T.n * T.n
        for L in (index - 1, index, index + 1):
            if L < 1 or T.g**L > MPS_ROW_BUDGET:
                continue
            G = mps_gamma_matrix(T, L)
            # unit-norm rows, matching the engine's word normalization
            norms = np.linalg.norm(G, axis=1, keepdims=True)
            G = G[norms[:, 0] > 0] / norms[norms[:, 0] > 0]
            injective = len(G) > 0 and matrix_rank(G, tol) == n2
            if injective != (L >= index):
                raise RuntimeError(f"Gamma_{L} rank disagrees with Wie-length {index}")
    return index


class PepsTensor:
    """Rank-5 PEPS site tensor, optionally carrying a string-bond factorization.

    ``factorized`` is a pair ``(Av, Ah)`` of (g, n, n) stacks with
    ``entries[k] = Av[k] ⊗ Ah[k]``, that is
    ``entries[k, u, d, l, r] = Av[k, u, d] * Ah[k, l, r]``.
    """

    def __init__(self, entries, factorized: tuple[np.ndarray, np.ndarray] | None = None):
        arr = np.asarray(entries, dtype=np.complex128)
        if arr.ndim != 5 or len(set(arr.shape[1:])) != 1:
            raise ValueError(f"PEPS tensor must have shape (g, n, n, n, n), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("PEPS tensor has non-finite entries")
        self.entries = arr
        self.factorized = factorized
        if factorized is not None:
            if np.max(np.abs(reassemble(*factorized) - arr[: len(factorized[0])])) > 1e-12:
                raise ValueError("factorized form does not reproduce the entries")

    @property
    def g(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]


def reassemble(Av: np.ndarray, Ah: np.ndarray) -> np.ndarray:
    return np.einsum("kud,klr->kudlr", Av, Ah)


def string_bond_tensor(
    n: int, d: int, seedB, seedBt, g: int | None = None, rest=None
) -> PepsTensor:
    """String-bond site tensor A_k = B_{i_k} ⊗ B~_{j_k} with k = i_k * d + j_k.

    The vertical factor carries B and the horizontal factor carries B~.
    For ``g > d**2`` the extra physical levels take the (g - d**2, n, n, n, n)
    array ``rest``, e.g. independent random tensors.
    """
    B = np.asarray(seedB.mats if isinstance(seedB, GeneratingSystem) else seedB, dtype=np.complex128)
    Bt = np.asarray(seedBt.mats if isinstance(seedBt, GeneratingSystem) else seedBt, dtype=np.complex128)
    if B.shape != (d, n, n) or Bt.shape != (d, n, n):
        raise ValueError(f"need {d} seed matrices of size {n} in each family, got {B.shape} and {Bt.shape}")
    ii, jj = np.divmod(np.arange(d * d), d)
    Av, Ah = B[ii], Bt[jj]
    entries = reassemble(Av, Ah)
    g = d * d if g is None else g
    if g < d * d:
        raise ValueError("g must be at least d**2")
    if g > d * d:
        if rest is None or np.shape(rest) != (g - d * d, n, n, n, n):
            raise ValueError(f"need {g - d * d} extra site tensors of shape {(n,) * 4}")
        entries = np.concatenate([entries, np.asarray(rest, dtype=np.complex128)])
    return PepsTensor(entries, (Av, Ah))


def _check_peps_budget(T: PepsTensor, L: int):
    cols, rows = T.n ** (4 * L), T.g ** (L * L)
    if cols > PEPS_COL_BUDGET or rows > PEPS_ROW_BUDGET:
        raise BudgetExceeded(
            f"n**(4L) = {cols} and g**(L^2) = {rows} must stay within {PEPS_COL_BUDGET} and {PEPS_ROW_BUDGET}"
        )


def _row_object(A: np.ndarray, L: int) -> np.ndarray:
    """Contract L sites horizontally.

    Returns shape (g**L, n**L [up legs], n**L [down legs], n [left], n [right]).
    """
    R = A
    for _ in range(L - 1):
        R = np.einsum("pUDlm,qudmr->pqUuDdlr", R, A)
        s = R.shape
        R = R.reshape(s[0] * s[1], s[2] * s[3], s[4] * s[5], s[6], s[7])
    return R


def peps_gamma_matrix(T: PepsTensor, L: int) -> np.ndarray:
    """Exact matrix of Gamma_L on an L x L region, shape (g**(L*L), n**(4L)).

    Rows are contracted one at a time into a row object, then stacked top to
    bottom; at desk-scale budgets this is exact and cheap.
    """
    if L < 1:
        raise ValueError("L must be positive")
    _check_peps_budget(T, L)
    R = _row_object(T.entries, L)
    G = R  # (physical, top, down, left legs, right legs)
    for _ in range(L - 1):
        G = np.einsum("ptDab,qDecd->pqteacbd", G, R)
        s = G.shape
        G = G.reshape(s[0] * s[1], s[2], s[3], s[4] * s[5], s[6] * s[7])
    return G.reshape(G.shape[0], -1)


@dataclass
class InjectivityReport:
    injective: bool
    gamma_rank: int
    full_rank_target: int
    region_side: int


def peps_injective(T: PepsTensor, L: int, tol: Tolerance = DEFAULT_TOL) -> InjectivityReport:
    target = T.n ** (4 * L)
    rank = matrix_rank(peps_gamma_matrix(T, L), tol)
    # fewer physical configurations than boundary dimensions can never be injective
    assert T.g ** (L * L) >= target or rank < target
    return InjectivityReport(rank == target, rank, target, L)


def int_root(g: int, m: int) -> int:
    """floor(g ** (1/m)) in exact integer arithmetic."""
    r = int(round(g ** (1.0 / m)))
    while r**m > g:
        r -= 1
    while (r + 1) ** m <= g:
        r += 1
    return r


def generic_injectivity_bound(n: int, g: int, m: int) -> int:
    """2 * ceil(log_{floor(g^(1/m))} n): generic injectivity side length on an m-D grid."""
    if m < 1 or n < 2:
        raise ValueError("need m >= 1 and n >= 2")
    if g < 2**m:
        raise ValueError(f"g = {g} < 2**m = {2 ** m}: the logarithm base would be below 2")
    return 2 * ceil_log(int_root(g, m), n)


def peps_counting_lower_bound(n: int, g: int) -> int:
    """Least L with g**(L^2) >= n**(4L)."""
    L = 1
    while g ** (L * L) < n ** (4 * L):
        L += 1
    return L
