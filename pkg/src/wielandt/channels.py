"""Quantum channels in Kraus form.

Conventions
-----------
``E(X) = sum_i A_i X A_i^dagger``. The transfer matrix ``T`` satisfies
``T @ vectorize(X) == vectorize(E(X))`` with row-major vectorization, which
gives ``T = sum_i kron(A_i, conj(A_i))``. Channel powers are formed by
multiplying transfer matrices, never by expanding g**m Kraus products.

The Choi matrix is ``(id ⊗ E)(Omega)`` with ``Omega = sum_ij |ii><jj|``, i.e.
``sum_ij |i><j| ⊗ E(|i><j|)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .numkernel import DEFAULT_TOL, Tolerance, as_cmatrix, eig_full, matrix_rank
from .wordspan import GeneratingSystem, wie_length

TP_TOL = 1e-8
PD_TOL = 1e-8


class KrausChannel:
    """Completely positive trace-preserving map given by Kraus operators."""

    def __init__(self, kraus, tp_tol: float = TP_TOL):
        arr = np.asarray(kraus, dtype=np.complex128)
        if arr.ndim == 2:
            arr = arr[np.newaxis]
        if arr.ndim != 3 or arr.shape[1] != arr.shape[2] or arr.shape[0] < 1:
            raise ValueError(f"expected a stack of square Kraus operators, got shape {arr.shape}")
        for i, A in enumerate(arr):
            as_cmatrix(A, f"Kraus operator {i}")
        n = arr.shape[1]
        gram = np.einsum("kji,kjl->il", arr.conj(), arr)
        self.tp_residual = float(np.linalg.norm(gram - np.eye(n)))
        if self.tp_residual > tp_tol:
            raise ValueError(f"Kraus operators are not trace preserving (residual {self.tp_residual:.3e})")
        self.kraus = arr

    @classmethod
    def normalized(cls, kraus) -> "KrausChannel":
        """Rescale ``A_i -> A_i C^{-1/2}`` with ``C = sum A_i^dagger A_i`` to enforce TP."""
        arr = np.asarray(kraus, dtype=np.complex128)
        C = np.einsum("kji,kjl->il", arr.conj(), arr)
        w, V = np.linalg.eigh(C)
        if w.min() <= 0:
            raise ValueError("sum of A^dagger A is singular; cannot normalize")
        Cinv = (V / np.sqrt(w)) @ V.conj().T
        return cls(arr @ Cinv)

    @property
    def n(self) -> int:
        return self.kraus.shape[1]

    @property
    def g(self) -> int:
        return self.kraus.shape[0]

    def __repr__(self):
        return f"KrausChannel(n={self.n}, g={self.g})"

    def system(self) -> GeneratingSystem:
        return GeneratingSystem(self.kraus)


def identity_channel(n: int) -> KrausChannel:
    return KrausChannel(np.eye(n)[np.newaxis])


def depolarizing_channel(n: int) -> KrausChannel:
    """Completely depolarizing channel, Kraus {|i><j| / sqrt(n)}."""
    ops = []
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n))
            E[i, j] = 1.0
            ops.append(E / np.sqrt(n))
    return KrausChannel(ops)


def apply_channel(E: KrausChannel, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.complex128)
    if X.shape != (E.n, E.n):
        raise ValueError(f"channel on M_{E.n} applied to a {X.shape} matrix")
    return np.einsum("kij,jl,kml->im", E.kraus, X, E.kraus.conj())


def apply_adjoint(E: KrausChannel, X) -> np.ndarray:
    """Heisenberg picture: sum_i A_i^dagger X A_i."""
    X = np.asarray(X, dtype=np.complex128)
    return np.einsum("kji,jl,klm->im", E.kraus.conj(), X, E.kraus)


def transfer_matrix(E: KrausChannel) -> np.ndarray:
    return sum(np.kron(A, A.conj()) for A in E.kraus)


def choi(E: KrausChannel) -> np.ndarray:
    n = E.n
    out = np.zeros((n * n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            Eij = np.zeros((n, n), dtype=np.complex128)
            Eij[i, j] = 1.0
            out[i * n : (i + 1) * n, j * n : (j + 1) * n] = apply_channel(E, Eij)
    return out


def choi_from_transfer(T: np.ndarray, n: int) -> np.ndarray:
    # E(|i><j|)[a, b] = T[a*n + b, i*n + j]
    return T.reshape(n, n, n, n).transpose(2, 0, 3, 1).reshape(n * n, n * n)


def kraus_rank(E: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> int:
    return matrix_rank(choi(E), tol)


def kraus_rank_of_power(E: KrausChannel, m: int, tol: Tolerance = DEFAULT_TOL) -> int:
    """Kraus rank of the m-fold composition E^m."""
    T = np.linalg.matrix_power(transfer_matrix(E), m)
    return matrix_rank(choi_from_transfer(T, E.n), tol)


def full_kraus_rank_index(E: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> int | None:
    """Least m with E^m of full Kraus rank n^2; ``None`` if never (not primitive).

    This is the Wie-length of the Kraus operators.
    """
    return wie_length(E.system(), tol=tol).value


def _hermitian_part_of(v: np.ndarray, n: int) -> np.ndarray | None:
    V = v.reshape(n, n)
    tr = np.trace(V)
    if abs(tr) < 1e-12 * max(np.linalg.norm(V), 1e-300):
        return None
    V = V / tr  # removes the arbitrary phase, trace 1
    return (V + V.conj().T) / 2


def strong_irreducibility(E: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Unique modulus-one eigenvalue of the transfer matrix with a positive definite eigenvector."""
    T = transfer_matrix(E)
    vals, vecs = eig_full(T, tol)
    peripheral = np.flatnonzero(np.abs(np.abs(vals) - 1.0) <= 10 * tol.eig_rel)
    if len(peripheral) != 1:
        return False
    idx = peripheral[0]
    rho = _hermitian_part_of(vecs[:, idx], E.n)
    if rho is None:
        return False
    return bool(np.linalg.eigvalsh(rho).min() > PD_TOL)


def fixed_point(E: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Fixed state of maximal support: the projection of 1/n onto the fixed space.

    Uses the spectral projector onto eigenvalue 1 of the transfer matrix,
    built from orthonormal bases of its right and left null spaces of T - 1.
    The peripheral eigenvalue 1 of a channel is semisimple, so this equals
    the Cesaro limit of E^k(1/n).
    """
    n = E.n
    T = transfer_matrix(E)
    M = T - np.eye(n * n)
    U, s, Vh = np.linalg.svd(M)
    cutoff = max(tol.rank_rel * max(s[0], 1.0), 1e-8)
    r = int(np.sum(s <= cutoff))
    right = Vh.conj().T[:, n * n - r :]  # right null vectors
    left = U[:, n * n - r :]  # left null vectors: u^H M = 0
    P = right @ np.linalg.solve(left.conj().T @ right, left.conj().T)
    rho = (P @ (np.eye(n).reshape(-1) / n)).reshape(n, n)
    return (rho + rho.conj().T) / 2


def fixed_point_rank(E: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> int:
    rho = fixed_point(E, tol)
    w = np.linalg.eigvalsh(rho)
    return int(np.sum(w > PD_TOL * max(w.max(), 1e-300)))


class DichotomyKind(enum.Enum):
    CAPACITY_AT_LEAST_ONE = "capacity_at_least_one"
    CAPACITY_ZERO_AT_INDEX = "capacity_zero_at_index"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class Dichotomy:
    kind: DichotomyKind
    q_upper: int | None = None  # block length at which C_0 vanishes


def zero_error_dichotomy(E: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> Dichotomy:
    """Zero-error capacity dichotomy for channels with a full-rank fixed point.

    Primitive channels have C_0 = 0 at block length q(E) <= i(A), and i(A) is
    reported as the certified block length. Otherwise C_0 >= 1 at every
    block length.
    """
    if fixed_point_rank(E, tol) < E.n:
        return Dichotomy(DichotomyKind.INAPPLICABLE)
    index = full_kraus_rank_index(E, tol)
    if index is None:
        return Dichotomy(DichotomyKind.CAPACITY_AT_LEAST_ONE)
    return Dichotomy(DichotomyKind.CAPACITY_ZERO_AT_INDEX, index)


@dataclass
class PrimitivityBounds:
    upper: int | None  # i(A); None when not primitive
    certified_lower: int
    witness: tuple[np.ndarray, np.ndarray, int] | None  # (phi, psi, level): q(E) > level


def _power_maps(E: KrausChannel, level: int):
    T = np.linalg.matrix_power(transfer_matrix(E), level)
    # adjoint map in the same row-major convention
    Tadj = T.conj().T
    n = E.n

    def forward(X):
        return (T @ X.reshape(-1)).reshape(n, n)

    def backward(X):
        return (Tadj @ X.reshape(-1)).reshape(n, n)

    return forward, backward


def _min_eigvec(H: np.ndarray) -> tuple[float, np.ndarray]:
    w, V = np.linalg.eigh((H + H.conj().T) / 2)
    return float(w[0]), V[:, 0]


def find_singular_output(
    E: KrausChannel,
    level: int,
    iters: int = 50,
    restarts: int = 20,
    seed: int = 0,
    threshold: float = 1e-10,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Alternating search for unit phi, psi minimizing <psi| E^level(|phi><phi|) |psi>.

    For fixed phi the optimal psi is the lowest eigenvector of E^level(phi phi^+);
    for fixed psi the optimal phi is the lowest eigenvector of the adjoint
    power applied to psi psi^+. Returns the best (residual, phi, psi).
    """
    forward, backward = _power_maps(E, level)
    rng = np.random.default_rng(seed)
    n = E.n
    best = (np.inf, None, None)
    for _ in range(restarts):
        phi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        phi /= np.linalg.norm(phi)
        val = np.inf
        for _ in range(iters):
            _, psi = _min_eigvec(forward(np.outer(phi, phi.conj())))
            val, phi = _min_eigvec(backward(np.outer(psi, psi.conj())))
            if val < threshold:
                break
        _, psi = _min_eigvec(forward(np.outer(phi, phi.conj())))
        val = float(np.real(psi.conj() @ forward(np.outer(phi, phi.conj())) @ psi))
        if val < best[0]:
            best = (val, phi, psi)
        if val < threshold:
            break
    return best


def primitivity_bounds(
    E: KrausChannel,
    heuristic_iters: int = 50,
    max_level: int | None = None,
    tol: Tolerance = DEFAULT_TOL,
    seed: int = 0,
) -> PrimitivityBounds:
    """Bounds on the primitivity index q(E).

    ``upper`` is i(A), valid because full Kraus rank at m makes E^m strictly
    positive. Levels l = 1, 2, ... are searched for a pure input with a
    singular output; a hit certifies q(E) > l. ``certified_lower`` is the first
    level where the search fails (or ``upper`` if every earlier level has a
    hit). The search is one-sided: a miss proves nothing.
    """
    upper = full_kraus_rank_index(E, tol)
    stop = upper if upper is not None else (max_level or E.n * E.n)
    if max_level is not None:
        stop = min(stop, max_level)
    witness = None
    level = 1
    while level < stop:
        val, phi, psi = find_singular_output(E, level, iters=heuristic_iters, seed=seed + level)
        if val >= 1e-10:
            break
        witness = (phi, psi, level)
        level += 1
    return PrimitivityBounds(upper, level, witness)


@dataclass
class ChannelReport:
    kraus_rank_index: int | None
    wie_len: int | None
    strongly_irreducible: bool
    fixed_point_rank: int
    dichotomy: Dichotomy


def analyze_channel(E: KrausChannel, tol: Tolerance = DEFAULT_TOL) -> ChannelReport:
    index = full_kraus_rank_index(E, tol)
    return ChannelReport(
        kraus_rank_index=index,
        wie_len=wie_length(E.system(), tol=tol).value,
        strongly_irreducible=strong_irreducibility(E, tol),
        fixed_point_rank=fixed_point_rank(E, tol),
        dichotomy=zero_error_dichotomy(E, tol),
    )
