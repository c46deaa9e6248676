"""Dense complex linear algebra shared by every length computation.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Vectorization is
row-major (C order) everywhere in the package: ``vectorize(M)[i * cols + j]``
is ``M[i, j]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class EigenNonConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds.

    rank_rel
        relative residual a new direction must keep to count as independent,
        and relative singular value cutoff for ranks.
    ortho
        acceptance level for orthonormality of a tracked basis.
    eig_rel
        relative accuracy of eigenvalue comparisons.
    """

    rank_rel: float = 1e-9
    ortho: float = 1e-10
    eig_rel: float = 1e-10

    def __post_init__(self):
        for name in ("rank_rel", "ortho", "eig_rel"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"tolerance {name} must lie in (0, 1), got {value}")


DEFAULT_TOL = Tolerance()


def as_cmatrix(M, name: str = "matrix") -> np.ndarray:
    """Validate and convert to a finite 2-D complex array."""
    arr = np.asarray(M, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def vectorize(M) -> np.ndarray:
    """Row-major stacking of ``M`` into a vector of length rows*cols."""
    return np.asarray(M).reshape(-1)


def unvectorize(v, rows: int, cols: int | None = None) -> np.ndarray:
    return np.asarray(v).reshape(rows, rows if cols is None else cols)


def frobenius_normalize(M: np.ndarray, scale: float = 0.0) -> np.ndarray | None:
    """Scale to unit Frobenius norm.

    Returns ``None`` when the norm is zero or at most ``scale``; pass the
    product of the factor norms times ``rank_rel`` as ``scale`` so that
    cancellation noise is not normalized into a spurious direction.
    """
    norm = np.linalg.norm(M)
    if norm == 0.0 or norm <= scale or not np.isfinite(norm):
        return None
    return M / norm


class InsertOutcome(enum.Enum):
    ADDED = "added"
    ALREADY_IN_SPAN = "already_in_span"


class SpanTracker:
    """Orthonormal basis of a growing subspace of C^d (or R^d).

    Each inserted vector is projected against the current basis twice
    (Gram-Schmidt with one re-orthogonalization pass). It is accepted only
    if the residual exceeds ``tol.rank_rel * |v|`` after both passes.

    The smallest accepted and largest rejected relative residuals are kept,
    so that callers can report decisions that sat close to the threshold.
    """

    def __init__(self, ambient_dim: int, tol: Tolerance = DEFAULT_TOL, dtype=np.complex128):
        if ambient_dim < 1:
            raise ValueError("ambient_dim must be positive")
        self.ambient_dim = int(ambient_dim)
        self.tol = tol
        self._Q = np.zeros((self.ambient_dim, self.ambient_dim), dtype=dtype)
        self.count = 0
        self.min_accepted = np.inf
        self.max_rejected = 0.0

    @property
    def basis(self) -> np.ndarray:
        """Rows are the orthonormal basis vectors."""
        return self._Q[: self.count]

    @property
    def full(self) -> bool:
        return self.count == self.ambient_dim

    def _project_out(self, r: np.ndarray) -> np.ndarray:
        Q = self._Q[: self.count]
        return r - Q.T @ (Q.conj() @ r)

    def residual(self, v) -> float:
        """Relative norm of the component of ``v`` orthogonal to the span."""
        v = np.asarray(v, dtype=self._Q.dtype).reshape(-1)
        nv = np.linalg.norm(v)
        if nv == 0.0:
            return 0.0
        r = self._project_out(self._project_out(v))
        return float(np.linalg.norm(r) / nv)

    def insert(self, v) -> InsertOutcome:
        v = np.asarray(v).reshape(-1)
        if v.shape[0] != self.ambient_dim:
            raise ValueError(f"vector of length {v.shape[0]} inserted into ambient dimension {self.ambient_dim}")
        if not np.all(np.isfinite(v)):
            raise ValueError("vector has non-finite entries")
        v = v.astype(self._Q.dtype, copy=False)
        nv = np.linalg.norm(v)
        if nv == 0.0 or self.full:
            return InsertOutcome.ALREADY_IN_SPAN
        threshold = self.tol.rank_rel * nv
        r = self._project_out(v)
        n1 = np.linalg.norm(r)
        if n1 > threshold:
            r = self._project_out(r)
            n2 = np.linalg.norm(r)
        else:
            n2 = n1
        if n1 <= threshold or n2 <= threshold:
            self.max_rejected = max(self.max_rejected, float(n2 / nv))
            return InsertOutcome.ALREADY_IN_SPAN
        self.min_accepted = min(self.min_accepted, float(n2 / nv))
        self._Q[self.count] = r / n2
        self.count += 1
        return InsertOutcome.ADDED

    def orthonormality_error(self) -> float:
        Q = self.basis
        if self.count == 0:
            return 0.0
        return float(np.max(np.abs(Q.conj() @ Q.T - np.eye(self.count))))

    def borderline(self, factor: float = 1e3) -> bool:
        """True when some accept/reject decision was within ``factor`` of the threshold."""
        t = self.tol.rank_rel
        return self.min_accepted < t * factor or self.max_rejected > t / factor


def span_insert(tracker: SpanTracker, v) -> InsertOutcome:
    return tracker.insert(v)


def matrix_rank(M, tol: Tolerance = DEFAULT_TOL) -> int:
    """Number of singular values above ``tol.rank_rel`` times the largest one."""
    M = np.asarray(M)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.rank_rel * s[0]))


def eig_full(M, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and right eigenvectors (columns) of a square matrix.

    Raises ``EigenNonConvergence`` if LAPACK fails or a returned pair has
    residual above ``10 * eig_rel * |M|``.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"eig_full needs a square matrix, got shape {M.shape}")
    try:
        vals, vecs = np.linalg.eig(M)
    except np.linalg.LinAlgError as exc:
        raise EigenNonConvergence(str(exc)) from exc
    scale = max(np.linalg.norm(M, 2), 1e-300)
    resid = np.linalg.norm(M @ vecs - vecs * vals, axis=0)
    bad = resid > 10 * tol.eig_rel * scale * np.maximum(np.linalg.norm(vecs, axis=0), 1.0)
    if np.any(bad):
        raise EigenNonConvergence(f"eigenpair residual {resid.max():.3e} exceeds tolerance")
    return vals, vecs
