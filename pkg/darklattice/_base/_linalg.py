"""
Numerical kernel: rank, null spaces, Gram-Schmidt and projector distances.

Vectors are stored as the columns of a 2-D array, so a set of k vectors of length d has
shape (d, k). The SVD path is authoritative; the echelon path mirrors the pivot/free
column elimination and keeps exact-looking coefficients (free coefficient 1).
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, field_validator

from darklattice._base._exceptions import (
    DimensionMismatch,
    NonFiniteInput,
    PivotBreakdown,
    RankDeficiency,
)
from darklattice.logging import get_logger
from darklattice.models.reports import ProjectorDistance

logger = get_logger(__name__)

ORTHONORMAL_TOL = 1e-12
DEPENDENCE_TOL = 1e-12


class TolerancePolicy(BaseModel):
    """
    Thresholds used by rank decisions and verification checks.

    Attributes:
        rank_eps (float): Relative singular-value cutoff. A singular value counts when
            sigma > rank_eps * sigma_max * max(rows, cols).
        residual_eps (float): Bound for relative residuals in verification reports.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    rank_eps: float = 1e-12
    residual_eps: float = 1e-10

    @field_validator("rank_eps", "residual_eps")
    @classmethod
    def _validate_eps(cls, v: float) -> float:
        """Ensure tolerances are positive and small."""
        if not (0.0 < v < 1e-3):
            raise ValueError(f"Tolerance must be in (0, 1e-3), got {v}.")
        return v


@dataclass
class VectorSet:
    """
    An ordered set of real vectors of equal length, stored as matrix columns.

    When ``orthonormal`` is set the Gram matrix is checked against the identity.
    """

    matrix: np.ndarray
    orthonormal: bool = False
    labels: list = field(default_factory=list)

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float)
        if self.matrix.ndim != 2:
            raise DimensionMismatch("VectorSet", "2-D (dim, size) array", self.matrix.shape)
        if self.orthonormal and self.size:
            deviation = self.gram_deviation()
            if deviation > ORTHONORMAL_TOL:
                raise ValueError(
                    f"VectorSet flagged orthonormal but Gram deviation is {deviation:.3e}"
                )

    @classmethod
    def empty(cls, dim: int) -> "VectorSet":
        return cls(np.zeros((dim, 0)), orthonormal=True)

    @classmethod
    def from_vectors(cls, vectors, dim: int, orthonormal: bool = False) -> "VectorSet":
        """Build from an iterable of 1-D vectors of length ``dim``."""
        vectors = [np.asarray(v, dtype=float) for v in vectors]
        if not vectors:
            return cls(np.zeros((dim, 0)), orthonormal=orthonormal)
        for v in vectors:
            if v.shape != (dim,):
                raise DimensionMismatch("VectorSet.from_vectors", dim, v.shape)
        return cls(np.column_stack(vectors), orthonormal=orthonormal)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def size(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.matrix.T)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.matrix[:, index]

    def gram(self) -> np.ndarray:
        return self.matrix.T @ self.matrix

    def gram_deviation(self) -> float:
        """max |V^T V - I|."""
        if not self.size:
            return 0.0
        return float(np.max(np.abs(self.gram() - np.eye(self.size))))

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)


def _require_finite(M: np.ndarray, where: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise NonFiniteInput(where)
    return M


def _cutoff(singular_values: np.ndarray, shape: tuple[int, int], pol: TolerancePolicy) -> float:
    sigma_max = singular_values[0] if singular_values.size else 0.0
    return pol.rank_eps * sigma_max * max(shape)


def _rank_from(sigma: np.ndarray, shape: tuple[int, int], pol: TolerancePolicy) -> int:
    if not sigma.size or sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > _cutoff(sigma, shape, pol)))


def numerical_rank(M: np.ndarray, pol: TolerancePolicy = TolerancePolicy()) -> int:
    """
    Count singular values above rank_eps * sigma_max * max(rows, cols).

    Raises:
        NonFiniteInput: If ``M`` contains NaN or infinity
    """
    M = _require_finite(M, "numerical_rank input")
    if M.size == 0:
        return 0
    return _rank_from(scipy.linalg.svdvals(M), M.shape, pol)


def largest_singular_value(M: np.ndarray) -> float:
    M = _require_finite(M, "singular value input")
    if M.size == 0:
        return 0.0
    return float(scipy.linalg.svdvals(M)[0])


def null_space_svd(M: np.ndarray, pol: TolerancePolicy = TolerancePolicy()) -> VectorSet:
    """
    Orthonormal basis of the right null space from a full SVD.

    Returns:
        VectorSet: ``cols - rank`` orthonormal columns
    """
    M = _require_finite(M, "null_space_svd input")
    rows, cols = M.shape
    if cols == 0:
        return VectorSet.empty(0)
    if rows == 0:
        return VectorSet(np.eye(cols), orthonormal=True)
    _, sigma, vh = scipy.linalg.svd(M, full_matrices=True)
    rank = _rank_from(sigma, M.shape, pol)
    basis = vh[rank:].T.copy()
    if basis.shape[1] and sigma[0] > 0.0:
        residual = np.linalg.norm(M @ basis, axis=0).max() / sigma[0]
        if residual > pol.residual_eps:
            logger.warning(f"Null-space residual {residual:.3e} above {pol.residual_eps:.1e}")
    return VectorSet(basis, orthonormal=True)


def _pivot_block(M: np.ndarray, pol: TolerancePolicy) -> np.ndarray:
    rows, cols = M.shape
    if cols < rows:
        raise PivotBreakdown(cols, f"{rows} rows but only {cols} columns")
    P = M[:, :rows]
    scale = np.abs(M).max(initial=0.0)
    below = np.argwhere(np.tril(P, k=-1) != 0.0)
    if below.size:
        r, c = below[0]
        raise PivotBreakdown(int(c), f"entry ({r}, {c}) below the diagonal is nonzero")
    for column, pivot in enumerate(np.diag(P)):
        if abs(pivot) <= pol.rank_eps * scale:
            raise PivotBreakdown(column, f"diagonal entry {pivot:.3e} is zero")
    return P


def free_column_count(M: np.ndarray, pol: TolerancePolicy = TolerancePolicy()) -> int:
    """Number of free columns of a row-echelon matrix (columns minus pivot rows)."""
    M = _require_finite(M, "free_column_count input")
    _pivot_block(M, pol)
    return M.shape[1] - M.shape[0]


def null_space_echelon(M: np.ndarray, pol: TolerancePolicy = TolerancePolicy()) -> VectorSet:
    """
    Null vectors from the pivot/free column split of a row-echelon matrix.

    The first ``rows`` columns are pivots (upper triangular with nonzero diagonal); each
    remaining column is free. For every free column the vector has coefficient 1 there,
    0 on the other free columns, and pivot coefficients from back substitution.

    Raises:
        PivotBreakdown: If the pivot block is not upper triangular with nonzero diagonal
    """
    M = _require_finite(M, "null_space_echelon input")
    rows, cols = M.shape
    P = _pivot_block(M, pol)
    free = cols - rows
    if free == 0:
        return VectorSet(np.zeros((cols, 0)))
    if rows:
        X = scipy.linalg.solve_triangular(P, -M[:, rows:], lower=False)
    else:
        X = np.zeros((0, free))
    return VectorSet(np.vstack([X, np.eye(free)]))


def gram_schmidt(vs: VectorSet) -> VectorSet:
    """
    Modified Gram-Schmidt with one reorthogonalization pass.

    The k-th output lies in the span of the first k inputs, and no sign flips are
    introduced, so the map is upper triangular.

    Raises:
        RankDeficiency: If a vector's remaining norm drops below 1e-12 of its original norm
    """
    Q = np.array(vs.matrix, dtype=float, copy=True)
    for k in range(Q.shape[1]):
        original = np.linalg.norm(Q[:, k])
        if original == 0.0:
            raise RankDeficiency(k, 0.0)
        for _ in range(2):
            for j in range(k):
                Q[:, k] -= (Q[:, j] @ Q[:, k]) * Q[:, j]
        remaining = np.linalg.norm(Q[:, k])
        if remaining < DEPENDENCE_TOL * original:
            raise RankDeficiency(k, remaining / original)
        Q[:, k] /= remaining
    return VectorSet(Q, orthonormal=True, labels=list(vs.labels))


def orthonormal_basis(vs: VectorSet, pol: TolerancePolicy = TolerancePolicy()) -> np.ndarray:
    """Orthonormal basis of span(vs) as matrix columns, via SVD."""
    if vs.size == 0:
        return np.zeros((vs.dim, 0))
    if vs.orthonormal:
        return vs.matrix
    u, sigma, _ = scipy.linalg.svd(vs.matrix, full_matrices=False)
    rank = _rank_from(sigma, vs.matrix.shape, pol)
    return u[:, :rank]


def projector(vs: VectorSet, pol: TolerancePolicy = TolerancePolicy()) -> np.ndarray:
    """Orthogonal projector onto span(vs)."""
    Q = orthonormal_basis(vs, pol)
    return Q @ Q.T


def subspace_projector_distance(
    A: VectorSet, B: VectorSet, pol: TolerancePolicy = TolerancePolicy()
) -> ProjectorDistance:
    """
    Spectral and Frobenius norm of P_A - P_B.

    An empty set against a non-empty one has distance 1 by convention.

    Raises:
        DimensionMismatch: If the vectors have different lengths
    """
    if A.dim != B.dim:
        raise DimensionMismatch("subspace_projector_distance", A.dim, B.dim)
    if (A.size == 0) != (B.size == 0):
        logger.warning("Comparing an empty vector set with a non-empty one; distance set to 1")
        return ProjectorDistance(spectral=1.0, frobenius=1.0)
    if A.size == 0:
        return ProjectorDistance(spectral=0.0, frobenius=0.0)
    D = projector(A, pol) - projector(B, pol)
    return ProjectorDistance(
        spectral=float(np.linalg.norm(D, 2)),
        frobenius=float(np.linalg.norm(D, "fro")),
    )
