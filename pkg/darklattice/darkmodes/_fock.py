"""
Dark-mode Fock states expanded in the original photon basis.

A state with occupations (m_+, m_2, ..., m_N) of the bright and dark modes is built as

    prod_r (b_r^dagger)^(m_r) / sqrt(m_r!) |vac>,   b_r^dagger = sum_j T[r, j] a_j^dagger

by applying the creation operators one photon at a time to a sparse occupation-indexed
vector. Columns with m_+ = 0 are the dark states of the n-excitation subspace.
"""

import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from darklattice._base._basis import SubspaceSpec, canonical_occupations
from darklattice._base._exceptions import ClosedFormIndexError, DimensionMismatch
from darklattice._base._linalg import (
    TolerancePolicy,
    VectorSet,
    numerical_rank,
    subspace_projector_distance,
)
from darklattice.darkmodes._transform import ModeTransform
from darklattice.darkstates._set import DarkLabel, DarkStateSet, Provenance
from darklattice.logging import get_logger
from darklattice.models.reports import CheckResult, ProjectorDistance, QRReport

logger = get_logger(__name__)

RECONSTRUCTION_TOL = 1e-10
TRIANGULAR_TOL = 1e-10

Occupations = tuple[int, ...]


@dataclass(frozen=True)
class DarkModeBasisMatrix:
    """
    Dark-mode Fock states of one subspace as the columns of B.

    Attributes:
        N (int): Mode count.
        n (int): Photon number; ``n = 0`` gives the single vacuum column.
        B (np.ndarray): Lower-basis coefficients, one column per dark occupation tuple.
        labels (list[tuple[int, ...]]): Dark occupations (m_2, ..., m_N) of each column.
    """

    N: int
    n: int
    B: np.ndarray
    labels: list[Occupations] = field(default_factory=list)

    @property
    def spec(self) -> SubspaceSpec:
        return SubspaceSpec(N=self.N, n=self.n)

    @property
    def size(self) -> int:
        return self.B.shape[1]

    def gram_deviation(self) -> float:
        if not self.size:
            return 0.0
        return float(np.max(np.abs(self.B.T @ self.B - np.eye(self.size))))

    def rank(self, pol: TolerancePolicy = TolerancePolicy()) -> int:
        return numerical_rank(self.B, pol)

    def as_vector_set(self) -> VectorSet:
        return VectorSet(self.B)

    def as_dark_state_set(self) -> DarkStateSet:
        """The columns of B as an orthonormal dark-state set in family order."""
        labels = [DarkLabel(Provenance.DARK_MODE, p=p, norm=1.0) for p in range(1, self.size + 1)]
        return DarkStateSet(self.spec, VectorSet(self.B, orthonormal=True), labels, normalized=True)


def _create(state: dict[Occupations, float], row: np.ndarray) -> dict[Occupations, float]:
    created: dict[Occupations, float] = defaultdict(float)
    for occupations, amplitude in state.items():
        for mode, weight in enumerate(row):
            if weight == 0.0:
                continue
            raised = occupations[:mode] + (occupations[mode] + 1,) + occupations[mode + 1 :]
            created[raised] += amplitude * weight * math.sqrt(occupations[mode] + 1)
    return dict(created)


def _to_vector(N: int, n: int, state: dict[Occupations, float]) -> np.ndarray:
    return np.array([state.get(occ, 0.0) for occ in canonical_occupations(N, n)])


def mode_fock_state(T: ModeTransform, occupations: Sequence[int]) -> np.ndarray:
    """
    Coefficients of |m_+>|m_2>...|m_N> on the original lower basis in canonical order.

    Args:
        T (ModeTransform): The mode transform
        occupations (Sequence[int]): Bright occupation first, then the dark ones

    Raises:
        DimensionMismatch: If ``occupations`` does not have one entry per mode
    """
    occupations = tuple(int(m) for m in occupations)
    if len(occupations) != T.N:
        raise DimensionMismatch("mode_fock_state occupations", T.N, len(occupations))
    state: dict[Occupations, float] = {(0,) * T.N: 1.0}
    norm = 1
    for row, count in zip(T.T, occupations):
        for _ in range(count):
            state = _create(state, row)
        norm *= math.factorial(count)
    return _to_vector(T.N, sum(occupations), state) / math.sqrt(norm)


def dark_mode_fock_states(
    T: ModeTransform, spec: Union[SubspaceSpec, int]
) -> DarkModeBasisMatrix:
    """
    B for the n-excitation subspace: bright vacuum, n photons spread over the dark modes.

    Columns run over (m_2, ..., m_N) in canonical order, descending in m_2 first, which is
    the family order p of the closed-form dark states.

    Args:
        T (ModeTransform): The mode transform
        spec (SubspaceSpec | int): The subspace, or a bare photon number (0 allowed)

    Raises:
        DimensionMismatch: If the subspace has a different mode count than ``T``
    """
    if isinstance(spec, SubspaceSpec):
        if spec.N != T.N:
            raise DimensionMismatch("dark_mode_fock_states (mode count)", T.N, spec.N)
        n = spec.n
    else:
        n = int(spec)
    labels = list(canonical_occupations(T.N - 1, n)) if T.N > 1 else []
    dimension = sum(1 for _ in canonical_occupations(T.N, n))
    columns = [mode_fock_state(T, (0,) + dark) for dark in labels]
    B = np.column_stack(columns) if columns else np.zeros((dimension, 0))
    return DarkModeBasisMatrix(N=T.N, n=n, B=B, labels=labels)


def two_mode_basis_coefficients(n: int, m2: int, g: Sequence[float]) -> np.ndarray:
    """
    Closed-form expansion of |n - m2>_{a+} |m2>_{a-} on |k2, n - k2>, k2 = n..0.

    The coefficient on |k2>_{a1}|n - k2>_{a2} is

        sqrt((n - m2)! m2!) / N^n * sum_q sqrt((n - k2)! k2!) (-1)^(m2 - q)
            g1^(m2 - 2q + k2) g2^(n - k2 - m2 + 2q) / ((k2 - q)! (n - k2 - m2 + q)! q! (m2 - q)!)

    with q from max(0, m2 + k2 - n) to min(k2, m2) and N = sqrt(g1^2 + g2^2).
    """
    g1, g2 = (float(x) for x in g)
    if not 0 <= m2 <= n:
        raise ClosedFormIndexError(
            "two-mode dark-mode basis", f"need 0 <= m2 <= n, got m2={m2}, n={n}"
        )
    norm = math.hypot(g1, g2) ** n
    values = {}
    for k2 in range(n + 1):
        total = 0.0
        for q in range(max(0, m2 + k2 - n), min(k2, m2) + 1):
            denominator = (
                math.factorial(k2 - q)
                * math.factorial(n - k2 - m2 + q)
                * math.factorial(q)
                * math.factorial(m2 - q)
            )
            sign = -1.0 if (m2 - q) % 2 else 1.0
            total += sign * g1 ** (m2 - 2 * q + k2) * g2 ** (n - k2 - m2 + 2 * q) / denominator
        radicand = math.factorial(n - m2) * math.factorial(m2)
        radicand *= math.factorial(n - k2) * math.factorial(k2)
        values[(k2, n - k2)] = math.sqrt(radicand) * total / norm
    return _to_vector(2, n, values)


def _as_matrix(vectors) -> np.ndarray:
    if isinstance(vectors, DarkStateSet):
        return vectors.matrix
    if isinstance(vectors, VectorSet):
        return vectors.matrix
    if isinstance(vectors, DarkModeBasisMatrix):
        return vectors.B
    return np.asarray(vectors, dtype=float)


def qr_relation(A, B) -> QRReport:
    """
    Express raw dark vectors A in the dark-mode basis B, A = B R with R = B^T A.

    Triangularity of R depends on the column orderings of both sides and is reported,
    not required; the report fails only when B R does not reconstruct A.

    Raises:
        DimensionMismatch: If A and B have different shapes
    """
    A, B = _as_matrix(A), _as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch("qr_relation", B.shape, A.shape)
    R = B.T @ A
    scale = np.linalg.norm(A) or 1.0
    residual = float(np.linalg.norm(A - B @ R) / scale)
    largest = np.abs(R).max(initial=0.0) or 1.0
    below = float(np.abs(np.tril(R, k=-1)).max(initial=0.0) / largest)
    return QRReport(
        checks=[CheckResult.at_most("reconstruction", residual, RECONSTRUCTION_TOL)],
        R=R.tolist(),
        residual=residual,
        upper_triangular=below <= TRIANGULAR_TOL,
        max_below_diagonal=below,
    )


def equivalence_check(
    numeric: DarkStateSet, B: DarkModeBasisMatrix, pol: TolerancePolicy = TolerancePolicy()
) -> ProjectorDistance:
    """
    Projector distance between the numerical dark states and the dark-mode Fock states.

    Raises:
        DimensionMismatch: If the two sets belong to different subspaces
    """
    if (numeric.spec.N, numeric.spec.n) != (B.N, B.n):
        raise DimensionMismatch("equivalence_check", (numeric.spec.N, numeric.spec.n), (B.N, B.n))
    return subspace_projector_distance(numeric.vectors, B.as_vector_set(), pol)
