from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from darklattice._base._basis import Sector, SubspaceSpec, enumerate_states, lower_dimension
from darklattice._base._combinatorics import binomial, checked_count
from darklattice._base._exceptions import DimensionMismatch
from darklattice._base._linalg import VectorSet
from darklattice.logging import get_logger

logger = get_logger(__name__)


class Provenance(str, Enum):
    """How a dark vector was obtained."""

    NUMERIC = "numeric"
    ECHELON = "echelon"
    CLOSED_FORM = "closed-form"
    DARK_MODE = "dark-mode"
    GRAM_SCHMIDT = "gram-schmidt"


@dataclass(frozen=True)
class DarkLabel:
    """
    Provenance of one vector in a DarkStateSet.

    ``p`` is the 1-based position in a closed-form or dark-mode family and ``norm`` the
    norm the vector had before any normalization.
    """

    provenance: Provenance
    p: Optional[int] = None
    norm: Optional[float] = None


def dark_state_count(N: int, n: int) -> int:
    """
    Number of dark states in the n-excitation subspace, C(N + n - 2, N - 2).

    A single mode has no dark states; N = 1 returns 0 and logs a note.

    Raises:
        CapacityExceeded: If the count does not fit a 64-bit index
    """
    if N < 1 or n < 1:
        raise ValueError(f"dark_state_count needs N >= 1 and n >= 1, got N={N}, n={n}")
    if N == 1:
        logger.info("A single-mode model has no dark states (count 0)")
        return 0
    return checked_count(binomial(N + n - 2, N - 2), "dark-state count")


def apply_phase_convention(matrix: np.ndarray) -> np.ndarray:
    """Flip each column so that its largest-magnitude entry is positive."""
    matrix = np.array(matrix, dtype=float, copy=True)
    if matrix.size == 0:
        return matrix
    pivots = np.argmax(np.abs(matrix), axis=0)
    signs = np.sign(matrix[pivots, np.arange(matrix.shape[1])])
    signs[signs == 0] = 1.0
    return matrix * signs


@dataclass
class DarkStateSet:
    """
    Vectors over the lower-state basis of one subspace, with per-vector provenance.

    Vectors carry no upper-state components; the full-space vector is obtained by
    prepending ``N_u`` zeros.
    """

    spec: SubspaceSpec
    vectors: VectorSet
    labels: list[DarkLabel] = field(default_factory=list)
    normalized: bool = False

    def __post_init__(self):
        expected_dim = lower_dimension(self.spec)
        if self.vectors.dim != expected_dim:
            raise DimensionMismatch("DarkStateSet vectors", expected_dim, self.vectors.dim)
        if not self.labels:
            self.labels = [DarkLabel(Provenance.NUMERIC)] * self.vectors.size
        if len(self.labels) != self.vectors.size:
            raise DimensionMismatch("DarkStateSet labels", self.vectors.size, len(self.labels))
        limit = dark_state_count(self.spec.N, self.spec.n) if self.spec.N > 1 else 0
        if self.vectors.size > limit:
            raise DimensionMismatch("DarkStateSet size (at most the dark count)", limit, self.size)

    @property
    def size(self) -> int:
        return self.vectors.size

    def __len__(self) -> int:
        return self.size

    @property
    def matrix(self) -> np.ndarray:
        return self.vectors.matrix

    def embedded(self, n_upper: int) -> np.ndarray:
        """Full-space vectors: zero upper components stacked over the lower ones."""
        return np.vstack([np.zeros((n_upper, self.size)), self.matrix])

    def normalized_copy(self) -> "DarkStateSet":
        """Each vector scaled to unit norm; original norms are kept in the labels."""
        norms = self.vectors.norms()
        safe = np.where(norms == 0.0, 1.0, norms)
        labels = [
            DarkLabel(label.provenance, label.p, float(norm) if label.norm is None else label.norm)
            for label, norm in zip(self.labels, norms)
        ]
        return DarkStateSet(
            spec=self.spec,
            vectors=VectorSet(self.matrix / safe, orthonormal=self.vectors.orthonormal),
            labels=labels,
            normalized=True,
        )

    def coefficients(self, index: int) -> dict[str, float]:
        """Nonzero coefficients of vector ``index`` keyed by serialized lower state."""
        states = enumerate_states(self.spec, Sector.LOWER)
        column = self.matrix[:, index]
        return {str(state): float(c) for state, c in zip(states, column) if c != 0.0}
