"""
Bright and dark field modes.

With N_[l] = sqrt(g_1^2 + ... + g_l^2) the bright mode is a_+ = sum_j g_j a_j / N_[N], the
first dark mode is a_2- = (g_2 a_1 - g_1 a_2) / N_[2], and for l >= 3

    a_l- = (g_l g_1 a_1 + ... + g_l g_(l-1) a_(l-1) - N_[l-1]^2 a_l) / (N_[l-1] N_[l])

The rows of T hold these coefficients, bright first.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from darklattice._base._basis import SubspaceBasis, SubspaceSpec
from darklattice._base._exceptions import (
    DimensionMismatch,
    NonDegenerateFrequencies,
    NonFiniteInput,
    VerificationFailed,
    ZeroCoupling,
)
from darklattice._base._hamiltonian import ModelParams, assemble_blocks, full_matrix
from darklattice.logging import get_logger
from darklattice.models.reports import CheckResult, ModeCouplingReport

logger = get_logger(__name__)

ORTHOGONALITY_TOL = 1e-12
DECOUPLING_TOL = 1e-12
FREQUENCY_RTOL = 1e-12


@dataclass(frozen=True)
class ModeTransform:
    """
    Orthogonal map from the original modes to (bright, dark_2, ..., dark_N).

    Attributes:
        g (tuple[float, ...]): Couplings the transform was built from.
        T (np.ndarray): N x N matrix, row 0 the bright mode and row l - 1 the dark mode a_l-.
    """

    g: tuple[float, ...]
    T: np.ndarray

    @property
    def N(self) -> int:
        return self.T.shape[0]

    @property
    def bright(self) -> np.ndarray:
        return self.T[0]

    @property
    def dark(self) -> np.ndarray:
        return self.T[1:]

    def orthogonality_error(self) -> float:
        """max |T T^T - I|."""
        return float(np.max(np.abs(self.T @ self.T.T - np.eye(self.N))))


def build_mode_transform(g: Sequence[float]) -> ModeTransform:
    """
    Build T from the couplings.

    Raises:
        NonFiniteInput: If a coupling is NaN or infinite
        ZeroCoupling: If any g_j is zero, which makes a prefix norm vanish
        VerificationFailed: If the rows come out non-orthogonal beyond 1e-10
    """
    g = np.asarray(g, dtype=float).ravel()
    if not np.all(np.isfinite(g)):
        raise NonFiniteInput("mode transform couplings")
    zeros = [j + 1 for j in range(g.size) if g[j] == 0.0]
    if zeros or g.size == 0:
        raise ZeroCoupling(zeros)
    N = g.size
    prefix = np.sqrt(np.cumsum(g**2))
    T = np.zeros((N, N))
    T[0] = g / prefix[-1]
    if N >= 2:
        T[1, 0], T[1, 1] = g[1] / prefix[1], -g[0] / prefix[1]
    for l in range(2, N):
        T[l, :l] = g[l] * g[:l]
        T[l, l] = -(prefix[l - 1] ** 2)
        T[l] /= prefix[l - 1] * prefix[l]
    transform = ModeTransform(g=tuple(g.tolist()), T=T)
    error = transform.orthogonality_error()
    if error > 1e-10:
        logger.warning(f"Mode transform rows are not orthonormal (error {error:.3e})")
        raise VerificationFailed(["mode_orthogonality"])
    return transform


def frequencies_degenerate(params: ModelParams, rtol: float = FREQUENCY_RTOL) -> bool:
    omegas = np.asarray(params.omegas, dtype=float)
    return float(np.ptp(omegas)) <= rtol * max(1.0, abs(float(omegas.mean())))


def require_degenerate_frequencies(params: ModelParams, override: bool = False) -> None:
    """
    Refuse dark-mode constructions when the mode frequencies differ.

    Raises:
        NonDegenerateFrequencies: Unless ``override`` is set
    """
    if frequencies_degenerate(params):
        return
    spread = float(np.ptp(np.asarray(params.omegas, dtype=float)))
    if not override:
        raise NonDegenerateFrequencies(spread)
    logger.warning(f"Mode frequencies differ by {spread:.3e}; dark modes will not decouple")


def transformed_hamiltonian_check(params: ModelParams, T: ModeTransform) -> ModeCouplingReport:
    """
    Conjugate the single-excitation Hamiltonian by diag(1, T) and inspect the couplings.

    The atom must couple only to the bright mode, with strength sqrt(sum g_j^2), and every
    dark row must be free of off-diagonal entries. Unequal mode frequencies mix bright and
    dark modes; the offending couplings are then reported and the check fails.

    Raises:
        DimensionMismatch: If ``T`` and ``params`` disagree on the mode count
    """
    if T.N != params.N:
        raise DimensionMismatch("transformed_hamiltonian_check (mode count)", params.N, T.N)
    basis = SubspaceBasis.build(SubspaceSpec(N=params.N, n=1))
    H = full_matrix(assemble_blocks(basis, params))
    W = np.eye(1 + params.N)
    W[1:, 1:] = T.T
    H_modes = W @ H @ W.T

    bright = float(abs(H_modes[0, 1]))
    expected = float(np.linalg.norm(params.couplings))
    off_diagonal = H_modes - np.diag(np.diag(H_modes))
    dark_couplings = [float(np.abs(row).max(initial=0.0)) for row in off_diagonal[2:]]
    scale = max(1.0, float(np.abs(H).max()))

    checks = [
        CheckResult.at_most(
            "bright_coupling", abs(bright - expected), ORTHOGONALITY_TOL * max(1.0, expected)
        ),
        CheckResult.at_most(
            "dark_decoupling", max(dark_couplings, default=0.0), DECOUPLING_TOL * scale
        ),
    ]
    report = ModeCouplingReport(
        checks=checks,
        bright_coupling=bright,
        expected_bright_coupling=expected,
        dark_couplings=dark_couplings,
        degenerate=frequencies_degenerate(params),
    )
    if not report.passed:
        logger.info(f"Dark modes are coupled: {dark_couplings}")
    return report
