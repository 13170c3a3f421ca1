import numpy as np

from darklattice._base._exceptions import (
    DarkCountMismatch,
    NonDegenerateDetunings,
    ZeroCoupling,
)
from darklattice._base._hamiltonian import BlockHamiltonian, Frame, ModelParams
from darklattice._base._linalg import (
    TolerancePolicy,
    VectorSet,
    null_space_echelon,
    null_space_svd,
    projector,
)
from darklattice.darkstates._set import (
    DarkLabel,
    DarkStateSet,
    Provenance,
    apply_phase_convention,
    dark_state_count,
)
from darklattice.logging import get_logger

logger = get_logger(__name__)

DEGENERACY_RTOL = 1e-12


def _check_preconditions(bh: BlockHamiltonian, allow_nondegenerate: bool):
    zeros = bh.params.zero_coupling_modes()
    if zeros:
        raise ZeroCoupling(zeros)
    if not bh.params.detunings_degenerate(DEGENERACY_RTOL):
        tolerance = DEGENERACY_RTOL * max(1.0, abs(bh.params.mean_detuning))
        if not allow_nondegenerate:
            raise NonDegenerateDetunings(bh.params.detuning_spread, tolerance)
        logger.warning(
            f"Detuning spread {bh.params.detuning_spread:.3e} exceeds {tolerance:.3e}; "
            "null vectors of C will not be eigenstates"
        )


def _check_count(bh: BlockHamiltonian, found: int):
    expected = dark_state_count(bh.spec.N, bh.spec.n)
    if found != expected:
        raise DarkCountMismatch(bh.spec.N, bh.spec.n, expected, found)


def solve_dark_states(
    bh: BlockHamiltonian,
    pol: TolerancePolicy = TolerancePolicy(),
    allow_nondegenerate: bool = False,
) -> DarkStateSet:
    """
    Orthonormal basis of the dark subspace from the SVD null space of C.

    Each vector is reported with its largest-magnitude coefficient positive.

    Args:
        bh (BlockHamiltonian): Blocks of the subspace
        pol (TolerancePolicy): Rank and residual thresholds
        allow_nondegenerate (bool): Compute the null space even when detunings differ. The
            vectors then annihilate the interaction but are not eigenstates.

    Returns:
        DarkStateSet: ``C(N + n - 2, N - 2)`` orthonormal vectors over the lower basis

    Raises:
        ZeroCoupling: If any g_j is zero
        NonDegenerateDetunings: If detunings differ and ``allow_nondegenerate`` is not set
        DarkCountMismatch: If the numerical nullity disagrees with the counting law
    """
    _check_preconditions(bh, allow_nondegenerate)
    null = null_space_svd(bh.C, pol)
    _check_count(bh, null.size)
    vectors = VectorSet(apply_phase_convention(null.matrix), orthonormal=True)
    logger.debug(f"Solved {vectors.size} dark states for N={bh.spec.N}, n={bh.spec.n}")
    return DarkStateSet(
        spec=bh.spec,
        vectors=vectors,
        labels=[DarkLabel(Provenance.NUMERIC)] * vectors.size,
        normalized=True,
    )


def echelon_dark_states(
    bh: BlockHamiltonian,
    pol: TolerancePolicy = TolerancePolicy(),
    allow_nondegenerate: bool = False,
) -> DarkStateSet:
    """
    Raw dark vectors from the pivot/free column split of C.

    Free column p (1-based, in canonical order of the last lower states) gets coefficient 1
    and the pivot coefficients follow by back substitution. The vectors are neither
    normalized nor orthogonal; their norms are kept in the labels.

    Raises:
        ZeroCoupling: If any g_j is zero
        PivotBreakdown: If C is not in row-echelon form
        DarkCountMismatch: If the number of free columns disagrees with the counting law
    """
    _check_preconditions(bh, allow_nondegenerate)
    null = null_space_echelon(bh.C, pol)
    _check_count(bh, null.size)
    labels = [
        DarkLabel(Provenance.ECHELON, p=p, norm=float(norm))
        for p, norm in enumerate(null.norms(), start=1)
    ]
    return DarkStateSet(spec=bh.spec, vectors=null, labels=labels, normalized=False)


def dark_energy(params: ModelParams, n: int, frame: Frame = Frame.ROTATING) -> float:
    """
    Common eigenvalue of every dark state: -n * Delta, plus omega0 * (n - 1/2) in the lab frame.

    Raises:
        NonDegenerateDetunings: If the detunings are not all equal
    """
    if not params.detunings_degenerate(DEGENERACY_RTOL):
        tolerance = DEGENERACY_RTOL * max(1.0, abs(params.mean_detuning))
        raise NonDegenerateDetunings(params.detuning_spread, tolerance)
    energy = -n * params.mean_detuning
    if Frame(frame) == Frame.LAB:
        energy += params.omega0 * (n - 0.5)
    return float(energy)


def dark_projector(ds: DarkStateSet) -> np.ndarray:
    """Orthogonal projector onto span(ds) in the lower basis."""
    return projector(ds.vectors)
