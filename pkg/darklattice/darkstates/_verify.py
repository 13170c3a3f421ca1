import numpy as np

from darklattice._base._exceptions import DimensionMismatch
from darklattice._base._hamiltonian import BlockHamiltonian, full_matrix
from darklattice._base._linalg import TolerancePolicy, largest_singular_value
from darklattice.darkstates._set import DarkStateSet
from darklattice.darkstates._solve import DEGENERACY_RTOL, dark_energy
from darklattice.logging import get_logger
from darklattice.models.reports import CheckResult, DarkVerificationReport

logger = get_logger(__name__)

EIGEN_RTOL = 1e-9


def _unit_columns(matrix: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(matrix, axis=0)
    return matrix / np.where(norms == 0.0, 1.0, norms)


def verify_dark(
    bh: BlockHamiltonian, ds: DarkStateSet, pol: TolerancePolicy = TolerancePolicy()
) -> DarkVerificationReport:
    """
    Check that the vectors of ``ds`` are dark states of ``bh``.

    Four checks are reported, each against the normalized vectors:

        - ``annihilation``: max ||C v|| / sigma_max(C), bound ``residual_eps``
        - ``eigen``: max ||H v - E v|| / |n Delta| with E = -n Delta when the detunings
          are degenerate. Otherwise E is each vector's Rayleigh quotient and the check fails.
        - ``gram``: max |V^T V - I|, enforced only for sets flagged orthonormal
        - ``leakage``: largest upper-state component of the embedded vectors, must be 0

    Nothing is raised for failed checks; call ``raise_for_failures`` on the report.

    Raises:
        DimensionMismatch: If ``ds`` does not live on the lower basis of ``bh``
    """
    if ds.spec != bh.spec:
        raise DimensionMismatch("verify_dark (subspace)", bh.spec, ds.spec)
    n = bh.spec.n
    V = _unit_columns(ds.matrix)
    checks = []

    sigma_max = largest_singular_value(bh.C)
    annihilation = np.linalg.norm(bh.C @ V, axis=0).max(initial=0.0)
    checks.append(
        CheckResult.at_most("annihilation", annihilation / (sigma_max or 1.0), pol.residual_eps)
    )

    H = full_matrix(bh)
    embedded = np.vstack([np.zeros((bh.n_upper, ds.size)), V])
    scale = abs(n * bh.params.mean_detuning) or 1.0
    expected_energy = None
    if bh.params.detunings_degenerate(DEGENERACY_RTOL):
        expected_energy = dark_energy(bh.params, n, bh.frame)
        residual = H @ embedded - expected_energy * embedded
        eigen = CheckResult.at_most(
            "eigen", np.linalg.norm(residual, axis=0).max(initial=0.0) / scale, EIGEN_RTOL
        )
    else:
        energies = np.einsum("ik,ik->k", embedded, H @ embedded)
        residual = H @ embedded - embedded * energies
        value = np.linalg.norm(residual, axis=0).max(initial=0.0) / scale
        eigen = CheckResult(
            name="eigen",
            value=float(value),
            threshold=EIGEN_RTOL,
            passed=False,
            detail="detunings are not degenerate; null vectors of C are not eigenstates",
        )
    checks.append(eigen)

    if ds.vectors.orthonormal:
        checks.append(CheckResult.at_most("gram", ds.vectors.gram_deviation(), pol.residual_eps))
    else:
        checks.append(
            CheckResult(
                name="gram",
                value=ds.vectors.gram_deviation(),
                passed=True,
                detail="set is not orthonormal; deviation reported only",
            )
        )

    leakage = np.abs(embedded[: bh.n_upper]).max(initial=0.0)
    checks.append(CheckResult.at_most("leakage", leakage, 0.0))

    report = DarkVerificationReport(
        checks=checks, N=bh.spec.N, n=n, size=ds.size, expected_energy=expected_energy
    )
    if not report.passed:
        logger.warning(
            f"Dark-state verification failed for N={bh.spec.N}, n={n}: {report.failed()}"
        )
    return report
