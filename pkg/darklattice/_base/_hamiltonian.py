"""
Arrowhead block Hamiltonian of the N-mode Jaynes-Cummings model in a fixed-excitation
subspace.

Rows and columns are ordered upper states first, then lower states, each in canonical
order. Within the subspace the Hamiltonian reads

    [[ diag(U)   C       ]
     [ C^T       diag(L) ]]

with U and L the (rotating-frame) detuning energies and C the atom-photon transition
amplitudes g_j * sqrt(n_j' + 1).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from darklattice._base._basis import Sector, SubspaceBasis, block_sizes
from darklattice._base._combinatorics import binomial
from darklattice._base._exceptions import DimensionMismatch, ZeroCoupling
from darklattice._base._validation import _ParameterValidator
from darklattice.logging import get_logger
from darklattice.models.reports import CheckResult, TemplateReport

logger = get_logger(__name__)

_TEMPLATE_RTOL = 1e-13
_MAX_LISTED_PROBLEMS = 25


class Frame(str, Enum):
    """Energy reference of the diagonal blocks."""

    ROTATING = "rotating"
    LAB = "lab"


class ModelParams(BaseModel):
    """
    Physical parameters of an N-mode Jaynes-Cummings model.

    Detunings are derived from the frequencies on every access and never stored.

    Attributes:
        omega0 (float): Atomic transition frequency.
        omegas (tuple[float, ...]): One frequency per field mode.
        g (tuple[float, ...]): Real atom-mode coupling strengths.
    """

    model_config = ConfigDict(frozen=True)

    omega0: float = 0.0
    omegas: tuple[float, ...]
    g: tuple[float, ...]

    @model_validator(mode="before")
    @classmethod
    def _validate_inputs(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            for key in ("omegas", "g"):
                if hasattr(data.get(key), "tolist"):
                    data[key] = data[key].tolist()
            _ParameterValidator(data).validate()
        return data

    @classmethod
    def resonant(
        cls, g: Sequence[float], delta: float = 0.0, omega0: float = 1.0
    ) -> "ModelParams":
        """Parameters with every detuning equal to ``delta``."""
        g = list(np.asarray(g, dtype=float).tolist())
        return cls(omega0=omega0, omegas=[omega0 - delta] * len(g), g=g)

    def with_couplings(self, g: Sequence[float]) -> "ModelParams":
        """Same frequencies, new couplings."""
        return ModelParams(omega0=self.omega0, omegas=self.omegas, g=list(g))

    @property
    def N(self) -> int:
        return len(self.g)

    @property
    def couplings(self) -> np.ndarray:
        return np.asarray(self.g, dtype=float)

    @property
    def detunings(self) -> np.ndarray:
        """Delta_j = omega0 - omega_j."""
        return self.omega0 - np.asarray(self.omegas, dtype=float)

    @property
    def detuning_spread(self) -> float:
        delta = self.detunings
        return float(delta.max() - delta.min())

    @property
    def mean_detuning(self) -> float:
        return float(self.detunings.mean())

    def detunings_degenerate(self, rtol: float = 1e-12) -> bool:
        """True when max |Delta_i - Delta_j| <= rtol * max(1, |mean Delta|)."""
        return self.detuning_spread <= rtol * max(1.0, abs(self.mean_detuning))

    def zero_coupling_modes(self) -> list[int]:
        """1-based indices of modes with g_j == 0."""
        return [j + 1 for j, gj in enumerate(self.g) if gj == 0.0]


@dataclass(frozen=True)
class BlockHamiltonian:
    """
    Diagonal blocks U, L and coupling block C of one subspace.

    The arrays are owned by the instance and must not be modified.
    """

    basis: SubspaceBasis
    params: ModelParams
    frame: Frame
    U: np.ndarray
    L: np.ndarray
    C: np.ndarray

    @property
    def spec(self):
        return self.basis.spec

    @property
    def n_upper(self) -> int:
        return self.U.shape[0]

    @property
    def n_lower(self) -> int:
        return self.L.shape[0]


@dataclass(frozen=True)
class RowBlock:
    """
    One block row of C: the upper states with s2' photons outside mode 1.

    ``M`` is the square block against lower states with the same s2; ``M_tilde`` is the
    block against lower states with s2 = s2' + 1.
    """

    s2: int
    rows: slice
    M: np.ndarray
    M_tilde: np.ndarray
    scalar: float


def transitions(basis: SubspaceBasis) -> list[tuple[int, int, int, float]]:
    """
    All upper-to-lower transition channels of the subspace.

    Returns:
        list[tuple[int, int, int, float]]: ``(row, column, mode, sqrt(n_j' + 1))`` with
            0-based upper row, lower column and mode index
    """
    channels = []
    for row, state in enumerate(basis.upper):
        for mode in range(basis.spec.N):
            _, column = basis.index_of(state.with_photon(mode))
            channels.append((row, column, mode, float(np.sqrt(state.occupations[mode] + 1))))
    return channels


def coupling_patterns(basis: SubspaceBasis) -> list[np.ndarray]:
    """Unit-coupling matrices K_j with C(g) = sum_j g_j K_j."""
    patterns = [np.zeros((basis.n_upper, basis.n_lower)) for _ in range(basis.spec.N)]
    for row, column, mode, amplitude in transitions(basis):
        patterns[mode][row, column] = amplitude
    return patterns


def coupling_matrix(basis: SubspaceBasis, couplings: Sequence[float]) -> np.ndarray:
    """Dense C with C[u, l] = g_j * sqrt(n_j' + 1) when l is u plus one photon in mode j."""
    g = np.asarray(couplings, dtype=float)
    if g.shape != (basis.spec.N,):
        raise DimensionMismatch("coupling vector", basis.spec.N, g.shape)
    C = np.zeros((basis.n_upper, basis.n_lower))
    for row, column, mode, amplitude in transitions(basis):
        C[row, column] = g[mode] * amplitude
    return C


def _photon_numbers(basis: SubspaceBasis, sector: Sector) -> np.ndarray:
    return np.array([state.occupations for state in basis.sector(sector)], dtype=float)


def assemble_blocks(
    basis: SubspaceBasis, params: ModelParams, frame: Frame = Frame.ROTATING
) -> BlockHamiltonian:
    """
    Assemble U, L and C for ``basis`` and ``params``.

    In the rotating frame U = -sum_j Delta_j n_j' and L = -sum_j Delta_j n_j. The lab frame
    adds omega0 * (n - 1/2) to every diagonal entry.

    Args:
        basis (SubspaceBasis): Subspace to assemble on
        params (ModelParams): Model parameters with ``params.N == basis.spec.N``
        frame (Frame): Energy reference

    Returns:
        BlockHamiltonian: The three blocks and their provenance

    Raises:
        DimensionMismatch: If the mode counts disagree
    """
    if params.N != basis.spec.N:
        raise DimensionMismatch("assemble_blocks (mode count)", basis.spec.N, params.N)
    frame = Frame(frame)
    delta = params.detunings
    U = -_photon_numbers(basis, Sector.UPPER) @ delta
    L = -_photon_numbers(basis, Sector.LOWER) @ delta
    if frame == Frame.LAB:
        shift = params.omega0 * (basis.spec.n - 0.5)
        U = U + shift
        L = L + shift
    C = coupling_matrix(basis, params.g)
    return BlockHamiltonian(basis=basis, params=params, frame=frame, U=U, L=L, C=C)


def full_matrix(bh: BlockHamiltonian) -> np.ndarray:
    """The symmetric matrix [[diag(U), C], [C^T, diag(L)]]."""
    return np.block([[np.diag(bh.U), bh.C], [bh.C.T, np.diag(bh.L)]])


def interaction_matrix(basis: SubspaceBasis, couplings: Sequence[float]) -> np.ndarray:
    """The interaction part [[0, C], [C^T, 0]], i.e. the Hamiltonian at zero detuning."""
    C = coupling_matrix(basis, couplings)
    return np.block(
        [[np.zeros((basis.n_upper, basis.n_upper)), C], [C.T, np.zeros((basis.n_lower,) * 2)]]
    )


def block_partition(bh: BlockHamiltonian) -> list[RowBlock]:
    """Split C into its M / M-tilde block rows."""
    row_sizes = block_sizes(bh.basis, Sector.UPPER)
    column_sizes = block_sizes(bh.basis, Sector.LOWER)
    column_starts = np.concatenate([[0], np.cumsum(column_sizes)]).astype(int)
    g1 = bh.params.g[0]
    n = bh.spec.n
    blocks = []
    row = 0
    last = len(column_starts) - 1
    for s2, size in enumerate(row_sizes):
        rows = slice(row, row + size)
        M = bh.C[rows, column_starts[s2] : column_starts[s2 + 1]]
        # a single mode has one lower block and so no M-tilde
        M_tilde = bh.C[rows, column_starts[s2 + 1] : column_starts[min(s2 + 2, last)]]
        blocks.append(
            RowBlock(s2=s2, rows=rows, M=M, M_tilde=M_tilde, scalar=g1 * np.sqrt(n - s2))
        )
        row += size
    return blocks


def verify_block_template(bh: BlockHamiltonian) -> TemplateReport:
    """
    Check that C has the row-echelon block form expected for all-nonzero couplings.

    Three checks are reported: the block-bidiagonal shape with M blocks equal to
    g1 * sqrt(n - s2') times the identity, exactly N nonzeros per row, and an upper
    triangular left square part with nonzero diagonal.

    Raises:
        ZeroCoupling: If any g_j is zero
    """
    zeros = bh.params.zero_coupling_modes()
    if zeros:
        raise ZeroCoupling(zeros)

    N, n = bh.spec.N, bh.spec.n
    C = bh.C
    problems: list[str] = []

    def note(problem: str):
        if len(problems) < _MAX_LISTED_PROBLEMS:
            problems.append(problem)

    # (a) block bidiagonal shape
    shape_ok = True
    column_sizes = block_sizes(bh.basis, Sector.LOWER)
    column_starts = np.concatenate([[0], np.cumsum(column_sizes)]).astype(int)
    blocks = block_partition(bh)
    for block in blocks:
        size = block.M.shape[0]
        if N >= 2 and size != binomial(N + block.s2 - 2, N - 2):
            shape_ok = False
            note(f"block s2'={block.s2}: size {size}, expected {binomial(N + block.s2 - 2, N - 2)}")
        if block.M.shape != (size, size) or not np.allclose(
            block.M, block.scalar * np.eye(size), rtol=_TEMPLATE_RTOL, atol=0.0
        ):
            shape_ok = False
            note(f"block s2'={block.s2}: M is not {block.scalar:.6g} * identity")
        allowed = np.zeros(C.shape[1], dtype=bool)
        band_end = column_starts[min(block.s2 + 2, len(column_starts) - 1)]
        allowed[column_starts[block.s2] : band_end] = True
        outside = np.argwhere(C[block.rows][:, ~allowed] != 0.0)
        if outside.size:
            shape_ok = False
            columns = np.flatnonzero(~allowed)
            for r, c in outside:
                row = block.rows.start + r
                note(f"C[{row}, {columns[c]}] = {C[row, columns[c]]:.6g} outside the block band")
    # (b) N nonzeros per row
    counts = np.count_nonzero(C, axis=1)
    for row in np.flatnonzero(counts != N):
        note(f"row {row}: {counts[row]} nonzeros, expected {N}")
    # (c) left square part upper triangular with nonzero diagonal
    square = C[:, : C.shape[0]]
    below = np.argwhere(np.tril(square, k=-1) != 0.0)
    for r, c in below:
        note(f"C[{r}, {c}] = {square[r, c]:.6g} below the diagonal of the pivot block")
    zero_pivots = np.flatnonzero(np.diag(square) == 0.0)
    for r in zero_pivots:
        note(f"pivot C[{r}, {r}] is zero")

    checks = [
        CheckResult(name="block_shape", passed=shape_ok),
        CheckResult(
            name="row_nonzeros",
            value=float(counts.max(initial=0)),
            passed=bool(np.all(counts == N)),
        ),
        CheckResult(
            name="pivot_triangular",
            passed=bool(below.size == 0 and zero_pivots.size == 0),
        ),
    ]
    report = TemplateReport(
        checks=checks, problems=problems, block_sizes=[block.M.shape[0] for block in blocks]
    )
    if not report.passed:
        logger.warning(f"Block template check failed for N={N}, n={n}: {report.failed()}")
    return report
