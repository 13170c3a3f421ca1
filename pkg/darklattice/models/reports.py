"""
Report records returned by the verification operations.

Every report is a pydantic model so that it can be dumped to JSON by the export layer
without further conversion. Numerical values are stored as plain Python floats.
"""

from typing import Optional

from pydantic import BaseModel, Field, computed_field

from darklattice._base._exceptions import TemplateViolation, VerificationFailed


class CheckResult(BaseModel):
    """
    Outcome of a single numerical check.

    Attributes:
        name (str): Short identifier, e.g. ``"annihilation"``.
        value (Optional[float]): Measured quantity; ``None`` when the check was skipped.
        threshold (Optional[float]): Bound the value is compared against.
        passed (bool): Whether the check holds.
        detail (str): Free-form note, e.g. why a check was skipped.
    """

    name: str
    value: Optional[float] = None
    threshold: Optional[float] = None
    passed: bool
    detail: str = ""

    @classmethod
    def at_most(cls, name: str, value: float, threshold: float, detail: str = "") -> "CheckResult":
        """A check that passes when ``value <= threshold``."""
        value = float(value)
        return cls(
            name=name,
            value=value,
            threshold=float(threshold),
            passed=bool(value <= threshold),
            detail=detail,
        )

    @classmethod
    def skipped(cls, name: str, detail: str) -> "CheckResult":
        return cls(name=name, passed=True, detail=detail)


class Report(BaseModel):
    """A list of checks with an overall verdict."""

    checks: list[CheckResult] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def check(self, name: str) -> CheckResult:
        """Return the check called ``name``."""
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [check.name for check in self.checks if not check.passed]

    def raise_for_failures(self) -> None:
        """
        Raises:
            VerificationFailed: If any check failed.
        """
        if not self.passed:
            raise VerificationFailed(self.failed())


class TemplateReport(Report):
    """
    Result of checking a coupling matrix against its row-echelon block template.

    Attributes:
        problems (list[str]): Offending entries, one line each.
        block_sizes (list[int]): Sizes of the diagonal M blocks, by s2'.
    """

    problems: list[str] = Field(default_factory=list)
    block_sizes: list[int] = Field(default_factory=list)

    def raise_for_problems(self) -> None:
        """
        Raises:
            TemplateViolation: Listing every offending entry.
        """
        if self.problems:
            raise TemplateViolation(self.problems)


class DarkVerificationReport(Report):
    """
    Darkness checks for a set of vectors over the lower basis.

    Attributes:
        N (int): Mode count.
        n (int): Excitation number.
        size (int): Number of vectors checked.
        expected_energy (Optional[float]): -n*Delta when the detunings are degenerate.
    """

    N: int
    n: int
    size: int
    expected_energy: Optional[float] = None


class ModeCouplingReport(Report):
    """
    Structure of the single-excitation Hamiltonian after the bright/dark mode rotation.

    Attributes:
        bright_coupling (float): Atom to bright-mode coupling found.
        expected_bright_coupling (float): sqrt(sum g_j^2).
        dark_couplings (list[float]): Largest off-diagonal magnitude in each dark row.
        degenerate (bool): Whether all mode frequencies were equal.
    """

    bright_coupling: float
    expected_bright_coupling: float
    dark_couplings: list[float]
    degenerate: bool


class QRReport(Report):
    """
    Relation A = B R between raw null vectors and dark-mode Fock states.

    Attributes:
        R (list[list[float]]): The coefficient matrix B^T A.
        residual (float): ||A - B R|| / ||A||.
        upper_triangular (bool): Whether R is upper triangular within tolerance.
        max_below_diagonal (float): Largest |R_ij| with i > j, relative to max |R|.
    """

    R: list[list[float]]
    residual: float
    upper_triangular: bool
    max_below_diagonal: float


class ProjectorDistance(BaseModel):
    """
    Distance between the orthogonal projectors onto two spans.

    Attributes:
        spectral (float): ||P_A - P_B||_2.
        frobenius (float): ||P_A - P_B||_F.
    """

    spectral: float
    frobenius: float

    def __float__(self) -> float:
        return self.spectral


class CountCell(BaseModel):
    """
    One (N, n) entry of a dark-state count table.

    Attributes:
        N (int): Mode count.
        n (int): Excitation number.
        formula (int): C(N + n - 2, N - 2).
        svd_nullity (int): Columns minus numerical rank of C.
        echelon_free_columns (int): Free columns of the row-echelon C.
    """

    N: int
    n: int
    formula: int
    svd_nullity: int
    echelon_free_columns: int

    @computed_field
    @property
    def match(self) -> bool:
        return self.formula == self.svd_nullity == self.echelon_free_columns


class StirapResult(BaseModel):
    """
    Outcome of a two-mode adiabatic transfer run.

    Attributes:
        n (int): Photon number transferred.
        G (float): Coupling magnitude.
        duration (float): Ramp duration.
        fidelity (float): |<g,n,0|psi(T)>|^2.
        min_dark_overlap (float): Smallest overlap with the instantaneous dark state.
        steps (int): RK4 steps of the accepted run.
        norm_drift (float): max | ||psi|| - 1 | over the accepted run.
    """

    n: int
    G: float
    duration: float
    fidelity: float
    min_dark_overlap: float
    steps: int
    norm_drift: float
