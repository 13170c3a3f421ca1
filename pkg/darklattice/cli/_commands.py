"""
One function per subcommand. Each takes a validated RunConfig and returns a CommandResult
holding the artifact texts by file name; nothing here touches the filesystem.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product, repeat
from typing import Callable, Optional

import numpy as np

from darklattice._base._basis import SubspaceBasis, SubspaceSpec
from darklattice._base._exceptions import ConfigError, DarkCountMismatch
from darklattice._base._hamiltonian import (
    BlockHamiltonian,
    ModelParams,
    assemble_blocks,
    verify_block_template,
)
from darklattice._base._linalg import (
    TolerancePolicy,
    free_column_count,
    numerical_rank,
    subspace_projector_distance,
)
from darklattice.cli._config import RunConfig
from darklattice.darkmodes import (
    build_mode_transform,
    dark_mode_fock_states,
    equivalence_check,
    qr_relation,
    require_degenerate_frequencies,
    transformed_hamiltonian_check,
)
from darklattice.darkstates import (
    closed_form_family,
    dark_state_count,
    echelon_dark_states,
    solve_dark_states,
    verify_dark,
)
from darklattice.dynamics import run_stirap
from darklattice.export import build_lattice_graph, to_csv, to_dot, to_json
from darklattice.logging import get_logger
from darklattice.models.reports import CheckResult, CountCell, Report

logger = get_logger(__name__)

EQUIVALENCE_TOL = 1e-9
COUNT_COUPLING_RANGE = (0.5, 2.0)
STIRAP_MIN_FIDELITY = 0.99


@dataclass
class CommandResult:
    """
    Output of one command.

    Attributes:
        command (str): Subcommand name.
        artifacts (dict[str, str]): File name to text, in write order.
        stdout (str): What is printed when no output directory is given.
        report (Optional[Report]): Checks whose failure turns the exit status to 1.
    """

    command: str
    artifacts: dict[str, str] = field(default_factory=dict)
    stdout: str = ""
    report: Optional[Report] = None

    @property
    def passed(self) -> bool:
        return self.report is None or self.report.passed


def _format(config: RunConfig, command: str, allowed: tuple[str, ...]) -> str:
    fmt = config.format or allowed[0]
    if fmt not in allowed:
        raise ConfigError(
            "validation", f"format '{fmt}' is not available for {command} (use {allowed})"
        )
    return fmt


def _blocks(config: RunConfig) -> BlockHamiltonian:
    basis = SubspaceBasis.build(config.spec, config.max_lower_dimension)
    return assemble_blocks(basis, config.model_params(), config.frame)


def basis_command(config: RunConfig) -> CommandResult:
    _format(config, "basis", ("json",))
    basis = SubspaceBasis.build(config.spec, config.max_lower_dimension)
    text = to_json(
        {
            "N": basis.spec.N,
            "n": basis.spec.n,
            "upper": [str(state) for state in basis.upper],
            "lower": [str(state) for state in basis.lower],
        }
    )
    return CommandResult("basis", {"basis.json": text}, stdout=text)


def hamiltonian_command(config: RunConfig) -> CommandResult:
    fmt = _format(config, "hamiltonian", ("json", "csv"))
    bh = _blocks(config)
    if bh.params.zero_coupling_modes():
        report = Report(
            checks=[CheckResult.skipped("template", "a zero coupling removes the echelon form")]
        )
    else:
        report = verify_block_template(bh)
    artifacts = {"hamiltonian.json": to_json(bh)}
    if fmt == "csv":
        artifacts["C.csv"] = to_csv(bh.C)
    artifacts["report.json"] = to_json(report)
    return CommandResult("hamiltonian", artifacts, stdout=artifacts["report.json"], report=report)


def _closed_form_check(bh: BlockHamiltonian, numeric, pol: TolerancePolicy) -> CheckResult:
    N, n = bh.spec.N, bh.spec.n
    if N < 2 or (N > 4 and n > 1):
        return CheckResult.skipped("closed_form_span", f"no closed form for N={N}, n={n}")
    family = closed_form_family(N, n, bh.params.g)
    distance = subspace_projector_distance(family.vectors, numeric.vectors, pol)
    return CheckResult.at_most("closed_form_span", distance.spectral, EQUIVALENCE_TOL)


def darkstates_command(config: RunConfig) -> CommandResult:
    """Numerical dark states, their verification and the closed-form span comparison."""
    _format(config, "darkstates", ("json",))
    bh = _blocks(config)
    pol = config.tolerance
    numeric = solve_dark_states(bh, pol, allow_nondegenerate=config.override_degeneracy)
    report = verify_dark(bh, numeric, pol)
    report.checks.append(_closed_form_check(bh, numeric, pol))
    artifacts = {"darkstates.json": to_json(numeric), "report.json": to_json(report)}
    return CommandResult("darkstates", artifacts, stdout=artifacts["report.json"], report=report)


def count_cell(N: int, n: int, seed: int, pol: TolerancePolicy) -> CountCell:
    """
    Dark-state count of one (N, n) cell three ways, with couplings drawn from U(0.5, 2).

    The draw depends only on (seed, N, n), so cells can run in any order.
    """
    rng = np.random.default_rng([seed, N, n])
    g = rng.uniform(*COUNT_COUPLING_RANGE, size=N)
    basis = SubspaceBasis.build(SubspaceSpec(N=N, n=n))
    bh = assemble_blocks(basis, ModelParams.resonant(g))
    cell = CountCell(
        N=N,
        n=n,
        formula=dark_state_count(N, n),
        svd_nullity=basis.n_lower - numerical_rank(bh.C, pol),
        echelon_free_columns=free_column_count(bh.C, pol),
    )
    logger.debug(
        f"Count N={N}, n={n}: formula {cell.formula}, nullity {cell.svd_nullity}, "
        f"free columns {cell.echelon_free_columns}"
    )
    return cell


def count_table(
    N_values, n_values, seed: int = 0, pol: TolerancePolicy = TolerancePolicy(), workers=None
) -> list[CountCell]:
    """
    Count cells for every (N, n) pair, computed on a thread pool.

    Rows come back ordered by N, then n.

    Raises:
        DarkCountMismatch: For the first cell whose three counts disagree
    """
    pairs = list(product(sorted(set(N_values)), sorted(set(n_values))))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        cells = list(
            executor.map(
                count_cell, [N for N, _ in pairs], [n for _, n in pairs], repeat(seed), repeat(pol)
            )
        )
    for cell in cells:
        if not cell.match:
            logger.error(f"Count mismatch: {cell.model_dump()}")
            found = (
                cell.svd_nullity
                if cell.svd_nullity != cell.formula
                else cell.echelon_free_columns
            )
            raise DarkCountMismatch(cell.N, cell.n, cell.formula, found)
    return cells


def count_command(config: RunConfig) -> CommandResult:
    fmt = _format(config, "count", ("json", "csv"))
    options = config.count
    cells = count_table(options.N, options.n, options.seed, config.tolerance, config.workers)
    text = to_json(cells) if fmt == "json" else to_csv(cells)
    return CommandResult("count", {f"count.{fmt}": text}, stdout=text)


def darkmodes_command(config: RunConfig) -> CommandResult:
    """
    Bright/dark mode rotation, the dark-mode Fock states B, the relation A = B R to the raw
    echelon vectors, and the span comparison with the numerical dark states.
    """
    _format(config, "darkmodes", ("json",))
    params = config.model_params()
    require_degenerate_frequencies(params, override=config.override_degeneracy)
    pol = config.tolerance
    T = build_mode_transform(params.g)
    mode_report = transformed_hamiltonian_check(params, T)

    bh = _blocks(config)
    B = dark_mode_fock_states(T, config.spec)
    raw = echelon_dark_states(bh, pol, allow_nondegenerate=config.override_degeneracy)
    numeric = solve_dark_states(bh, pol, allow_nondegenerate=config.override_degeneracy)
    qr = qr_relation(raw.matrix, B)
    distance = equivalence_check(numeric, B, pol)
    verification = verify_dark(bh, B.as_dark_state_set(), pol)

    report = Report(
        checks=mode_report.checks
        + qr.checks
        + [
            verification.check("annihilation").model_copy(update={"name": "B_dark"}),
            CheckResult.at_most("B_orthonormal", B.gram_deviation(), 1e-11),
            CheckResult.at_most("equivalence", distance.spectral, EQUIVALENCE_TOL),
        ]
    )
    artifacts = {
        "darkmodes.json": to_json(
            {"T": T, "B": B, "qr": qr, "mode_coupling": mode_report, "distance": distance}
        ),
        "report.json": to_json(report),
    }
    return CommandResult("darkmodes", artifacts, stdout=artifacts["report.json"], report=report)


def stirap_command(config: RunConfig) -> CommandResult:
    """Two-mode adiabatic transfer of ``n`` photons; writes the summary and the trajectory."""
    fmt = _format(config, "stirap", ("json", "csv"))
    options = config.stirap
    delta = config.model_params().detunings.tolist() if config.omegas else config.delta or 0.0
    result, trajectory, overlap = run_stirap(
        config.n, options.G, options.duration, options.schedule, delta
    )
    report = Report(
        checks=[
            CheckResult(
                name="fidelity",
                value=result.fidelity,
                threshold=STIRAP_MIN_FIDELITY,
                passed=result.fidelity >= STIRAP_MIN_FIDELITY,
            )
        ]
    )
    summary = to_json(result)
    artifacts = {"stirap.json": summary}
    if fmt == "csv":
        artifacts["trajectory.csv"] = to_csv(trajectory, overlap)
    else:
        artifacts["trajectory.json"] = to_json(trajectory)
    return CommandResult("stirap", artifacts, stdout=summary, report=report)


def export_graph_command(config: RunConfig) -> CommandResult:
    fmt = _format(config, "export-graph", ("dot", "json"))
    graph = build_lattice_graph(_blocks(config))
    text = to_dot(graph) if fmt == "dot" else to_json(graph)
    return CommandResult("export-graph", {f"lattice.{fmt}": text}, stdout=text)


COMMANDS: dict[str, Callable[[RunConfig], CommandResult]] = {
    "basis": basis_command,
    "hamiltonian": hamiltonian_command,
    "darkstates": darkstates_command,
    "count": count_command,
    "darkmodes": darkmodes_command,
    "stirap": stirap_command,
    "export-graph": export_graph_command,
}


def run(command: str, config: RunConfig) -> CommandResult:
    """
    Dispatch ``command``.

    Raises:
        ConfigError: For an unknown command name
    """
    try:
        handler = COMMANDS[command]
    except KeyError:
        raise ConfigError("validation", f"unknown command '{command}' (use {sorted(COMMANDS)})")
    logger.info(f"Running {command} for N={config.N}, n={config.n}")
    result = handler(config)
    if not result.passed:
        logger.warning(f"{command}: failed checks {result.report.failed()}")
    return result
