"""
Schrodinger propagation inside one excitation subspace.

The Hamiltonian at time t is H(t) = D + sum_j g_j(t) K_j, where D holds the diagonal
blocks U and L of the chosen frame and K_j is the symmetric unit-coupling pattern of
mode j. Amplitudes are complex; H stays real symmetric. Because H never connects
different excitation numbers, the state cannot leave the subspace.
"""

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg
from pydantic import BaseModel, ConfigDict, Field

from darklattice._base._basis import SubspaceBasis
from darklattice._base._exceptions import (
    DimensionMismatch,
    DriftBudgetExceeded,
    InvalidInitialState,
    NonFiniteInput,
)
from darklattice._base._hamiltonian import (
    Frame,
    ModelParams,
    assemble_blocks,
    coupling_patterns,
)
from darklattice.dynamics._schedule import PulseSchedule, ScheduleKind
from darklattice.logging import get_logger

logger = get_logger(__name__)

NORMALIZATION_TOL = 1e-10
_NORM_SAMPLES = 33


class IntegratorParams(BaseModel):
    """
    Settings of the fixed-step RK4 integrator.

    Attributes:
        drift_budget (float): Largest accepted max | ||psi|| - 1 | over a run.
        step_scale (float): Initial step as a fraction of 1 / max ||H(t)||.
        max_halvings (int): Step halvings tried before giving up.
        fixed_steps (Optional[int]): Run exactly this many steps, without the drift check.
        max_samples (int): Upper bound on recorded time points (the end point is always kept).
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    drift_budget: float = Field(default=1e-8, gt=0.0)
    step_scale: float = Field(default=0.1, gt=0.0, le=1.0)
    max_halvings: int = Field(default=12, ge=0)
    fixed_steps: Optional[int] = Field(default=None, ge=1)
    max_samples: int = Field(default=2001, ge=2)


@dataclass
class Trajectory:
    """
    Sampled solution of a propagation.

    Attributes:
        basis (SubspaceBasis): Basis the amplitudes refer to (upper states first).
        times (np.ndarray): Recorded times.
        states (np.ndarray): Complex amplitudes, one row per recorded time.
        steps (int): Integration steps of the accepted run.
        norm_drift (float): max | ||psi|| - 1 | over every step, recorded or not.
    """

    basis: SubspaceBasis
    times: np.ndarray
    states: np.ndarray
    steps: int
    norm_drift: float

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def step_size(self) -> float:
        return float(self.times[-1] - self.times[0]) / self.steps

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)

    def populations(self) -> np.ndarray:
        return np.abs(self.states) ** 2


class _TimeDependentHamiltonian:
    def __init__(
        self,
        basis: SubspaceBasis,
        params: ModelParams,
        schedule: PulseSchedule,
        frame: Frame,
    ):
        if not (basis.spec.N == params.N == schedule.N):
            raise DimensionMismatch(
                "propagation (mode count of basis, params, schedule)",
                basis.spec.N,
                (params.N, schedule.N),
            )
        bh = assemble_blocks(basis, params, frame)
        self.schedule = schedule
        self.diagonal = np.diag(np.concatenate([bh.U, bh.L]))
        self.patterns = [
            np.block(
                [
                    [np.zeros((basis.n_upper, basis.n_upper)), K],
                    [K.T, np.zeros((basis.n_lower, basis.n_lower))],
                ]
            )
            for K in coupling_patterns(basis)
        ]

    def __call__(self, t: float) -> np.ndarray:
        g = self.schedule.couplings(t)
        return self.diagonal + sum(gj * K for gj, K in zip(g, self.patterns))

    def max_norm(self) -> float:
        grid = np.linspace(0.0, self.schedule.duration, _NORM_SAMPLES)
        return max(float(np.linalg.norm(self(t), 2)) for t in grid)


def _initial_state(psi0: Sequence[complex], basis: SubspaceBasis) -> np.ndarray:
    psi0 = np.asarray(psi0, dtype=complex).ravel()
    if psi0.shape != (basis.dimension,):
        raise DimensionMismatch("initial state", basis.dimension, psi0.shape)
    if not np.all(np.isfinite(psi0)):
        raise NonFiniteInput("initial state")
    norm = float(np.linalg.norm(psi0))
    if abs(norm - 1.0) > NORMALIZATION_TOL:
        raise InvalidInitialState(f"norm is {norm:.12g}, expected 1")
    return psi0


def _record_stride(steps: int, max_samples: int) -> int:
    return max(1, math.ceil(steps / (max_samples - 1)))


def _rk4_run(
    H: _TimeDependentHamiltonian, psi0: np.ndarray, steps: int, max_samples: int
) -> tuple[np.ndarray, np.ndarray, float]:
    T = H.schedule.duration
    h = T / steps
    stride = _record_stride(steps, max_samples)
    psi = psi0.copy()
    times, states = [0.0], [psi.copy()]
    drift = 0.0

    def rhs(t, state):
        return -1j * (H(t) @ state)

    for i in range(steps):
        t = i * h
        k1 = rhs(t, psi)
        k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1)
        k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2)
        k4 = rhs(t + h, psi + h * k3)
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        drift = max(drift, abs(float(np.linalg.norm(psi)) - 1.0))
        if (i + 1) % stride == 0 or i + 1 == steps:
            times.append((i + 1) * h)
            states.append(psi.copy())
    return np.array(times), np.array(states), drift


def _initial_step(integrator: IntegratorParams, schedule: PulseSchedule, scale: float) -> float:
    # RK4 loses about z**6 / 144 of norm per step at z = h * ||H||
    budgeted = (144.0 * integrator.drift_budget / (schedule.duration * scale)) ** 0.2
    return min(integrator.step_scale, budgeted)


def propagate(
    basis: SubspaceBasis,
    params: ModelParams,
    schedule: PulseSchedule,
    psi0: Sequence[complex],
    integrator: IntegratorParams = IntegratorParams(),
    frame: Frame = Frame.ROTATING,
) -> Trajectory:
    """
    Integrate i dpsi/dt = H(t) psi over [0, T] with fixed-step RK4.

    The couplings of ``params`` are ignored; the schedule supplies g(t). The initial step is
    z0 / max ||H(t)||, with z0 the smaller of ``step_scale`` and the value the RK4 norm
    loss predicts for the budget. The step is halved until the norm drift of the whole run
    is within ``drift_budget``.

    Raises:
        DimensionMismatch: If basis, params and schedule disagree on N, or psi0 on length
        InvalidInitialState: If psi0 is not normalized
        DriftBudgetExceeded: If the budget is still exceeded after ``max_halvings`` halvings
    """
    H = _TimeDependentHamiltonian(basis, params, schedule, Frame(frame))
    psi0 = _initial_state(psi0, basis)

    if integrator.fixed_steps is not None:
        times, states, drift = _rk4_run(H, psi0, integrator.fixed_steps, integrator.max_samples)
        return Trajectory(basis, times, states, integrator.fixed_steps, drift)

    scale = H.max_norm() or 1.0
    z0 = _initial_step(integrator, schedule, scale)
    steps = max(1, math.ceil(schedule.duration * scale / z0))
    for attempt in range(integrator.max_halvings + 1):
        times, states, drift = _rk4_run(H, psi0, steps, integrator.max_samples)
        if drift <= integrator.drift_budget:
            logger.debug(f"RK4 accepted {steps} steps with norm drift {drift:.3e}")
            return Trajectory(basis, times, states, steps, drift)
        if attempt < integrator.max_halvings:
            logger.info(f"Norm drift {drift:.3e} above budget at {steps} steps; halving the step")
            steps *= 2
    raise DriftBudgetExceeded(drift, integrator.drift_budget, steps)


def propagate_exact(
    basis: SubspaceBasis,
    params: ModelParams,
    schedule: PulseSchedule,
    psi0: Sequence[complex],
    steps: int = 1,
    frame: Frame = Frame.ROTATING,
) -> Trajectory:
    """
    Piecewise-constant propagation with the midpoint Hamiltonian of each step.

    Each step applies V exp(-i E h) V^T from ``scipy.linalg.eigh``. For a constant schedule
    the result is exact for any ``steps``.
    """
    H = _TimeDependentHamiltonian(basis, params, schedule, Frame(frame))
    psi = _initial_state(psi0, basis)
    h = schedule.duration / steps
    times, states = [0.0], [psi.copy()]
    drift = 0.0
    cached = None
    for i in range(steps):
        if cached is None or schedule.kind != ScheduleKind.CONSTANT:
            cached = scipy.linalg.eigh(H((i + 0.5) * h))
        energies, vectors = cached
        psi = vectors @ (np.exp(-1j * energies * h) * (vectors.T @ psi))
        drift = max(drift, abs(float(np.linalg.norm(psi)) - 1.0))
        times.append((i + 1) * h)
        states.append(psi.copy())
    return Trajectory(basis, np.array(times), np.array(states), steps, drift)


def convergence_ratio(
    basis: SubspaceBasis,
    params: ModelParams,
    schedule: PulseSchedule,
    psi0: Sequence[complex],
    steps: int,
    frame: Frame = Frame.ROTATING,
) -> float:
    """
    Ratio of final-state errors of RK4 at ``steps`` and ``2 * steps``.

    The reference is the exact propagator for a constant schedule and an RK4 run with 16
    times as many steps otherwise. A fourth-order method gives a ratio near 16.
    """
    if schedule.kind == ScheduleKind.CONSTANT:
        reference = propagate_exact(basis, params, schedule, psi0, 1, frame).final
    else:
        fine = IntegratorParams(fixed_steps=16 * steps, max_samples=2)
        reference = propagate(basis, params, schedule, psi0, fine, frame).final
    errors = []
    for count in (steps, 2 * steps):
        run = propagate(
            basis, params, schedule, psi0, IntegratorParams(fixed_steps=count, max_samples=2), frame
        )
        errors.append(float(np.linalg.norm(run.final - reference)))
    return errors[0] / errors[1]


def trajectory_to_csv(trajectory: Trajectory, overlap: Optional[Sequence[float]] = None) -> str:
    """
    CSV with columns time, one population per basis state, norm and (optionally) the
    instantaneous dark overlap.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["time"] + [f"p[{state}]" for state in trajectory.basis.states()] + ["norm"]
    if overlap is not None:
        if len(overlap) != len(trajectory.times):
            raise DimensionMismatch("trajectory overlap", len(trajectory.times), len(overlap))
        header.append("dark_overlap")
    writer.writerow(header)
    populations = trajectory.populations()
    norms = trajectory.norms()
    for i, t in enumerate(trajectory.times):
        row = [repr(float(t))] + [repr(float(p)) for p in populations[i]] + [repr(float(norms[i]))]
        if overlap is not None:
            row.append(repr(float(overlap[i])))
        writer.writerow(row)
    return buffer.getvalue()
