"""
Adiabatic photon transfer between two modes through the dark state.

A two-mode run starts in |g, 0, n>, the dark state at theta = 0, and follows the
instantaneous dark state to |g, n, 0> as theta sweeps to pi/2.
"""

from concurrent.futures import ThreadPoolExecutor
from itertools import repeat
from typing import Optional, Sequence, Union

import numpy as np

from darklattice._base._basis import Atom, FockState, SubspaceBasis, SubspaceSpec
from darklattice._base._exceptions import DimensionMismatch
from darklattice._base._hamiltonian import ModelParams
from darklattice.darkstates._closed_form import two_mode_mixing_angle_form
from darklattice.dynamics._propagate import IntegratorParams, Trajectory, propagate
from darklattice.dynamics._schedule import PulseSchedule, ScheduleKind, make_schedule
from darklattice.logging import get_logger
from darklattice.models.reports import StirapResult

logger = get_logger(__name__)


def _unit_state(basis: SubspaceBasis, state: FockState) -> np.ndarray:
    psi = np.zeros(basis.dimension, dtype=complex)
    psi[basis.states().index(state)] = 1.0
    return psi


def instantaneous_dark_overlap(trajectory: Trajectory, schedule: PulseSchedule) -> np.ndarray:
    """
    |<D(theta(t)) | psi(t)>|^2 at every recorded time of a two-mode run.

    Raises:
        DimensionMismatch: If the run is not two-mode
    """
    spec = trajectory.basis.spec
    if spec.N != 2 or schedule.N != 2:
        raise DimensionMismatch("instantaneous_dark_overlap (mode count)", 2, spec.N)
    n_upper = trajectory.basis.n_upper
    overlaps = np.empty(len(trajectory.times))
    for i, (t, psi) in enumerate(zip(trajectory.times, trajectory.states)):
        dark = two_mode_mixing_angle_form(spec.n, schedule.theta(t))
        overlaps[i] = abs(np.vdot(dark, psi[n_upper:])) ** 2
    return overlaps


def run_stirap(
    n: int,
    G: float,
    duration: float,
    schedule: Union[ScheduleKind, str] = ScheduleKind.THETA_RAMP,
    delta: Union[float, Sequence[float]] = 0.0,
    integrator: Optional[IntegratorParams] = None,
) -> tuple[StirapResult, Trajectory, np.ndarray]:
    """
    Transfer n photons from mode 2 to mode 1 along a two-mode schedule.

    Args:
        n (int): Photon number
        G (float): Coupling magnitude
        duration (float): Schedule duration T
        schedule (ScheduleKind | str): ``theta_ramp`` or ``sin2_overlap``
        delta (float | Sequence[float]): Common detuning of both modes, or one detuning
            per mode
        integrator (Optional[IntegratorParams]): RK4 settings

    Returns:
        tuple[StirapResult, Trajectory, np.ndarray]: Summary, trajectory and the
            instantaneous dark overlap series

    Raises:
        DimensionMismatch: If per-mode detunings are not a pair
    """
    pulses = make_schedule(schedule, {"duration": duration, "G": G})
    basis = SubspaceBasis.build(SubspaceSpec(N=2, n=n))
    detunings = np.atleast_1d(np.asarray(delta, dtype=float))
    if detunings.size == 1:
        detunings = np.repeat(detunings, 2)
    if detunings.shape != (2,):
        raise DimensionMismatch("stirap detunings", 2, detunings.size)
    params = ModelParams(omega0=1.0, omegas=(1.0 - detunings).tolist(), g=[G, G])
    psi0 = _unit_state(basis, FockState(Atom.GROUND, (0, n)))
    target = _unit_state(basis, FockState(Atom.GROUND, (n, 0)))

    trajectory = propagate(basis, params, pulses, psi0, integrator or IntegratorParams())
    overlap = instantaneous_dark_overlap(trajectory, pulses)
    fidelity = float(abs(np.vdot(target, trajectory.final)) ** 2)
    result = StirapResult(
        n=n,
        G=G,
        duration=duration,
        fidelity=fidelity,
        min_dark_overlap=float(overlap.min()),
        steps=trajectory.steps,
        norm_drift=trajectory.norm_drift,
    )
    logger.info(f"Transfer n={n}, G={G}, T={duration}: fidelity {fidelity:.6f}")
    return result, trajectory, overlap


def stirap_fidelity(
    n: int,
    G: float,
    schedule: Union[ScheduleKind, str] = ScheduleKind.THETA_RAMP,
    duration: float = 200.0,
    delta: float = 0.0,
) -> float:
    """|<g, n, 0 | psi(T)>|^2 after a run started in |g, 0, n>."""
    result, _, _ = run_stirap(n, G, duration, schedule, delta)
    return result.fidelity


def _ladder_cell(
    duration: float, n: int, G: float, schedule: ScheduleKind, delta: float
) -> StirapResult:
    return run_stirap(n, G, duration, schedule, delta)[0]


def fidelity_ladder(
    n: int,
    G: float,
    durations: Sequence[float],
    schedule: Union[ScheduleKind, str] = ScheduleKind.THETA_RAMP,
    delta: float = 0.0,
    workers: Optional[int] = None,
) -> list[StirapResult]:
    """
    Transfer results for several durations, run concurrently.

    Results come back in the order of ``durations``. A fidelity that drops while the
    duration grows is logged, not raised.
    """
    schedule = ScheduleKind(schedule)
    with ThreadPoolExecutor(max_workers=workers) as executor:
        results = list(
            executor.map(
                _ladder_cell, durations, repeat(n), repeat(G), repeat(schedule), repeat(delta)
            )
        )
    ordered = sorted(results, key=lambda r: r.duration)
    for shorter, longer in zip(ordered, ordered[1:]):
        if longer.fidelity < shorter.fidelity:
            logger.warning(
                f"Fidelity fell from {shorter.fidelity:.6f} at T={shorter.duration} "
                f"to {longer.fidelity:.6f} at T={longer.duration}"
            )
    return results
