from darklattice.dynamics._schedule import (
    PulseSchedule,
    ScheduleKind,
    ScheduleParams,
    make_schedule,
    smoothstep,
)
from darklattice.dynamics._propagate import (
    IntegratorParams,
    Trajectory,
    convergence_ratio,
    propagate,
    propagate_exact,
    trajectory_to_csv,
)
from darklattice.dynamics._stirap import (
    fidelity_ladder,
    instantaneous_dark_overlap,
    run_stirap,
    stirap_fidelity,
)


__all__ = [
    "PulseSchedule",
    "ScheduleKind",
    "ScheduleParams",
    "make_schedule",
    "smoothstep",
    "IntegratorParams",
    "Trajectory",
    "convergence_ratio",
    "propagate",
    "propagate_exact",
    "trajectory_to_csv",
    "fidelity_ladder",
    "instantaneous_dark_overlap",
    "run_stirap",
    "stirap_fidelity",
]
