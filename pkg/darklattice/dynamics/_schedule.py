"""
Time-dependent coupling schedules.

Two-mode schedules are parameterized by the mixing angle theta with tan(theta) = g2 / g1.
Sweeping theta from 0 to pi/2 moves the instantaneous dark state from |g, 0, n> to
|g, n, 0>.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from darklattice._base._exceptions import InvalidSchedule

_MAGNITUDE_SAMPLES = 1001


class ScheduleKind(str, Enum):
    THETA_RAMP = "theta_ramp"
    SIN2_OVERLAP = "sin2_overlap"
    CONSTANT = "constant"


class ScheduleParams(BaseModel):
    """
    Parameters of a coupling schedule.

    Attributes:
        duration (float): Total time T (hbar = 1).
        G (float): Coupling magnitude of the two-mode schedules.
        g0 (Optional[tuple[float, ...]]): Fixed couplings of the constant schedule.
        pulse_fraction (float): Length of each sin^2 pulse as a fraction of T; the two pulses
            overlap when it exceeds 1/2.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    duration: float = Field(gt=0.0)
    G: float = Field(default=1.0, ge=0.0)
    g0: Optional[tuple[float, ...]] = None
    pulse_fraction: float = Field(default=2.0 / 3.0, gt=0.5, le=1.0)

    @model_validator(mode="after")
    def _finite(self):
        values = [self.duration, self.G, *(self.g0 or ())]
        if not all(math.isfinite(v) for v in values):
            raise ValueError("schedule parameters must be finite")
        return self


def smoothstep(x: float) -> float:
    """3x^2 - 2x^3 on [0, 1], clamped outside."""
    x = min(max(x, 0.0), 1.0)
    return x * x * (3.0 - 2.0 * x)


@dataclass(frozen=True)
class PulseSchedule:
    """
    Couplings g(t) on [0, T].

    Attributes:
        kind (ScheduleKind): Shape of the schedule.
        params (ScheduleParams): Its parameters.
        N (int): Number of modes the schedule drives.
        max_magnitude (float): max ||g(t)|| over a fine grid of [0, T].
    """

    kind: ScheduleKind
    params: ScheduleParams
    N: int
    max_magnitude: float = 0.0

    @property
    def duration(self) -> float:
        return self.params.duration

    def couplings(self, t: float) -> np.ndarray:
        """g(t) as an array of N couplings."""
        p = self.params
        match self.kind:
            case ScheduleKind.CONSTANT:
                return np.asarray(p.g0, dtype=float)
            case ScheduleKind.THETA_RAMP:
                theta = 0.5 * math.pi * smoothstep(t / p.duration)
                return p.G * np.array([math.cos(theta), math.sin(theta)])
            case ScheduleKind.SIN2_OVERLAP:
                length = p.pulse_fraction * p.duration
                return p.G * np.array(
                    [_sin2_pulse(t, 0.0, length), _sin2_pulse(t, p.duration - length, length)]
                )
        raise InvalidSchedule(str(self.kind), "unknown kind")

    def theta(self, t: float) -> float:
        """
        Mixing angle atan2(g2, g1) of a two-mode schedule.

        Where both couplings vanish the angle is taken from the side of the schedule:
        0 in the first half, pi/2 in the second.

        Raises:
            InvalidSchedule: If the schedule does not drive exactly two modes
        """
        if self.N != 2:
            raise InvalidSchedule(self.kind.value, "mixing angle needs a two-mode schedule")
        if self.kind == ScheduleKind.THETA_RAMP:
            return 0.5 * math.pi * smoothstep(t / self.duration)
        g1, g2 = self.couplings(t)
        if g1 == 0.0 and g2 == 0.0:
            return 0.0 if t < 0.5 * self.duration else 0.5 * math.pi
        return math.atan2(g2, g1)


def _sin2_pulse(t: float, start: float, length: float) -> float:
    x = (t - start) / length
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return math.sin(math.pi * x) ** 2


def make_schedule(
    kind: Union[ScheduleKind, str], params: Union[ScheduleParams, dict]
) -> PulseSchedule:
    """
    Build a schedule.

    ``theta_ramp`` sets g1 = G cos(theta), g2 = G sin(theta) with theta rising from 0 to
    pi/2 along a smoothstep. ``sin2_overlap`` plays two sin^2 pulses in counterintuitive
    order (g1 first, g2 last). ``constant`` holds ``g0``.

    Raises:
        InvalidSchedule: For an unknown kind or parameters that do not fit it
    """
    try:
        kind = ScheduleKind(kind)
    except ValueError:
        choices = ", ".join(k.value for k in ScheduleKind)
        raise InvalidSchedule(str(kind), f"kind must be one of {choices}")
    if isinstance(params, dict):
        try:
            params = ScheduleParams(**params)
        except ValidationError as e:
            raise InvalidSchedule(kind.value, str(e))

    if kind == ScheduleKind.CONSTANT:
        if not params.g0:
            raise InvalidSchedule(kind.value, "g0 is required for a constant schedule")
        N = len(params.g0)
    else:
        if params.g0 is not None:
            raise InvalidSchedule(kind.value, "g0 only applies to the constant schedule")
        N = 2

    schedule = PulseSchedule(kind=kind, params=params, N=N)
    grid = np.linspace(0.0, params.duration, _MAGNITUDE_SAMPLES)
    magnitude = max(float(np.linalg.norm(schedule.couplings(t))) for t in grid)
    return PulseSchedule(kind=kind, params=params, N=N, max_magnitude=magnitude)
