"""
Pydantic models for the JSON run configuration read by the ``darklattice`` command.

A minimal file describes the model and the subspace::

    {"N": 2, "n": 1, "g": [1, 1], "omega0": 1, "omegas": [1, 1]}

Optional sections tune individual commands::

    {
      "tolerance": {"rank_eps": 1e-12, "residual_eps": 1e-10},
      "count": {"N": "2..4", "n": "1..3", "seed": 0},
      "stirap": {"G": 1.0, "T": 200.0, "schedule": "theta_ramp"}
    }

Unknown keys are rejected. Command-line flags override file values.
"""

import json
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from darklattice._base._basis import DEFAULT_MAX_LOWER_DIMENSION, SubspaceSpec
from darklattice._base._exceptions import ConfigError, ParameterValidationError
from darklattice._base._hamiltonian import Frame, ModelParams
from darklattice._base._linalg import TolerancePolicy
from darklattice.dynamics._schedule import ScheduleKind

OutputFormat = Literal["json", "dot", "csv"]


def parse_range(value: Union[str, int, list]) -> list[int]:
    """Expand ``"a..b"`` (inclusive), a bare integer or a list into a list of integers."""
    if isinstance(value, bool):
        raise ValueError(f"Invalid range {value!r}")
    if isinstance(value, int):
        return [value]
    if isinstance(value, list):
        return [int(v) for v in value]
    text = str(value).strip()
    if ".." in text:
        start, _, stop = text.partition("..")
        try:
            low, high = int(start), int(stop)
        except ValueError:
            raise ValueError(f"Invalid range '{value}': use 'a..b' with integers")
        if high < low:
            raise ValueError(f"Invalid range '{value}': end is below start")
        return list(range(low, high + 1))
    try:
        return [int(text)]
    except ValueError:
        raise ValueError(f"Invalid range '{value}': use an integer or 'a..b'")


class CountOptions(BaseModel):
    """
    Grid of the ``count`` command.

    Attributes:
        N (list[int]): Mode counts; accepts ``"a..b"``.
        n (list[int]): Excitation numbers; accepts ``"a..b"``.
        seed (int): Seed of the coupling draws, one draw from U(0.5, 2) per mode and cell.
    """

    model_config = ConfigDict(extra="forbid")

    N: list[int] = Field(default_factory=lambda: [2, 3, 4])
    n: list[int] = Field(default_factory=lambda: [1, 2, 3])
    seed: int = 0

    @field_validator("N", "n", mode="before")
    @classmethod
    def _expand(cls, v):
        return parse_range(v)

    @field_validator("N", "n")
    @classmethod
    def _positive(cls, v: list[int]) -> list[int]:
        if not v or min(v) < 1:
            raise ValueError("every entry must be at least 1")
        return v


class StirapOptions(BaseModel):
    """
    Two-mode transfer run of the ``stirap`` command.

    Attributes:
        G (float): Coupling magnitude.
        T (Optional[float]): Duration; defaults to 200 / G.
        schedule (ScheduleKind): ``theta_ramp`` or ``sin2_overlap``.
    """

    model_config = ConfigDict(extra="forbid")

    G: float = Field(default=1.0, gt=0.0)
    T: Optional[float] = Field(default=None, gt=0.0)
    schedule: ScheduleKind = ScheduleKind.THETA_RAMP

    @field_validator("schedule")
    @classmethod
    def _two_mode(cls, v: ScheduleKind) -> ScheduleKind:
        if v == ScheduleKind.CONSTANT:
            raise ValueError("stirap needs a time-dependent schedule")
        return v

    @property
    def duration(self) -> float:
        return self.T if self.T is not None else 200.0 / self.G


class RunConfig(BaseModel):
    """
    Validated run configuration.

    Attributes:
        N (Optional[int]): Mode count; taken from ``len(g)`` when omitted.
        n (int): Excitation number, at least 1.
        g (list[float]): Couplings, one per mode.
        omega0 (float): Atomic frequency.
        omegas (Optional[list[float]]): Mode frequencies. Defaults to ``omega0 - delta``.
        delta (Optional[float]): Common detuning, used when ``omegas`` is omitted.
        frame (Frame): Energy reference of the diagonal blocks.
        tolerance (TolerancePolicy): Rank and residual thresholds.
        override_degeneracy (bool): Run dark-state and dark-mode commands with unequal
            detunings or frequencies.
        max_lower_dimension (int): Largest lower sector a command may build.
        count (CountOptions): Options of ``count``.
        stirap (StirapOptions): Options of ``stirap``.
        out (Optional[str]): Output directory; results go to stdout when omitted.
        format (Optional[OutputFormat]): Artifact format; each command has its own default.
        workers (Optional[int]): Worker threads for ``count``.
    """

    model_config = ConfigDict(extra="forbid")

    N: Optional[int] = Field(default=None, ge=1)
    n: int = Field(default=1, ge=1)
    g: list[float] = Field(min_length=1)
    omega0: float = 1.0
    omegas: Optional[list[float]] = None
    delta: Optional[float] = None
    frame: Frame = Frame.ROTATING
    tolerance: TolerancePolicy = Field(default_factory=TolerancePolicy)
    override_degeneracy: bool = False
    max_lower_dimension: int = Field(default=DEFAULT_MAX_LOWER_DIMENSION, ge=1)
    count: CountOptions = Field(default_factory=CountOptions)
    stirap: StirapOptions = Field(default_factory=StirapOptions)
    out: Optional[str] = None
    format: Optional[OutputFormat] = None
    workers: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _consistent(self):
        if self.N is None:
            self.N = len(self.g)
        elif self.N != len(self.g):
            raise ValueError(f"N is {self.N} but g has {len(self.g)} entries")
        if self.omegas is not None and self.delta is not None:
            raise ValueError("give either omegas or delta, not both")
        try:
            self.model_params()
        except ParameterValidationError as e:
            raise ValueError(str(e))
        return self

    @property
    def spec(self) -> SubspaceSpec:
        return SubspaceSpec(N=self.N, n=self.n)

    def model_params(self) -> ModelParams:
        if self.omegas is not None:
            return ModelParams(omega0=self.omega0, omegas=self.omegas, g=self.g)
        return ModelParams.resonant(self.g, delta=self.delta or 0.0, omega0=self.omega0)

    def hashed_fields(self) -> dict[str, Any]:
        """Fields that determine the computed results (output options excluded)."""
        return self.model_dump(mode="json", exclude={"out", "format", "workers"})


def build_config(data: dict[str, Any]) -> RunConfig:
    """
    Validate a decoded configuration.

    Raises:
        ConfigError: Naming every offending key
    """
    if not isinstance(data, dict):
        raise ConfigError("validation", "the top level must be a JSON object")
    try:
        return RunConfig(**data)
    except ValidationError as e:
        raise ConfigError("validation", str(e))


def parse_config(text: str) -> RunConfig:
    """
    Parse and validate JSON configuration text.

    Raises:
        ConfigError: With line and column for malformed JSON, or the offending key
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("parse", f"{e.msg} (line {e.lineno}, column {e.colno})")
    return build_config(data)


def load_config(path: Union[str, Path]) -> dict[str, Any]:
    """
    Read a configuration file without validating it, so flags can be merged first.

    Raises:
        FileNotFoundError: If ``path`` does not exist
        ConfigError: If the file is not valid JSON
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError("parse", f"{path}: {e.msg} (line {e.lineno}, column {e.colno})")


def merge_overrides(data: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Flag values win over file values; nested sections are merged key by key."""
    merged = dict(data)
    for key, value in overrides.items():
        if value is None:
            continue
        if isinstance(value, dict):
            section = dict(merged.get(key) or {})
            section.update({k: v for k, v in value.items() if v is not None})
            if section:
                merged[key] = section
        else:
            merged[key] = value
    return merged
