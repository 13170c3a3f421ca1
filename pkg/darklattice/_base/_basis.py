"""
Fock basis of a fixed-excitation subspace of the N-mode Jaynes-Cummings model.

States with the atom excited ("upper") carry n - 1 photons; states with the atom in the
ground state ("lower") carry n photons. Both sectors are listed in the canonical
nested order

    s2 = 0..n, s3 = 0..s2, ..., sN = 0..s(N-1)
    occupations = (n - s2, s2 - s3, ..., s(N-1) - sN, sN)

so the first lower state holds every photon in mode 1 and the last holds every photon
in mode N.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from pydantic import BaseModel, ConfigDict, Field

from darklattice._base._combinatorics import binomial, checked_count
from darklattice._base._exceptions import (
    CapacityExceeded,
    PositionOutOfRange,
    StateNotInSubspace,
)
from darklattice.logging import get_logger

logger = get_logger(__name__)

DEFAULT_MAX_LOWER_DIMENSION = 200_000


class Atom(str, Enum):
    """Level of the two-level atom."""

    GROUND = "g"
    EXCITED = "e"


class Sector(str, Enum):
    """Half of the subspace a basis state lives in."""

    UPPER = "upper"
    LOWER = "lower"


@dataclass(frozen=True)
class FockState:
    """
    Atom level plus one photon number per field mode.

    Instances are immutable and hashable so they can key the basis index maps.
    """

    atom: Atom
    occupations: tuple[int, ...]

    def __post_init__(self):
        if any(o < 0 for o in self.occupations):
            raise ValueError(f"Occupations must be non-negative, got {self.occupations}")
        if not self.occupations:
            raise ValueError("A Fock state needs at least one mode")

    @property
    def N(self) -> int:
        return len(self.occupations)

    @property
    def excitation(self) -> int:
        """Atomic excitation plus total photon number."""
        return int(self.atom == Atom.EXCITED) + sum(self.occupations)

    def with_photon(self, mode: int) -> "FockState":
        """The ground-state partner reached by emitting a photon into ``mode`` (0-based)."""
        occupations = list(self.occupations)
        occupations[mode] += 1
        return FockState(Atom.GROUND, tuple(occupations))

    @classmethod
    def parse(cls, text: str) -> "FockState":
        """Parse the serialized form ``"g:2,0,0"``."""
        try:
            atom, occupations = text.strip().split(":")
            return cls(Atom(atom), tuple(int(o) for o in occupations.split(",")))
        except ValueError as e:
            raise ValueError(f"Cannot parse Fock state '{text}': {e}") from e

    def __str__(self) -> str:
        return f"{self.atom.value}:" + ",".join(str(o) for o in self.occupations)


class SubspaceSpec(BaseModel):
    """
    Identifies the n-excitation subspace of an N-mode model.

    Attributes:
        N (int): Number of field modes, at least 1.
        n (int): Total excitation number, at least 1.
    """

    model_config = ConfigDict(frozen=True)

    N: int = Field(ge=1)
    n: int = Field(ge=1)

    @property
    def upper_dimension(self) -> int:
        return upper_dimension(self)

    @property
    def lower_dimension(self) -> int:
        return lower_dimension(self)

    @property
    def dimension(self) -> int:
        return self.upper_dimension + self.lower_dimension


def upper_dimension(spec: SubspaceSpec) -> int:
    """
    Number of upper states, C(N + n - 2, N - 1).

    Raises:
        CapacityExceeded: If the count does not fit a 64-bit index.
    """
    return checked_count(binomial(spec.N + spec.n - 2, spec.N - 1), "upper dimension")


def lower_dimension(spec: SubspaceSpec) -> int:
    """
    Number of lower states, C(N + n - 1, N - 1).

    Raises:
        CapacityExceeded: If the count does not fit a 64-bit index.
    """
    return checked_count(binomial(spec.N + spec.n - 1, spec.N - 1), "lower dimension")


def canonical_occupations(N: int, total: int) -> Iterator[tuple[int, ...]]:
    """Yield every N-mode occupation tuple with ``total`` photons in canonical order."""
    if N == 1:
        yield (total,)
        return
    for s2 in range(total + 1):
        for rest in canonical_occupations(N - 1, s2):
            yield (total - s2,) + rest


def enumerate_states(spec: SubspaceSpec, sector: Sector) -> list[FockState]:
    """
    List the states of one sector in canonical order.

    Args:
        spec (SubspaceSpec): The subspace
        sector (Sector): Upper (atom excited, n - 1 photons) or lower (atom ground, n photons)

    Returns:
        list[FockState]: Exactly ``upper_dimension`` or ``lower_dimension`` states
    """
    sector = Sector(sector)
    if sector == Sector.UPPER:
        atom, photons = Atom.EXCITED, spec.n - 1
    else:
        atom, photons = Atom.GROUND, spec.n
    return [FockState(atom, occ) for occ in canonical_occupations(spec.N, photons)]


class SubspaceBasis:
    """
    Ordered upper and lower basis of an n-excitation subspace with index maps both ways.

    Build with ``SubspaceBasis.build(spec)``; the object is read-only afterwards.
    """

    def __init__(self, spec: SubspaceSpec, upper: list[FockState], lower: list[FockState]):
        self.spec = spec
        self.upper: tuple[FockState, ...] = tuple(upper)
        self.lower: tuple[FockState, ...] = tuple(lower)
        self._index: dict[FockState, tuple[Sector, int]] = {}
        for position, state in enumerate(self.upper):
            self._index[state] = (Sector.UPPER, position)
        for position, state in enumerate(self.lower):
            self._index[state] = (Sector.LOWER, position)

    @classmethod
    def build(
        cls,
        spec: SubspaceSpec,
        max_lower_dimension: Optional[int] = DEFAULT_MAX_LOWER_DIMENSION,
    ) -> "SubspaceBasis":
        """
        Enumerate both sectors of ``spec``.

        Args:
            spec (SubspaceSpec): The subspace to enumerate
            max_lower_dimension (Optional[int]): Refuse larger subspaces; ``None`` disables
                the guard

        Raises:
            CapacityExceeded: If the lower sector is larger than ``max_lower_dimension``
        """
        size = lower_dimension(spec)
        if max_lower_dimension is not None and size > max_lower_dimension:
            logger.warning(
                f"Refusing N={spec.N}, n={spec.n}: {size} lower states "
                f"(limit {max_lower_dimension})"
            )
            raise CapacityExceeded("lower dimension", size, max_lower_dimension)
        basis = cls(
            spec,
            enumerate_states(spec, Sector.UPPER),
            enumerate_states(spec, Sector.LOWER),
        )
        logger.debug(f"Built basis N={spec.N}, n={spec.n}: {len(basis.upper)}+{len(basis.lower)}")
        return basis

    @property
    def n_upper(self) -> int:
        return len(self.upper)

    @property
    def n_lower(self) -> int:
        return len(self.lower)

    @property
    def dimension(self) -> int:
        return self.n_upper + self.n_lower

    def sector(self, sector: Sector) -> tuple[FockState, ...]:
        return self.upper if Sector(sector) == Sector.UPPER else self.lower

    def states(self) -> list[FockState]:
        """Upper states followed by lower states, the row order of the full matrix."""
        return list(self.upper) + list(self.lower)

    def index_of(self, state: FockState) -> tuple[Sector, int]:
        return index_of(state, self)

    def state_at(self, sector: Sector, position: int) -> FockState:
        return state_at(sector, position, self)

    def __contains__(self, state: FockState) -> bool:
        return state in self._index

    def __repr__(self) -> str:
        return f"SubspaceBasis(N={self.spec.N}, n={self.spec.n})"


def index_of(state: FockState, basis: SubspaceBasis) -> tuple[Sector, int]:
    """
    Locate ``state`` in ``basis``.

    Returns:
        tuple[Sector, int]: The sector and 0-based position

    Raises:
        StateNotInSubspace: If the mode count or excitation number do not match
    """
    if state.N != basis.spec.N:
        raise StateNotInSubspace(state, f"has {state.N} modes, basis has {basis.spec.N}")
    if state.excitation != basis.spec.n:
        raise StateNotInSubspace(
            state, f"excitation {state.excitation} differs from n={basis.spec.n}"
        )
    return basis._index[state]


def state_at(sector: Sector, position: int, basis: SubspaceBasis) -> FockState:
    """
    Inverse of ``index_of``.

    Raises:
        PositionOutOfRange: If ``position`` is not inside the sector
    """
    states = basis.sector(sector)
    if not 0 <= position < len(states):
        raise PositionOutOfRange(Sector(sector).value, position, len(states))
    return states[position]


def block_sizes(basis: SubspaceBasis, sector: Sector) -> list[int]:
    """
    Number of consecutive states sharing the same photon count in mode 1.

    Blocks run over s2 = 0..n (lower) or s2' = 0..n-1 (upper), i.e. over mode-1 occupation
    from highest to lowest. For N >= 2 the sizes are C(N + s - 2, N - 2).
    """
    sizes: list[int] = []
    previous = None
    for state in basis.sector(sector):
        if state.occupations[0] != previous:
            sizes.append(0)
            previous = state.occupations[0]
        sizes[-1] += 1
    return sizes


def excitation_operator_diagonal(basis: SubspaceBasis) -> list[int]:
    """Excitation number of each basis state in full-matrix order."""
    return [state.excitation for state in basis.states()]
