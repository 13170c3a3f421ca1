import pytest

from darklattice._base._basis import (
    Atom,
    FockState,
    Sector,
    SubspaceBasis,
    SubspaceSpec,
    block_sizes,
    canonical_occupations,
    enumerate_states,
    excitation_operator_diagonal,
    lower_dimension,
    upper_dimension,
)
from darklattice._base._exceptions import (
    CapacityExceeded,
    PositionOutOfRange,
    StateNotInSubspace,
)


def test_three_mode_double_excitation_order():
    """Lower states of N=3, n=2 follow the canonical nested order"""
    states = enumerate_states(SubspaceSpec(N=3, n=2), Sector.LOWER)
    assert [s.occupations for s in states] == [
        (2, 0, 0),
        (1, 1, 0),
        (1, 0, 1),
        (0, 2, 0),
        (0, 1, 1),
        (0, 0, 2),
    ]
    assert all(s.atom == Atom.GROUND for s in states)


def test_three_mode_triple_excitation_upper_order():
    """Upper states carry n - 1 photons with the atom excited"""
    states = enumerate_states(SubspaceSpec(N=3, n=3), Sector.UPPER)
    assert [str(s) for s in states] == [
        "e:2,0,0",
        "e:1,1,0",
        "e:1,0,1",
        "e:0,2,0",
        "e:0,1,1",
        "e:0,0,2",
    ]


@pytest.mark.parametrize(
    "N, n, upper, lower",
    [(2, 1, 1, 2), (2, 3, 3, 4), (3, 2, 3, 6), (3, 3, 6, 10), (4, 2, 4, 10), (4, 3, 10, 20)],
)
def test_dimensions(N, n, upper, lower):
    """Sector sizes are C(N+n-2, N-1) and C(N+n-1, N-1)"""
    spec = SubspaceSpec(N=N, n=n)
    assert upper_dimension(spec) == upper
    assert lower_dimension(spec) == lower
    basis = SubspaceBasis.build(spec)
    assert (basis.n_upper, basis.n_lower) == (upper, lower)
    assert spec.dimension == upper + lower


def test_single_mode():
    """A single mode has one upper and one lower state"""
    basis = SubspaceBasis.build(SubspaceSpec(N=1, n=4))
    assert [str(s) for s in basis.states()] == ["e:3", "g:4"]


def test_spec_rejects_zero_excitation():
    with pytest.raises(ValueError):
        SubspaceSpec(N=2, n=0)


def test_index_round_trip():
    """index_of and state_at are inverse on every basis position"""
    basis = SubspaceBasis.build(SubspaceSpec(N=4, n=3))
    for sector in (Sector.UPPER, Sector.LOWER):
        for position, state in enumerate(basis.sector(sector)):
            assert basis.index_of(state) == (sector, position)
            assert basis.state_at(sector, position) == state


def test_index_of_wrong_excitation():
    basis = SubspaceBasis.build(SubspaceSpec(N=3, n=2))
    with pytest.raises(StateNotInSubspace, match="excitation 3 differs from n=2"):
        basis.index_of(FockState(Atom.GROUND, (1, 1, 1)))


def test_index_of_wrong_mode_count():
    basis = SubspaceBasis.build(SubspaceSpec(N=3, n=2))
    with pytest.raises(StateNotInSubspace, match="has 2 modes"):
        basis.index_of(FockState(Atom.GROUND, (1, 1)))


def test_state_at_out_of_range():
    basis = SubspaceBasis.build(SubspaceSpec(N=2, n=2))
    with pytest.raises(PositionOutOfRange, match="upper sector of size 2"):
        basis.state_at(Sector.UPPER, 2)


def test_capacity_guard():
    """Building a lower sector above the limit is refused"""
    with pytest.raises(CapacityExceeded, match="lower dimension is 20, limit is 10"):
        SubspaceBasis.build(SubspaceSpec(N=4, n=3), max_lower_dimension=10)


def test_capacity_guard_disabled():
    basis = SubspaceBasis.build(SubspaceSpec(N=4, n=3), max_lower_dimension=None)
    assert basis.n_lower == 20


def test_fock_state_parse():
    state = FockState.parse("g:2,0,1")
    assert state == FockState(Atom.GROUND, (2, 0, 1))
    assert str(state) == "g:2,0,1"
    assert state.excitation == 3


def test_fock_state_parse_rejects_garbage():
    with pytest.raises(ValueError, match="Cannot parse Fock state"):
        FockState.parse("x:1,2")


def test_fock_state_rejects_negative():
    with pytest.raises(ValueError, match="non-negative"):
        FockState(Atom.GROUND, (1, -1))


def test_block_sizes():
    """Blocks over s2 have C(N+s-2, N-2) states"""
    basis = SubspaceBasis.build(SubspaceSpec(N=3, n=3))
    assert block_sizes(basis, Sector.LOWER) == [1, 2, 3, 4]
    assert block_sizes(basis, Sector.UPPER) == [1, 2, 3]


def test_excitation_is_conserved_across_the_basis():
    basis = SubspaceBasis.build(SubspaceSpec(N=4, n=3))
    assert set(excitation_operator_diagonal(basis)) == {3}


def test_canonical_occupations_first_and_last():
    """The first tuple puts every photon in mode 1, the last every photon in mode N"""
    occupations = list(canonical_occupations(5, 4))
    assert occupations[0] == (4, 0, 0, 0, 0)
    assert occupations[-1] == (0, 0, 0, 0, 4)
    assert len(occupations) == len(set(occupations)) == 70
