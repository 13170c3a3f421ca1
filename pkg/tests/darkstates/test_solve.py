import numpy as np
import pytest

from darklattice import ModelParams, SubspaceBasis, SubspaceSpec, assemble_blocks
from darklattice._base._exceptions import NonDegenerateDetunings, ZeroCoupling
from darklattice._base._hamiltonian import Frame
from darklattice._base._linalg import free_column_count, subspace_projector_distance
from darklattice.darkstates import (
    Provenance,
    dark_energy,
    dark_projector,
    dark_state_count,
    echelon_dark_states,
    solve_dark_states,
)


@pytest.mark.parametrize(
    "N, counts",
    [(2, [1, 1, 1]), (3, [2, 3, 4]), (4, [3, 6, 10])],
)
def test_counts_for_small_models(N, counts, draw_couplings, blocks):
    """Numerical nullity equals C(N + n - 2, N - 2) for n = 1, 2, 3"""
    g = draw_couplings(N)
    for n, expected in enumerate(counts, start=1):
        assert dark_state_count(N, n) == expected
        assert solve_dark_states(blocks(N, n, g)).size == expected


@pytest.mark.parametrize("N", range(2, 7))
@pytest.mark.parametrize("n", range(1, 7))
def test_svd_and_echelon_agree(N, n, draw_couplings, blocks):
    """SVD nullity and echelon free columns both equal C(N + n - 2, N - 2)"""
    bh = blocks(N, n, draw_couplings(N))
    numeric = solve_dark_states(bh)
    raw = echelon_dark_states(bh)
    assert numeric.size == raw.size == free_column_count(bh.C) == dark_state_count(N, n)
    if n <= 4:
        assert subspace_projector_distance(numeric.vectors, raw.vectors).spectral < 1e-9


def test_solutions_are_orthonormal_and_annihilated(g3, blocks):
    bh = blocks(3, 3, g3)
    ds = solve_dark_states(bh)
    assert ds.normalized
    assert ds.vectors.gram_deviation() < 1e-13
    assert np.linalg.norm(bh.C @ ds.matrix) < 1e-12
    assert all(label.provenance == Provenance.NUMERIC for label in ds.labels)


def test_phase_convention_is_applied(g4, blocks):
    """The largest-magnitude coefficient of every vector is positive"""
    ds = solve_dark_states(blocks(4, 2, g4))
    pivots = np.argmax(np.abs(ds.matrix), axis=0)
    assert np.all(ds.matrix[pivots, np.arange(ds.size)] > 0)


def test_echelon_labels_keep_the_raw_norms(g3, blocks):
    raw = echelon_dark_states(blocks(3, 2, g3))
    assert not raw.normalized
    assert [label.p for label in raw.labels] == [1, 2, 3]
    np.testing.assert_allclose([label.norm for label in raw.labels], raw.vectors.norms())


def test_coupling_scale_does_not_change_the_dark_space(g4, blocks):
    """Multiplying every g_j by the same factor leaves the dark projector unchanged"""
    reference = dark_projector(solve_dark_states(blocks(4, 3, g4)))
    scaled = dark_projector(solve_dark_states(blocks(4, 3, [3.7 * gj for gj in g4])))
    assert np.max(np.abs(reference - scaled)) < 1e-12


def test_single_mode_has_no_dark_states(blocks):
    assert dark_state_count(1, 4) == 0
    assert solve_dark_states(blocks(1, 4, [1.3])).size == 0


def test_zero_coupling_is_rejected(blocks):
    with pytest.raises(ZeroCoupling, match="g2"):
        solve_dark_states(blocks(3, 2, [1.0, 0.0, 1.0]))


class TestDetunings:
    def params(self, omegas):
        return ModelParams(omega0=1.0, omegas=omegas, g=[0.8, 1.2])

    def test_nondegenerate_detunings_are_rejected(self):
        basis = SubspaceBasis.build(SubspaceSpec(N=2, n=2))
        bh = assemble_blocks(basis, self.params([1.0, 1.2]))
        with pytest.raises(NonDegenerateDetunings, match="not degenerate"):
            solve_dark_states(bh)

    def test_override_still_returns_the_null_space(self):
        basis = SubspaceBasis.build(SubspaceSpec(N=2, n=2))
        bh = assemble_blocks(basis, self.params([1.0, 1.2]))
        ds = solve_dark_states(bh, allow_nondegenerate=True)
        assert ds.size == 1
        assert np.linalg.norm(bh.C @ ds.matrix) < 1e-12

    def test_common_detuning_is_allowed(self, blocks):
        ds = solve_dark_states(blocks(2, 3, [0.8, 1.2], delta=0.4))
        assert ds.size == 1


class TestDarkEnergy:
    def test_rotating_frame(self):
        assert dark_energy(ModelParams.resonant([1.0, 1.0], delta=0.3), 3) == pytest.approx(-0.9)

    def test_lab_frame(self):
        params = ModelParams.resonant([1.0, 1.0], delta=0.3, omega0=2.0)
        assert dark_energy(params, 2, Frame.LAB) == pytest.approx(-0.6 + 2.0 * 1.5)

    def test_requires_degenerate_detunings(self):
        params = ModelParams(omega0=1.0, omegas=[1.0, 0.5], g=[1.0, 1.0])
        with pytest.raises(NonDegenerateDetunings):
            dark_energy(params, 1)
