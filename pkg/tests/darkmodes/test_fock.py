import math

import numpy as np
import pytest

from darklattice._base._exceptions import ClosedFormIndexError, DimensionMismatch
from darklattice.darkmodes import (
    build_mode_transform,
    dark_mode_fock_states,
    equivalence_check,
    mode_fock_state,
    qr_relation,
    two_mode_basis_coefficients,
)
from darklattice.darkstates import (
    closed_form_family,
    dark_state_count,
    echelon_dark_states,
    solve_dark_states,
)
from tests.conftest import lower_vector


@pytest.mark.parametrize("N, n", [(N, n) for N in (2, 3, 4) for n in range(1, 5)] + [(5, 2)])
def test_dark_mode_states_span_the_dark_space(N, n, draw_couplings, blocks):
    """B spans the null space of C and reconstructs the raw echelon vectors, A = B R"""
    g = draw_couplings(N)
    bh = blocks(N, n, g)
    B = dark_mode_fock_states(build_mode_transform(g), n)
    assert B.size == dark_state_count(N, n)
    assert B.gram_deviation() < 1e-11
    assert B.rank() == B.size
    distance = equivalence_check(solve_dark_states(bh), B)
    assert distance.spectral < 1e-9
    report = qr_relation(echelon_dark_states(bh), B)
    assert report.passed
    assert report.residual <= 1e-10


def test_single_dark_photon_matches_the_dark_row():
    T = build_mode_transform([1.0, 2.0, 2.0])
    np.testing.assert_allclose(mode_fock_state(T, (0, 0, 1)), T.T[2])


def test_bright_and_dark_photon_pair():
    """b_+^dag b_-^dag |vac> for two modes"""
    g1, g2 = 0.6, 0.8
    T = build_mode_transform([g1, g2])
    root2 = math.sqrt(2)
    expected = lower_vector(
        2, 2, {(2, 0): root2 * g1 * g2, (1, 1): g2**2 - g1**2, (0, 2): -root2 * g1 * g2}
    )
    np.testing.assert_allclose(mode_fock_state(T, (1, 1)), expected, atol=1e-15)


@pytest.mark.parametrize("n", range(0, 6))
def test_two_mode_coefficients_match_operator_expansion(n):
    g = (0.7, 1.9)
    T = build_mode_transform(g)
    for m2 in range(n + 1):
        np.testing.assert_allclose(
            two_mode_basis_coefficients(n, m2, g),
            mode_fock_state(T, (n - m2, m2)),
            rtol=0,
            atol=1e-12,
        )


def test_two_mode_coefficients_index_range():
    with pytest.raises(ClosedFormIndexError, match="0 <= m2 <= n"):
        two_mode_basis_coefficients(2, 3, (1.0, 1.0))


def test_vacuum():
    B = dark_mode_fock_states(build_mode_transform([1.0, 1.0, 1.0]), 0)
    assert B.labels == [(0, 0)]
    np.testing.assert_array_equal(B.B, [[1.0]])


def test_labels_follow_family_order():
    B = dark_mode_fock_states(build_mode_transform([1.0, 0.5, 0.3]), 2)
    assert B.labels == [(2, 0), (1, 1), (0, 2)]


def test_mode_count_must_match():
    from darklattice import SubspaceSpec

    with pytest.raises(DimensionMismatch, match="mode count"):
        dark_mode_fock_states(build_mode_transform([1.0, 1.0]), SubspaceSpec(N=3, n=2))
    with pytest.raises(DimensionMismatch, match="mode_fock_state"):
        mode_fock_state(build_mode_transform([1.0, 1.0]), (1, 0, 0))


class TestQRRelation:
    def test_raw_vectors_are_reconstructed(self, g3, blocks):
        bh = blocks(3, 3, g3)
        raw = echelon_dark_states(bh)
        B = dark_mode_fock_states(build_mode_transform(g3), bh.spec)
        report = qr_relation(raw, B)
        assert report.passed
        assert report.residual < 1e-10
        R = np.array(report.R)
        np.testing.assert_allclose(B.B @ R, raw.matrix, atol=1e-10)

    def test_single_photon_three_modes(self, g3):
        """The first closed-form vector lies along the first dark mode, so R is triangular"""
        A = closed_form_family(3, 1, g3)
        B = dark_mode_fock_states(build_mode_transform(g3), 1)
        report = qr_relation(A, B)
        assert report.passed
        assert report.upper_triangular
        R = np.array(report.R)
        assert R.shape == (2, 2)
        assert abs(R[1, 0]) < 1e-12
        assert abs(R[0, 0]) == pytest.approx(np.linalg.norm(A.matrix[:, 0]), rel=1e-12)
        assert abs(R[1, 1]) > 0.0

    @pytest.mark.parametrize("N", [3, 4])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_closed_form_family_is_triangular_in_dark_modes(self, N, n, draw_couplings):
        g = draw_couplings(N)
        A = closed_form_family(N, n, g)
        B = dark_mode_fock_states(build_mode_transform(g), n)
        report = qr_relation(A, B)
        assert report.upper_triangular, report.max_below_diagonal
        assert report.residual <= 1e-10
        np.testing.assert_allclose(B.B @ np.array(report.R), A.matrix, atol=1e-10)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch, match="qr_relation"):
            qr_relation(np.ones((3, 2)), np.ones((3, 1)))

    def test_upper_triangular_flag(self):
        B = np.eye(3)[:, :2]
        A = np.array([[1.0, 2.0], [0.0, 3.0], [0.0, 0.0]])
        report = qr_relation(A, B)
        assert report.upper_triangular
        assert not qr_relation(A[:, ::-1], B).upper_triangular
