import numpy as np
import pytest
from pydantic import ValidationError

from darklattice._base._exceptions import NonFiniteInput, PivotBreakdown, RankDeficiency
from darklattice._base._linalg import (
    TolerancePolicy,
    VectorSet,
    free_column_count,
    gram_schmidt,
    null_space_echelon,
    null_space_svd,
    numerical_rank,
    orthonormal_basis,
    projector,
    subspace_projector_distance,
)


class TestTolerancePolicy:
    def test_defaults(self):
        pol = TolerancePolicy()
        assert pol.rank_eps == 1e-12
        assert pol.residual_eps == 1e-10

    @pytest.mark.parametrize("value", [0.0, -1e-12, 1e-2])
    def test_rejects_out_of_range(self, value):
        with pytest.raises(ValidationError, match="Tolerance must be in"):
            TolerancePolicy(rank_eps=value)

    def test_rejects_unknown_keys(self):
        with pytest.raises(ValidationError):
            TolerancePolicy(rank_tol=1e-12)


class TestRank:
    def test_rank_of_outer_product(self, rng):
        u, v = rng.normal(size=(5, 1)), rng.normal(size=(1, 7))
        assert numerical_rank(u @ v) == 1

    def test_rank_ignores_roundoff(self):
        M = np.diag([1.0, 1e-3, 1e-17])
        assert numerical_rank(M) == 2

    def test_rank_rejects_nan(self):
        with pytest.raises(NonFiniteInput):
            numerical_rank(np.array([[1.0, np.nan]]))

    def test_empty_matrix(self):
        assert numerical_rank(np.zeros((0, 3))) == 0


class TestNullSpace:
    def test_svd_null_space_is_orthonormal(self, rng):
        M = rng.normal(size=(3, 8))
        null = null_space_svd(M)
        assert null.size == 5
        assert null.orthonormal
        assert null.gram_deviation() < 1e-13
        assert np.linalg.norm(M @ null.matrix) < 1e-12

    def test_svd_null_space_of_empty_rows(self):
        null = null_space_svd(np.zeros((0, 3)))
        np.testing.assert_array_equal(null.matrix, np.eye(3))

    def test_echelon_free_coefficient_is_one(self):
        """Each free column gets coefficient 1 and the pivots follow by back substitution"""
        M = np.array([[2.0, 1.0, 1.0, 0.0], [0.0, 1.0, 0.0, 3.0]])
        null = null_space_echelon(M)
        np.testing.assert_allclose(null.matrix[2:], np.eye(2))
        np.testing.assert_allclose(M @ null.matrix, 0.0, atol=1e-15)
        assert free_column_count(M) == 2

    def test_echelon_and_svd_spans_agree(self, rng):
        M = np.triu(rng.normal(size=(4, 9)))
        M[np.diag_indices(4)] += 3.0
        distance = subspace_projector_distance(null_space_echelon(M), null_space_svd(M))
        assert distance.spectral < 1e-12

    def test_echelon_rejects_zero_pivot(self):
        M = np.array([[0.0, 1.0, 1.0], [0.0, 1.0, 0.0]])
        with pytest.raises(PivotBreakdown, match="column 0"):
            null_space_echelon(M)

    def test_echelon_rejects_entry_below_diagonal(self):
        M = np.array([[1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
        with pytest.raises(PivotBreakdown, match="below the diagonal"):
            free_column_count(M)


class TestGramSchmidt:
    def test_output_is_orthonormal_and_upper_triangular(self, rng):
        A = rng.normal(size=(6, 4))
        Q = gram_schmidt(VectorSet(A)).matrix
        assert np.max(np.abs(Q.T @ Q - np.eye(4))) < 1e-14
        R = Q.T @ A
        np.testing.assert_allclose(np.tril(R, k=-1), 0.0, atol=1e-13)
        assert np.all(np.diag(R) > 0)

    def test_idempotent(self, rng):
        Q = gram_schmidt(VectorSet(rng.normal(size=(8, 5))))
        again = gram_schmidt(Q)
        assert np.max(np.abs(again.matrix - Q.matrix)) <= 1e-13

    def test_dependent_vector(self):
        A = np.array([[1.0, 2.0], [1.0, 2.0]])
        with pytest.raises(RankDeficiency, match="Vector 1 is linearly dependent"):
            gram_schmidt(VectorSet(A))


class TestProjectors:
    def test_projector_is_idempotent(self, rng):
        P = projector(VectorSet(rng.normal(size=(5, 2))))
        np.testing.assert_allclose(P @ P, P, atol=1e-14)
        assert np.trace(P) == pytest.approx(2.0)

    def test_distance_zero_for_same_span(self, rng):
        A = rng.normal(size=(6, 3))
        B = A @ rng.normal(size=(3, 3))
        assert subspace_projector_distance(VectorSet(A), VectorSet(B)).spectral < 1e-12

    def test_distance_one_for_orthogonal_lines(self):
        a = VectorSet(np.array([[1.0], [0.0]]))
        b = VectorSet(np.array([[0.0], [1.0]]))
        assert subspace_projector_distance(a, b).spectral == pytest.approx(1.0)

    def test_empty_against_nonempty(self):
        distance = subspace_projector_distance(VectorSet.empty(3), VectorSet(np.eye(3)[:, :1]))
        assert (distance.spectral, distance.frobenius) == (1.0, 1.0)

    def test_orthonormal_basis_drops_dependent_columns(self):
        A = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
        assert orthonormal_basis(VectorSet(A)).shape == (3, 2)


def test_vector_set_orthonormal_flag_is_checked():
    with pytest.raises(ValueError, match="Gram deviation"):
        VectorSet(np.array([[1.0, 1.0], [0.0, 1.0]]), orthonormal=True)
