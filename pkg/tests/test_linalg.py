import numpy as np
import pytest

from manualtour.errors import DimensionMismatch, RankDeficient
from manualtour.linalg import (
    Basis,
    ProjectionMatrix,
    complete_basis,
    gram_schmidt,
    orthogonality_residual,
    project,
)

from conftest import random_projection


class TestProjectionMatrix:
    def test_rejects_non_orthonormal(self):
        with pytest.raises(DimensionMismatch):
            ProjectionMatrix(np.array([[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_bad_shapes(self):
        with pytest.raises(DimensionMismatch):
            ProjectionMatrix(np.eye(2))  # d must be < p
        with pytest.raises(DimensionMismatch):
            ProjectionMatrix(np.ones(3))

    def test_entries_bounded(self, rng):
        for _ in range(20):
            A = random_projection(6, 3, rng)
            assert np.all(np.abs(A.entries) <= 1.0 + 1e-12)


class TestGramSchmidt:
    def test_already_orthonormal_unchanged(self):
        M = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
        out = gram_schmidt(M)
        np.testing.assert_allclose(out.entries, M, atol=1e-15)

    def test_textbook_second_column(self):
        M = np.array([[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]])
        out = gram_schmidt(M)
        np.testing.assert_allclose(
            out.entries, [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]], atol=1e-15
        )

    def test_random_matches_qr_span(self, rng):
        # oracle: QR factorization computed independently of our MGS
        for _ in range(50):
            M = rng.normal(size=(5, 2))
            if np.linalg.cond(M) >= 100:
                continue
            out = gram_schmidt(M)
            assert orthogonality_residual(out.entries) < 1e-10
            Q, _ = np.linalg.qr(M)
            # spans agree: projecting M's columns onto out leaves no residual
            proj = out.entries @ (out.entries.T @ M)
            assert np.max(np.abs(proj - M)) < 1e-8
            proj_qr = Q @ (Q.T @ out.entries)
            assert np.max(np.abs(proj_qr - out.entries)) < 1e-8

    def test_first_column_parallel(self, rng):
        M = rng.normal(size=(4, 2))
        out = gram_schmidt(M)
        c = M[:, 0] / np.linalg.norm(M[:, 0])
        np.testing.assert_allclose(out.entries[:, 0], c, atol=1e-12)

    def test_idempotent(self, rng):
        for _ in range(10):
            M = rng.normal(size=(6, 3))
            once = gram_schmidt(M)
            twice = gram_schmidt(once.entries)
            np.testing.assert_allclose(twice.entries, once.entries, atol=1e-12)

    def test_rank_deficient(self):
        M = np.array([[1.0, 2.0], [0.0, 0.0], [0.0, 0.0]])
        with pytest.raises(RankDeficient):
            gram_schmidt(M)


class TestProject:
    def test_identity_axes(self):
        A = ProjectionMatrix.axis_aligned(3, 2)
        out = project(np.array([[3.0, 4.0, 5.0]]), A)
        np.testing.assert_allclose(out, [[3.0, 4.0]])

    def test_in_plane_rotation_commutes(self, rng):
        A = random_projection(5, 2, rng)
        th = 0.7
        Q = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        AQ = ProjectionMatrix(A.entries @ Q)
        X = rng.normal(size=(20, 5))
        np.testing.assert_allclose(project(X, AQ), project(X, A) @ Q, atol=1e-10)

    def test_penguins_smoke(self, penguins_std):
        A = ProjectionMatrix.axis_aligned(4, 2)
        out = project(penguins_std.values, A)
        assert out.shape == (penguins_std.n, 2)
        assert np.all(np.isfinite(out))
        # oracle: direct per-row dot products
        for i in range(0, penguins_std.n, 37):
            for k in range(2):
                assert out[i, k] == pytest.approx(
                    float(penguins_std.values[i] @ A.entries[:, k])
                )

    def test_dimension_mismatch(self):
        A = ProjectionMatrix.axis_aligned(3, 2)
        with pytest.raises(DimensionMismatch):
            project(np.ones((4, 4)), A)


class TestCompleteBasis:
    def test_unique_complement_p3(self):
        A = ProjectionMatrix.axis_aligned(3, 2)
        O = complete_basis(A, seed=0)
        third = O.entries[:, 2]
        assert abs(abs(third[2]) - 1.0) < 1e-10
        assert np.max(np.abs(third[:2])) < 1e-10

    def test_random_fill_orthogonal(self, rng):
        A = random_projection(4, 2, rng)
        O = complete_basis(A, seed=7)
        assert orthogonality_residual(O.entries) < 1e-10

    def test_first_columns_equal_input_exactly(self, rng):
        A = random_projection(6, 2, rng)
        O = complete_basis(A, seed=3)
        assert np.array_equal(O.entries[:, :2], A.entries)

    def test_retain_is_fixed_point(self, rng):
        A = random_projection(5, 2, rng)
        O1 = complete_basis(A, seed=1)
        O2 = complete_basis(A, previous=O1)
        np.testing.assert_allclose(O2.entries, O1.entries, atol=1e-12)


class TestBasis:
    def test_rejects_non_orthogonal(self):
        with pytest.raises(DimensionMismatch):
            Basis(np.ones((3, 3)))
