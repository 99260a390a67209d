import numpy as np
import pytest

from manualtour.errors import (
    DegenerateTarget,
    MissingPrevBasis,
    RankDeficient,
    TargetTooLarge,
)
from manualtour.linalg import ProjectionMatrix, orthogonality_residual
from manualtour.manual import (
    ManualRequest,
    UpdateMethod,
    apply_update,
    radial_tour_path,
    update_exact_completion,
    update_exact_rotation,
    update_exact_zeroed,
    update_exact_zeroed_literal,
    update_simple,
)

from conftest import random_projection


def hand_simple_oracle(entries, var, target):
    """Explicit normalize-then-orthogonalize, written out column by column."""
    M = entries.copy()
    M[var] = target
    out = np.zeros_like(M)
    out[:, 0] = M[:, 0] / np.linalg.norm(M[:, 0])
    for k in range(1, M.shape[1]):
        v = M[:, k].copy()
        for j in range(k):
            v = v - (out[:, j] @ v) * out[:, j]
        out[:, k] = v / np.linalg.norm(v)
    return out


class TestManualRequest:
    def test_oversize_target_rescaled(self):
        req = ManualRequest(0, [3.0, 4.0])
        assert np.linalg.norm(req.target) == pytest.approx(1.0)
        np.testing.assert_allclose(req.target, [0.6, 0.8])


class TestUpdateSimple:
    def test_fixed_point(self, rng):
        A = random_projection(5, 2, rng)
        out = update_simple(A, ManualRequest(2, A.row(2)))
        np.testing.assert_allclose(out.entries, A.entries, atol=1e-12)

    def test_identity_drag_near_target(self):
        A = ProjectionMatrix.axis_aligned(4, 2)
        out = update_simple(A, ManualRequest(2, [0.5, 0.0]))
        assert orthogonality_residual(out.entries) < 1e-10
        assert np.linalg.norm(out.entries[2] - [0.5, 0.0]) < 0.15
        expected = hand_simple_oracle(A.entries, 2, np.array([0.5, 0.0]))
        np.testing.assert_allclose(out.entries, expected, atol=1e-10)

    def test_small_drags_track_target(self, rng):
        # regression: per-step deviation of the controlled row stays < 0.02
        # for drags of 0.01 (bound measured once against the hand oracle)
        A = random_projection(4, 2, rng)
        var = 1
        for _ in range(40):
            target = A.row(var) + rng.uniform(-0.01, 0.01, size=2)
            if np.linalg.norm(target) > 1:
                target /= np.linalg.norm(target)
            A = update_simple(A, ManualRequest(var, target))
            assert np.linalg.norm(A.row(var) - target) < 0.02


class TestUpdateExactZeroed:
    def test_zero_target_removes_variable(self, rng):
        A = random_projection(5, 2, rng)
        out = update_exact_zeroed(A, ManualRequest(1, [0.0, 0.0]))
        assert np.all(out.entries[1] == 0.0)
        assert orthogonality_residual(out.entries) < 1e-10

    def test_identity_case_exact_row(self):
        A = ProjectionMatrix.axis_aligned(4, 2)
        out = update_exact_zeroed(A, ManualRequest(0, [0.8, 0.1]))
        assert np.array_equal(out.entries[0], [0.8, 0.1])
        assert orthogonality_residual(out.entries) < 1e-10
        # oracle: least-squares projection of the result columns onto
        # themselves must reproduce unit norms with the row contribution
        for k in range(2):
            rest = np.delete(out.entries[:, k], 0)
            assert float(rest @ rest) == pytest.approx(1.0 - out.entries[0, k] ** 2)

    def test_target_too_large(self, rng):
        A = random_projection(4, 2, rng)
        with pytest.raises(TargetTooLarge):
            update_exact_zeroed(A, ManualRequest(0, [1.0, 0.0]))

    def test_d1_degenerate_rejected(self):
        A = ProjectionMatrix(np.array([[1.0], [0.0], [0.0]]))
        with pytest.raises(RankDeficient):
            update_exact_zeroed(A, ManualRequest(0, [0.6]))

    def test_d1_rescales_remaining_rows(self):
        A = ProjectionMatrix(np.array([[0.6], [0.8], [0.0]]))
        out = update_exact_zeroed(A, ManualRequest(0, [0.3]))
        assert out.entries[0, 0] == 0.3
        assert float(out.entries[1:, 0] @ out.entries[1:, 0]) == pytest.approx(1 - 0.09)

    def test_random_cases_exact(self, rng):
        for _ in range(50):
            p = int(rng.integers(3, 9))
            d = int(rng.integers(1, min(4, p)))
            A = random_projection(p, d, rng)
            var = int(rng.integers(p))
            t = rng.uniform(-0.6, 0.6, size=d)
            out = update_exact_zeroed(A, ManualRequest(var, t))
            np.testing.assert_allclose(out.entries[var], t, atol=1e-12)
            assert orthogonality_residual(out.entries) < 1e-10


class TestLiteralComparison:
    def test_literal_leaves_residual(self, rng):
        # the additive cross-column constant does not restore orthogonality
        # in general; the corrected update does
        worst = 0.0
        for _ in range(50):
            A = random_projection(5, 2, rng)
            req = ManualRequest(2, rng.uniform(-0.5, 0.5, size=2))
            lit = update_exact_zeroed_literal(A, req)
            exact = update_exact_zeroed(A, req)
            assert orthogonality_residual(exact.entries) < 1e-10
            np.testing.assert_allclose(lit[2], req.target, atol=1e-12)
            worst = max(worst, orthogonality_residual(lit))
        assert worst > 1e-6  # documents the discrepancy


class TestUpdateExactCompletion:
    def test_row_exact_and_basis_orthogonal(self, rng):
        A = random_projection(4, 2, rng)
        proj, basis = update_exact_completion(A, ManualRequest(1, [0.3, 0.4]), rng=rng)
        np.testing.assert_allclose(proj.entries[1], [0.3, 0.4], atol=1e-14)
        assert orthogonality_residual(basis.entries) < 1e-10
        # the completed row puts sqrt(1 - 0.09 - 0.16) in the third slot
        assert abs(basis.entries[1, 2]) == pytest.approx(np.sqrt(0.75))
        assert float(basis.entries[1] @ basis.entries[1]) == pytest.approx(1.0)

    def test_continuous_fixed_point(self, rng):
        A = random_projection(5, 2, rng)
        proj, basis = update_exact_completion(A, ManualRequest(2, [0.2, 0.5]), rng=rng)
        proj2, _ = update_exact_completion(
            proj, ManualRequest(2, proj.row(2)), previous=basis, mode="continuous"
        )
        np.testing.assert_allclose(proj2.entries, proj.entries, atol=1e-10)

    def test_continuous_small_steps_are_continuous(self, rng):
        # empirical continuity bound, frozen after first measurement
        A = random_projection(4, 2, rng)
        t = A.row(1)
        proj, basis = update_exact_completion(A, ManualRequest(1, t), rng=rng)
        prev = basis
        for _ in range(20):
            t = t + rng.uniform(-0.01, 0.01, size=2)
            if np.linalg.norm(t) > 0.99:
                t = 0.99 * t / np.linalg.norm(t)
            proj, new_basis = update_exact_completion(
                proj, ManualRequest(1, t), previous=prev, mode="continuous"
            )
            assert np.linalg.norm(new_basis.entries - prev.entries) < 0.1
            prev = new_basis

    def test_missing_prev_basis(self, rng):
        A = random_projection(4, 2, rng)
        with pytest.raises(MissingPrevBasis):
            update_exact_completion(A, ManualRequest(0, [0.1, 0.1]), mode="continuous")


class TestUpdateExactRotation:
    def test_fixed_point(self, rng):
        A = random_projection(5, 2, rng)
        out = update_exact_rotation(A, ManualRequest(3, A.row(3)))
        np.testing.assert_allclose(out.entries, A.entries, atol=1e-12)

    def test_row_keeps_direction_and_length(self, rng):
        for _ in range(50):
            p = int(rng.integers(3, 8))
            d = int(rng.integers(1, min(4, p)))
            A = random_projection(p, d, rng)
            var = int(rng.integers(p))
            t = rng.uniform(-0.7, 0.7, size=d)
            if np.linalg.norm(t) < 1e-3:
                continue
            out = update_exact_rotation(A, ManualRequest(var, t))
            np.testing.assert_allclose(out.entries[var], t, atol=1e-10)
            assert orthogonality_residual(out.entries) < 1e-10

    def test_collinear_with_other_row_ok(self, rng):
        A = random_projection(5, 2, rng)
        t = 0.5 * A.row(3) / np.linalg.norm(A.row(3))
        out = update_exact_rotation(A, ManualRequest(1, t))
        np.testing.assert_allclose(out.entries[1], t, atol=1e-10)
        assert orthogonality_residual(out.entries) < 1e-10

    def test_degenerate_target(self, rng):
        A = random_projection(4, 2, rng)
        with pytest.raises(DegenerateTarget):
            update_exact_rotation(A, ManualRequest(0, [0.0, 0.0]))


class TestRadialTourPath:
    def test_minimal_path(self, rng):
        A = random_projection(4, 2, rng)
        path = radial_tour_path(A, 1, 2)
        assert len(path.frames) == 3
        assert path.frames[0] is A and path.frames[2] is A
        assert np.all(path.frames[1].entries[1] == 0.0)

    def test_all_frames_orthonormal(self, rng):
        A = random_projection(6, 3, rng)
        path = radial_tour_path(A, 4, 7)
        for f in path.frames:
            assert orthogonality_residual(f.entries) < 1e-10

    def test_row_norm_monotone_down_then_up(self, rng):
        A = random_projection(5, 2, rng)
        path = radial_tour_path(A, 2, 6)
        norms = [np.linalg.norm(f.entries[2]) for f in path.frames]
        mid = len(norms) // 2
        assert all(a >= b - 1e-12 for a, b in zip(norms[: mid + 1], norms[1 : mid + 1]))
        assert all(b >= a - 1e-12 for a, b in zip(norms[mid:-1], norms[mid + 1 :]))

    def test_midpoint_invariant_to_controlled_column(self, rng):
        A = random_projection(4, 2, rng)
        path = radial_tour_path(A, 1, 4)
        mid = path.frames[len(path.frames) // 2]
        X = rng.normal(size=(30, 4))
        X2 = X.copy()
        X2[:, 1] += rng.normal(size=30)
        np.testing.assert_allclose(X @ mid.entries, X2 @ mid.entries, atol=1e-12)


class TestApplyUpdate:
    @pytest.mark.parametrize("method", list(UpdateMethod))
    def test_dispatch_all_methods(self, method, rng):
        A = random_projection(5, 2, rng)
        previous = None
        if method == UpdateMethod.EXACT_COMPLETION_CONTINUOUS:
            from manualtour.linalg import complete_basis

            previous = complete_basis(A, seed=0)
        out, _ = apply_update(
            A, ManualRequest(2, [0.4, 0.2]), method, previous=previous, rng=rng
        )
        assert orthogonality_residual(out.entries) < 1e-10
