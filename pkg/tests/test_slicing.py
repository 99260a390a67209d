import numpy as np
import pytest

from manualtour.errors import DegenerateRange, DimensionMismatch, DomainError
from manualtour.linalg import ProjectionMatrix
from manualtour.slicing import (
    SliceSpec,
    center_guide_coords,
    expected_slice_count,
    manual_slice_path,
    sample_ball,
    shift_center,
    slice_distances,
)

from conftest import random_projection


class TestSliceDistances:
    def test_point_at_center(self, rng):
        A = random_projection(4, 2, rng)
        c = rng.normal(size=4)
        res = slice_distances(c[None, :], A, SliceSpec(c, 0.5))
        assert res.distances[0] == pytest.approx(0.0, abs=1e-12)
        assert res.mask[0]

    def test_in_plane_offset_is_zero(self, rng):
        A = random_projection(5, 2, rng)
        c = rng.normal(size=5)
        x = c + 3.0 * A.entries[:, 0] - 2.0 * A.entries[:, 1]
        res = slice_distances(x[None, :], A, SliceSpec(c, 0.1))
        assert res.distances[0] == pytest.approx(0.0, abs=1e-12)

    def test_axis_aligned_complement(self):
        A = ProjectionMatrix.axis_aligned(3, 2)
        res = slice_distances(np.array([[1.0, 2.0, 5.0]]), A, SliceSpec(np.zeros(3), 1.0))
        assert res.distances[0] == pytest.approx(5.0)
        assert not res.mask[0]

    def test_in_plane_center_coordinate_ignored(self):
        # the center's mass on an in-plane coordinate cancels; only the
        # orthogonal coordinates of x contribute
        A = ProjectionMatrix.axis_aligned(4, 2)
        c = np.array([0.0, 1.5, 0.0, 0.0])
        x = np.array([[7.0, 0.5, 0.6, -0.8]])
        res = slice_distances(x, A, SliceSpec(c, 1.5))
        assert res.distances[0] == pytest.approx(np.sqrt(0.36 + 0.64))

    def test_rotation_invariance(self, rng):
        A = random_projection(5, 2, rng)
        th = 1.1
        Q = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
        AQ = ProjectionMatrix(A.entries @ Q)
        X = rng.normal(size=(40, 5))
        spec = SliceSpec(rng.normal(size=5), 0.7)
        v1 = slice_distances(X, A, spec).distances
        v2 = slice_distances(X, AQ, spec).distances
        np.testing.assert_allclose(v1, v2, atol=1e-9)

    def test_translation_coupling(self, rng):
        A = random_projection(4, 2, rng)
        X = rng.normal(size=(30, 4))
        c = rng.normal(size=4)
        delta = 2.3
        spec1 = SliceSpec(c, 0.5)
        spec2 = SliceSpec(c + delta * A.entries[:, 0], 0.5)
        v1 = slice_distances(X, A, spec1).distances
        v2 = slice_distances(X + delta * A.entries[:, 0], A, spec2).distances
        np.testing.assert_allclose(v1, v2, atol=1e-9)

    def test_monotone_mask(self, rng):
        A = random_projection(4, 2, rng)
        X = rng.normal(size=(50, 4))
        c = np.zeros(4)
        m1 = slice_distances(X, A, SliceSpec(c, 0.3)).mask
        m2 = slice_distances(X, A, SliceSpec(c, 0.8)).mask
        assert np.all(m2[m1])

    def test_strict_boundary(self):
        A = ProjectionMatrix.axis_aligned(3, 2)
        x = np.array([[0.0, 0.0, 0.5]])
        res = slice_distances(x, A, SliceSpec(np.zeros(3), 0.5))
        assert not res.mask[0]  # v == h is outside


class TestExpectedSliceCount:
    def test_full_thickness_contains_everything(self):
        for p in (2, 3, 4, 7):
            assert expected_slice_count(2.0, p, 2.0, 1000) == pytest.approx(1000.0)

    def test_p2_no_orthogonal_space(self):
        for h in (0.01, 0.4, 0.9):
            assert expected_slice_count(h, 2, 1.0, 500) == pytest.approx(500.0)

    def test_p3_arithmetic(self):
        # 500 * 0.5 * (3 - 0.25) = 687.5
        assert expected_slice_count(0.5, 3, 1.0, 1000) == pytest.approx(687.5)

    def test_p3_monte_carlo(self):
        pts = sample_ball(100_000, 3, rng=123)
        v = np.abs(pts[:, 2])
        empirical = np.sum(v < 0.5)
        assert empirical == pytest.approx(68750, rel=0.01)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            expected_slice_count(2.0, 3, 1.0, 100)
        with pytest.raises(DomainError):
            expected_slice_count(0.5, 1, 1.0, 100)


class TestShiftCenter:
    def test_noop_shift(self):
        spec = SliceSpec(np.array([0.0, 1.5, 0.0, 0.0]), 0.5)
        out = shift_center(spec, 1, 1.5)
        np.testing.assert_array_equal(out.center, spec.center)

    def test_plus_minus_endpoints(self):
        spec = SliceSpec(np.zeros(4), 1.5)
        plus = shift_center(spec, 1, 1.5)
        minus = shift_center(spec, 1, -1.5)
        np.testing.assert_array_equal(plus.center, [0.0, 1.5, 0.0, 0.0])
        np.testing.assert_array_equal(minus.center, [0.0, -1.5, 0.0, 0.0])

    def test_axis_bounds(self):
        spec = SliceSpec(np.zeros(3), 1.0)
        with pytest.raises(DimensionMismatch):
            shift_center(spec, 3, 1.0)


class TestManualSlicePath:
    def test_minimal_sweep(self):
        spec = SliceSpec(np.zeros(4), 1.5)
        path = manual_slice_path(spec, 1, 1.5, 1)
        coords = [sp.center[1] for sp in path]
        assert coords == [0.0, 1.5, 0.0, -1.5, 0.0]

    def test_thickness_constant(self):
        spec = SliceSpec(np.zeros(3), 0.7)
        for sp in manual_slice_path(spec, 0, 2.0, 4):
            assert sp.thickness == 0.7

    def test_count_and_symmetry(self):
        spec = SliceSpec(np.zeros(4), 1.0)
        path = manual_slice_path(spec, 2, 1.5, 10)
        assert len(path) == 41
        coords = np.array([sp.center[2] for sp in path])
        np.testing.assert_allclose(coords, -coords[::-1], atol=1e-12)

    def test_relative_to_starting_center(self):
        spec = SliceSpec(np.array([1.0, 2.0, 3.0]), 0.5)
        path = manual_slice_path(spec, 1, 1.0, 1)
        coords = [sp.center[1] for sp in path]
        assert coords == [2.0, 3.0, 2.0, 1.0, 2.0]
        assert np.array_equal(path[0].center, spec.center)
        assert np.array_equal(path[-1].center, spec.center)


class TestCenterGuide:
    def test_midpoint_regular_polygon(self):
        spec = SliceSpec(np.array([0.5, 0.0, 2.5]), 1.0)
        guide = center_guide_coords(
            spec, np.array([0.0, -1.0, 0.0]), np.array([1.0, 1.0, 5.0])
        )
        np.testing.assert_allclose(guide.radial, [0.5, 0.5, 0.5])

    def test_max_maps_to_one(self):
        spec = SliceSpec(np.array([1.0, 0.3]), 1.0)
        guide = center_guide_coords(spec, np.array([0.0, 0.0]), np.array([1.0, 1.0]))
        assert guide.radial[0] == pytest.approx(1.0)

    def test_clamped_outside_range(self, rng):
        for _ in range(20):
            lo = rng.normal(size=3)
            hi = lo + rng.uniform(0.5, 2.0, size=3)
            c = rng.normal(scale=5.0, size=3)
            guide = center_guide_coords(SliceSpec(c, 1.0), lo, hi)
            assert np.all(guide.radial >= 0.0) and np.all(guide.radial <= 1.0)

    def test_degenerate_range(self):
        spec = SliceSpec(np.zeros(2), 1.0)
        with pytest.raises(DegenerateRange):
            center_guide_coords(spec, np.array([0.0, 1.0]), np.array([1.0, 1.0]))


class TestSampleBall:
    def test_inside_radius_and_deterministic(self):
        a = sample_ball(500, 4, radius=2.0, rng=9)
        b = sample_ball(500, 4, radius=2.0, rng=9)
        assert np.all(np.linalg.norm(a, axis=1) <= 2.0)
        np.testing.assert_array_equal(a, b)
