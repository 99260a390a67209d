"""Slice geometry: orthogonal distances, in-slice masks, center shifting,
expected counts, sweep paths, and the star-plot center guide."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRange, DimensionMismatch, DomainError
from .linalg import ProjectionMatrix


@dataclass(frozen=True)
class SliceSpec:
    """Anchor point and thickness (a.k.a. height/radius) of a slice."""

    center: np.ndarray
    thickness: float

    def __post_init__(self) -> None:
        c = np.array(self.center, dtype=float).ravel()
        if not np.all(np.isfinite(c)):
            raise DimensionMismatch("slice center has non-finite entries")
        h = float(self.thickness)
        if not (np.isfinite(h) and h > 0):
            raise DomainError("slice thickness must be strictly positive and finite")
        c.flags.writeable = False
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "thickness", h)

    @property
    def p(self) -> int:
        return self.center.shape[0]


@dataclass(frozen=True)
class SliceResult:
    """Per-point orthogonal distances and the strict v < h mask."""

    distances: np.ndarray
    mask: np.ndarray


@dataclass(frozen=True)
class CenterGuide:
    """Center position per variable, rescaled to [0, 1] over the data range."""

    radial: np.ndarray


def slice_distances(data: np.ndarray, A: ProjectionMatrix, spec: SliceSpec) -> SliceResult:
    """Distance of each point from the slicing plane through the center.

    v_i is the norm of the component of (x_i - c) orthogonal to span(A);
    points with v_i strictly below the thickness are inside.  Works for any
    d by subtracting the component along every column of A.
    """
    X = np.asarray(data, dtype=float)
    if X.ndim != 2 or X.shape[1] != A.p:
        raise DimensionMismatch("data column count does not match the projection")
    if spec.p != A.p:
        raise DimensionMismatch("slice center length does not match the projection")
    D = X - spec.center
    E = A.entries
    resid = D - (D @ E) @ E.T
    v = np.linalg.norm(resid, axis=1)
    return SliceResult(distances=v, mask=v < spec.thickness)


def expected_slice_count(h: float, p: int, R: float, N: float) -> float:
    """Expected in-slice count for N points uniform in a p-ball of radius R.

    Closed form: N/2 * (h/R)^(p-2) * (p - (p-2)(h/R)^2).  Advisory only --
    real data are not uniform in a ball.
    """
    if p < 2:
        raise DomainError("dimension must be at least 2")
    if not (0 < h <= R):
        raise DomainError("thickness must satisfy 0 < h <= R")
    if N < 0:
        raise DomainError("sample size must be nonnegative")
    ratio = h / R
    return 0.5 * N * ratio ** (p - 2) * (p - (p - 2) * ratio**2)


def shift_center(spec: SliceSpec, axis: int, value: float) -> SliceSpec:
    """Move the center's coordinate ``axis`` to ``value``, all else unchanged."""
    if not 0 <= axis < spec.p:
        raise DimensionMismatch(f"axis {axis} outside 0..{spec.p - 1}")
    c = spec.center.copy()
    c[axis] = value
    return SliceSpec(center=c, thickness=spec.thickness)


def manual_slice_path(
    spec: SliceSpec, axis: int, extent: float, steps: int
) -> list[SliceSpec]:
    """Sweep the center out to one side, back, to the other side, and back.

    The coordinate follows 0 -> +extent -> 0 -> -extent -> 0 relative to its
    starting value, piecewise linearly with ``steps`` segments per leg
    (4*steps + 1 specs total).  Thickness is constant along the path.
    """
    if extent <= 0:
        raise DomainError("extent must be positive")
    if steps < 1:
        raise DomainError("steps must be >= 1")
    if not 0 <= axis < spec.p:
        raise DimensionMismatch(f"axis {axis} outside 0..{spec.p - 1}")
    base = spec.center[axis]
    knots = [0.0, extent, 0.0, -extent, 0.0]
    offsets: list[float] = [0.0]
    for a, b in zip(knots[:-1], knots[1:]):
        offsets.extend(np.linspace(a, b, steps + 1)[1:])
    return [shift_center(spec, axis, base + off) for off in offsets]


def center_guide_coords(
    spec: SliceSpec, data_min: np.ndarray, data_max: np.ndarray
) -> CenterGuide:
    """Center position per variable between data min (0) and max (1).

    Clamped rather than erroring outside the range, so sweeps beyond the
    hull stay renderable.
    """
    lo = np.asarray(data_min, dtype=float).ravel()
    hi = np.asarray(data_max, dtype=float).ravel()
    if lo.shape != (spec.p,) or hi.shape != (spec.p,):
        raise DimensionMismatch("data range length does not match the center")
    span = hi - lo
    if np.any(span <= 0):
        bad = int(np.argmax(span <= 0))
        raise DegenerateRange(f"variable {bad} has min == max")
    radial = np.clip((spec.center - lo) / span, 0.0, 1.0)
    return CenterGuide(radial=radial)


def sample_ball(
    n: int, p: int, radius: float = 1.0, rng: np.random.Generator | int | None = None
) -> np.ndarray:
    """n points uniform in the p-ball: normal directions times U^(1/p) radii."""
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    dirs = gen.normal(size=(n, p))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    radii = gen.random(n) ** (1.0 / p)
    return radius * dirs * radii[:, None]
