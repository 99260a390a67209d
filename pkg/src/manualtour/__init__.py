"""Manual projection and slice tours for high-dimensional data."""

__version__ = "0.1.0"

from .linalg import Basis, ProjectionMatrix, complete_basis, gram_schmidt, project
from .manual import (
    ManualRequest,
    TourPath,
    UpdateMethod,
    apply_update,
    radial_tour_path,
    update_exact_completion,
    update_exact_rotation,
    update_exact_zeroed,
    update_simple,
)
from .slicing import (
    CenterGuide,
    SliceSpec,
    center_guide_coords,
    expected_slice_count,
    manual_slice_path,
    sample_ball,
    shift_center,
    slice_distances,
)

__all__ = [
    "Basis",
    "CenterGuide",
    "ManualRequest",
    "ProjectionMatrix",
    "SliceSpec",
    "TourPath",
    "UpdateMethod",
    "apply_update",
    "center_guide_coords",
    "complete_basis",
    "expected_slice_count",
    "gram_schmidt",
    "manual_slice_path",
    "project",
    "radial_tour_path",
    "sample_ball",
    "shift_center",
    "slice_distances",
    "update_exact_completion",
    "update_exact_rotation",
    "update_exact_zeroed",
    "update_simple",
]
