"""Live session: binds manual updates, slicing, and data into frames and
speaks the JSON wire protocol the UI consumes.

One session has one logical owner; messages are processed strictly serially
and every committed transition leaves the projection orthonormal.  Frames
are plain dicts (immutable snapshots as far as callers are concerned), safe
to hand to any number of readers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .data import ClassifierGrid, DataSet
from .errors import (
    DimensionMismatch,
    RecoverableError,
    TourError,
    UnknownMessage,
)
from .linalg import Basis, ProjectionMatrix, orthogonality_residual, project
from .manual import ManualRequest, UpdateMethod, apply_update
from .slicing import SliceSpec, center_guide_coords, slice_distances

log = logging.getLogger(__name__)

DEFAULT_THICKNESS_RANGE = (0.05, 5.0)
EXPORT_FORMAT = "%.17g"  # 17 significant digits round-trip doubles exactly


def export_projection(A: ProjectionMatrix) -> str:
    """Serialize a projection as a text block, one row per line."""
    return "\n".join(
        " ".join(EXPORT_FORMAT % x for x in row) for row in A.entries
    )


def import_projection(text: str) -> ProjectionMatrix:
    """Parse the export_projection format back into a validated matrix."""
    rows = [
        [float(tok) for tok in line.split()]
        for line in text.strip().splitlines()
        if line.strip()
    ]
    if not rows:
        raise DimensionMismatch("empty projection block")
    return ProjectionMatrix(np.array(rows))


def select_axis(A: ProjectionMatrix, cursor: np.ndarray) -> int:
    """Closest axis endpoint to the cursor; ties break to the lowest index.

    The cursor is clamped into the closed unit disk first.
    """
    c = np.asarray(cursor, dtype=float).ravel()
    if c.shape[0] != A.d:
        raise DimensionMismatch("cursor dimension does not match the projection")
    nrm = np.linalg.norm(c)
    if nrm > 1.0:
        c = c / nrm
    dist = np.linalg.norm(A.entries - c, axis=1)
    return int(np.argmin(dist))


@dataclass
class SessionState:
    dataset: DataSet
    projection: ProjectionMatrix
    slice_spec: SliceSpec
    grids: dict[str, ClassifierGrid] = field(default_factory=dict)
    basis_cache: Optional[Basis] = None
    view_mode: str = "projection"
    method: UpdateMethod = UpdateMethod.SIMPLE
    active_source: str = "data"
    seed: int = 0
    thickness_range: tuple[float, float] = DEFAULT_THICKNESS_RANGE
    display: dict[str, Any] = field(
        default_factory=lambda: {
            "point_size": 3.0,
            "zoom": 1.0,
            "show_matrix": False,
            "show_projection_overlay": False,
            "show_outside_points": False,
        }
    )


class Session:
    """Serial message processor over a SessionState.

    A failed update (rank deficiency, oversize target, ...) leaves the
    state untouched and yields a recoverable error message; every
    successful geometry-affecting message yields a fresh frame.
    """

    def __init__(self, state: SessionState):
        self.state = state
        self._rng = np.random.default_rng(state.seed)

    # -- frame assembly ----------------------------------------------------

    def _active_points(self) -> np.ndarray:
        st = self.state
        if st.active_source == "data":
            return st.dataset.values
        if st.active_source in st.grids:
            return st.grids[st.active_source].points
        raise DimensionMismatch(f"unknown source {st.active_source!r}")

    def build_frame(self) -> dict[str, Any]:
        st = self.state
        pts = self._active_points()
        coords = project(pts, st.projection)
        if st.view_mode == "slice":
            mask = slice_distances(pts, st.projection, st.slice_spec).mask
        else:
            mask = np.ones(pts.shape[0], dtype=bool)
        guide = center_guide_coords(
            st.slice_spec,
            st.dataset.values.min(axis=0),
            st.dataset.values.max(axis=0),
        )
        if st.active_source == "data":
            groups = (
                [int(i) for i in st.dataset.group_index]
                if st.dataset.group_index is not None
                else [0] * pts.shape[0]
            )
            class_names = list(st.dataset.class_names) or ["data"]
        else:
            grid = st.grids[st.active_source]
            groups = [int(i) for i in grid.predicted]
            class_names = list(grid.class_names)
        frame: dict[str, Any] = {
            "t": "frame",
            "coords": coords.tolist(),
            "mask": mask.tolist(),
            "axes": st.projection.entries.tolist(),
            "guide": guide.radial.tolist(),
            "groups": groups,
            "class_names": class_names,
            "applied_params": {
                "view_mode": st.view_mode,
                "method": st.method.value,
                "thickness": st.slice_spec.thickness,
                "center": st.slice_spec.center.tolist(),
                "source": st.active_source,
                "display": dict(st.display),
            },
        }
        if st.display.get("show_matrix"):
            frame["matrix"] = st.projection.entries.tolist()
        return frame

    # -- message handling --------------------------------------------------

    def handle(self, msg: dict[str, Any]) -> dict[str, Any]:
        try:
            return self._dispatch(msg)
        except RecoverableError as err:
            return {"t": "error", "code": err.code, "recoverable": True, "detail": str(err)}
        except TourError as err:
            return {"t": "error", "code": err.code, "recoverable": False, "detail": str(err)}

    def _dispatch(self, msg: dict[str, Any]) -> dict[str, Any]:
        if not isinstance(msg, dict) or "t" not in msg:
            raise UnknownMessage("message must be an object with a 't' field")
        kind = msg["t"]
        handler = getattr(self, f"_on_{kind}", None)
        if handler is None:
            raise UnknownMessage(f"unknown message type {kind!r}")
        return handler(msg)

    def _on_drag_axis(self, msg: dict[str, Any]) -> dict[str, Any]:
        st = self.state
        target = np.asarray(msg["target"], dtype=float)
        var = msg.get("m")
        if var is None:
            var = select_axis(st.projection, target)
        req = ManualRequest(int(var), target)
        new_proj, new_basis = apply_update(
            st.projection, req, st.method, previous=st.basis_cache, rng=self._rng
        )
        # commit only after the update fully succeeded
        st.projection = new_proj
        if new_basis is not None:
            st.basis_cache = new_basis
        frame = self.build_frame()
        frame["applied_params"]["m"] = int(var)
        return frame

    def _on_set_method(self, msg: dict[str, Any]) -> dict[str, Any]:
        try:
            method = UpdateMethod(msg["method"])
        except ValueError as err:
            raise UnknownMessage(f"unknown method {msg.get('method')!r}") from err
        if method == UpdateMethod.EXACT_COMPLETION_CONTINUOUS and self.state.basis_cache is None:
            # seed the continuous mode through a fresh completion
            from .linalg import complete_basis

            self.state.basis_cache = complete_basis(self.state.projection, seed=self._rng)
        self.state.method = method
        return {"t": "ack", "applied": {"method": method.value}}

    def _on_set_thickness(self, msg: dict[str, Any]) -> dict[str, Any]:
        lo, hi = self.state.thickness_range
        h = float(np.clip(float(msg["h"]), lo, hi))
        self.state.slice_spec = SliceSpec(self.state.slice_spec.center, h)
        frame = self.build_frame()
        frame["applied_params"]["thickness"] = h
        return frame

    def _on_set_center(self, msg: dict[str, Any]) -> dict[str, Any]:
        c = np.asarray(msg["c"], dtype=float)
        if c.shape[0] != self.state.dataset.p:
            raise DimensionMismatch("center length does not match the data")
        self.state.slice_spec = SliceSpec(c, self.state.slice_spec.thickness)
        return self.build_frame()

    def _on_set_view(self, msg: dict[str, Any]) -> dict[str, Any]:
        mode = msg.get("mode")
        if mode not in ("projection", "slice"):
            raise UnknownMessage(f"unknown view mode {mode!r}")
        self.state.view_mode = mode
        return self.build_frame()

    def _on_set_display(self, msg: dict[str, Any]) -> dict[str, Any]:
        for key in self.state.display:
            if key in msg:
                self.state.display[key] = msg[key]
        return self.build_frame()

    def _on_select_source(self, msg: dict[str, Any]) -> dict[str, Any]:
        name = msg.get("name")
        if name != "data" and name not in self.state.grids:
            raise UnknownMessage(f"unknown source {name!r}")
        self.state.active_source = name
        return self.build_frame()

    def _on_export_projection(self, msg: dict[str, Any]) -> dict[str, Any]:
        return {"t": "ack", "projection": export_projection(self.state.projection)}

    def _on_import_projection(self, msg: dict[str, Any]) -> dict[str, Any]:
        A = (
            import_projection(msg["A"])
            if isinstance(msg["A"], str)
            else ProjectionMatrix(np.array(msg["A"], dtype=float))
        )
        if A.p != self.state.dataset.p:
            raise DimensionMismatch("imported projection dimension does not match the data")
        assert orthogonality_residual(A.entries) <= 1e-10
        self.state.projection = A
        self.state.basis_cache = None
        return self.build_frame()

    def _on_get_frame(self, msg: dict[str, Any]) -> dict[str, Any]:
        return self.build_frame()
