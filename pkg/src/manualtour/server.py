"""Transport layer for the session protocol: websocket and stdio runners.

Messages are JSON, one per socket frame (or per line on stdio).  The
websocket endpoint pushes an initial frame on connect so a reloaded client
reproduces the identical scene.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np
from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.staticfiles import StaticFiles

from .data import ingest_csv, ingest_predictions, standardize
from .linalg import ProjectionMatrix
from .session import Session, SessionState
from .slicing import SliceSpec


def build_session(
    data_path: str,
    label: str | None = None,
    predictions: tuple[str, ...] = (),
    seed: int = 0,
    thickness: float = 0.5,
    d: int = 2,
) -> Session:
    """Assemble a ready-to-serve session from file paths.

    ``predictions`` entries are NAME=path pairs loaded as named grids.
    """
    ds = standardize(ingest_csv(data_path, label_column=label))
    grids = {}
    for entry in predictions:
        name, _, path = entry.partition("=")
        if not path:
            name, path = Path(entry).stem, entry
        grids[name] = ingest_predictions(path, ds)
    state = SessionState(
        dataset=ds,
        projection=ProjectionMatrix.axis_aligned(ds.p, d),
        slice_spec=SliceSpec(np.zeros(ds.p), thickness),
        grids=grids,
        seed=seed,
    )
    return Session(state)


def run_stdio(session: Session) -> None:
    """Blocking loop: one JSON message per stdin line, one reply per line."""
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            msg = json.loads(line)
        except json.JSONDecodeError:
            reply = {"t": "error", "code": "parse_error", "recoverable": True}
        else:
            reply = session.handle(msg)
        sys.stdout.write(json.dumps(reply) + "\n")
        sys.stdout.flush()


def create_app(session: Session, frontend_dir: str | Path | None = None):
    """FastAPI app exposing the session on /ws plus optional static UI."""
    app = FastAPI(title="manualtour session")

    @app.websocket("/ws")
    async def ws(socket: WebSocket) -> None:
        await socket.accept()
        await socket.send_json(session.build_frame())
        try:
            while True:
                msg = await socket.receive_json()
                await socket.send_json(session.handle(msg))
        except WebSocketDisconnect:
            pass

    if frontend_dir is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        frontend_dir = candidate if candidate.is_dir() else None
    if frontend_dir is not None:
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="ui")
    return app
