"""Batch front door: reproducible non-interactive runs of every algorithm.

Each command writes plain CSV frame files plus a JSON manifest carrying the
seed and parameters, so any run can be replayed bit-identically and the
outputs double as fixtures for the interactive UI.

Exit codes: 0 success, 2 validation error, 1 internal error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .data import (
    build_lda_grid,
    ingest_csv,
    ingest_predictions,
    standardize,
    write_predictions,
)
from .errors import TourError
from .linalg import ProjectionMatrix, project
from .manual import radial_tour_path
from .slicing import (
    SliceSpec,
    expected_slice_count,
    manual_slice_path,
    sample_ball,
    slice_distances,
)


def _load(data_path: str, label: str | None, no_standardize: bool):
    ds = ingest_csv(data_path, label_column=label)
    return ds if no_standardize else standardize(ds)


def _write_manifest(out: Path, payload: dict) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / "manifest.json").write_text(json.dumps(payload, indent=2) + "\n")


def _write_coords(path: Path, coords: np.ndarray, header: list[str]) -> None:
    with path.open("w") as fh:
        fh.write(",".join(header) + "\n")
        for row in np.atleast_2d(coords):
            fh.write(",".join(repr(float(x)) for x in row) + "\n")


@click.group()
@click.version_option(__version__)
def main() -> None:
    """Manual projection/slice tours, batch interface."""


@main.command()
@click.option("--data", required=True, help="input CSV")
@click.option("--label", default=None, help="label column name")
@click.option("--m", "var", required=True, type=int, help="controlled variable (0-based)")
@click.option("--steps", default=10, type=int, help="frames per leg")
@click.option("--d", "ndim", default=2, type=int, help="projection dimension")
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--seed", default=0, type=int)
@click.option("--no-standardize", is_flag=True)
def radial(data, label, var, steps, ndim, out, seed, no_standardize) -> None:
    """Generate a radial tour shrinking one variable's coefficients to zero."""
    ds = _load(data, label, no_standardize)
    A = ProjectionMatrix.axis_aligned(ds.p, ndim)
    path = radial_tour_path(A, var, steps)
    out.mkdir(parents=True, exist_ok=True)
    header = [f"proj_{k}" for k in range(ndim)]
    for i, frame in enumerate(path.frames):
        _write_coords(out / f"frame_{i:03d}.csv", project(ds.values, frame), header)
    _write_manifest(
        out,
        {
            "command": "radial",
            "seed": seed,
            "data": str(data),
            "m": var,
            "steps": steps,
            "d": ndim,
            "frames": len(path.frames),
            "matrices": [f.entries.tolist() for f in path.frames],
        },
    )
    click.echo(f"wrote {len(path.frames)} frames to {out}")


@main.command("slice-sweep")
@click.option("--data", required=True)
@click.option("--label", default=None)
@click.option("--axis", required=True, type=int, help="center shift axis (0-based)")
@click.option("--extent", required=True, type=float)
@click.option("--steps", default=5, type=int)
@click.option("--height", "thickness", required=True, type=float)
@click.option("--d", "ndim", default=2, type=int)
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--seed", default=0, type=int)
@click.option("--no-standardize", is_flag=True)
def slice_sweep(data, label, axis, extent, steps, thickness, ndim, out, seed, no_standardize) -> None:
    """Sweep the slice center out, back, to the other side, and back."""
    ds = _load(data, label, no_standardize)
    A = ProjectionMatrix.axis_aligned(ds.p, ndim)
    spec = SliceSpec(np.zeros(ds.p), thickness)
    specs = manual_slice_path(spec, axis, extent, steps)
    out.mkdir(parents=True, exist_ok=True)
    header = [f"proj_{k}" for k in range(ndim)] + ["distance", "inside"]
    counts = []
    for i, sp in enumerate(specs):
        res = slice_distances(ds.values, A, sp)
        coords = project(ds.values, A)
        block = np.column_stack([coords, res.distances, res.mask.astype(float)])
        _write_coords(out / f"frame_{i:03d}.csv", block, header)
        counts.append(int(res.mask.sum()))
    _write_manifest(
        out,
        {
            "command": "slice-sweep",
            "seed": seed,
            "data": str(data),
            "axis": axis,
            "extent": extent,
            "steps": steps,
            "height": thickness,
            "d": ndim,
            "frames": len(specs),
            "centers": [sp.center.tolist() for sp in specs],
            "in_slice_counts": counts,
        },
    )
    click.echo(f"wrote {len(specs)} frames to {out}; in-slice counts {counts}")


@main.command("count-experiment")
@click.option("--p", "dims", multiple=True, type=int, default=(3, 4, 5))
@click.option("--ratios", default="0.1,0.3,0.5", help="comma-separated h/R ratios")
@click.option("--n", "n_points", default=100_000, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--out", default=None, type=click.Path(path_type=Path))
def count_experiment(dims, ratios, n_points, seed, out) -> None:
    """Monte-Carlo check of the expected in-slice count formula."""
    ratio_vals = [float(r) for r in ratios.split(",")]
    rng = np.random.default_rng(seed)
    rows = []
    click.echo(f"{'p':>3} {'h/R':>6} {'expected':>12} {'empirical':>10} {'z':>8}")
    for p in dims:
        pts = sample_ball(n_points, p, rng=rng)
        # in-slice count for the slice through the origin spanned by the
        # first two coordinates
        v = np.linalg.norm(pts[:, 2:], axis=1)
        for r in ratio_vals:
            expected = expected_slice_count(r, p, 1.0, n_points)
            empirical = int(np.sum(v < r))
            q = expected / n_points
            sd = np.sqrt(n_points * q * (1 - q)) if 0 < q < 1 else 0.0
            z = (empirical - expected) / sd if sd > 0 else 0.0
            rows.append(
                {"p": p, "ratio": r, "expected": expected, "empirical": empirical, "z": z}
            )
            click.echo(f"{p:>3} {r:>6.2f} {expected:>12.1f} {empirical:>10d} {z:>8.2f}")
    if out is not None:
        _write_manifest(
            out,
            {"command": "count-experiment", "seed": seed, "n": n_points, "rows": rows},
        )


@main.command()
@click.option("--data", required=True)
@click.option("--label", default=None)
@click.option("--per-axis", default=20, type=int)
@click.option("--margin", default=0.05, type=float)
@click.option("--model", type=click.Choice(["lda", "passthrough"]), default="lda")
@click.option("--predictions", default=None, help="external file for passthrough")
@click.option("--out", required=True, type=click.Path(path_type=Path))
@click.option("--seed", default=0, type=int)
def grid(data, label, per_axis, margin, model, predictions, out, seed) -> None:
    """Label a dense grid over the data cube and write the prediction file."""
    ds = standardize(ingest_csv(data, label_column=label))
    if model == "lda":
        g = build_lda_grid(ds, per_axis, margin)
    else:
        if predictions is None:
            raise click.UsageError("--model passthrough needs --predictions")
        g = ingest_predictions(predictions, ds)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_predictions(out, g, ds)
    click.echo(f"wrote {g.points.shape[0]} predictions ({len(set(g.labels))} classes) to {out}")


@main.command()
@click.option("--data", required=True)
@click.option("--label", default=None)
@click.option("--predictions", multiple=True, help="NAME=path prediction files")
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--stdio", is_flag=True, help="speak the protocol over stdin/stdout")
def serve(data, label, predictions, host, port, seed, stdio) -> None:
    """Serve an interactive session over a websocket (or stdio)."""
    from .server import build_session, create_app, run_stdio

    session = build_session(data, label, predictions, seed)
    if stdio:
        run_stdio(session)
        return
    import uvicorn

    uvicorn.run(create_app(session), host=host, port=port)


def entrypoint() -> None:
    try:
        main(standalone_mode=False)
    except click.ClickException as err:
        err.show()
        sys.exit(2)
    except click.Abort:
        sys.exit(2)
    except TourError as err:
        click.echo(f"error: {err}", err=True)
        sys.exit(2)
    except Exception as err:  # pragma: no cover - defensive
        click.echo(f"internal error: {err}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    entrypoint()
