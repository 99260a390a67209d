#!/usr/bin/env python3
"""Regenerate the bundled example data.

Produces:
  data/penguins_synth.csv  -- synthetic stand-in for the penguins data,
      drawn from published per-species summary statistics (no network
      access to the real CSV in this environment; see README).
  data/rf_predictions.csv  -- random-forest predictions over a 10^4-point
      grid in the standardized frame, produced with scikit-learn as the
      "external tree-ensemble tool".

Run from the repo root: python3 scripts/make_fixtures.py
"""

from pathlib import Path

import numpy as np
from sklearn.ensemble import RandomForestClassifier

from manualtour.data import (
    ClassifierGrid,
    ingest_csv,
    make_grid,
    standardize,
    write_predictions,
)

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

# per-species (mean, sd) for bl, bd, fl, bm from the published summaries
SPECIES = {
    "Adelie": (146, [38.8, 18.35, 190.1, 3706.0], [2.66, 1.22, 6.52, 459.0]),
    "Chinstrap": (68, [48.8, 18.42, 195.8, 3733.0], [3.34, 1.14, 7.13, 384.0]),
    "Gentoo": (119, [47.5, 15.0, 217.2, 5076.0], [3.08, 0.98, 6.48, 504.0]),
}
# shared within-species correlation structure, moderate positive
CORR = np.array(
    [
        [1.00, 0.35, 0.35, 0.50],
        [0.35, 1.00, 0.30, 0.45],
        [0.35, 0.30, 1.00, 0.55],
        [0.50, 0.45, 0.55, 1.00],
    ]
)


def make_penguins(path: Path, seed: int = 20220901) -> None:
    rng = np.random.default_rng(seed)
    rows = []
    for name, (n, mean, sd) in SPECIES.items():
        cov = CORR * np.outer(sd, sd)
        draws = rng.multivariate_normal(mean, cov, size=n)
        for row in draws:
            rows.append((row, name))
    with path.open("w") as fh:
        fh.write("bl,bd,fl,bm,species\n")
        for row, name in rows:
            fh.write(",".join(f"{x:.2f}" for x in row) + f",{name}\n")
    print(f"wrote {len(rows)} rows to {path}")


def make_rf_predictions(data_path: Path, out_path: Path, seed: int = 7) -> None:
    ds = standardize(ingest_csv(data_path, label_column="species"))
    pts = make_grid(ds, per_axis=10)
    rf = RandomForestClassifier(n_estimators=100, random_state=seed)
    rf.fit(ds.values, list(ds.labels))
    pred_labels = rf.predict(pts)
    classes = list(ds.class_names)
    lut = {c: i for i, c in enumerate(classes)}
    grid = ClassifierGrid(
        points=pts,
        predicted=np.array([lut[c] for c in pred_labels]),
        class_names=tuple(classes),
        source="external file",
    )
    write_predictions(out_path, grid, ds)
    print(f"wrote {pts.shape[0]} predictions to {out_path}")


if __name__ == "__main__":
    DATA.mkdir(exist_ok=True)
    make_penguins(DATA / "penguins_synth.csv")
    make_rf_predictions(DATA / "penguins_synth.csv", DATA / "rf_predictions.csv")
