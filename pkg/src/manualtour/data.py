"""Data ingestion, standardization, prediction grids, and classifiers.

Implements the boundary-exploration workflow: load numeric data with group
labels, center and scale it, lay a dense grid over the data cube, label the
grid with a built-in LDA model or with predictions ingested from an external
file (e.g. a random forest trained elsewhere).
"""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from .errors import (
    DimensionMismatch,
    EmptyData,
    FrameMismatch,
    GridTooLarge,
    ParseError,
    SingularCovariance,
    TooFewSamples,
    ZeroVariance,
)

log = logging.getLogger(__name__)

DEFAULT_GRID_CAP = 2_000_000
DEFAULT_GRID_MARGIN = 0.05


@dataclass(frozen=True)
class ScaleInfo:
    """Per-variable mean and sample sd recorded when standardizing."""

    means: np.ndarray
    sds: np.ndarray


@dataclass(frozen=True)
class DataSet:
    values: np.ndarray
    var_names: tuple[str, ...]
    labels: Optional[tuple[str, ...]] = None
    group_index: Optional[np.ndarray] = None
    scale_info: Optional[ScaleInfo] = None
    n_dropped: int = 0

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 2:
            raise DimensionMismatch("data values must be a matrix")
        if not np.all(np.isfinite(v)):
            raise DimensionMismatch("data contains non-finite values after ingestion")
        if len(self.var_names) != v.shape[1]:
            raise DimensionMismatch("variable name count does not match columns")
        if self.labels is not None and len(self.labels) != v.shape[0]:
            raise DimensionMismatch("label count does not match rows")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    @property
    def class_names(self) -> tuple[str, ...]:
        if self.labels is None:
            return ()
        seen = sorted(set(self.labels))
        return tuple(seen)


@dataclass(frozen=True)
class ClassifierGrid:
    """Dense grid over the data cube with a predicted class per point."""

    points: np.ndarray
    predicted: np.ndarray
    class_names: tuple[str, ...]
    source: str

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.class_names[i] for i in self.predicted)


@dataclass(frozen=True)
class LdaModel:
    class_means: np.ndarray
    pooled_covariance: np.ndarray
    priors: np.ndarray
    class_names: tuple[str, ...]

    def __post_init__(self) -> None:
        cov = self.pooled_covariance
        if np.max(np.abs(cov - cov.T)) > 1e-10:
            raise SingularCovariance("pooled covariance is not symmetric")
        try:
            np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as err:
            raise SingularCovariance("pooled covariance is not positive definite") from err
        if abs(float(np.sum(self.priors)) - 1.0) > 1e-12:
            raise DimensionMismatch("class priors must sum to 1")


def _dense_group_index(labels: Sequence[str]) -> np.ndarray:
    order = sorted(set(labels))
    lut = {name: i for i, name in enumerate(order)}
    return np.array([lut[s] for s in labels], dtype=int)


def ingest_csv(
    path: str | Path,
    label_column: str | None = None,
    group_index_column: str | None = None,
    delimiter: str = ",",
) -> DataSet:
    """Load a delimited file into a DataSet, dropping incomplete rows.

    All columns except the optional label/group-index columns must be
    numeric.  Rows with missing or non-numeric values are dropped and the
    drop count is reported on the result (and logged).
    """
    path = Path(path)
    try:
        df = pd.read_csv(path, delimiter=delimiter, comment="#", float_precision="round_trip")
    except Exception as err:
        raise ParseError(f"could not parse {path}: {err}") from err
    if df.empty:
        raise EmptyData(f"{path} has no data rows")
    for col in (label_column, group_index_column):
        if col is not None and col not in df.columns:
            raise ParseError(f"column {col!r} not found in {path}")
    feature_cols = [c for c in df.columns if c not in (label_column, group_index_column)]
    numeric = df[feature_cols].apply(pd.to_numeric, errors="coerce")
    keep = numeric.notna().all(axis=1)
    if label_column is not None:
        keep &= df[label_column].notna()
    n_dropped = int((~keep).sum())
    if n_dropped:
        log.info("dropped %d incomplete rows from %s", n_dropped, path)
    numeric = numeric[keep]
    if numeric.empty:
        raise EmptyData(f"{path} has no complete rows")
    labels = None
    group_index = None
    if label_column is not None:
        labels = tuple(str(s) for s in df.loc[keep, label_column])
        group_index = _dense_group_index(labels)
        if group_index_column is not None:
            declared = df.loc[keep, group_index_column].to_numpy()
            declared = declared - declared.min()
            if not np.array_equal(declared.astype(int), group_index):
                log.info("declared group indices reordered to dense label encoding")
    return DataSet(
        values=numeric.to_numpy(dtype=float),
        var_names=tuple(feature_cols),
        labels=labels,
        group_index=group_index,
        n_dropped=n_dropped,
    )


def standardize(ds: DataSet) -> DataSet:
    """Center each column and scale to sample sd 1 (divisor N-1).

    Records the means/sds used so external prediction files can be checked
    against the same frame.  Idempotent within rounding.
    """
    means = ds.values.mean(axis=0)
    sds = ds.values.std(axis=0, ddof=1)
    for j, s in enumerate(sds):
        if s <= 0 or not np.isfinite(s):
            raise ZeroVariance(f"variable {ds.var_names[j]!r} has zero variance")
    values = (ds.values - means) / sds
    if ds.scale_info is not None:
        # compose with the original frame so scale_info always maps back to
        # the raw units
        means = ds.scale_info.means + ds.scale_info.sds * means
        sds = ds.scale_info.sds * sds
    return replace(ds, values=values, scale_info=ScaleInfo(means=means, sds=sds))


def make_grid(
    ds: DataSet,
    per_axis: int,
    margin: float = DEFAULT_GRID_MARGIN,
    cap: int = DEFAULT_GRID_CAP,
) -> np.ndarray:
    """Lattice of per_axis^p points covering the data cube plus a margin."""
    if per_axis < 2:
        raise DimensionMismatch("per_axis must be >= 2")
    total = per_axis**ds.p
    if total > cap:
        raise GridTooLarge(f"{per_axis}^{ds.p} = {total} points exceeds the cap of {cap}")
    lo = ds.values.min(axis=0)
    hi = ds.values.max(axis=0)
    pad = margin * (hi - lo)
    axes = [np.linspace(lo[j] - pad[j], hi[j] + pad[j], per_axis) for j in range(ds.p)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def fit_lda(ds: DataSet) -> LdaModel:
    """Class means, pooled within-class covariance (divisor N-G), priors."""
    if ds.labels is None:
        raise TooFewSamples("LDA needs group labels")
    names = ds.class_names
    if len(names) < 2:
        raise TooFewSamples("LDA needs at least two classes")
    idx = _dense_group_index(ds.labels)
    G, p, N = len(names), ds.p, ds.n
    means = np.zeros((G, p))
    pooled = np.zeros((p, p))
    priors = np.zeros(G)
    for g in range(G):
        rows = ds.values[idx == g]
        if rows.shape[0] < p + 1:
            raise TooFewSamples(
                f"class {names[g]!r} has {rows.shape[0]} rows, needs at least {p + 1}"
            )
        means[g] = rows.mean(axis=0)
        centered = rows - means[g]
        pooled += centered.T @ centered
        priors[g] = rows.shape[0] / N
    pooled /= N - G
    pooled = 0.5 * (pooled + pooled.T)
    return LdaModel(class_means=means, pooled_covariance=pooled, priors=priors, class_names=names)


def lda_scores(model: LdaModel, points: np.ndarray) -> np.ndarray:
    """Linear discriminant scores x.W_g + b_g for every point and class."""
    X = np.asarray(points, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.class_means.shape[1]:
        raise DimensionMismatch("point dimension does not match the model")
    W = np.linalg.solve(model.pooled_covariance, model.class_means.T)  # p x G
    b = -0.5 * np.sum(model.class_means * W.T, axis=1) + np.log(model.priors)
    return X @ W + b


def predict_lda(model: LdaModel, points: np.ndarray) -> np.ndarray:
    """Argmax class per point; ties break to the lowest class index."""
    return np.argmax(lda_scores(model, points), axis=1)


def build_lda_grid(ds: DataSet, per_axis: int, margin: float = DEFAULT_GRID_MARGIN) -> ClassifierGrid:
    """Convenience: fit LDA on ds and label a fresh grid with it."""
    model = fit_lda(ds)
    pts = make_grid(ds, per_axis, margin)
    return ClassifierGrid(
        points=pts,
        predicted=predict_lda(model, pts),
        class_names=model.class_names,
        source="builtin-LDA",
    )


def write_predictions(path: str | Path, grid: ClassifierGrid, ds: DataSet) -> None:
    """Write a grid to the canonical prediction-file format.

    Header comment line carries JSON metadata {var_names, means, sds,
    class_list}; rows are p standardized coordinates plus the class label.
    """
    if ds.scale_info is None:
        raise FrameMismatch("dataset has no scale_info; standardize it first")
    meta = {
        "var_names": list(ds.var_names),
        "means": [float(x) for x in ds.scale_info.means],
        "sds": [float(x) for x in ds.scale_info.sds],
        "class_list": list(grid.class_names),
    }
    path = Path(path)
    with path.open("w") as fh:
        fh.write("# " + json.dumps(meta) + "\n")
        fh.write(",".join([*ds.var_names, "class"]) + "\n")
        for row, lab in zip(grid.points, grid.labels):
            fh.write(",".join(repr(float(x)) for x in row) + f",{lab}\n")


def ingest_predictions(path: str | Path, ds: DataSet) -> ClassifierGrid:
    """Load an externally produced prediction file against a dataset.

    Coordinates are interpreted in the standardized frame declared in the
    file's metadata line, which must agree with ds.scale_info to 1e-6.
    Unknown class strings are appended to the class list with a warning.
    """
    path = Path(path)
    if ds.scale_info is None:
        raise FrameMismatch("dataset has no scale_info; standardize it first")
    meta = None
    with path.open() as fh:
        for line in fh:
            if line.startswith("#"):
                try:
                    meta = json.loads(line.lstrip("# "))
                except json.JSONDecodeError as err:
                    raise ParseError(f"bad metadata line in {path}: {err}") from err
                break
            break
    if meta is None:
        raise ParseError(f"{path} is missing the metadata header line")
    for key in ("var_names", "means", "sds", "class_list"):
        if key not in meta:
            raise ParseError(f"metadata in {path} is missing {key!r}")
    if list(meta["var_names"]) != list(ds.var_names):
        raise FrameMismatch("prediction file variables do not match the dataset")
    for name, ours, theirs in (
        ("means", ds.scale_info.means, meta["means"]),
        ("sds", ds.scale_info.sds, meta["sds"]),
    ):
        if np.max(np.abs(np.asarray(theirs, dtype=float) - ours)) > 1e-6:
            raise FrameMismatch(f"prediction file {name} disagree with the dataset scaling")
    try:
        df = pd.read_csv(path, comment="#", float_precision="round_trip")
    except Exception as err:
        raise ParseError(f"could not parse {path}: {err}") from err
    if "class" not in df.columns:
        raise ParseError(f"{path} has no 'class' column")
    pts = df[list(ds.var_names)].to_numpy(dtype=float)
    classes = list(meta["class_list"])
    for lab in df["class"].astype(str):
        if lab not in classes:
            warnings.warn(f"unknown class {lab!r} in {path}; appending to class list")
            classes.append(lab)
    lut = {name: i for i, name in enumerate(classes)}
    predicted = np.array([lut[str(s)] for s in df["class"]], dtype=int)
    union = list(classes)
    for name in ds.class_names:
        if name not in union:
            union.append(name)
    return ClassifierGrid(
        points=pts,
        predicted=predicted,
        class_names=tuple(union),
        source="external file",
    )
