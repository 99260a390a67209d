from pathlib import Path

import numpy as np
import pytest

from manualtour.data import ingest_csv, standardize
from manualtour.linalg import ProjectionMatrix, gram_schmidt

ROOT = Path(__file__).resolve().parents[1]
PENGUINS = ROOT / "data" / "penguins_synth.csv"
RF_PREDICTIONS = ROOT / "data" / "rf_predictions.csv"


@pytest.fixture(scope="session")
def penguins():
    return ingest_csv(PENGUINS, label_column="species")


@pytest.fixture(scope="session")
def penguins_std(penguins):
    return standardize(penguins)


@pytest.fixture()
def rng():
    return np.random.default_rng(42)


def random_projection(p: int, d: int, rng: np.random.Generator) -> ProjectionMatrix:
    """Well-conditioned random orthonormal p x d matrix."""
    while True:
        M = rng.normal(size=(p, d))
        if np.linalg.cond(M) < 100:
            return gram_schmidt(M)
