"""Orthonormal projection bases and the Gram-Schmidt machinery.

Everything here is pure: functions take and return immutable-by-convention
numpy arrays wrapped in small dataclasses, so calls are safe from any thread.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, RankDeficient

# Orthonormality is asserted at 1e-10 (doubles, p <= 50); Gram-Schmidt
# declares rank deficiency when an intermediate residual drops below 1e-12.
ORTHO_TOL = 1e-10
RANK_TOL = 1e-12


def orthogonality_residual(entries: np.ndarray) -> float:
    """Max-norm of M^T M - I; zero for a perfectly orthonormal matrix."""
    m = np.asarray(entries, dtype=float)
    g = m.T @ m
    return float(np.max(np.abs(g - np.eye(g.shape[0]))))


@dataclass(frozen=True)
class ProjectionMatrix:
    """A p x d orthonormal basis whose columns define the projection."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2:
            raise DimensionMismatch("projection matrix must be 2-D")
        p, d = m.shape
        if p < 2 or not (1 <= d < p):
            raise DimensionMismatch(f"need p >= 2 and 1 <= d < p, got {p}x{d}")
        if not np.all(np.isfinite(m)):
            raise DimensionMismatch("projection matrix has non-finite entries")
        if orthogonality_residual(m) > ORTHO_TOL:
            raise DimensionMismatch("columns are not orthonormal")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def p(self) -> int:
        return self.entries.shape[0]

    @property
    def d(self) -> int:
        return self.entries.shape[1]

    def row(self, m: int) -> np.ndarray:
        return self.entries[m].copy()

    @staticmethod
    def axis_aligned(p: int, d: int) -> "ProjectionMatrix":
        """The first d coordinate axes as a projection."""
        return ProjectionMatrix(np.eye(p)[:, :d])


@dataclass(frozen=True)
class Basis:
    """A full p x p orthogonal matrix extending a ProjectionMatrix."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("basis must be square")
        if orthogonality_residual(m) > ORTHO_TOL:
            raise DimensionMismatch("basis is not orthogonal")
        m.flags.writeable = False
        object.__setattr__(self, "entries", m)

    @property
    def p(self) -> int:
        return self.entries.shape[0]

    def projection(self, d: int) -> ProjectionMatrix:
        return ProjectionMatrix(self.entries[:, :d])


def orthonormalize_columns(
    M: np.ndarray,
    order: Sequence[int] | None = None,
    n_fixed: int = 0,
) -> np.ndarray:
    """Modified Gram-Schmidt with one re-orthogonalization pass.

    Columns are processed in ``order`` (default left to right) but land back
    in their original positions.  The first ``n_fixed`` columns are assumed
    orthonormal already and copied through untouched, so callers can anchor
    the result to an existing basis.  Raises RankDeficient when a residual
    norm falls below RANK_TOL.
    """
    M = np.array(M, dtype=float)
    if M.ndim != 2:
        raise DimensionMismatch("expected a matrix")
    n = M.shape[1]
    order = list(range(n)) if order is None else list(order)
    if sorted(order) != list(range(n)):
        raise DimensionMismatch("column order must be a permutation of 0..d-1")
    out = np.empty_like(M)
    out[:, :n_fixed] = M[:, :n_fixed]
    done = list(range(n_fixed))
    for k in order:
        if k < n_fixed:
            continue
        v = M[:, k].copy()
        for _ in range(2):  # second pass re-orthogonalizes for stability
            for j in done:
                v -= (out[:, j] @ v) * out[:, j]
        nrm = np.linalg.norm(v)
        if nrm < RANK_TOL:
            raise RankDeficient(f"column {k} is in the span of the others")
        out[:, k] = v / nrm
        done.append(k)
    return out


def gram_schmidt(M: np.ndarray, order: Sequence[int] | None = None) -> ProjectionMatrix:
    """Orthonormalize the columns of M, preserving its span.

    With the default order the first output column is parallel to M's first
    column.
    """
    return ProjectionMatrix(orthonormalize_columns(M, order))


def project(data: np.ndarray, A: ProjectionMatrix) -> np.ndarray:
    """Row-wise projection X A of N x p data onto the d-dimensional view."""
    X = np.asarray(data, dtype=float)
    if X.ndim != 2 or X.shape[1] != A.p:
        raise DimensionMismatch(
            f"data has {X.shape[-1] if X.ndim == 2 else '?'} columns, projection expects {A.p}"
        )
    return X @ A.entries


def complete_basis(
    A: ProjectionMatrix,
    seed: int | np.random.Generator | None = None,
    previous: Basis | None = None,
) -> Basis:
    """Extend A to a full orthogonal basis.

    With ``previous`` set, the old complement columns seed Gram-Schmidt so
    the completion changes as little as possible (and is a fixed point when
    A is unchanged).  Otherwise the complement is drawn uniformly in (-1, 1)
    from a seedable generator, retrying a few times on degenerate draws.
    """
    p, d = A.p, A.d
    if previous is not None:
        if previous.p != p:
            raise DimensionMismatch("previous basis has wrong dimension")
        stacked = np.hstack([A.entries, previous.entries[:, d:]])
        return Basis(orthonormalize_columns(stacked, n_fixed=d))
    rng = np.random.default_rng(seed) if not isinstance(seed, np.random.Generator) else seed
    last_err: Exception | None = None
    for _ in range(8):
        fill = rng.uniform(-1.0, 1.0, size=(p, p - d))
        try:
            return Basis(orthonormalize_columns(np.hstack([A.entries, fill]), n_fixed=d))
        except RankDeficient as err:  # fresh draw and try again
            last_err = err
    raise RankDeficient("random basis completion kept degenerating") from last_err
