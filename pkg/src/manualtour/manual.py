"""Manual-control updates: turn requested coefficients for one variable
into a new valid projection, plus generated radial tour paths.

Five update flavors are provided.  ``update_simple`` re-orthonormalizes and
lands *near* the request; the exact variants guarantee the controlled row of
the result equals the request to machine precision, differing in how the
remaining rows absorb the adjustment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import (
    DegenerateTarget,
    DimensionMismatch,
    MissingPrevBasis,
    RankDeficient,
    TargetTooLarge,
)
from .linalg import (
    Basis,
    ProjectionMatrix,
    orthonormalize_columns,
)

FULL_ROW_TOL = 1e-6  # a controlled row may not consume the whole column norm
DIRECTION_TOL = 1e-8


class UpdateMethod(str, Enum):
    SIMPLE = "simple"
    EXACT_ZEROED = "exact_zeroed"
    EXACT_COMPLETION_RANDOM = "exact_completion_random"
    EXACT_COMPLETION_CONTINUOUS = "exact_completion_continuous"
    EXACT_ROTATION = "exact_rotation"


@dataclass(frozen=True)
class ManualRequest:
    """Requested coefficients for one controlled variable.

    ``var`` is the 0-based row index; requests with norm above 1 are
    rescaled onto the unit sphere (dragging past the axis circle is
    forgiving).
    """

    var: int
    target: np.ndarray

    def __post_init__(self) -> None:
        t = np.array(self.target, dtype=float).ravel()
        if not np.all(np.isfinite(t)):
            raise DimensionMismatch("target has non-finite entries")
        nrm = np.linalg.norm(t)
        if nrm > 1.0:
            t = t / nrm
        t.flags.writeable = False
        object.__setattr__(self, "target", t)

    def check_against(self, A: ProjectionMatrix) -> None:
        if not 0 <= self.var < A.p:
            raise DimensionMismatch(f"variable index {self.var} outside 0..{A.p - 1}")
        if self.target.shape[0] != A.d:
            raise DimensionMismatch(
                f"target has {self.target.shape[0]} coefficients, projection is {A.d}-dimensional"
            )


@dataclass(frozen=True)
class TourPath:
    """An ordered list of projection frames plus generator metadata."""

    frames: tuple
    meta: dict = field(default_factory=dict)


def update_simple(A: ProjectionMatrix, req: ManualRequest) -> ProjectionMatrix:
    """Overwrite the controlled row, then Gram-Schmidt the columns.

    The row of the result tracks the request closely for small drags but is
    not exact: orthonormalization moves it.
    """
    req.check_against(A)
    M = A.entries.copy()
    M[req.var] = req.target
    return ProjectionMatrix(orthonormalize_columns(M))


def _chol_upper(C: np.ndarray) -> np.ndarray:
    """Upper-triangular U with U^T U = C (C symmetric positive definite)."""
    return np.linalg.cholesky(C).T


def _orthonormalize_zeroed(M0: np.ndarray, var: int) -> np.ndarray:
    """Gram-Schmidt for a matrix whose row ``var`` is zero.

    A column that loses all its mass to the zeroed row (the controlled
    variable owned it outright) has no residual left; it is filled with the
    first coordinate direction away from ``var`` that is independent of the
    columns built so far, so dragging a sole-contributor variable still
    succeeds deterministically.
    """
    p, d = M0.shape
    out = np.empty_like(M0)
    for k in range(d):
        v = M0[:, k].copy()
        for _ in range(2):
            for j in range(k):
                v -= (out[:, j] @ v) * out[:, j]
        nrm = np.linalg.norm(v)
        if nrm < 1e-8:
            for cand in range(p):
                if cand == var:
                    continue
                v = np.zeros(p)
                v[cand] = 1.0
                for j in range(k):
                    v -= (out[:, j] @ v) * out[:, j]
                nrm = np.linalg.norm(v)
                if nrm > 0.5:
                    break
            else:  # pragma: no cover - impossible while d < p
                raise RankDeficient("no direction left to complete the column")
        out[:, k] = v / nrm
    return out


def _zeroed_entries(A: ProjectionMatrix, var: int, target: np.ndarray) -> np.ndarray:
    """Core of the exact-zeroed adjustment.

    Zero the controlled row, orthonormalize the remaining rows, then mix the
    columns by the triangular factor of I - t t^T so that reinstating the
    stored row yields exactly orthonormal columns.  Sequential in the same
    sense as Gram-Schmidt: column k only draws on columns 1..k.
    """
    M0 = A.entries.copy()
    M0[var] = 0.0
    if A.d == 1:
        # only normalization of the remaining rows; with nothing left to
        # normalize the update is rejected
        nrm = np.linalg.norm(M0[:, 0])
        if nrm < 1e-8:
            raise RankDeficient("no remaining rows to carry the column")
        Q = M0 / nrm
    else:
        Q = _orthonormalize_zeroed(M0, var)  # row `var` stays exactly zero
    C = np.eye(A.d) - np.outer(target, target)
    out = Q @ _chol_upper(C)
    out[var] = target
    return out


def update_exact_zeroed(A: ProjectionMatrix, req: ManualRequest) -> ProjectionMatrix:
    """Exact-position update that stores, zeroes, and reinstates the row.

    The controlled row of the result equals the request to machine
    precision.  For d = 1 this degenerates to rescaling the remaining rows.
    """
    req.check_against(A)
    if np.linalg.norm(req.target) >= 1.0 - FULL_ROW_TOL:
        raise TargetTooLarge("requested row norm leaves no mass for the other rows")
    return ProjectionMatrix(_zeroed_entries(A, req.var, req.target))


def update_exact_zeroed_literal(A: ProjectionMatrix, req: ManualRequest) -> np.ndarray:
    """Comparison-mode variant using the additive cross-column constant.

    d = 2 only.  After zeroing/orthonormalizing/reinstating the row, every
    other entry of column 2 gets the constant t1*t2/(p-1) added, and rows
    away from the controlled one are rescaled to restore unit columns.  The
    returned raw matrix is generally *not* orthonormal; callers measure its
    residual.  Kept purely for side-by-side reporting against
    update_exact_zeroed.
    """
    req.check_against(A)
    if A.d != 2:
        raise DimensionMismatch("the literal correction is defined for d = 2 only")
    t = req.target
    if np.linalg.norm(t) >= 1.0 - FULL_ROW_TOL:
        raise TargetTooLarge("requested row norm leaves no mass for the other rows")
    m = req.var
    M0 = A.entries.copy()
    M0[m] = 0.0
    out = orthonormalize_columns(M0)
    out[m] = t
    rest = [j for j in range(A.p) if j != m]
    out[rest, 1] += t[0] * t[1] / (A.p - 1)
    for k in range(2):
        ss = np.sum(out[rest, k] ** 2)
        if ss > 0:
            out[rest, k] *= np.sqrt(max(0.0, 1.0 - t[k] ** 2) / ss)
    return out


def _orthogonal_with_first_column(u: np.ndarray) -> np.ndarray:
    """Square orthogonal matrix whose first column is the unit vector u.

    Householder reflection mapping e1 to u; identity when u is already e1.
    """
    n = u.shape[0]
    v = u - np.eye(n)[:, 0]
    vv = float(v @ v)
    if vv < 1e-30:
        return np.eye(n)
    return np.eye(n) - 2.0 * np.outer(v, v) / vv


def _row_orthonormalize_fixed_first(O: np.ndarray, var: int) -> np.ndarray:
    """Orthonormalize the rows of O taking row ``var`` (already unit) first."""
    p = O.shape[0]
    order = [var] + [i for i in range(p) if i != var]
    perm = O[order].T  # columns = rows in processing order
    res = orthonormalize_columns(perm, n_fixed=1).T
    out = np.empty_like(O)
    out[order] = res
    return out


def update_exact_completion(
    A: ProjectionMatrix,
    req: ManualRequest,
    previous: Optional[Basis] = None,
    mode: str = "random",
    rng: np.random.Generator | int | None = None,
) -> tuple[ProjectionMatrix, Basis]:
    """Exact-position update through completion of the full p x p basis.

    The controlled row of the full basis becomes
    (t_1, ..., t_d, sqrt(1 - |t|^2), 0, ..., 0); the other rows keep their
    projection coefficients and fill the complement either with fresh
    uniform (-1, 1) draws (``mode="random"``) or with the cached previous
    complement (``mode="continuous"``), then row-wise Gram-Schmidt runs with
    the controlled row pinned first so it is never altered.

    In continuous mode the previous complement is first rotated so its
    controlled row aligns with the first complement axis; this makes an
    unchanged request an exact fixed point of the update.
    """
    req.check_against(A)
    p, d = A.p, A.d
    t = req.target
    comp_norm = np.sqrt(max(0.0, 1.0 - float(t @ t)))

    def build(complement_rows: np.ndarray) -> tuple[ProjectionMatrix, Basis]:
        O = np.zeros((p, p))
        O[:, :d] = A.entries
        O[req.var, :d] = t
        O[req.var, d] = comp_norm
        rest = [i for i in range(p) if i != req.var]
        O[rest, d:] = complement_rows
        O = _row_orthonormalize_fixed_first(O, req.var)
        basis = Basis(O)
        return basis.projection(d), basis

    if mode == "continuous":
        if previous is None:
            raise MissingPrevBasis("continuous completion needs the previous basis")
        if previous.p != p:
            raise DimensionMismatch("previous basis has wrong dimension")
        comp = previous.entries[:, d:].copy()
        r = comp[req.var]
        rn = np.linalg.norm(r)
        if rn > DIRECTION_TOL:
            # rotate the complement so row `var` lies on its first axis
            comp = comp @ _orthogonal_with_first_column(r / rn)
        rest = [i for i in range(p) if i != req.var]
        return build(comp[rest])
    if mode != "random":
        raise DimensionMismatch(f"unknown completion mode {mode!r}")
    gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    last_err: Exception | None = None
    for _ in range(8):
        fill = gen.uniform(-1.0, 1.0, size=(p - 1, p - d))
        try:
            return build(fill)
        except RankDeficient as err:
            last_err = err
    raise RankDeficient("random completion kept degenerating") from last_err


def update_exact_rotation(A: ProjectionMatrix, req: ManualRequest) -> ProjectionMatrix:
    """Exact update via rotation within the projection's d-plane.

    Rotate the in-plane frame so the requested row lies along the first
    frame axis, run the zeroed-style adjustment there (where the mixing
    factor is diagonal, so the row keeps both its direction and manually
    selected length), and rotate back.
    """
    req.check_against(A)
    t = req.target
    L = float(np.linalg.norm(t))
    if L <= DIRECTION_TOL:
        raise DegenerateTarget("requested direction is undefined near zero")
    Q = _orthogonal_with_first_column(t / L)
    M = A.entries.copy()
    M[req.var] = t
    B = M @ Q  # row `var` becomes (L, 0, ..., 0)
    B[req.var] = 0.0
    if A.d > 1:
        G = _orthonormalize_zeroed(B, req.var)
    else:
        nrm = np.linalg.norm(B[:, 0])
        if nrm < 1e-8:
            raise RankDeficient("no remaining rows to carry the column")
        G = B / nrm
    G[:, 0] *= np.sqrt(max(0.0, 1.0 - L * L))
    G[req.var, 0] = L
    return ProjectionMatrix(G @ Q.T)


def apply_update(
    A: ProjectionMatrix,
    req: ManualRequest,
    method: UpdateMethod,
    previous: Optional[Basis] = None,
    rng: np.random.Generator | int | None = None,
) -> tuple[ProjectionMatrix, Optional[Basis]]:
    """Dispatch a request through the selected update method."""
    if method == UpdateMethod.SIMPLE:
        return update_simple(A, req), None
    if method == UpdateMethod.EXACT_ZEROED:
        return update_exact_zeroed(A, req), None
    if method == UpdateMethod.EXACT_COMPLETION_RANDOM:
        return update_exact_completion(A, req, mode="random", rng=rng)
    if method == UpdateMethod.EXACT_COMPLETION_CONTINUOUS:
        return update_exact_completion(A, req, previous=previous, mode="continuous")
    if method == UpdateMethod.EXACT_ROTATION:
        return update_exact_rotation(A, req), None
    raise DimensionMismatch(f"unknown update method {method!r}")


def radial_tour_path(A: ProjectionMatrix, var: int, steps: int) -> TourPath:
    """Shrink the coefficients of one variable to zero and back.

    Each leg has ``steps`` frames (endpoints included), giving 2*steps - 1
    frames total.  Interpolation is linear in the row coefficients and every
    interior frame goes through the exact-zeroed update, so the controlled
    row follows the interpolant exactly and the midpoint row is exactly
    zero.  The first and last frames are the starting matrix itself.
    """
    if steps < 2:
        raise DimensionMismatch("steps must be >= 2")
    if not 0 <= var < A.p:
        raise DimensionMismatch(f"variable index {var} outside 0..{A.p - 1}")
    t0 = A.row(var)
    down = np.linspace(1.0, 0.0, steps)
    alphas = np.concatenate([down, down[::-1][1:]])
    frames = []
    for a in alphas:
        if a == 1.0:
            frames.append(A)
        else:
            frames.append(update_exact_zeroed(A, ManualRequest(var, a * t0)))
    return TourPath(
        frames=tuple(frames),
        meta={"generator": "radial_tour_path", "var": var, "steps": steps},
    )
