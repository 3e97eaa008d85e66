"""Canonical representations of affine flats and conversions among them.

A k-flat in R^n is a k-dimensional linear subspace translated by a
displacement vector.  The canonical storage format is orthogonal affine
coordinates [A, b0]: an orthonormal basis A of the linear part together with
the unique displacement b0 orthogonal to it.  From there the flat can be
converted losslessly to

* Stiefel coordinates, an (n+1) x (k+1) orthonormal matrix that realizes the
  flat as a (k+1)-plane in R^(n+1),
* projection coordinates, the unique (n+1) x (n+1) orthogonal projection
  onto that plane,
* projection affine coordinates, the pair [A A^T, b0] of an n x n projection
  and a displacement in its kernel.

The plane spanned by the Stiefel coordinates never lies inside the
hyperplane x_{n+1} = 0; (k+1)-planes that do lie there correspond to no flat
at all, and ``unembed`` reports them as ``NotAFlat``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .config import get_default_tol
from .errors import DimensionError, NotAFlat, RankDeficient

__all__ = [
    "AffineFlat",
    "StiefelMatrix",
    "ProjectionMatrix",
    "ProjectionAffinePair",
    "make_flat",
    "stiefel_coords",
    "projection_coords",
    "projection_affine_coords",
    "embed",
    "unembed",
    "equal_flats",
    "pad_ambient",
    "deaffine",
    "flat_from_projection",
]


def _as_matrix(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    if M.ndim != 2:
        raise DimensionError(f"{name} must be a matrix, got ndim={M.ndim}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} contains non-finite entries")
    return M


def _as_vector(v, length: int, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape != (length,):
        raise DimensionError(f"{name} must have length {length}, got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AffineFlat:
    """A k-flat span(A) + b0 in orthogonal affine coordinates.

    Attributes
    ----------
    A : (n, k) ndarray
        Orthonormal basis of the linear part (n x 0 for a point).
    b0 : (n,) ndarray
        Displacement, orthogonal to the columns of A.

    The constructor validates orthonormality; use :func:`make_flat` to build
    a flat from a raw basis and an arbitrary displacement.
    """

    A: np.ndarray
    b0: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.ndim != 2:
            raise DimensionError(f"A must be an n x k matrix, got ndim={A.ndim}")
        n, k = A.shape
        b0 = _as_vector(self.b0, n, "b0")
        if not 0 <= k < n:
            raise DimensionError(f"flat dimension k={k} must satisfy 0 <= k < n={n}")
        if not np.all(np.isfinite(A)):
            raise ValueError("A contains non-finite entries")
        tol = get_default_tol()
        if k > 0:
            ortho_err = np.abs(A.T @ A - np.eye(k)).max()
            if ortho_err > 1e3 * tol:
                raise ValueError(
                    f"A is not orthonormal (max deviation {ortho_err:.3e}); use make_flat"
                )
            disp_err = np.abs(A.T @ b0).max() / max(1.0, float(np.linalg.norm(b0)))
            if disp_err > 1e3 * tol:
                raise ValueError(
                    f"b0 is not orthogonal to span(A) (relative error {disp_err:.3e}); use make_flat"
                )
        object.__setattr__(self, "A", _freeze(A))
        object.__setattr__(self, "b0", _freeze(b0))

    @property
    def n(self) -> int:
        """Ambient dimension."""
        return self.A.shape[0]

    @property
    def k(self) -> int:
        """Dimension of the flat."""
        return self.A.shape[1]

    def __repr__(self) -> str:
        return f"AffineFlat(k={self.k}, n={self.n})"


@dataclass(frozen=True, eq=False)
class StiefelMatrix:
    """Stiefel coordinates: an (n+1) x (k+1) matrix with orthonormal columns.

    The last row is (0, ..., 0, r) with r = 1/sqrt(1 + |b0|^2) > 0.
    """

    Y: np.ndarray

    def __post_init__(self):
        Y = _as_matrix(self.Y, "Y")
        rows, cols = Y.shape
        if cols < 1 or rows < cols + 1:
            raise DimensionError(f"Stiefel coordinates must be (n+1) x (k+1) with k < n, got {Y.shape}")
        tol = get_default_tol()
        ortho_err = np.abs(Y.T @ Y - np.eye(cols)).max()
        if ortho_err > 1e3 * tol:
            raise ValueError(f"columns are not orthonormal (max deviation {ortho_err:.3e})")
        if cols > 1 and np.any(Y[-1, :-1] != 0.0):
            raise ValueError("last row must vanish outside its final entry")
        if not Y[-1, -1] > 0.0:
            raise ValueError("entry (n+1, k+1) must be strictly positive")
        object.__setattr__(self, "Y", _freeze(Y))

    @property
    def n(self) -> int:
        return self.Y.shape[0] - 1

    @property
    def k(self) -> int:
        return self.Y.shape[1] - 1

    def __repr__(self) -> str:
        return f"StiefelMatrix(k={self.k}, n={self.n})"


@dataclass(frozen=True, eq=False)
class ProjectionMatrix:
    """Projection coordinates: the unique (n+1) x (n+1) orthogonal projection.

    Symmetric, idempotent, trace k+1, with strictly positive corner entry
    (n+1, n+1); a vanishing corner would be a linear-subspace limit point
    rather than a flat.
    """

    P: np.ndarray

    def __post_init__(self):
        P = _as_matrix(self.P, "P")
        m = P.shape[0]
        if P.shape != (m, m) or m < 2:
            raise DimensionError(f"P must be square of size >= 2, got {P.shape}")
        tol = 1e3 * get_default_tol()
        if np.abs(P - P.T).max() > tol:
            raise ValueError("P is not symmetric")
        if np.abs(P @ P - P).max() > tol:
            raise ValueError("P is not idempotent")
        trace = float(np.trace(P))
        if abs(trace - round(trace)) > 1e-6 or not 1 <= round(trace) <= m - 1:
            raise ValueError(f"trace(P)={trace} is not an integer in [1, {m - 1}]")
        if not P[-1, -1] > 0.0:
            raise ValueError("corner entry must be strictly positive for a flat")
        object.__setattr__(self, "P", _freeze(P))

    @property
    def n(self) -> int:
        return self.P.shape[0] - 1

    @property
    def k(self) -> int:
        return int(round(np.trace(self.P))) - 1

    def __repr__(self) -> str:
        return f"ProjectionMatrix(k={self.k}, n={self.n})"


@dataclass(frozen=True, eq=False)
class ProjectionAffinePair:
    """Projection affine coordinates [P, b]: an n x n rank-k orthogonal
    projection together with a displacement b in its kernel."""

    P: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        P = _as_matrix(self.P, "P")
        n = P.shape[0]
        if P.shape != (n, n):
            raise DimensionError(f"P must be square, got {P.shape}")
        b = _as_vector(self.b, n, "b")
        tol = 1e3 * get_default_tol()
        if np.abs(P - P.T).max() > tol:
            raise ValueError("P is not symmetric")
        if np.abs(P @ P - P).max() > tol:
            raise ValueError("P is not idempotent")
        if np.abs(P @ b).max() > tol * max(1.0, float(np.linalg.norm(b))):
            raise ValueError("b does not lie in ker(P)")
        object.__setattr__(self, "P", _freeze(P))
        object.__setattr__(self, "b", _freeze(b))

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def k(self) -> int:
        return int(round(np.trace(self.P)))


def make_flat(A_raw, b_raw) -> AffineFlat:
    """Build a flat from a raw basis and an arbitrary displacement.

    Parameters
    ----------
    A_raw : (n, k) array_like
        Basis of the linear part; columns need not be orthonormal.  A 1-D
        array is treated as a single column.  An n x 0 matrix gives a point.
    b_raw : (n,) array_like
        Any displacement vector; the part lying inside span(A_raw) is
        removed, so the stored displacement is the unique b0 orthogonal to
        the linear part.

    Returns
    -------
    AffineFlat
        The flat span(A_raw) + b_raw in orthogonal affine coordinates.

    Raises
    ------
    RankDeficient
        If A_raw has column rank below k (judged on the triangular factor of
        a pivoted QR, relative to its largest diagonal entry).
    DimensionError
        If k >= n.
    """
    A_raw = _as_matrix(A_raw, "A_raw")
    n, k = A_raw.shape
    b0 = _as_vector(b_raw, n, "b_raw")
    if k >= n:
        raise DimensionError(f"flat dimension k={k} must be smaller than ambient n={n}")
    if k == 0:
        return AffineFlat(np.zeros((n, 0)), b0)
    Q, R, _ = scipy.linalg.qr(A_raw, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[0] == 0.0 or np.any(diag < get_default_tol() * diag[0]):
        raise RankDeficient(f"basis has numerical rank below k={k}")
    # Pivoted QR may permute and flip columns; fix signs so the factor is
    # a deterministic orthonormal basis of the same span.
    signs = np.sign(np.diag(R))
    signs[signs == 0.0] = 1.0
    A = Q * signs
    b0 = b0 - A @ (A.T @ b0)
    return AffineFlat(A, b0)


def stiefel_coords(flat: AffineFlat) -> StiefelMatrix:
    """Stiefel coordinates of a flat.

    Returns the (n+1) x (k+1) orthonormal matrix

        [ A   b0 / sqrt(1 + |b0|^2) ]
        [ 0    1 / sqrt(1 + |b0|^2) ]

    whose span realizes the flat as a (k+1)-plane in R^(n+1).  Flats are
    immutable, so the result is computed once and cached on the instance.
    """
    cached = getattr(flat, "_stiefel", None)
    if cached is not None:
        return cached
    n, k = flat.n, flat.k
    scale = 1.0 / np.sqrt(1.0 + float(flat.b0 @ flat.b0))
    Y = np.zeros((n + 1, k + 1))
    Y[:n, :k] = flat.A
    Y[:n, k] = flat.b0 * scale
    Y[n, k] = scale
    result = StiefelMatrix(Y)
    object.__setattr__(flat, "_stiefel", result)
    return result


def projection_coords(flat: AffineFlat) -> ProjectionMatrix:
    """Projection coordinates of a flat.

    The unique orthogonal projection onto the plane spanned by the Stiefel
    coordinates; in terms of [A, b0] it is

        [ A A^T + b0 b0^T / (1 + |b0|^2)   b0 / (1 + |b0|^2) ]
        [ b0^T / (1 + |b0|^2)               1 / (1 + |b0|^2) ],

    which equals Y Y^T for Y the matrix of Stiefel coordinates.  Cached on
    the (immutable) flat like :func:`stiefel_coords`.
    """
    cached = getattr(flat, "_projection", None)
    if cached is not None:
        return cached
    n = flat.n
    denom = 1.0 + float(flat.b0 @ flat.b0)
    P = np.zeros((n + 1, n + 1))
    P[:n, :n] = flat.A @ flat.A.T + np.outer(flat.b0, flat.b0) / denom
    P[:n, n] = flat.b0 / denom
    P[n, :n] = flat.b0 / denom
    P[n, n] = 1.0 / denom
    result = ProjectionMatrix(P)
    object.__setattr__(flat, "_projection", result)
    return result


def projection_affine_coords(flat: AffineFlat) -> ProjectionAffinePair:
    """Projection affine coordinates [A A^T, b0] of a flat."""
    return ProjectionAffinePair(flat.A @ flat.A.T, flat.b0)


def embed(flat: AffineFlat) -> np.ndarray:
    """Embed a flat as a (k+1)-plane in R^(n+1).

    Returns an (n+1) x (k+1) matrix with orthonormal columns spanning the
    image of the flat; identical to ``stiefel_coords(flat).Y``.  The named
    operation exists so the embedding itself has an explicit home.
    """
    return np.array(stiefel_coords(flat).Y)


def unembed(Y_raw) -> AffineFlat:
    """Invert the embedding: recover the flat whose image is span(Y_raw).

    Parameters
    ----------
    Y_raw : (n+1, k+1) array_like
        Any full-column-rank matrix spanning a (k+1)-plane in R^(n+1).

    Returns
    -------
    AffineFlat
        The unique flat F with span(embed(F)) = span(Y_raw).

    Raises
    ------
    NotAFlat
        If the last row of the orthonormalized spanning matrix is
        numerically zero (norm below 1e-10): the plane lies inside the
        hyperplane x_{n+1} = 0 and corresponds to a linear k+1 subspace of
        R^n, not to a flat.
    RankDeficient
        If Y_raw does not have full column rank.
    """
    Y_raw = _as_matrix(Y_raw, "Y_raw")
    rows, cols = Y_raw.shape
    if cols < 1 or rows < cols + 1:
        raise DimensionError(f"expected an (n+1) x (k+1) matrix with k < n, got {Y_raw.shape}")
    n, k = rows - 1, cols - 1
    Q, R, _ = scipy.linalg.qr(Y_raw, mode="economic", pivoting=True)
    diag = np.abs(np.diag(R))
    if diag[0] == 0.0 or np.any(diag < get_default_tol() * diag[0]):
        raise RankDeficient(f"spanning matrix has numerical rank below {cols}")
    v = Q[-1, :].copy()
    r = float(np.linalg.norm(v))
    if r < 1e-10:
        raise NotAFlat("span lies in the hyperplane x_{n+1} = 0 (a linear subspace, not a flat)")
    # Reflect within the column space so the last row becomes (0, ..., 0, -+r);
    # the reflector adds |v_last| + r to the pivot entry, so it never cancels.
    u = v.copy()
    u[-1] += r if v[-1] >= 0.0 else -r
    Q = Q - np.outer(Q @ u, u) * (2.0 / float(u @ u))
    if Q[-1, -1] < 0.0:
        Q[:, -1] = -Q[:, -1]
    A = Q[:n, :k]
    b0 = Q[:n, k] / Q[n, k]
    return AffineFlat(A, b0)


def equal_flats(flat1: AffineFlat, flat2: AffineFlat, tol: float = 1e-8) -> bool:
    """Whether two flats coincide, up to ``tol`` in projection coordinates.

    Projection coordinates are unique per flat, so the comparison is
    invariant to basis rotation A -> AQ and to the coset freedom in the raw
    displacement.  Flats of different dimensions simply compare unequal.
    """
    if flat1.n != flat2.n:
        raise DimensionError(f"ambient dimensions differ: {flat1.n} vs {flat2.n}")
    diff = projection_coords(flat1).P - projection_coords(flat2).P
    return float(np.linalg.norm(diff)) <= tol


def pad_ambient(flat: AffineFlat, m: int) -> AffineFlat:
    """Include a flat of R^n into R^m (m >= n) by zero-padding A and b0.

    Distances between flats padded into a common ambient space are unchanged.
    """
    m = int(m)
    if m < flat.n:
        raise DimensionError(f"target ambient m={m} is smaller than current n={flat.n}")
    if m == flat.n:
        return flat
    A = np.zeros((m, flat.k))
    A[: flat.n] = flat.A
    b0 = np.zeros(m)
    b0[: flat.n] = flat.b0
    return AffineFlat(A, b0)


def deaffine(flat: AffineFlat) -> AffineFlat:
    """The linear part of a flat, as the flat span(A) + 0 through the origin."""
    return AffineFlat(flat.A, np.zeros(flat.n))


def flat_from_projection(P) -> AffineFlat:
    """Recover a flat from its projection coordinates.

    Accepts any matrix satisfying the ProjectionMatrix invariants; the flat
    is obtained by unembedding an orthonormal basis of range(P).
    """
    proj = P if isinstance(P, ProjectionMatrix) else ProjectionMatrix(P)
    _, eigvecs = np.linalg.eigh(proj.P)
    return unembed(eigvecs[:, -(proj.k + 1):])
