"""Tolerance-aware dense linear algebra on subspaces of R^d.

Every subspace is carried by an orthonormal basis stored column-wise, so
membership and equality tests reduce to projections. Rank decisions use a
singular-value cutoff relative to the largest singular value (or to a
floor of 1 when the input columns are already known to be bounded by 1,
which is the case for every internal projection of an orthonormal basis).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg


class DimensionError(ValueError):
    """Raised when vectors or subspaces live in incompatible ambient spaces."""


@dataclass(frozen=True)
class Tolerance:
    """Numerical tolerances used by every rank, PSD and membership decision.

    Parameters
    ----------
    rank_rtol : float
        Relative singular-value (or eigenvalue) cutoff for rank decisions.
    psd_tol : float
        Allowed eigenvalue negativity, scaled by ``max(1, spectral radius)``.
    atol : float
        Absolute floor for memberships and value comparisons.
    """

    rank_rtol: float = 1e-10
    psd_tol: float = 1e-9
    atol: float = 1e-9

    def __post_init__(self):
        for name in ("rank_rtol", "psd_tol", "atol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.rank_rtol >= 1 or self.psd_tol >= 1:
            raise ValueError("rank_rtol and psd_tol must be < 1")

    def as_dict(self) -> dict:
        return {"rank_rtol": self.rank_rtol, "psd_tol": self.psd_tol, "atol": self.atol}


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of R^d given by an orthonormal basis (d x k columns)."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=float)
        if b.ndim != 2:
            raise DimensionError("basis must be a 2-d array (ambient_dim x dim)")
        if b.shape[0] < 1:
            raise DimensionError("ambient dimension must be >= 1")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def zero(cls, d: int) -> "Subspace":
        return cls(np.zeros((d, 0)))

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls(np.eye(d))

    def project(self, v: np.ndarray) -> np.ndarray:
        """Orthogonal projection of ``v`` (vector or column stack) onto the subspace."""
        v = np.asarray(v, dtype=float)
        if v.shape[0] != self.ambient_dim:
            raise DimensionError(f"expected leading dimension {self.ambient_dim}, got {v.shape[0]}")
        return self.basis @ (self.basis.T @ v)

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    def sample(self, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
        """Gaussian random vector(s) in the subspace; ``size`` rows if given."""
        if size is None:
            return self.basis @ rng.standard_normal(self.dim)
        return (self.basis @ rng.standard_normal((self.dim, size))).T

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class SymmetricForm:
    """Eigen-analysis of a symmetric matrix with its pseudoinverse and range projector."""

    matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    pseudo_inverse: np.ndarray
    range_projector: np.ndarray
    cutoff: float
    is_psd: bool

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def spectral_radius(self) -> float:
        return float(np.max(np.abs(self.eigenvalues))) if self.dim else 0.0

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0]) if self.dim else 0.0

    def kernel_basis(self) -> np.ndarray:
        """Orthonormal columns spanning the numerical kernel."""
        return self.eigenvectors[:, ~self._rank_mask]

    def range_basis(self) -> np.ndarray:
        return self.eigenvectors[:, self._rank_mask]

    @property
    def _rank_mask(self) -> np.ndarray:
        if self.is_psd:
            return self.eigenvalues > self.cutoff
        return np.abs(self.eigenvalues) > self.cutoff


def _as_columns(vectors, d: Optional[int] = None) -> np.ndarray:
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        return np.asarray(vectors, dtype=float)
    vecs = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if not vecs:
        if d is None:
            raise DimensionError("cannot infer ambient dimension from an empty vector list")
        return np.zeros((d, 0))
    lengths = {v.size for v in vecs}
    if len(lengths) != 1:
        raise DimensionError(f"vectors have mismatched lengths {sorted(lengths)}")
    if d is not None and vecs[0].size != d:
        raise DimensionError(f"vectors have length {vecs[0].size}, expected {d}")
    return np.column_stack(vecs)


def span(matrix: np.ndarray, tol: Tolerance = DEFAULT_TOL, floor: float = 0.0) -> Subspace:
    """Orthonormal basis for the column span of ``matrix``.

    The cutoff is ``rank_rtol * max(largest singular value, floor)``; pass
    ``floor=1`` when the columns are known to have norm at most one, so that
    a span made only of round-off collapses to the zero subspace.
    """
    m = np.asarray(matrix, dtype=float)
    d = m.shape[0]
    if m.shape[1] == 0:
        return Subspace.zero(d)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    smax = s[0] if s.size else 0.0
    cut = tol.rank_rtol * max(smax, floor)
    if smax == 0.0:
        return Subspace.zero(d)
    return Subspace(u[:, s > cut])


def orthonormalize(vectors, tol: Tolerance = DEFAULT_TOL, ambient_dim: Optional[int] = None) -> Subspace:
    """Span of a list of vectors (or the columns of a 2-d array).

    >>> orthonormalize([(1, 0), (2, 0)]).dim
    1
    """
    m = _as_columns(vectors, ambient_dim)
    if m.shape[0] < 1:
        raise DimensionError("ambient dimension must be >= 1")
    return span(m, tol)


def complement(S: Subspace) -> Subspace:
    """Orthogonal complement (the annihilator under the standard pairing)."""
    d, k = S.ambient_dim, S.dim
    if k == 0:
        return Subspace.full(d)
    if k == d:
        return Subspace.zero(d)
    u, _, _ = np.linalg.svd(S.basis, full_matrices=True)
    return Subspace(u[:, k:])


def _check_same(S: Subspace, T: Subspace):
    if S.ambient_dim != T.ambient_dim:
        raise DimensionError(f"ambient dimensions differ: {S.ambient_dim} vs {T.ambient_dim}")


def subspace_sum(S: Subspace, T: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    _check_same(S, T)
    return span(np.hstack([S.basis, T.basis]), tol, floor=1.0)


def intersect(S: Subspace, T: Subspace, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """S ∩ T computed as the complement of the sum of complements.

    Going through complements keeps the rank decision linear in the
    principal angle instead of quadratic (cosines near 1 lose half the digits).
    """
    _check_same(S, T)
    if S.dim == 0 or T.dim == 0:
        return Subspace.zero(S.ambient_dim)
    return complement(subspace_sum(complement(S), complement(T), tol))


def contains(S: Subspace, v, tol: Tolerance = DEFAULT_TOL) -> Tuple[bool, float]:
    """Membership test; returns ``(verdict, residual norm)``."""
    v = np.asarray(v, dtype=float).ravel()
    if v.size != S.ambient_dim:
        raise DimensionError(f"vector of length {v.size} vs ambient dim {S.ambient_dim}")
    r = float(np.linalg.norm(v - S.project(v)))
    return r <= tol.atol * max(1.0, float(np.linalg.norm(v))), r


def containment_residual(S: Subspace, T: Subspace) -> Tuple[float, int]:
    """Largest residual of T's basis vectors against S, and the offending column."""
    if T.dim == 0:
        return 0.0, -1
    r = np.linalg.norm(T.basis - S.project(T.basis), axis=0)
    j = int(np.argmax(r))
    return float(r[j]), j


def is_subset(T: Subspace, S: Subspace, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff T ⊆ S within tolerance."""
    _check_same(S, T)
    return containment_residual(S, T)[0] <= tol.atol


def subspace_equal(S: Subspace, T: Subspace, tol: Tolerance = DEFAULT_TOL) -> bool:
    _check_same(S, T)
    if S.dim != T.dim:
        return False
    return containment_residual(S, T)[0] <= tol.atol and containment_residual(T, S)[0] <= tol.atol


def subspace_difference_witness(S: Subspace, T: Subspace, tol: Tolerance = DEFAULT_TOL) -> Optional[np.ndarray]:
    """A unit vector of one subspace lying outside the other, or None if equal."""
    rs, js = containment_residual(S, T)
    if rs > tol.atol:
        return T.basis[:, js].copy()
    rt, jt = containment_residual(T, S)
    if rt > tol.atol:
        return S.basis[:, jt].copy()
    if S.dim != T.dim:
        bigger = S if S.dim > T.dim else T
        other = T if bigger is S else S
        w = complement(other).project(bigger.basis)
        j = int(np.argmax(np.linalg.norm(w, axis=0)))
        return bigger.basis[:, j].copy()
    return None


def affine_solve(G, h, tol: Tolerance = DEFAULT_TOL) -> Tuple[np.ndarray, float, np.ndarray]:
    """Least-norm solution of ``G y = h`` with the floored rank cutoff.

    Returns ``(y0, residual, Z)`` where Z is an orthonormal basis of the
    numerical null space of G, so solutions are ``y0 + Z t``.
    """
    G = np.atleast_2d(np.asarray(G, dtype=float))
    h = np.asarray(h, dtype=float).ravel()
    Ug, s, Vt = np.linalg.svd(G, full_matrices=True)
    r = int(np.sum(s > tol.rank_rtol * max(1.0, s.max(initial=0.0))))
    y0 = Vt[:r].T @ ((Ug[:, :r].T @ h) / s[:r])
    return y0, float(np.linalg.norm(G @ y0 - h)), Vt[r:].T


def quadratic_min(H, g, atol: float) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """Minimize ``t^T H t + 2 g^T t`` for symmetric PSD H.

    The kernel of H is decided at round-off level rather than with the
    rank tolerance: a small but genuine curvature keeps the problem bounded,
    only with a distant minimizer. Returns ``(t, None)`` for the least-norm
    minimizer, or ``(None, d)`` when the objective is unbounded below along
    the descent direction d (the kernel component of ``-g`` exceeds atol).
    """
    H = np.asarray(H, dtype=float)
    g = np.asarray(g, dtype=float).ravel()
    k = H.shape[0]
    if k == 0:
        return np.zeros(0), None
    w, E = np.linalg.eigh(0.5 * (H + H.T))
    cut = 64.0 * np.finfo(float).eps * k * max(1.0, float(np.max(np.abs(w))))
    keep = w > cut
    c = E.T @ g
    gk = E[:, ~keep] @ c[~keep]
    if np.linalg.norm(gk) > atol:
        return None, -gk
    return -(E[:, keep] @ (c[keep] / w[keep])), None


def psd_analyze(M, tol: Tolerance = DEFAULT_TOL) -> SymmetricForm:
    """Symmetrize, eigen-decompose and pseudo-invert a square matrix.

    PSD verdict: smallest eigenvalue >= -psd_tol * max(1, spectral radius).
    The pseudoinverse inverts eigenvalues above ``rank_rtol * max(1, radius)``;
    for a PSD verdict, slightly negative eigenvalues count as zero.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    k = M.shape[0]
    M = 0.5 * (M + M.T)
    if k == 0:
        z = np.zeros((0, 0))
        return SymmetricForm(M, np.zeros(0), z, z, z, 0.0, True)
    w, Q = np.linalg.eigh(M)
    radius = float(np.max(np.abs(w)))
    scale = max(1.0, radius)
    is_psd = bool(w[0] >= -tol.psd_tol * scale)
    cut = tol.rank_rtol * scale
    keep = w > cut if is_psd else np.abs(w) > cut
    inv = np.zeros_like(w)
    inv[keep] = 1.0 / w[keep]
    pinv = (Q * inv) @ Q.T
    proj = Q[:, keep] @ Q[:, keep].T
    return SymmetricForm(M, w, Q, pinv, proj, cut, is_psd)


def random_subspace(rng: np.random.Generator, d: int, k: int, within: Optional[Subspace] = None) -> Subspace:
    """Rotation-invariant random k-dimensional subspace of R^d (or of ``within``)."""
    if within is None:
        if not 0 <= k <= d:
            raise DimensionError(f"cannot draw a {k}-dim subspace of R^{d}")
        if k == 0:
            return Subspace.zero(d)
        q, _ = np.linalg.qr(rng.standard_normal((d, k)))
        return Subspace(q)
    if not 0 <= k <= within.dim:
        raise DimensionError(f"cannot draw a {k}-dim subspace of a {within.dim}-dim subspace")
    if k == 0:
        return Subspace.zero(d)
    q, _ = np.linalg.qr(rng.standard_normal((within.dim, k)))
    return Subspace(within.basis @ q)


def canonical_basis(S: Subspace) -> np.ndarray:
    """Deterministic orthonormal basis (rows) for serialization.

    Column-pivoted QR of the projector picks the same basis for the same
    subspace regardless of how it was computed; each row is sign-fixed so
    its first significant coordinate is positive.
    """
    if S.dim == 0:
        return np.zeros((0, S.ambient_dim))
    q, _, _ = scipy.linalg.qr(S.projector(), pivoting=True)
    rows = q[:, : S.dim].T.copy()
    for i, r in enumerate(rows):
        j = int(np.argmax(np.abs(r) > 1e-12))
        if r[j] < 0:
            rows[i] = -r
    rows[np.abs(rows) < 1e-15] = 0.0
    return rows
