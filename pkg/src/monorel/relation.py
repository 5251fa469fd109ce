"""Linear relations on R^n stored by their graph, a subspace of R^(2n).

Coordinates of a graph vector are ``(x_1..x_n, x*_1..x*_n)``. The
annihilator pairing of a graph is realized by the block map
``(z1, z2) -> (-z2, z1)`` applied to the orthogonal complement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    DimensionError,
    Subspace,
    Tolerance,
    complement,
    contains,
    intersect,
    orthonormalize,
    span,
    subspace_equal,
    subspace_sum,
)


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """A set-valued operator R^n ⇉ R^n whose graph is a linear subspace."""

    n: int
    graph: Subspace
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise DimensionError("n must be >= 1")
        if self.graph.ambient_dim != 2 * self.n:
            raise DimensionError(
                f"graph lives in R^{self.graph.ambient_dim}, expected R^{2 * self.n}"
            )

    @property
    def U(self) -> np.ndarray:
        """First-block rows of the graph basis (the x part)."""
        return self.graph.basis[: self.n]

    @property
    def V(self) -> np.ndarray:
        """Second-block rows of the graph basis (the x* part)."""
        return self.graph.basis[self.n :]

    def cached(self, key, fn):
        try:
            return self._cache[key]
        except KeyError:
            val = self._cache[key] = fn()
            return val

    def __repr__(self):
        return f"LinearRelation(n={self.n}, graph_dim={self.graph.dim})"


@dataclass(frozen=True, eq=False)
class ImageCoset:
    """The set ``particular + offset`` that a linear relation assigns to a point."""

    particular: np.ndarray
    offset: Subspace

    def contains(self, v, tol: Tolerance = DEFAULT_TOL) -> bool:
        ok, _ = contains(self.offset, np.asarray(v, dtype=float) - self.particular, tol)
        return ok


def _graph_of(n: int, xs: np.ndarray, xstars: np.ndarray, tol: Tolerance, floor: float = 0.0):
    return LinearRelation(n, span(np.vstack([xs, xstars]), tol, floor=floor))


def from_matrix(M, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Graph of the single-valued operator ``x -> M x``."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")
    n = M.shape[0]
    return _graph_of(n, np.eye(n), M, tol)


def from_graph_basis(n: int, vectors, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    if n < 1:
        raise DimensionError("n must be >= 1")
    return LinearRelation(n, orthonormalize(vectors, tol, ambient_dim=2 * n))


def normal_cone(L: Subspace) -> LinearRelation:
    """N_L with graph L × L⊥."""
    n = L.ambient_dim
    Lp = complement(L)
    basis = np.zeros((2 * n, n))
    basis[:n, : L.dim] = L.basis
    basis[n:, L.dim :] = Lp.basis
    return LinearRelation(n, Subspace(basis))


def from_structured(
    symmetric=None,
    skew=None,
    domain: Optional[Subspace] = None,
    offset: Optional[Subspace] = None,
    n: Optional[int] = None,
    tol: Tolerance = DEFAULT_TOL,
) -> LinearRelation:
    """Graph ``{(x, (P + K) x + z) : x ∈ domain, z ∈ offset}``.

    Missing pieces default to P = 0, K = 0, domain = R^n, offset = {0}.
    """
    for a in (symmetric, skew):
        if a is not None:
            n = np.asarray(a).shape[0]
    if n is None:
        n = (domain or offset).ambient_dim
    S = np.zeros((n, n))
    if symmetric is not None:
        S = S + np.asarray(symmetric, dtype=float)
    if skew is not None:
        S = S + np.asarray(skew, dtype=float)
    if S.shape != (n, n):
        raise DimensionError(f"operator blocks must be {n}x{n}")
    D = Subspace.full(n) if domain is None else domain
    Z = Subspace.zero(n) if offset is None else offset
    if D.ambient_dim != n or Z.ambient_dim != n:
        raise DimensionError("domain/offset ambient dimension must equal n")
    xs = np.hstack([D.basis, np.zeros((n, Z.dim))])
    ys = np.hstack([S @ D.basis, Z.basis])
    return _graph_of(n, xs, ys, tol)


def inverse(A: LinearRelation) -> LinearRelation:
    b = A.graph.basis
    return LinearRelation(A.n, Subspace(np.vstack([b[A.n :], b[: A.n]])))


def adjoint(A: LinearRelation) -> LinearRelation:
    """gra A* = {(x, x*) : (x*, -x) ∈ (gra A)⊥}."""
    n = A.n
    Z = complement(A.graph).basis
    return LinearRelation(n, Subspace(np.vstack([-Z[n:], Z[:n]])))


def scale(A: LinearRelation, lam: float, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """(λA)x = λ(Ax): the second block is scaled, the first left alone."""
    lam = float(lam)
    if lam == 1.0:
        return A
    if lam == -1.0:
        return negate(A)
    return _graph_of(A.n, A.U, lam * A.V, tol, floor=1.0)


def negate(A: LinearRelation) -> LinearRelation:
    return LinearRelation(A.n, Subspace(np.vstack([A.U, -A.V])))


def _slices(A: LinearRelation, tol: Tolerance):
    """dom, A0 from one SVD of U; ran, ker from one SVD of V.

    Splitting the coefficient space by the singular values of U keeps
    dim dom + dim A0 = dim gra exact, which separate intersections do not.
    """

    def compute():
        n, k = A.n, A.graph.dim
        out = {}
        for name_img, name_null, P, R in (("dom", "at_zero", A.U, A.V), ("ran", "ker", A.V, A.U)):
            if k == 0:
                out[name_img] = Subspace.zero(n)
                out[name_null] = Subspace.zero(n)
                continue
            u, s, vt = np.linalg.svd(P, full_matrices=True)
            r = int(np.sum(s > tol.rank_rtol * max(1.0, s[0] if s.size else 0.0)))
            out[name_img] = Subspace(u[:, :r])
            kern = vt[r:].T
            out[name_null] = span(R @ kern, tol, floor=1.0)
        return out

    return A.cached(("slices", tol), compute)


def dom(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    return _slices(A, tol)["dom"]


def ran(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    return _slices(A, tol)["ran"]


def ker(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    return _slices(A, tol)["ker"]


def at_zero(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """A0, the image of the origin."""
    return _slices(A, tol)["at_zero"]


def _particular(A: LinearRelation, x: np.ndarray, tol: Tolerance) -> np.ndarray:
    # least-squares coefficients, then strip the A0 component for the least-norm representative
    c, *_ = np.linalg.lstsq(A.U, x, rcond=None)
    xs = A.V @ c
    return xs - at_zero(A, tol).project(xs)


def image(A: LinearRelation, x, tol: Tolerance = DEFAULT_TOL) -> Optional[ImageCoset]:
    """Ax as a coset ``x0* + A0``, or None when x ∉ dom A."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != A.n:
        raise DimensionError(f"point of length {x.size}, expected {A.n}")
    ok, _ = contains(dom(A, tol), x, tol)
    if not ok:
        return None
    return ImageCoset(_particular(A, x, tol), at_zero(A, tol))


def add(A: LinearRelation, B: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """Pointwise Minkowski sum on dom A ∩ dom B."""
    if A.n != B.n:
        raise DimensionError(f"cannot add relations on R^{A.n} and R^{B.n}")
    n = A.n
    D = intersect(dom(A, tol), dom(B, tol), tol)
    X = D.basis
    ys = np.column_stack([_particular(A, x, tol) + _particular(B, x, tol) for x in X.T]) if D.dim else np.zeros((n, 0))
    off = subspace_sum(at_zero(A, tol), at_zero(B, tol), tol)
    xs = np.hstack([X, np.zeros((n, off.dim))])
    ys = np.hstack([ys, off.basis])
    return _graph_of(n, xs, ys, tol)


def graph_equal(A: LinearRelation, B: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    return A.n == B.n and subspace_equal(A.graph, B.graph, tol)


def as_matrix(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> Optional[np.ndarray]:
    """The matrix of A when A is single-valued with full domain, else None."""
    if A.graph.dim != A.n or at_zero(A, tol).dim != 0 or dom(A, tol).dim != A.n:
        return None
    return np.linalg.solve(A.U.T, A.V.T).T
