"""Monotonicity, maximality and skewness of linear relations.

With a graph basis split as ``W = [U; V]``, every graph point is
``(Uc, Vc)`` and ``<Uc, Vc> = c^T Q c`` for ``Q = sym(U^T V)``. Monotonicity
of a linear relation is then positive semidefiniteness of Q, and every
other predicate here is a statement about Q and a few subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NotMonotone, NotSingleValued
from .linalg import (
    DEFAULT_TOL,
    DimensionError,
    affine_solve,
    Subspace,
    SymmetricForm,
    Tolerance,
    complement,
    containment_residual,
    psd_analyze,
    quadratic_min,
    span,
    subspace_difference_witness,
)
from .relation import LinearRelation, adjoint, at_zero, dom, image, negate


@dataclass
class CheckReport:
    """Verdict of a predicate.

    ``margin`` is the smallest slack seen, oriented so that larger is
    better: a normalized eigenvalue for PSD tests, minus the largest
    containment residual for subspace equalities, a value gap for
    pointwise inequalities. A failed check always carries a witness.
    """

    predicate: str
    verdict: bool
    margin: float
    witness: Optional[np.ndarray] = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def __post_init__(self):
        if not self.verdict and self.witness is None:
            raise ValueError(f"failed check {self.predicate!r} must carry a witness")


def _point_norm(*parts) -> float:
    return float(np.sqrt(sum(float(np.dot(p, p)) for p in parts)))


def pairing_form(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> SymmetricForm:
    """Eigen-analysis of ``Q = sym(U^T V)``, the pairing restricted to the graph."""
    return A.cached(("pairing", tol), lambda: psd_analyze(A.U.T @ A.V, tol))


def subspace_check(name: str, S: Subspace, T: Subspace, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    r = max(containment_residual(S, T)[0], containment_residual(T, S)[0])
    ok = S.dim == T.dim and r <= tol.atol
    w = None if ok else subspace_difference_witness(S, T, tol)
    return CheckReport(name, ok, -r, w, {"dims": (S.dim, T.dim)})


def is_monotone(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """PSD test of the pairing form on the graph.

    ``margin`` is ``2 * min eigenvalue of Q``, i.e. the smallest value of
    ``2<x, x*> / (|x|^2 + |x*|^2)`` over the graph, a number in [-1, 1].
    The witness is a graph point ``(x, x*)`` scaled so that ``|x| = 1``.
    """
    Q = pairing_form(A, tol)
    margin = 2.0 * Q.min_eigenvalue
    if Q.is_psd:
        return CheckReport("monotone", True, margin)
    c = Q.eigenvectors[:, 0]
    x, xs = A.U @ c, A.V @ c
    s = np.linalg.norm(x)
    return CheckReport("monotone", False, margin, np.concatenate([x, xs]) / s)


def _require_monotone(A: LinearRelation, tol: Tolerance) -> SymmetricForm:
    Q = pairing_form(A, tol)
    if not Q.is_psd:
        raise NotMonotone(f"relation is not monotone (min pairing eigenvalue {Q.min_eigenvalue:.3g})")
    return Q


def q_eval(A: LinearRelation, x, tol: Tolerance = DEFAULT_TOL) -> float:
    """q_A(x) = <x, Ax>/2 on dom A, +inf elsewhere."""
    x = np.asarray(x, dtype=float).ravel()
    img = image(A, x, tol)
    if img is None:
        return np.inf
    off = np.linalg.norm(img.offset.project(x))
    if off > tol.atol * max(1.0, np.linalg.norm(x)):
        raise NotSingleValued(f"x has a component {off:.3g} along A0, so <x, Ax> is not single-valued")
    return 0.5 * float(x @ img.particular)


def _check_point(A: LinearRelation, x, xs):
    x = np.asarray(x, dtype=float).ravel()
    xs = np.asarray(xs, dtype=float).ravel()
    if x.size != A.n or xs.size != A.n:
        raise DimensionError(f"points must have length {A.n}")
    return x, xs


def is_monotonically_related(A: LinearRelation, x, xs, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Whether ``<x - y, x* - y*> >= 0`` for every graph point ``(y, y*)``.

    In coefficients this is ``<x,x*> - b^T c + c^T Q c >= 0`` for all c with
    ``b = U^T x* + V^T x``, which holds exactly when Q is PSD, b lies in the
    range of Q, and ``<x,x*> - b^T Q^+ b / 4 >= 0``. On failure the witness
    is a violating graph point ``(y, y*)``.
    """
    x, xs = _check_point(A, x, xs)
    Q = pairing_form(A, tol)
    U, V = A.U, A.V
    p = float(x @ xs)
    zn = _point_norm(x, xs)
    b = U.T @ xs + V.T @ x

    def witness(c):
        return np.concatenate([U @ c, V @ c])

    if not Q.is_psd:
        v = Q.eigenvectors[:, 0]
        t = 1.0 if b @ v <= 0 else -1.0
        for _ in range(200):
            if p - t * (b @ v) + t * t * Q.eigenvalues[0] < 0:
                break
            t *= 2.0
        return CheckReport("monotonically_related", False, -np.inf, witness(t * v), {"psd": False})
    N = Q.kernel_basis()
    d = N @ (N.T @ b)
    res = float(np.linalg.norm(d))
    if res > tol.atol * max(1.0, zn):
        t = (max(p, 0.0) + 1.0) / float(b @ d)
        return CheckReport("monotonically_related", False, -np.inf, witness(t * d), {"in_range": False})
    gap = p - 0.25 * float(b @ Q.pseudo_inverse @ b)
    ok = gap >= -tol.atol * max(1.0, zn * zn)
    w = None if ok else witness(0.5 * Q.pseudo_inverse @ b)
    return CheckReport("monotonically_related", ok, gap, w)


def halo_contains(A: LinearRelation, x, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Whether some x* makes ``(x, x*)`` monotonically related to gra A.

    Minimizes ``phi(x*) = b^T Q^+ b / 4 - <x, x*>`` over the affine set where
    ``b = U^T x* + V^T x`` stays in range(Q), by parametrizing that set over
    the null space of its constraint matrix. x is in the halo iff the
    infimum is <= atol (an unbounded objective counts). The witness is the
    minimizing x* (a descent direction when unbounded, the least-squares
    candidate when the constraint is inconsistent).
    """
    x = np.asarray(x, dtype=float).ravel()
    if x.size != A.n:
        raise DimensionError(f"point of length {x.size}, expected {A.n}")
    Q = _require_monotone(A, tol)
    U, V = A.U, A.V
    n = A.n
    xn = float(np.linalg.norm(x))
    N = Q.kernel_basis()
    G = N.T @ U.T
    h = -(N.T @ (V.T @ x))
    if G.shape[0]:
        p, feas, Z = affine_solve(G, h, tol)
    else:
        p, feas, Z = np.zeros(n), 0.0, np.eye(n)
    if feas > tol.atol * max(1.0, xn):
        return CheckReport("halo", False, -feas, p, {"feasible": False})
    p = p - Z @ (Z.T @ p)
    r = U.T @ p + V.T @ x
    M = U.T @ Z
    Qp = Q.pseudo_inverse
    g = 0.5 * M.T @ Qp @ r - Z.T @ x
    t, d = quadratic_min(0.5 * M.T @ Qp @ M, g, tol.atol * max(1.0, xn))
    if t is None:
        return CheckReport("halo", True, np.inf, Z @ d, {"feasible": True, "bounded": False})
    xs = p + Z @ t
    b = U.T @ xs + V.T @ x
    val = 0.25 * float(b @ Qp @ b) - float(x @ xs)
    ok = val <= tol.atol * max(1.0, xn * xn)
    return CheckReport("halo", ok, -val, xs, {"feasible": True, "bounded": True, "infimum": val})


def is_maximal_monotone(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Monotone and ``(dom A)⊥ = A0``; the report also carries the dimension oracle."""
    mono = is_monotone(A, tol)
    crit = subspace_check("criterion", complement(dom(A, tol)), at_zero(A, tol), tol)
    ok = mono.verdict and crit.verdict
    witness = None if ok else (mono.witness if not mono.verdict else crit.witness)
    return CheckReport(
        "maximal_monotone",
        ok,
        min(mono.margin, crit.margin),
        witness,
        {"monotone": mono.verdict, "criterion": crit.verdict, "dimension_oracle": A.graph.dim == A.n},
    )


def is_skew(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """A* = -A as graph equality."""
    r = subspace_check("skew", adjoint(A).graph, negate(A).graph, tol)
    return r


def extend_to_maximal(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> LinearRelation:
    """A + N_{dom A}: graph(A) + {0} × (dom A)⊥."""
    _require_monotone(A, tol)
    n = A.n
    D = complement(dom(A, tol))
    extra = np.vstack([np.zeros((n, D.dim)), D.basis])
    return LinearRelation(n, span(np.hstack([A.graph.basis, extra]), tol, floor=1.0))


def dimension_oracle(A: LinearRelation) -> bool:
    """For monotone A: maximal iff dim gra A = n (the pairing has signature (n, n))."""
    return A.graph.dim == A.n
