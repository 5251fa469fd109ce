"""Fitzpatrick functions of monotone linear relations in closed form.

For a graph basis ``[U; V]`` the Fitzpatrick supremum over graph points
``(Uc, Vc)`` is the concave quadratic ``c -> b^T c - c^T Q c`` with
``b = V^T x + U^T x*``. Its supremum is ``b^T Q^+ b / 4`` when b lies in the
range of Q and +inf otherwise, so F_A is a quadratic on a subspace of R^(2n).

Extended reals are plain floats; +inf is ``math.inf``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .errors import NotMaximal, NotMonotone
from .linalg import (
    DEFAULT_TOL,
    DimensionError,
    affine_solve,
    Subspace,
    SymmetricForm,
    Tolerance,
    complement,
    contains,
    quadratic_min,
    span,
    subspace_equal,
)
from .monotone import (
    CheckReport,
    is_maximal_monotone,
    is_skew,
    pairing_form,
    subspace_check,
)
from .relation import LinearRelation, adjoint, add, dom, inverse, negate


@dataclass(frozen=True, eq=False)
class GraphForm:
    """Cached closed-form data: graph blocks, pairing form and the map z -> b."""

    U: np.ndarray
    V: np.ndarray
    Q: SymmetricForm
    C: np.ndarray  # k x 2n, b = C @ (x, x*)
    Nt: np.ndarray  # rows span ker Q

    @property
    def n(self) -> int:
        return self.U.shape[0]


def graph_form(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> GraphForm:
    def build():
        Q = pairing_form(A, tol)
        C = np.hstack([A.V.T, A.U.T])
        return GraphForm(A.U, A.V, Q, C, Q.kernel_basis().T.copy())

    return A.cached(("graph_form", tol), build)


def _monotone_form(A: LinearRelation, tol: Tolerance) -> GraphForm:
    gf = graph_form(A, tol)
    if not gf.Q.is_psd:
        raise NotMonotone(
            f"Fitzpatrick closed form needs a monotone relation (min pairing eigenvalue {gf.Q.min_eigenvalue:.3g})"
        )
    return gf


@dataclass(frozen=True, eq=False)
class PartialQuadratic:
    """``z -> z^T H z + l^T z + c`` on ``domain``, +inf off it."""

    domain: Subspace
    matrix: np.ndarray
    linear: np.ndarray
    constant: float = 0.0

    def __call__(self, z, tol: Tolerance = DEFAULT_TOL) -> float:
        z = np.asarray(z, dtype=float).ravel()
        ok, _ = contains(self.domain, z, tol)
        if not ok:
            return np.inf
        return float(z @ self.matrix @ z + self.linear @ z + self.constant)

    def restricted_matrix(self) -> np.ndarray:
        """The quadratic part in coordinates of the domain basis."""
        B = self.domain.basis
        return B.T @ self.matrix @ B


def _pt(A: LinearRelation, x, xs) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    xs = np.asarray(xs, dtype=float).ravel()
    if x.size != A.n or xs.size != A.n:
        raise DimensionError(f"points must have length {A.n}, got {x.size} and {xs.size}")
    return np.concatenate([x, xs])


def fitzpatrick_eval_many(A: LinearRelation, points, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """F_A at each row ``(x, x*)`` of a (p, 2n) array."""
    gf = _monotone_form(A, tol)
    Z = np.atleast_2d(np.asarray(points, dtype=float))
    if Z.shape[1] != 2 * A.n:
        raise DimensionError(f"points must have 2n = {2 * A.n} columns")
    vals, _ = kernels.range_quadratic(gf.C, gf.Q.pseudo_inverse, gf.Nt, Z, tol.atol)
    return np.asarray(vals)


def fitzpatrick_eval(A: LinearRelation, x, xs, tol: Tolerance = DEFAULT_TOL) -> float:
    """F_A(x, x*) = sup over gra A of <x, y*> + <y, x*> - <y, y*>."""
    return float(fitzpatrick_eval_many(A, _pt(A, x, xs)[None, :], tol)[0])


def fitzpatrick_conj_eval(A: LinearRelation, xs, x, tol: Tolerance = DEFAULT_TOL) -> float:
    """F_A^*(x*, x): <x, x*> on the graph, +inf off it."""
    _monotone_form(A, tol)
    z = _pt(A, x, xs)
    ok, _ = contains(A.graph, z, tol)
    return float(x @ np.asarray(xs, dtype=float)) if ok else np.inf


def fitz_star_transpose_eval(A: LinearRelation, x, xs, tol: Tolerance = DEFAULT_TOL) -> float:
    """F_A^{*T}(x, x*) = F_A^*(x*, x)."""
    return fitzpatrick_conj_eval(A, xs, x, tol)


def fitzpatrick_function(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> PartialQuadratic:
    """F_A as a quadratic on its finiteness domain ``{z : b(z) ∈ range Q}``."""
    gf = _monotone_form(A, tol)
    d = 2 * A.n
    domain = complement(span(gf.C.T @ gf.Nt.T, tol, floor=1.0))
    H = 0.25 * gf.C.T @ gf.Q.pseudo_inverse @ gf.C
    return PartialQuadratic(domain, 0.5 * (H + H.T), np.zeros(d))


def pairing_matrix(n: int) -> np.ndarray:
    """Matrix of ``(x, x*) -> <x, x*>`` on R^(2n)."""
    P = np.zeros((2 * n, 2 * n))
    P[:n, n:] = 0.5 * np.eye(n)
    P[n:, :n] = 0.5 * np.eye(n)
    return P


def star_transpose_function(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> PartialQuadratic:
    """F_A^{*T} = ι_{gra A} + <·,·> as a partial quadratic."""
    _monotone_form(A, tol)
    return PartialQuadratic(A.graph, pairing_matrix(A.n), np.zeros(2 * A.n))


def partial_inf_conv(
    A: LinearRelation, B: LinearRelation, x, xs, tol: Tolerance = DEFAULT_TOL
) -> Tuple[float, Optional[np.ndarray]]:
    """(F_A □₂ F_B)(x, x*) = inf over y* of F_A(x, x* - y*) + F_B(x, y*).

    Both terms are finite only on an affine set of y* (two range
    constraints); on it the objective is a convex quadratic. Returns the
    infimum and the least-norm minimizer, or ``(inf, None)`` when the
    constraints are inconsistent.
    """
    if A.n != B.n:
        raise DimensionError(f"relations on R^{A.n} and R^{B.n}")
    fa, fb = _monotone_form(A, tol), _monotone_form(B, tol)
    z = _pt(A, x, xs)
    x, xs = z[: A.n], z[A.n :]
    zn = float(np.linalg.norm(z))
    a0 = fa.V.T @ x + fa.U.T @ xs  # b_A = a0 - U_A^T y*
    c0 = fb.V.T @ x  # b_B = c0 + U_B^T y*
    G = np.vstack([-fa.Nt @ fa.U.T, fb.Nt @ fb.U.T])
    h = np.concatenate([-fa.Nt @ a0, -fb.Nt @ c0])
    n = A.n
    if G.shape[0]:
        y0, res, Z = affine_solve(G, h, tol)
        if res > tol.atol * max(1.0, zn):
            return np.inf, None
    else:
        y0, Z = np.zeros(n), np.eye(n)
    y0 = y0 - Z @ (Z.T @ y0)
    QA, QB = fa.Q.pseudo_inverse, fb.Q.pseudo_inverse
    rA, MA = a0 - fa.U.T @ y0, -fa.U.T @ Z
    rB, MB = c0 + fb.U.T @ y0, fb.U.T @ Z
    H = 0.5 * (MA.T @ QA @ MA + MB.T @ QB @ MB)
    g = 0.5 * (MA.T @ QA @ rA + MB.T @ QB @ rB)
    t, _ = quadratic_min(H, g, tol.atol * max(1.0, zn))
    if t is None:
        return -np.inf, None
    ys = y0 + Z @ t
    bA = a0 - fa.U.T @ ys
    bB = c0 + fb.U.T @ ys
    val = 0.25 * float(bA @ QA @ bA) + 0.25 * float(bB @ QB @ bB)
    return val, ys


def values_agree(a: float, b: float, rtol: float) -> bool:
    """Equality of extended reals: +inf matches only +inf, finite values relatively."""
    if np.isinf(a) or np.isinf(b):
        return a == b
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


def fitz_sum_check(
    A: LinearRelation, B: LinearRelation, points, tol: Tolerance = DEFAULT_TOL, rtol: float = 1e-8
) -> CheckReport:
    """Compare F_{A+B} with F_A □₂ F_B at each row of ``points``.

    A and B are expected to be maximal monotone.
    """
    P = np.atleast_2d(np.asarray(points, dtype=float))
    S = add(A, B, tol)
    lhs = fitzpatrick_eval_many(S, P, tol)
    worst, witness = 0.0, None
    for z, fl in zip(P, lhs):
        fr, _ = partial_inf_conv(A, B, z[: A.n], z[A.n :], tol)
        if values_agree(fl, fr, rtol):
            gap = 0.0 if np.isinf(fl) else abs(fl - fr) / max(1.0, abs(fl), abs(fr))
        else:
            gap = np.inf if (np.isinf(fl) or np.isinf(fr)) else abs(fl - fr) / max(1.0, abs(fl), abs(fr))
            if witness is None or gap > worst:
                witness = z.copy()
        worst = max(worst, gap)
    return CheckReport("fitz_sum", witness is None, -worst, witness, {"points": len(P)})


def vanishing_on_adjoint_check(
    A: LinearRelation, samples=20, tol: Tolerance = DEFAULT_TOL, rng: Optional[np.random.Generator] = None
) -> CheckReport:
    """F_A = 0 on gra(-A*), and gra(-A*) = (gra A^-1)⊥.

    ``samples`` is either a count of random points drawn from gra(-A*) or an
    explicit (p, 2n) array of such points.
    """
    mA = negate(adjoint(A))
    same = subspace_check("adjoint_annihilator", mA.graph, complement(inverse(A).graph), tol)
    if np.isscalar(samples):
        rng = np.random.default_rng(0) if rng is None else rng
        pts = mA.graph.sample(rng, int(samples)) if mA.graph.dim else np.zeros((int(samples), 2 * A.n))
    else:
        pts = np.atleast_2d(np.asarray(samples, dtype=float))
    vals = fitzpatrick_eval_many(A, pts, tol)
    bounds = tol.atol * np.maximum(1.0, np.sum(pts * pts, axis=1))
    bad = np.flatnonzero(~(np.abs(vals) <= bounds))
    worst = float(np.max(np.abs(vals))) if len(vals) else 0.0
    ok = same.verdict and bad.size == 0
    witness = None
    if not ok:
        witness = pts[bad[0]].copy() if bad.size else same.witness
    return CheckReport(
        "vanishing_on_adjoint", ok, -worst, witness, {"annihilator_identity": same.verdict, "points": len(pts)}
    )


def family_is_singleton(A: LinearRelation, tol: Tolerance = DEFAULT_TOL) -> CheckReport:
    """Whether F_A = F_A^{*T}, so that the Fitzpatrick family has one member.

    Structural: the finiteness domain of F_A must equal gra A, and the
    quadratic part of F_A must equal the pairing on that domain. Details
    carry ``is_skew`` and ``dom_equal`` (dom A = dom A*) and, when the
    family is a singleton, its member as a PartialQuadratic.
    """
    mx = is_maximal_monotone(A, tol)
    if not mx.verdict:
        raise NotMaximal("Fitzpatrick family is only defined here for maximal monotone relations")
    F = fitzpatrick_function(A, tol)
    dom_check = subspace_check("fitz_domain", F.domain, A.graph, tol)
    W = A.graph.basis
    diff = W.T @ (F.matrix - pairing_matrix(A.n)) @ W
    ev, evec = np.linalg.eigh(0.5 * (diff + diff.T)) if W.shape[1] else (np.zeros(0), np.zeros((0, 0)))
    j = int(np.argmax(np.abs(ev))) if ev.size else 0
    form_gap = float(abs(ev[j])) if ev.size else 0.0
    form_ok = form_gap <= tol.atol
    ok = dom_check.verdict and form_ok
    details = {
        "domain_equal": dom_check.verdict,
        "form_equal": form_ok,
        "is_skew": is_skew(A, tol).verdict,
        "dom_equal": subspace_equal(dom(A, tol), dom(adjoint(A), tol), tol),
    }
    if ok:
        details["member"] = F
    # graph direction where F_A and the pairing differ most
    witness = None if ok else (dom_check.witness if not dom_check.verdict else W @ evec[:, j])
    return CheckReport("family_singleton", ok, min(dom_check.margin, -form_gap), witness, details)


def grid_sup_oracle(
    A: LinearRelation, x, xs, radius: float = 1e3, npts: int = 401, refinements: int = 2, window: float = 5.0
) -> float:
    """Brute-force Fitzpatrick supremum over graph coefficients.

    Evaluates ``<x, y*> + <y, x*> - <y, y*>`` directly at ``(y, y*) = (Uc, Vc)``
    on a grid of c, then re-grids around the best point ``refinements``
    times with a window of ``window`` previous steps. Independent of the
    closed form; intended for graphs of dimension <= 2.
    """
    x = np.asarray(x, dtype=float).ravel()
    xs = np.asarray(xs, dtype=float).ravel()
    k = A.graph.dim
    center = np.zeros(k)
    r = float(radius)
    best, c = kernels.grid_sup(A.U, A.V, x, xs, center, r, npts)
    for _ in range(refinements):
        step = 2.0 * r / (npts - 1)
        r = window * step
        best, c = kernels.grid_sup(A.U, A.V, x, xs, c, r, npts)
    return float(best)
