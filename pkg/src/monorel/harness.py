"""Seeded generators of monotone linear relations and theorem suites.

Generated relations have graph ``{(x, S x + z) : x ∈ D, z ∈ Z}`` with
``S = P + K`` (P PSD, K skew) and ``Z ⊆ D⊥``. Then ``<x, Sx + z> = <x, Px> >= 0``
so the relation is monotone, and it is maximal exactly when ``Z = D⊥``.

Each trial draws from its own generator seeded by ``(master seed, trial
index)``, so any failure can be replayed alone with :func:`replay`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .errors import NotSingleValued
from .fitzpatrick import (
    fitz_star_transpose_eval,
    fitz_sum_check,
    fitzpatrick_eval,
    fitzpatrick_eval_many,
    fitzpatrick_function,
    family_is_singleton,
    graph_form,
    grid_sup_oracle,
    partial_inf_conv,
    vanishing_on_adjoint_check,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    complement,
    contains,
    is_subset,
    random_subspace,
    span,
    subspace_equal,
    subspace_sum,
    intersect,
)
from .monotone import (
    dimension_oracle,
    extend_to_maximal,
    halo_contains,
    is_maximal_monotone,
    is_monotone,
    is_monotonically_related,
    is_skew,
    q_eval,
)
from .relation import (
    LinearRelation,
    add,
    adjoint,
    at_zero,
    dom,
    from_structured,
    graph_equal,
    image,
    inverse,
    ker,
    negate,
    normal_cone,
    ran,
)

KINDS = ("monotone", "maximal", "skew", "matrix")


class GenerationError(RuntimeError):
    """A generated instance failed its own postcondition."""


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    dom_dim: int
    offset_dim: int = 0
    kind: str = "monotone"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.n < 1 or not 0 <= self.dom_dim <= self.n or self.offset_dim < 0:
            raise ValueError(f"infeasible dimensions n={self.n} dom_dim={self.dom_dim} offset_dim={self.offset_dim}")


def _rng(spec_or_rng) -> np.random.Generator:
    if isinstance(spec_or_rng, np.random.Generator):
        return spec_or_rng
    return np.random.default_rng(spec_or_rng.seed)


def _parts(rng: np.random.Generator, n: int, symmetric: bool = True):
    if symmetric:
        r = int(rng.integers(0, n + 1))
        R = rng.standard_normal((r, n))
        P = R.T @ R
    else:
        P = np.zeros((n, n))
    G = rng.standard_normal((n, n))
    return P, 0.5 * (G - G.T)


def _build(rng, n, dom_dim, zdim, symmetric=True, P=None, K=None):
    P0, K0 = _parts(rng, n, symmetric)
    P = P0 if P is None else P
    K = K0 if K is None else K
    D = random_subspace(rng, n, dom_dim)
    Z = random_subspace(rng, n, zdim, within=complement(D))
    return from_structured(P, K, D, Z, n=n), (P, K, D, Z)


def gen_monotone(spec: GeneratorSpec, rng: Optional[np.random.Generator] = None) -> LinearRelation:
    """Monotone relation with ``dim Z = n - dom_dim - offset_dim`` (clamped at 0)."""
    rng = _rng(spec) if rng is None else rng
    n, d = spec.n, spec.dom_dim
    if spec.kind == "matrix":
        d = n
    zdim = max(n - d - (0 if spec.kind in ("maximal", "skew") else spec.offset_dim), 0)
    A, _ = _build(rng, n, d, zdim, symmetric=spec.kind != "skew")
    if not is_monotone(A).verdict:
        raise GenerationError(f"generated relation is not monotone ({spec})")
    return A


def gen_maximal(spec: GeneratorSpec, rng: Optional[np.random.Generator] = None) -> LinearRelation:
    A = gen_monotone(GeneratorSpec(spec.n, spec.dom_dim, 0, "maximal", spec.seed), rng)
    if not is_maximal_monotone(A).verdict or not dimension_oracle(A):
        raise GenerationError(f"generated relation is not maximal monotone ({spec})")
    return A


def gen_skew(spec: GeneratorSpec, rng: Optional[np.random.Generator] = None) -> LinearRelation:
    A = gen_monotone(GeneratorSpec(spec.n, spec.dom_dim, 0, "skew", spec.seed), rng)
    if not is_skew(A).verdict:
        raise GenerationError(f"generated relation is not skew ({spec})")
    return A


def gen_near_nonmaximal(rng: np.random.Generator, n: int, dom_dim: int) -> LinearRelation:
    """Maximal construction with Z shrunk by one dimension (needs dom_dim < n)."""
    if dom_dim >= n:
        raise ValueError("a relation with full domain and A0 = {0} is maximal; need dom_dim < n")
    A, _ = _build(rng, n, dom_dim, n - dom_dim - 1)
    if not is_monotone(A).verdict or is_maximal_monotone(A).details["criterion"]:
        raise GenerationError("near-boundary negative is not monotone-but-not-maximal")
    return A


def gen_nonskew_maximal(rng: np.random.Generator, n: int, dom_dim: int) -> LinearRelation:
    """Skew construction plus a symmetric rank-one term supported on the domain."""
    if dom_dim < 1:
        raise ValueError("need dom_dim >= 1")
    D = random_subspace(rng, n, dom_dim)
    v = D.sample(rng)
    v /= np.linalg.norm(v)
    _, K = _parts(rng, n, symmetric=False)
    A = from_structured(np.outer(v, v), K, D, complement(D), n=n)
    if is_skew(A).verdict or not is_maximal_monotone(A).verdict:
        raise GenerationError("rank-one perturbation did not give a maximal non-skew relation")
    return A


def gen_nonmonotone(rng: np.random.Generator, n: int, dom_dim: int) -> LinearRelation:
    """Symmetric part made indefinite along a domain direction."""
    if dom_dim < 1:
        raise ValueError("need dom_dim >= 1")
    D = random_subspace(rng, n, dom_dim)
    w = D.sample(rng)
    w /= np.linalg.norm(w)
    P, K = _parts(rng, n)
    P = P - (np.linalg.norm(P, 2) + 1.0) * np.outer(w, w)
    zdim = int(rng.integers(0, n - dom_dim + 1))
    A = from_structured(P, K, D, random_subspace(rng, n, zdim, within=complement(D)), n=n)
    if is_monotone(A).verdict:
        raise GenerationError("indefinite construction came out monotone")
    return A


def gen_arbitrary(rng: np.random.Generator, n: int) -> LinearRelation:
    """A linear relation with no monotonicity: arbitrary M on D plus an arbitrary offset Z."""
    d = int(rng.integers(0, n + 1))
    z = int(rng.integers(0, n + 1))
    M = rng.standard_normal((n, n))
    D = random_subspace(rng, n, d)
    Z = random_subspace(rng, n, z)
    return _arbitrary(n, M, D, Z)


def _arbitrary(n, M, D, Z):
    xs = np.hstack([D.basis, np.zeros((n, Z.dim))])
    ys = np.hstack([M @ D.basis, Z.basis])
    return LinearRelation(n, span(np.vstack([xs, ys])))


def sample_points(A: LinearRelation, rng: np.random.Generator, count: int, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Mixture of graph points, gra(-A*) points, finiteness-domain points of F_A and Gaussian points."""
    sources = [A.graph, negate(adjoint(A)).graph, fitzpatrick_function(A, tol).domain, Subspace.full(2 * A.n)]
    pts = []
    for i in range(count):
        S = sources[i % len(sources)]
        pts.append(S.sample(rng) if S.dim else np.zeros(2 * A.n))
    return np.array(pts)


@dataclass
class Failure:
    trial: int
    seed: int
    summary: str
    invariant: str
    margin: float


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: List[Failure] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


class _Trial:
    def __init__(self, rng, n, tol):
        self.rng = rng
        self.n = n
        self.tol = tol
        self.failures: List[Tuple[str, float]] = []
        self.summary = f"n={n}"
        self.stats: Counter = Counter()

    def check(self, ok, invariant: str, margin: float = float("nan")):
        if not ok:
            self.failures.append((invariant, float(margin)))
        return ok

    def dim(self, lo=0, hi=None):
        hi = self.n if hi is None else hi
        return int(self.rng.integers(lo, hi + 1))

    def spec(self, dom_dim):
        return GeneratorSpec(self.n, dom_dim)


def _particular(A, x, tol):
    img = image(A, x, tol)
    return None if img is None else img.particular


def _suite_linear_facts(t: _Trial):
    tol, rng, n = t.tol, t.rng, t.n
    A, B = gen_arbitrary(rng, n), gen_arbitrary(rng, n)
    As = adjoint(A)
    D, A0 = dom(A, tol), at_zero(A, tol)
    t.summary += f" graph_dim={A.graph.dim} dom={D.dim} A0={A0.dim}"
    # Ax = x* + A0 at a graph point
    if A.graph.dim:
        z = A.graph.sample(rng)
        img = image(A, z[:n], tol)
        t.check(img is not None and img.contains(z[n:], tol), "coset Ax = x* + A0")
    # linearity
    if D.dim:
        x, y = D.sample(rng), D.sample(rng)
        a, b = rng.standard_normal(2)
        lhs = _particular(A, a * x + b * y, tol)
        rhs = a * _particular(A, x, tol) + b * _particular(A, y, tol)
        t.check(contains(A0, lhs - rhs, tol)[0], "linearity A(ax+by) = aAx + bAy")
    # adjoint pairing
    Ds = dom(As, tol)
    if D.dim and Ds.dim:
        x, y = Ds.sample(rng), D.sample(rng)
        l = float(_particular(As, x, tol) @ y)
        r = float(x @ _particular(A, y, tol))
        scale = max(1.0, np.linalg.norm(x) * np.linalg.norm(y))
        t.check(abs(l - r) <= 1e-8 * scale, "adjoint pairing <A*x,y> = <x,Ay>", abs(l - r))
    t.check(subspace_equal(D, complement(at_zero(As, tol)), tol), "dom A = (A*0)^perp")
    t.check(subspace_equal(complement(ker(A, tol)), ran(As, tol), tol), "(ker A)^perp = ran A*")
    t.check(subspace_equal(Ds, complement(A0), tol), "dom A* = (A0)^perp")
    t.check(graph_equal(adjoint(As), A, tol), "A** = A")
    t.check(graph_equal(adjoint(inverse(A)), inverse(As), tol), "(A^-1)* = (A*)^-1")
    S = add(A, B, tol)
    expect = intersect(D, dom(B, tol), tol).dim + subspace_sum(A0, at_zero(B, tol), tol).dim
    t.check(S.graph.dim == expect, "dim gra(A+B) = dim(domA ∩ domB) + dim(A0 + B0)", S.graph.dim - expect)


def _suite_monotone_basics(t: _Trial):
    tol, rng, n = t.tol, t.rng, t.n
    d = t.dim()
    A = gen_monotone(GeneratorSpec(n, d, t.dim(0, n - d)), rng)
    D, A0 = dom(A, tol), at_zero(A, tol)
    t.summary += f" dom={D.dim} A0={A0.dim}"
    t.check(is_monotone(A, tol).verdict, "generated relation monotone")
    cross = np.abs(D.basis.T @ A0.basis).max(initial=0.0)
    t.check(cross <= tol.atol, "dom A ⊂ (A0)^perp", cross)
    t.check(is_subset(A0, at_zero(adjoint(A), tol), tol), "A0 ⊂ A*0")
    if D.dim:
        x, y = D.sample(rng), D.sample(rng)
        lam = float(rng.uniform(-1.0, 2.0))
        try:
            qx, qy = q_eval(A, x, tol), q_eval(A, y, tol)
            qm = q_eval(A, lam * x + (1 - lam) * y, tol)
            qd = q_eval(A, x - y, tol)
            lhs = lam * qx + (1 - lam) * qy - qm
            rhs = lam * (1 - lam) * qd
            scale = max(1.0, abs(qx), abs(qy), abs(qm))
            t.check(abs(lhs - rhs) <= 1e-8 * scale, "q_A convexity identity", lhs - rhs)
            t.check(qd >= -tol.atol * scale, "q_A convex (q(x-y) >= 0)", qd)
        except NotSingleValued:
            t.check(False, "q_A single-valued on monotone relation")
        # monotonically related pairs over dom A differ from Ax by (dom A)^perp
        p = _particular(A, x, tol)
        h = halo_contains(A, x, tol)
        t.check(h.verdict, "dom A ⊂ halo A")
        if h.verdict and h.details.get("bounded", True):
            xs = h.witness
            t.check(is_monotonically_related(A, x, xs, tol).verdict, "halo witness is monotonically related")
            r = np.abs(D.basis.T @ (xs - p)).max(initial=0.0)
            t.check(r <= 1e-8 * max(1.0, np.linalg.norm(xs)), "x* - x0* ∈ (dom A)^perp", r)
        v = D.sample(rng)
        t.check(
            not is_monotonically_related(A, x, p + v, tol).verdict,
            "x* - x0* with a dom component is not monotonically related",
        )
    # negative family: non-monotone relation has no single-valued convex q
    if n >= 1:
        Bn = gen_nonmonotone(rng, n, t.dim(1))
        mono = is_monotone(Bn, tol)
        t.check(not mono.verdict, "non-monotone instance detected")
        x = mono.witness[:n]
        try:
            qx = q_eval(Bn, x, tol)
            t.check(qx < 0 and 0.0 > 0.5 * (qx + q_eval(Bn, -x, tol)), "non-monotone => q_A not convex", qx)
        except NotSingleValued:
            t.stats["nonmonotone_not_single_valued"] += 1
    Am = gen_maximal(t.spec(t.dim()), rng)
    t.check(subspace_equal(complement(dom(Am, tol)), at_zero(Am, tol), tol), "maximal => (dom A)^perp = A0")


def _mixed_instance(t: _Trial):
    """A maximal or (near-boundary) non-maximal monotone relation with its ground truth."""
    n = t.n
    if n > 1 and t.rng.random() < 0.5 or (n == 1 and t.rng.random() < 0.5):
        return gen_near_nonmaximal(t.rng, n, t.dim(0, n - 1)), False
    return gen_maximal(t.spec(t.dim()), t.rng), True


def _suite_brezis_browder(t: _Trial):
    tol = t.tol
    A, truth = _mixed_instance(t)
    t.summary += f" dom={dom(A, tol).dim} maximal={truth}"
    t.stats["positive" if truth else "negative"] += 1
    As = adjoint(A)
    m1 = is_maximal_monotone(A, tol).verdict
    m2 = is_monotone(As, tol).verdict
    m3 = is_maximal_monotone(As, tol).verdict
    t.check(m1 == m2 == m3, f"A maximal ⇔ A* monotone ⇔ A* maximal ({m1},{m2},{m3})")
    t.check(m1 == truth, "maximality matches construction")


def _suite_adjoint_identities(t: _Trial):
    tol = t.tol
    A = gen_maximal(t.spec(t.dim()), t.rng)
    As = adjoint(A)
    t.summary += f" dom={dom(A, tol).dim}"
    t.check(subspace_equal(ker(A, tol), ker(As, tol), tol), "ker A = ker A*")
    t.check(subspace_equal(ran(A, tol), ran(As, tol), tol), "ran A = ran A*")
    t.check(subspace_equal(dom(A, tol), dom(As, tol), tol), "dom A = dom A*")
    t.check(subspace_equal(dom(A, tol), complement(at_zero(A, tol)), tol), "dom A = (A0)^perp")
    t.check(subspace_equal(dom(As, tol), complement(at_zero(As, tol)), tol), "dom A* = (A*0)^perp")


def _suite_fitz_inequality(t: _Trial, points: int = 50):
    tol, rng, n = t.tol, t.rng, t.n
    A = gen_maximal(t.spec(t.dim()), rng)
    t.summary += f" dom={dom(A, tol).dim}"
    P = sample_points(A, rng, points, tol)
    F = fitzpatrick_eval_many(A, P, tol)
    t.stats["points"] += len(P)
    for z, f in zip(P, F):
        x, xs = z[:n], z[n:]
        fst = fitz_star_transpose_eval(A, x, xs, tol)
        pair = float(x @ xs)
        slack = 1e-9 * max(1.0, float(z @ z))
        t.check(fst >= f - slack, "F*T >= F", fst - f if np.isfinite(f) else np.inf)
        t.check(f >= pair - slack, "F >= <.,.>", f - pair)
        # three routes to monotone relatedness agree for maximal A
        rel = is_monotonically_related(A, x, xs, tol).verdict
        via_f = f <= pair + slack
        on_graph = contains(A.graph, z, tol)[0]
        t.check(rel == via_f == on_graph, f"related ⇔ F <= <.,.> ⇔ graph ({rel},{via_f},{on_graph})")
    G = A.graph.sample(rng, 10) if A.graph.dim else np.zeros((1, 2 * n))
    for z in G:
        pair = float(z[:n] @ z[n:])
        f = fitzpatrick_eval(A, z[:n], z[n:], tol)
        fst = fitz_star_transpose_eval(A, z[:n], z[n:], tol)
        scale = 1e-9 * max(1.0, float(z @ z))
        t.check(abs(f - pair) <= scale and abs(fst - pair) <= scale, "F = F*T = <.,.> on gra A", f - pair)
    van = vanishing_on_adjoint_check(A, 20, tol, rng)
    t.check(van.details["annihilator_identity"], "gra(-A*) = (gra A^-1)^perp")
    t.check(van.verdict, "F = 0 on gra(-A*)", van.margin)
    domF = fitzpatrick_function(A, tol).domain
    projF = span(domF.basis[:n], tol, floor=1.0)
    projG = span(A.graph.basis[:n], tol, floor=1.0)
    t.check(subspace_equal(projF, dom(A, tol), tol), "P_X dom F_A = dom A")
    t.check(subspace_equal(projG, dom(A, tol), tol), "P_X dom F_A*T = dom A")


def _suite_fitz_sum(t: _Trial, points: int = 20):
    tol, rng, n = t.tol, t.rng, t.n
    A = gen_maximal(t.spec(t.dim()), rng)
    B = gen_maximal(t.spec(t.dim()), rng)
    S = add(A, B, tol)
    t.summary += f" domA={dom(A, tol).dim} domB={dom(B, tol).dim}"
    t.check(is_maximal_monotone(S, tol).verdict, "A+B maximal monotone")
    P = sample_points(S, rng, points, tol)
    rep = fitz_sum_check(A, B, P, tol, rtol=1e-8)
    t.check(rep.verdict, "F_{A+B} = F_A □₂ F_B", rep.margin)
    t.stats["points"] += len(P)
    for z in P:
        x, xs = z[:n], z[n:]
        val, ys = partial_inf_conv(A, B, x, xs, tol)
        slack = 1e-9 * max(1.0, float(z @ z))
        t.check(val >= float(x @ xs) - slack, "□₂ >= <.,.>", val - float(x @ xs))
        if np.isfinite(val):
            t.stats["finite"] += 1
            t.check(ys is not None, "□₂ infimum attained")
            if ys is not None:
                direct = fitzpatrick_eval(A, x, xs - ys, tol) + fitzpatrick_eval(B, x, ys, tol)
                t.check(abs(direct - val) <= 1e-8 * max(1.0, abs(val)), "□₂ minimizer reproduces value", direct - val)


def _halo_samples(A: LinearRelation, rng, count, tol):
    srcs = [dom(A, tol), complement(at_zero(A, tol)), Subspace.full(A.n)]
    return [srcs[i % 3].sample(rng) if srcs[i % 3].dim else np.zeros(A.n) for i in range(count)]


def _halo_verdicts(t: _Trial, A, truth, points):
    tol = t.tol
    D, A0 = dom(A, tol), at_zero(A, tol)
    crit = subspace_equal(complement(D), A0, tol)
    dimo = dimension_oracle(A)
    agree = True
    for x in _halo_samples(A, t.rng, points, tol):
        h = halo_contains(A, x, tol)
        indom = contains(D, x, tol)[0]
        if indom:
            t.check(h.verdict, "dom A ⊂ halo A")
        if h.verdict:
            r = np.abs(A0.basis.T @ x).max(initial=0.0)
            t.check(r <= tol.atol * max(1.0, np.linalg.norm(x)), "halo A ⊂ (A0)^perp", r)
        agree &= h.verdict == indom
    t.check(crit == dimo == agree == truth, f"criterion/dim-oracle/halo agree ({crit},{dimo},{agree},{truth})")
    t.check(is_maximal_monotone(A, tol).verdict == (crit and agree), "maximal ⇔ (dom)^perp = A0 and halo = dom")


def _suite_halo(t: _Trial, points: int = 50):
    n = t.n
    A = gen_maximal(t.spec(t.dim()), t.rng)
    _halo_verdicts(t, A, True, points)
    t.stats["positive"] += 1
    if n >= 1:
        B = gen_near_nonmaximal(t.rng, n, t.dim(0, n - 1))
        _halo_verdicts(t, B, False, points)
        t.stats["negative"] += 1


def _suite_skew_family(t: _Trial, points: int = 10):
    tol, rng, n = t.tol, t.rng, t.n
    Sk = gen_skew(t.spec(t.dim()), rng)
    t.stats["skew"] += 1
    Ns = gen_nonskew_maximal(rng, n, t.dim(1))
    t.stats["nonskew"] += 1
    for A, truth in ((Sk, True), (Ns, False)):
        sk = is_skew(A, tol).verdict
        fam = family_is_singleton(A, tol)
        t.check(sk == truth, "skewness matches construction")
        t.check(fam.details["dom_equal"], "dom A = dom A*")
        t.check(fam.verdict == (sk and fam.details["dom_equal"]), "singleton family ⇔ skew", fam.margin)
        if sk:
            t.check(is_maximal_monotone(A, tol).verdict, "skew => A maximal")
            t.check(is_maximal_monotone(adjoint(A), tol).verdict, "skew => A* maximal")
            m = fam.details.get("member")
            if m is not None:
                t.check(subspace_equal(m.domain, A.graph, tol), "member domain = gra A")
                t.check(np.abs(m.restricted_matrix()).max(initial=0.0) <= tol.atol, "member form ≡ 0")
            P = sample_points(A, rng, points, tol)
            for z in P:
                on = contains(A.graph, z, tol)[0]
                f = fitzpatrick_eval(A, z[:n], z[n:], tol)
                fst = fitz_star_transpose_eval(A, z[:n], z[n:], tol)
                want = 0.0 if on else np.inf
                ok = (abs(f - want) <= tol.atol * max(1.0, z @ z) if on else f == want) and (
                    abs(fst - want) <= tol.atol * max(1.0, z @ z) if on else fst == want
                )
                t.check(ok, "F_A = F_A*T = ι_{gra A}")


def _suite_extension(t: _Trial):
    tol, rng, n = t.tol, t.rng, t.n
    d = t.dim(0, n - 1) if n > 1 else 0
    A = gen_monotone(GeneratorSpec(n, d, t.dim(1, n - d)), rng)
    t.summary += f" dom={d} graph_dim={A.graph.dim}"
    t.check(not is_maximal_monotone(A, tol).verdict, "instance is not maximal")
    E = extend_to_maximal(A, tol)
    t.check(is_monotone(E, tol).verdict, "extension monotone")
    t.check(is_maximal_monotone(E, tol).verdict, "extension maximal (criterion)")
    t.check(dimension_oracle(E), "extension maximal (dimension oracle)")
    t.check(is_subset(A.graph, E.graph, tol), "gra A ⊆ gra extension")
    x = complement(at_zero(A, tol)).sample(rng)
    h = halo_contains(A, x, tol)
    if h.verdict and h.details.get("bounded"):
        z = np.concatenate([x, h.witness])
        bigger = LinearRelation(n, span(np.hstack([A.graph.basis, z[:, None]]), tol, floor=1.0))
        t.check(is_monotone(bigger, tol).verdict, "adding a related point keeps monotonicity")
    D = random_subspace(rng, n, d)
    zero_on_D = LinearRelation(n, Subspace(np.vstack([D.basis, np.zeros((n, D.dim))])))
    t.check(graph_equal(extend_to_maximal(zero_on_D, tol), normal_cone(D), tol), "extension of zero-on-D = N_D")


def _suite_fitz_oracle(t: _Trial, points: int = 20, radius: float = 1e3, max_draws: int = 200):
    tol, rng, n = t.tol, t.rng, t.n
    A = gen_maximal(t.spec(t.dim()), rng)
    gf = graph_form(A, tol)
    domF = fitzpatrick_function(A, tol).domain
    done = 0
    for _ in range(max_draws):
        if done == points:
            break
        z = domF.sample(rng)
        z /= max(np.linalg.norm(z), 1e-300)
        x, xs = z[:n], z[n:]
        # the grid must bracket the closed-form maximizer, else redraw
        cstar = 0.5 * gf.Q.pseudo_inverse @ (gf.C @ z)
        if np.max(np.abs(cstar), initial=0.0) > 0.5 * radius:
            t.stats["unbracketed"] += 1
            continue
        closed = fitzpatrick_eval(A, x, xs, tol)
        brute = grid_sup_oracle(A, x, xs, radius=radius)
        done += 1
        t.check(abs(closed - brute) <= 1e-3 * max(1.0, abs(closed)), "closed form = grid supremum", closed - brute)
    t.stats["points"] += done
    t.check(done == points, f"only {done} of {points} oracle points bracketed")


SUITES: Dict[str, Tuple[Callable, Optional[int]]] = {
    # name -> (trial function, largest n it supports)
    "linear-facts": (_suite_linear_facts, None),
    "monotone-basics": (_suite_monotone_basics, None),
    "brezis-browder": (_suite_brezis_browder, None),
    "adjoint-identities": (_suite_adjoint_identities, None),
    "fitz-inequality": (_suite_fitz_inequality, None),
    "fitz-sum": (_suite_fitz_sum, None),
    "halo": (_suite_halo, None),
    "skew-family": (_suite_skew_family, None),
    "extension": (_suite_extension, None),
    "fitz-oracle": (_suite_fitz_oracle, 2),
}


def trial_seed(seed: int, trial: int) -> int:
    """Counter-mode derivation of an independent 64-bit seed per trial."""
    return int(np.random.SeedSequence([int(seed), int(trial)]).generate_state(1, dtype=np.uint64)[0])


def _run_trial(name: str, n_range: Tuple[int, int], tseed: int, tol: Tolerance) -> _Trial:
    fn, nmax = SUITES[name]
    lo, hi = n_range
    if nmax is not None:
        hi = min(hi, nmax)
        lo = min(lo, hi)
    rng = np.random.default_rng(tseed)
    n = int(rng.integers(lo, hi + 1))
    t = _Trial(rng, n, tol)
    try:
        fn(t)
    except GenerationError as exc:
        t.check(False, f"generator postcondition: {exc}")
    return t


def run_suite(
    name: str,
    n_range: Tuple[int, int] = (1, 6),
    trials: int = 200,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> SuiteResult:
    """Run ``trials`` independent trials of a named suite.

    >>> run_suite("adjoint-identities", (1, 3), trials=5, seed=1).passed
    True
    """
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; valid suites: {', '.join(SUITES)}")
    lo, hi = n_range
    if not 1 <= lo <= hi:
        raise ValueError(f"bad n range {n_range}")
    result = SuiteResult(name, trials)
    stats: Counter = Counter()
    for i in range(trials):
        s = trial_seed(seed, i)
        t = _run_trial(name, n_range, s, tol)
        stats.update(t.stats)
        for inv, margin in t.failures:
            result.failures.append(Failure(i, s, t.summary, inv, margin))
    result.failures.sort(key=lambda f: f.trial)
    result.stats = dict(sorted(stats.items()))
    return result


def replay(name: str, n_range: Tuple[int, int], seed: int, tol: Tolerance = DEFAULT_TOL) -> List[Tuple[str, float]]:
    """Re-run a single trial from its recorded seed; returns its failures."""
    return _run_trial(name, n_range, seed, tol).failures
