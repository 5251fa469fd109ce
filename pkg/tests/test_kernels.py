import numpy as np
import pytest

from monorel import _kernels_py, kernels
from monorel.fitzpatrick import graph_form
from monorel.harness import GeneratorSpec, gen_maximal, sample_points

try:
    from monorel import _kernels_cy
except ImportError:  # extension not built
    _kernels_cy = None

needs_cy = pytest.mark.skipif(_kernels_cy is None, reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_switch(monkeypatch):
    import importlib

    monkeypatch.setenv("MONOREL_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
    finally:
        monkeypatch.delenv("MONOREL_PURE_PYTHON")
        importlib.reload(kernels)


@needs_cy
@pytest.mark.parametrize("seed", range(5))
def test_range_quadratic_parity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 6))
    A = gen_maximal(GeneratorSpec(n, int(rng.integers(0, n + 1))), rng)
    gf = graph_form(A)
    Z = sample_points(A, rng, 40)
    v1, r1 = _kernels_py.range_quadratic(gf.C, gf.Q.pseudo_inverse, gf.Nt, Z, 1e-9)
    v2, r2 = _kernels_cy.range_quadratic(gf.C, gf.Q.pseudo_inverse, gf.Nt, Z, 1e-9)
    assert np.array_equal(np.isinf(v1), np.isinf(v2))
    fin = np.isfinite(v1)
    assert np.allclose(v1[fin], v2[fin], rtol=1e-12, atol=1e-12)
    assert np.allclose(r1, r2, atol=1e-12)


@needs_cy
@pytest.mark.parametrize("k", [0, 1, 2])
def test_grid_sup_parity(k):
    rng = np.random.default_rng(k)
    U, V = rng.standard_normal((2, k)), rng.standard_normal((2, k))
    V = V + U  # keep the objective bounded in most directions
    x, xs = rng.standard_normal(2), rng.standard_normal(2)
    c = rng.standard_normal(k)
    b1, c1 = _kernels_py.grid_sup(U, V, x, xs, c, 3.0, 41)
    b2, c2 = _kernels_cy.grid_sup(U, V, x, xs, c, 3.0, 41)
    assert b1 == pytest.approx(b2, rel=1e-12, abs=1e-12)
    assert np.allclose(c1, c2)
