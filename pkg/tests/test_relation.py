import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monorel.harness import gen_arbitrary
from monorel.linalg import DimensionError, Subspace, complement, contains, intersect, subspace_equal, subspace_sum
from monorel.relation import (
    LinearRelation,
    add,
    adjoint,
    as_matrix,
    at_zero,
    dom,
    from_graph_basis,
    from_matrix,
    graph_equal,
    image,
    inverse,
    ker,
    negate,
    normal_cone,
    ran,
    scale,
)

from conftest import E1, E2, J, identity, line, nc_e1, rotation


def graph_of(n, *vecs):
    return from_graph_basis(n, [np.asarray(v, float) for v in vecs])


class TestConstructors:
    def test_identity_graph(self):
        assert subspace_equal(identity(2).graph, graph_of(2, (1, 0, 1, 0), (0, 1, 0, 1)).graph)

    def test_zero_operator(self):
        A = from_matrix([[0.0]])
        assert subspace_equal(A.graph, line(1.0, 0.0))

    def test_rotation_contains_point(self):
        A = rotation()
        assert A.graph.dim == 2
        assert contains(A.graph, (1, 0, 0, 1))[0]

    def test_non_square(self):
        with pytest.raises(DimensionError):
            from_matrix(np.zeros((2, 3)))

    def test_graph_basis_identity(self):
        assert graph_equal(graph_of(1, (1, 1)), identity(1))

    def test_graph_basis_vertical(self):
        A = graph_of(1, (0, 1))
        assert dom(A).dim == 0 and at_zero(A).dim == 1

    def test_graph_basis_empty(self):
        A = from_graph_basis(2, [])
        assert A.graph.dim == 0 and dom(A).dim == 0 and at_zero(A).dim == 0

    def test_graph_basis_length_mismatch(self):
        with pytest.raises(DimensionError):
            from_graph_basis(2, [(1.0, 0.0, 0.0)])

    def test_graph_wrong_ambient(self):
        with pytest.raises(DimensionError):
            LinearRelation(2, Subspace.full(3))


class TestNormalCone:
    def test_whole_space_is_zero_operator(self):
        assert graph_equal(normal_cone(Subspace.full(2)), from_matrix(np.zeros((2, 2))))

    def test_zero_subspace(self):
        A = normal_cone(Subspace.zero(2))
        assert subspace_equal(A.graph, graph_of(2, (0, 0, 1, 0), (0, 0, 0, 1)).graph)

    def test_line(self):
        assert subspace_equal(nc_e1().graph, graph_of(2, (1, 0, 0, 0), (0, 0, 0, 1)).graph)


class TestInverse:
    def test_identity(self):
        assert graph_equal(inverse(identity(2)), identity(2))

    def test_zero_operator(self):
        A = inverse(from_matrix([[0.0]]))
        assert subspace_equal(A.graph, line(0.0, 1.0))

    def test_scalar(self):
        assert graph_equal(inverse(from_matrix([[2.0]])), from_matrix([[0.5]]))

    def test_involution_and_domain(self, rng):
        A = gen_arbitrary(rng, 4)
        assert graph_equal(inverse(inverse(A)), A)
        assert subspace_equal(dom(inverse(A)), ran(A))


class TestAdjoint:
    def test_identity(self):
        assert graph_equal(adjoint(identity(3)), identity(3))

    def test_rotation(self):
        assert graph_equal(adjoint(rotation()), from_matrix(-J))

    def test_normal_cone(self):
        assert graph_equal(adjoint(nc_e1()), nc_e1())

    def test_matrix_transpose(self, rng):
        M = rng.standard_normal((3, 3))
        assert graph_equal(adjoint(from_matrix(M)), from_matrix(M.T))


class TestScaleNegate:
    def test_scale_identity(self):
        assert graph_equal(scale(identity(2), 2.0), from_matrix(2 * np.eye(2)))

    def test_negate_normal_cone(self):
        assert graph_equal(negate(nc_e1()), nc_e1())

    def test_scale_zero(self, rng):
        A = gen_arbitrary(rng, 3)
        Z = scale(A, 0.0)
        n = A.n
        expect = Subspace(np.vstack([dom(A).basis, np.zeros((n, dom(A).dim))]))
        assert subspace_equal(Z.graph, expect)

    def test_negate_is_scale_minus_one(self, rng):
        A = gen_arbitrary(rng, 3)
        assert graph_equal(negate(A), scale(A, -1.0))
        assert graph_equal(scale(A, 3.0), from_graph_basis(3, [np.concatenate([A.U[:, j], 3 * A.V[:, j]]) for j in range(A.graph.dim)]))


class TestAdd:
    def test_identity_plus_identity(self):
        assert graph_equal(add(identity(2), identity(2)), from_matrix(2 * np.eye(2)))

    def test_identity_plus_normal_cone(self):
        S = add(identity(2), nc_e1())
        assert subspace_equal(S.graph, graph_of(2, (1, 0, 1, 0), (0, 0, 0, 1)).graph)

    def test_pointwise_definition(self, rng):
        A, B = gen_arbitrary(rng, 3), gen_arbitrary(rng, 3)
        S = add(A, B)
        D = intersect(dom(A), dom(B))
        if D.dim:
            x = D.sample(rng)
            w = image(A, x).particular + image(B, x).particular
            assert contains(S.graph, np.concatenate([x, w]))[0]
        assert subspace_equal(dom(S), D)
        assert subspace_equal(at_zero(S), subspace_sum(at_zero(A), at_zero(B)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            add(identity(1), identity(2))


class TestSlices:
    def test_identity(self):
        A = identity(3)
        assert dom(A).dim == ran(A).dim == 3 and ker(A).dim == at_zero(A).dim == 0

    def test_normal_cone(self):
        A = nc_e1()
        L = line(1.0, 0.0)
        assert subspace_equal(dom(A), L) and subspace_equal(ker(A), L)
        assert subspace_equal(ran(A), complement(L)) and subspace_equal(at_zero(A), complement(L))

    def test_vertical(self):
        A = graph_of(1, (0, 1))
        assert dom(A).dim == 0 and at_zero(A).dim == 1


class TestImage:
    def test_identity(self):
        img = image(identity(2), (1.0, 2.0))
        assert np.allclose(img.particular, [1, 2]) and img.offset.dim == 0

    def test_normal_cone_in_domain(self):
        img = image(nc_e1(), E1)
        assert np.allclose(img.particular, 0) and subspace_equal(img.offset, line(0.0, 1.0))

    def test_normal_cone_outside(self):
        assert image(nc_e1(), E2) is None

    def test_particular_orthogonal_to_offset(self, rng):
        A = gen_arbitrary(rng, 4)
        if dom(A).dim:
            p = image(A, dom(A).sample(rng)).particular
            assert np.abs(at_zero(A).basis.T @ p).max(initial=0) < 1e-9


def test_as_matrix():
    assert np.allclose(as_matrix(rotation()), J)
    assert as_matrix(nc_e1()) is None


seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_linearity(seed, n):
    rng = np.random.default_rng(seed)
    A = gen_arbitrary(rng, n)
    D = dom(A)
    if D.dim == 0:
        return
    x, y = D.sample(rng), D.sample(rng)
    a, b = rng.standard_normal(2)
    lhs = image(A, a * x + b * y)
    rhs = a * image(A, x).particular + b * image(A, y).particular
    assert subspace_equal(lhs.offset, at_zero(A))
    assert lhs.contains(rhs)


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_adjoint_pairing(seed, n):
    rng = np.random.default_rng(seed)
    A = gen_arbitrary(rng, n)
    As = adjoint(A)
    if dom(A).dim == 0 or dom(As).dim == 0:
        return
    x, y = dom(As).sample(rng), dom(A).sample(rng)
    lhs = image(As, x).particular @ y
    rhs = x @ image(A, y).particular
    assert lhs == pytest.approx(rhs, abs=1e-8 * max(1.0, np.linalg.norm(x) * np.linalg.norm(y)))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_closure_identities(seed, n):
    A = gen_arbitrary(np.random.default_rng(seed), n)
    As = adjoint(A)
    assert subspace_equal(dom(A), complement(at_zero(As)))
    assert subspace_equal(complement(ker(A)), ran(As))
    assert subspace_equal(dom(As), complement(at_zero(A)))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_double_adjoint_and_inverse_commutation(seed, n):
    A = gen_arbitrary(np.random.default_rng(seed), n)
    assert graph_equal(adjoint(adjoint(A)), A)
    assert graph_equal(adjoint(inverse(A)), inverse(adjoint(A)))


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 5))
def test_sum_dimension(seed, n):
    rng = np.random.default_rng(seed)
    A, B = gen_arbitrary(rng, n), gen_arbitrary(rng, n)
    S = add(A, B)
    assert S.graph.dim == intersect(dom(A), dom(B)).dim + subspace_sum(at_zero(A), at_zero(B)).dim
