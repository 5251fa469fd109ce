import numpy as np
import pytest
from hypothesis import strategies as st

from monorel.linalg import Subspace, orthonormalize
from monorel.relation import from_graph_basis, from_matrix, normal_cone

J = np.array([[0.0, -1.0], [1.0, 0.0]])
E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])


def line(*v):
    return orthonormalize([v])


def identity(n=1):
    return from_matrix(np.eye(n))


def rotation():
    return from_matrix(J)


def nc_e1():
    """Normal cone of span{e1} in R^2."""
    return normal_cone(line(1.0, 0.0))


def zero_on(D: Subspace):
    n = D.ambient_dim
    return from_graph_basis(n, [np.concatenate([c, np.zeros(n)]) for c in D.basis.T]) if D.dim else from_graph_basis(n, [])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# a random subspace of R^d given by its seed, ambient dim and dimension
subspace_args = st.integers(1, 6).flatmap(
    lambda d: st.tuples(st.integers(0, 2**32 - 1), st.just(d), st.integers(0, d))
)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line_ in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line_)
