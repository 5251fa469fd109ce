import numpy as np
import pytest

from monorel.harness import (
    SUITES,
    GeneratorSpec,
    gen_arbitrary,
    gen_maximal,
    gen_monotone,
    gen_near_nonmaximal,
    gen_nonmonotone,
    gen_nonskew_maximal,
    gen_skew,
    replay,
    run_suite,
    trial_seed,
)
from monorel.linalg import complement, subspace_equal
from monorel.monotone import dimension_oracle, is_maximal_monotone, is_monotone, is_skew
from monorel.relation import as_matrix, at_zero, dom


class TestGeneratorSpec:
    @pytest.mark.parametrize("kw", [dict(n=0, dom_dim=0), dict(n=2, dom_dim=3), dict(n=2, dom_dim=-1), dict(n=2, dom_dim=1, offset_dim=-1), dict(n=2, dom_dim=1, kind="weird")])
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            GeneratorSpec(**kw)


class TestGenerators:
    def test_full_domain_operator(self):
        A = gen_monotone(GeneratorSpec(2, 2, seed=3))
        assert is_monotone(A).verdict and as_matrix(A) is not None

    def test_line_domain_is_maximal(self):
        A = gen_maximal(GeneratorSpec(3, 1, seed=5))
        assert is_maximal_monotone(A).verdict
        assert subspace_equal(complement(dom(A)), at_zero(A))

    def test_shrunk_offset_not_maximal(self):
        A = gen_monotone(GeneratorSpec(3, 1, offset_dim=1, seed=5))
        assert is_monotone(A).verdict and not is_maximal_monotone(A).verdict

    def test_skew_full_domain(self):
        A = gen_skew(GeneratorSpec(2, 2, seed=1))
        assert is_skew(A).verdict and as_matrix(A) is not None

    def test_skew_multivalued(self):
        A = gen_skew(GeneratorSpec(3, 1, seed=1))
        assert is_skew(A).verdict and is_maximal_monotone(A).verdict and at_zero(A).dim == 2

    def test_vertical_line(self):
        A = gen_maximal(GeneratorSpec(1, 0, seed=0))
        assert dom(A).dim == 0 and at_zero(A).dim == 1

    def test_seed_determinism(self):
        a = gen_maximal(GeneratorSpec(4, 2, seed=11))
        b = gen_maximal(GeneratorSpec(4, 2, seed=11))
        assert np.array_equal(a.graph.basis, b.graph.basis)

    def test_negative_families(self, rng):
        for n in range(1, 6):
            B = gen_near_nonmaximal(rng, n, int(rng.integers(0, n)))
            assert is_monotone(B).verdict and not is_maximal_monotone(B).verdict and not dimension_oracle(B)
            N = gen_nonskew_maximal(rng, n, int(rng.integers(1, n + 1)))
            assert not is_skew(N).verdict and is_maximal_monotone(N).verdict
            assert not is_monotone(gen_nonmonotone(rng, n, int(rng.integers(1, n + 1)))).verdict

    def test_negative_preconditions(self, rng):
        with pytest.raises(ValueError):
            gen_near_nonmaximal(rng, 2, 2)
        with pytest.raises(ValueError):
            gen_nonskew_maximal(rng, 2, 0)

    def test_arbitrary_relation_shape(self, rng):
        A = gen_arbitrary(rng, 4)
        assert A.n == 4 and A.graph.ambient_dim == 8


def test_trial_seeds_are_distinct_and_stable():
    seeds = [trial_seed(42, i) for i in range(100)]
    assert len(set(seeds)) == 100
    assert seeds == [trial_seed(42, i) for i in range(100)]
    assert trial_seed(42, 0) != trial_seed(43, 0)


@pytest.mark.parametrize("name", list(SUITES))
def test_every_suite_passes_small(name):
    r = run_suite(name, (1, 4), trials=8, seed=5)
    assert r.passed, r.failures[:3]
    assert r.trials == 8


def test_determinism():
    a = run_suite("fitz-sum", (1, 3), trials=6, seed=9)
    b = run_suite("fitz-sum", (1, 3), trials=6, seed=9)
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError, match="valid suites"):
        run_suite("nosuch")


def test_bad_range():
    with pytest.raises(ValueError):
        run_suite("halo", (3, 2))


def test_failures_are_recorded_and_replayable():
    from monorel import harness

    def broken(t):
        t.check(t.n != 2, "n must not be 2", -1.0)

    harness.SUITES["broken"] = (broken, None)
    try:
        r = run_suite("broken", (1, 3), trials=30, seed=1)
        assert not r.passed
        assert [f.trial for f in r.failures] == sorted(f.trial for f in r.failures)
        f = r.failures[0]
        assert f.summary == "n=2" and f.invariant == "n must not be 2" and f.margin == -1.0
        assert replay("broken", (1, 3), f.seed) == [("n must not be 2", -1.0)]
    finally:
        del harness.SUITES["broken"]


def test_generation_failure_is_recorded():
    from monorel import harness

    def bad(t):
        raise harness.GenerationError("boom")

    harness.SUITES["bad"] = (bad, None)
    try:
        r = run_suite("bad", (1, 1), trials=2, seed=0)
        assert len(r.failures) == 2 and "boom" in r.failures[0].invariant
    finally:
        del harness.SUITES["bad"]
