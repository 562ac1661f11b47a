import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgauss import (
    DomainError,
    EvaluationError,
    Interval,
    TruncationError,
    TruncationPolicy,
    gauss_kernel,
    indicator_measure,
    jackson_integral,
    q_derivative,
    q_measure,
    q_measure_union,
)

TIGHT = TruncationPolicy(abs_tol=1e-14)


def brute_measure(q, a, b, nodes=4000):
    """Count Jackson nodes of 1_[a,b] by plain enumeration (no early exit)."""
    inside = lambda x: a <= x <= b
    return (1 - q) * sum(q**n * (b * inside(q**n * b) - a * inside(q**n * a)) for n in range(nodes))


def exit_index(q, a, b):
    return next(l for l in range(10_000) if q**l * b < a)


FUNCS = {
    "one": lambda x: 1.0,
    "x": lambda x: x,
    "x2": lambda x: x * x,
}


def J(f, q, a, b):
    return jackson_integral(f, q, (a, b), TIGHT)


class TestExamples:
    def test_q0_closed_form(self):
        assert jackson_integral(lambda x: x * x, 0.0, Interval(1.0, 2.0)) == 7.0

    def test_identity_half(self):
        assert jackson_integral(lambda x: x, 0.5, (0.0, 1.0)) == pytest.approx(2 / 3, abs=1e-12)

    @pytest.mark.parametrize("q", [0.0, 0.4, 0.9])
    def test_constant(self, q):
        assert jackson_integral(lambda x: 1.0, q, (0.0, 2.5)) == pytest.approx(2.5, abs=1e-12)

    def test_monomial_moments(self):
        # int_0^1 x^k d_q x = 1 / [k+1]_q
        q = 0.6
        for k in range(6):
            expected = (1 - q) / (1 - q ** (k + 1))
            assert J(lambda x: x**k, q, 0.0, 1.0) == pytest.approx(expected, abs=1e-13)

    def test_zero_limit_not_sampled(self):
        seen = []
        jackson_integral(lambda x: seen.append(x) or 1.0, 0.5, (0.0, 1.0))
        assert 0.0 not in seen

    def test_nonfinite_integrand(self):
        with pytest.raises(EvaluationError):
            jackson_integral(lambda x: math.inf if x == 0.5 else 1.0, 0.5, (0.0, 1.0))

    def test_term_budget(self):
        with pytest.raises(TruncationError):
            jackson_integral(lambda x: 1.0, 0.99, (0.0, 1.0), TruncationPolicy(max_terms=50))


PROP_QS = [0.3, 0.7]
bounds = st.floats(-2, 2, allow_nan=False)


@pytest.mark.parametrize("q", PROP_QS)
@pytest.mark.parametrize("name", sorted(FUNCS) + ["kernel"])
class TestJacksonIdentities:
    @staticmethod
    def f(name, q):
        return FUNCS.get(name) or (lambda x: gauss_kernel(q, x))

    @settings(max_examples=15, deadline=None)
    @given(b=bounds)
    def test_zero_to_b(self, q, name, b):
        f = self.f(name, q)
        direct = (1 - q) * b * sum(q**n * f(q**n * b) for n in range(400))
        assert J(f, q, 0.0, b) == pytest.approx(direct, abs=1e-12)

    @settings(max_examples=15, deadline=None)
    @given(a=bounds, b=bounds)
    def test_antisymmetry(self, q, name, a, b):
        f = self.f(name, q)
        assert J(f, q, a, b) == -J(f, q, b, a)

    @settings(max_examples=15, deadline=None)
    @given(a=bounds, b=bounds, c=st.floats(0.1, 2))
    def test_scaling(self, q, name, a, b, c):
        f = self.f(name, q)
        assert J(f, q, a * c, b * c) == pytest.approx(c * J(lambda x: f(c * x), q, a, b), abs=1e-12)

    @settings(max_examples=15, deadline=None)
    @given(b=bounds)
    def test_reflection(self, q, name, b):
        f = self.f(name, q)
        assert J(f, q, -b, 0.0) == pytest.approx(J(lambda x: f(-x), q, 0.0, b), abs=1e-12)

    @settings(max_examples=15, deadline=None)
    @given(a=bounds, b=bounds, c=bounds)
    def test_additivity(self, q, name, a, b, c):
        f = self.f(name, q)
        assert J(f, q, a, c) == pytest.approx(J(f, q, a, b) + J(f, q, b, c), abs=1e-12)

    @settings(max_examples=15, deadline=None)
    @given(b=bounds)
    def test_symmetrization(self, q, name, b):
        f = self.f(name, q)
        assert J(f, q, -b, b) == pytest.approx(J(lambda x: f(x) + f(-x), q, 0.0, b), abs=1e-12)


@pytest.mark.parametrize("q", [0.3, 0.7])
def test_fundamental_theorem(q):
    f = lambda u: gauss_kernel(q, u) * (1 + u)
    running = lambda t: jackson_integral(f, q, (0.0, t))
    for x in np.linspace(-1.8, 1.8, 50):
        assert q_derivative(running, q, x) == pytest.approx(f(x), abs=1e-9)


class TestMeasure:
    def test_q0_is_length(self):
        assert q_measure(0.0, (0.3, 1.7)) == 1.7 - 0.3

    @pytest.mark.parametrize("q", [0.2, 0.9])
    def test_from_zero(self, q):
        assert q_measure(q, (0.0, 1.3)) == 1.3
        assert indicator_measure(q, (0.0, 1.3)) == pytest.approx(1.3, abs=1e-12)

    def test_example(self):
        assert exit_index(0.5, 0.3, 1.0) == 2
        assert brute_measure(0.5, 0.3, 1.0) == pytest.approx(0.6, abs=1e-15)
        assert q_measure(0.5, (0.3, 1.0)) == pytest.approx(0.6, abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            q_measure(0.5, (-0.1, 1.0))
        with pytest.raises(DomainError):
            q_measure(0.5, (1.0, 0.5))

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_against_brute_force(self, q):
        rng = np.random.default_rng(7)
        for _ in range(100):
            a, b = np.sort(rng.uniform(1e-3, 2, size=2))
            assert q_measure(q, (a, b)) == pytest.approx(brute_measure(q, a, b), abs=1e-12)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_scaling(self, q):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a, b = np.sort(rng.uniform(1e-3, 2, size=2))
            c = rng.uniform(0.1, 5)
            assert q_measure(q, (c * a, c * b)) == pytest.approx(c * q_measure(q, (a, b)), abs=1e-12)

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_union_additivity(self, q):
        rng = np.random.default_rng(13)
        for _ in range(50):
            a, b, c, d = np.sort(rng.uniform(1e-3, 2, size=4))
            union = q_measure_union(q, [(c, d), (a, b)])
            assert union == pytest.approx(q_measure(q, (a, b)) + q_measure(q, (c, d)), abs=1e-12)

    def test_union_rejects_overlap(self):
        with pytest.raises(DomainError):
            q_measure_union(0.5, [(0.1, 0.5), (0.4, 0.9)])

    def test_hull_reading_is_not_additive(self):
        # integrating 1_A over the hull [a, d] also counts nodes q^n d that land in [a, b]
        q, (a, b, c, d) = 0.5, (0.2, 0.5, 0.9, 1.1)
        A = lambda x: float(a <= x <= b or c <= x <= d)
        hull = jackson_integral(A, q, (a, d))
        assert abs(hull - (q_measure(q, (a, b)) + q_measure(q, (c, d)))) > 1e-3

    @pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
    def test_translation_when_exit_index_is_stable(self, q):
        rng = np.random.default_rng(17)
        checked = 0
        for _ in range(300):
            a, b = np.sort(rng.uniform(0.05, 2, size=2))
            c = rng.uniform(-0.04, 0.5)
            l = exit_index(q, a, b)
            if exit_index(q, a + c, b + c) != l:
                continue
            checked += 1
            shifted = brute_measure(q, a + c, b + c)
            assert shifted == pytest.approx(brute_measure(q, a, b) + c * (q - q**l), abs=1e-12)
        assert checked > 20
