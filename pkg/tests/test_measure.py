import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qperceptron.errors import DomainError
from qperceptron.measure import born_measure, expectation, projective, sigmoid_map
from qperceptron.qstate import basis_ket, ket, normalize

from oracles import random_complex, sigmoid_loops

Z = np.diag([1.0, -1.0])
PLUS = ket(np.array([1.0, 1.0]) / np.sqrt(2), normalized=True)


def random_state(rng, n):
    return normalize(ket(random_complex(rng, n)))


def random_hermitian(rng, n):
    a = random_complex(rng, n, n)
    return a + a.conj().T


seeds = st.integers(0, 2**32 - 1)


class TestBornMeasure:
    def test_eigenstate_is_certain(self, rng):
        out = born_measure(projective(Z), basis_ket(0, 2), rng)
        assert out.eigenvalue == 1.0 and out.probability == 1.0
        np.testing.assert_allclose(out.post_state.amplitudes, [1, 0])

    def test_plus_state_probabilities(self):
        vals, probs = projective(Z).probabilities(PLUS)
        np.testing.assert_allclose(vals, [1, -1])
        np.testing.assert_allclose(probs, [0.5, 0.5], atol=1e-15)

    def test_empirical_frequencies(self):
        op = projective(Z)
        gen = np.random.default_rng(7)
        draws = np.array([born_measure(op, PLUS, gen).eigenvalue for _ in range(100_000)])
        freq_up = np.mean(draws == 1.0)
        assert abs(freq_up - 0.5) <= 0.01 and abs((1 - freq_up) - 0.5) <= 0.01

    def test_seed_determinism(self):
        op = projective(random_hermitian(np.random.default_rng(1), 4))
        psi = random_state(np.random.default_rng(2), 4)
        a = [born_measure(op, psi, np.random.default_rng(9)).eigenvalue for _ in range(3)]
        b = [born_measure(op, psi, np.random.default_rng(9)).eigenvalue for _ in range(3)]
        assert a == b

    def test_degenerate_eigenspace_grouped(self):
        op = projective(np.diag([1.0, 1.0, -1.0]))
        psi = ket(np.array([1.0, 1.0, 1.0]) / np.sqrt(3), normalized=True)
        vals, probs = op.probabilities(psi)
        np.testing.assert_allclose(vals, [1, -1])
        np.testing.assert_allclose(probs, [2 / 3, 1 / 3])
        out = born_measure(op, psi, np.random.default_rng(0))
        if out.eigenvalue == 1.0:
            np.testing.assert_allclose(out.post_state.amplitudes, [1 / np.sqrt(2), 1 / np.sqrt(2), 0])

    def test_unnormalized_rejected(self, rng):
        with pytest.raises(DomainError):
            born_measure(projective(Z), ket([1.0, 1.0]), rng)

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_probabilities_sum_to_one(self, seed):
        g = np.random.default_rng(seed)
        _, probs = projective(random_hermitian(g, 4)).probabilities(random_state(g, 4))
        assert abs(probs.sum() - 1) <= 1e-10
        assert np.all((probs >= 0) & (probs <= 1 + 1e-12))

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_repeated_measurement_is_stable(self, seed):
        g = np.random.default_rng(seed)
        op = projective(random_hermitian(g, 4))
        first = born_measure(op, random_state(g, 4), g)
        assert abs(first.post_state.norm() - 1) <= 1e-12
        for _ in range(5):
            again = born_measure(op, first.post_state, g)
            assert again.eigenvalue == first.eigenvalue
            assert abs(again.probability - 1) <= 1e-10


class TestExpectation:
    def test_basis_states(self):
        assert expectation(projective(Z), basis_ket(0, 2)) == 1
        assert expectation(projective(Z), basis_ket(1, 2)) == -1

    def test_matches_spectral_sum(self, rng):
        op = projective(random_hermitian(rng, 5))
        psi = random_state(rng, 5)
        spectral = sum(lam * abs(np.vdot(op.eigenvectors[:, k], psi.amplitudes)) ** 2 for k, lam in enumerate(op.eigenvalues))
        assert abs(expectation(op, psi) - spectral) <= 1e-10

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_within_spectrum(self, seed):
        g = np.random.default_rng(seed)
        op = projective(random_hermitian(g, 4))
        e = expectation(op, random_state(g, 4))
        assert op.eigenvalues.min() - 1e-12 <= e <= op.eigenvalues.max() + 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            expectation(projective(Z), basis_ket(0, 3))


def test_non_hermitian_operator_rejected():
    with pytest.raises(DomainError):
        projective(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestSigmoidMap:
    def test_known_values(self):
        assert sigmoid_map(np.array([0.0]))[0] == 0.5
        assert abs(sigmoid_map(np.array([4.0]))[0] - 1 / (1 + np.exp(-4.0))) < 1e-16
        assert abs(sigmoid_map(np.array([4.0]))[0] - 0.9820137900379085) < 1e-15

    def test_matches_loop_oracle(self, rng):
        a = random_complex(rng, 3, 4)
        assert np.max(np.abs(sigmoid_map(a) - sigmoid_loops(a))) <= 1e-15

    def test_discards_imaginary_part(self):
        np.testing.assert_array_equal(sigmoid_map(np.array([3j])), [0.5])

    def test_ket_input(self):
        out = sigmoid_map(ket([0.0, 0.0]))
        np.testing.assert_array_equal(out.amplitudes, [0.5, 0.5])

    @given(st.lists(st.floats(-30, 30), min_size=1, max_size=20))
    def test_open_unit_interval(self, xs):
        out = sigmoid_map(np.array(xs))
        assert np.all((out > 0) & (out < 1))


def test_luders_map_keeps_eigenbasis_blocks():
    op = projective(np.diag([1.0, 1.0, -1.0]))
    x = np.arange(9.0).reshape(3, 3)
    expected = x.copy()
    expected[:2, 2] = 0
    expected[2, :2] = 0
    np.testing.assert_allclose(op.apply(x), expected, atol=1e-15)
