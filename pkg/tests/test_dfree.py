import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qperceptron import dfree
from qperceptron.dfree import (
    LayeredNetwork,
    dfree_step,
    encode_input,
    encode_label,
    encode_pair,
    init_network,
    layer_targets,
    predict,
    train,
)
from qperceptron.errors import DomainError
from qperceptron.qstate import ket
from qperceptron.tasks import XOR



def sig(z):
    return 1.0 / (1.0 + np.exp(-z))


class TestEncoding:
    def test_inputs(self):
        np.testing.assert_allclose(encode_input((0, 0), 3).amplitudes, [0, 0, 1])
        np.testing.assert_allclose(encode_input((1, 1), 3).amplitudes, np.ones(3) / np.sqrt(3))
        np.testing.assert_allclose(encode_input((1, 0), 4).amplitudes, [1 / np.sqrt(2), 0, 1 / np.sqrt(2), 0])

    def test_unnormalized_option(self):
        k = encode_input((1, 1), 3, normalize=False)
        np.testing.assert_array_equal(k.amplitudes, [1, 1, 1])
        assert not k.normalized

    def test_labels(self):
        np.testing.assert_array_equal(encode_label(0, 3).amplitudes, [1, 0, 0])
        np.testing.assert_array_equal(encode_label(1, 3).amplitudes, [0, 1, 0])
        np.testing.assert_array_equal(encode_label(1, 4).amplitudes, [0, 1, 0, 0])

    def test_width_limits(self):
        with pytest.raises(DomainError):
            encode_input((0, 1), 2)
        with pytest.raises(DomainError):
            encode_label(1, 1)


class TestLayerTargets:
    def test_single_layer(self):
        net = init_network(3, 1, seed=0)
        x, y = encode_pair((0, 1), 1)
        (t,) = layer_targets(net, (x, y))
        np.testing.assert_array_equal(t.amplitudes, y.amplitudes)

    def test_identity_downstream(self):
        net = LayeredNetwork((np.full((3, 3), 0.3), np.diag([2.0, 1.0, 0.5]), np.eye(3)))
        x, y = encode_pair((1, 0), 1)
        for t in layer_targets(net, (x, y)):
            np.testing.assert_allclose(t.amplitudes, y.amplitudes, atol=1e-15)

    def test_permutation_pullback(self):
        # perm sends e0 -> e1 -> e2 -> e0; pulling e1 back must give e0
        perm = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=float)
        net = LayeredNetwork((np.eye(3), perm))
        t1, t2 = layer_targets(net, encode_pair((0, 1), 1))
        np.testing.assert_allclose(t1.amplitudes, [1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(t2.amplitudes, [0, 1, 0])


def single_layer_delta(net, batch):
    """Delta for a one-layer net: with identity M and W_old = 0 the step returns Delta."""
    probe = LayeredNetwork((np.zeros_like(net.layers[0]),), net.unitarize_mode, "identity", net.interpretation)
    return dfree_step(probe, batch).layers[0]


class TestStep:
    def test_hand_trace_two_dim(self):
        # x = (0.6, 0.8), label |1>, W_old = I, mode uv, interpretation A.
        # G = |1><x| has one singular triple (1, e1, x); U = [e1, e0] after
        # null completion, F x = e1, U e1 = e0, so Delta = |e0><x| and
        # W_new = sigmoid([[0.6 - 1, 0.8], [0, -1]]).
        x = ket([0.6, 0.8])
        y = ket([0.0, 1.0])
        net = LayeredNetwork((np.eye(2),))
        got = dfree_step(net, [(x, y)]).layers[0]
        expected = np.array([[sig(-0.4), sig(0.8)], [0.5, sig(-1.0)]])
        assert np.max(np.abs(got - expected)) <= 1e-15

    def test_identity_operator_zero_update(self):
        batch = [encode_pair((1, 0), 1), encode_pair((1, 1), 0)]
        base = LayeredNetwork((np.zeros((3, 3)),), operator_mode="identity")
        delta = single_layer_delta(base, batch)
        net = LayeredNetwork((delta,), operator_mode="identity")
        np.testing.assert_allclose(dfree_step(net, batch).layers[0], 0, atol=1e-15)

    @pytest.mark.parametrize("interp", ["A", "B"])
    def test_sigmoid_of_zero(self, interp):
        batch = [encode_pair((0, 1), 1)]
        delta = single_layer_delta(LayeredNetwork((np.zeros((3, 3)),), interpretation=interp), batch)
        net = LayeredNetwork((delta,), interpretation=interp)
        np.testing.assert_allclose(dfree_step(net, batch).layers[0], 0.5, atol=1e-15)

    @pytest.mark.parametrize("interp,mode", [("A", "uv"), ("A", "u"), ("B", "uv"), ("B", "u")])
    def test_fixed_point_is_stationary(self, interp, mode):
        batch = [encode_pair(bits, y) for bits, y in XOR.support()]
        template = LayeredNetwork((np.zeros((3, 3)),), mode, "sigmoid", interp)
        delta = single_layer_delta(template, batch)
        w = np.full((3, 3), 0.5)
        for _ in range(200):  # contraction with factor <= 1/4
            w = sig(delta - w)
        net = template.with_layers([w])
        assert np.max(np.abs(dfree_step(net, batch).layers[0] - w)) <= 1e-12

    def test_layer_order_irrelevant(self):
        net = init_network(3, 4, seed=5, interpretation="A")
        batch = [encode_pair((1, 1), 0), encode_pair((0, 1), 1)]
        ref = dfree_step(net, batch)
        for order in ([3, 2, 1, 0], [2, 0, 3, 1]):
            assert dfree_step(net, batch, order=order) == ref

    def test_empty_batch(self):
        with pytest.raises(DomainError):
            dfree_step(init_network(), [])

    @given(st.integers(0, 10_000), st.sampled_from(["A", "B"]), st.sampled_from(["uv", "u"]), st.integers(1, 3))
    @settings(max_examples=25, deadline=None)
    def test_sigmoid_mode_weights_in_open_unit_interval(self, seed, interp, mode, depth):
        net = init_network(3, depth, seed, interpretation=interp, unitarize_mode=mode)
        g = np.random.default_rng(seed)
        for _ in range(3):
            bits, y = XOR.draw(g)
            net = dfree_step(net, [encode_pair(bits, y)])
            for w in net.layers:
                assert np.all(np.isfinite(w)) and np.all((w > 0) & (w < 1))

    def test_projective_mode_runs_real(self):
        net = init_network(3, 2, seed=1, operator_mode="projective")
        out = dfree_step(net, [encode_pair((1, 0), 1)])
        for w in out.layers:
            assert w.dtype == float and np.all(np.isfinite(w))


def test_no_derivative_hook():
    names = [n.lower() for n in dir(dfree)]
    assert not [n for n in names if "grad" in n or "deriv" in n or "backward" in n]


class TestPredict:
    @pytest.mark.parametrize("score,label", [(0.49, 0), (0.51, 1), (0.5, 1)])
    def test_cutoff(self, score, label):
        assert dfree.classify(score) == label

    def test_exact_half_from_network(self):
        w = np.zeros((3, 3))
        assert dfree.score(LayeredNetwork((w,)), (1, 0)) == 0.5
        assert predict(LayeredNetwork((w,)), (1, 0)) == 1

    def test_below_cutoff_from_network(self):
        w = np.zeros((3, 3))
        w[1, 2] = -1.0  # score = sigmoid(-bias entry) < 0.5
        assert predict(LayeredNetwork((w,)), (0, 0)) == 0


class TestTrain:
    def test_zero_iterations(self):
        net = init_network(seed=3)
        out, log = train(net, XOR, 0, seed=3)
        assert out == net and len(log) == 0

    def test_deterministic(self):
        a = train(init_network(seed=4), XOR, 15, seed=4)
        b = train(init_network(seed=4), XOR, 15, seed=4)
        assert a[0] == b[0]
        assert a[1].records == b[1].records

    def test_log_shape(self):
        _, log = train(init_network(seed=2), XOR, 12, seed=2)
        assert [r.iteration for r in log] == list(range(1, 13))
        for r in log:
            assert r.accuracy in (0, 1) and r.loss >= 0

    def test_negative_iters(self):
        with pytest.raises(DomainError):
            train(init_network(), XOR, -1, seed=0)


def test_network_validation():
    with pytest.raises(DomainError):
        LayeredNetwork((np.eye(3), np.eye(2)))
    with pytest.raises(DomainError):
        LayeredNetwork((np.eye(3),), operator_mode="sigmoid", observable=np.eye(3))
    with pytest.raises(DomainError):
        LayeredNetwork((np.eye(3),), interpretation="C")
    with pytest.raises(DomainError):
        LayeredNetwork(())
