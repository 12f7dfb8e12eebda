"""Derivative-free training of a layered quantum-perceptron network.

Each layer ``l`` holds a real ``d x d`` weight matrix ``W_l``. One update
step works from a single snapshot of the network:

1. forward pass ``a^l = sigmoid(W_l a^(l-1))`` for every pair in the batch;
2. per-layer targets: the encoded label for the last layer, pulled back
   through the adjoints of the downstream unitarized layers for the others;
3. ``G_l = sum_i |t_i><a_i|``, its SVD ``G_l = U S V^H`` and the unitary
   perceptron ``F_l`` (``U V^H`` or ``U``), giving ``Y_i = F_l a_i``;
4. ``Delta_l`` is either the batch mean of ``|U Y_i><a_i|`` (interpretation
   ``"A"``) or ``F_l`` itself (interpretation ``"B"``);
5. ``W_l <- M(Delta_l - W_l)`` with ``M`` the network's measurable operator.

No step differentiates anything; the activation is only ever evaluated.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError
from .measure import IdentityOperator, MeasurableOperator, SigmoidOperator, sigmoid
from .qstate import Ket, basis_ket
from .tasks import INIT_STREAM, TRAIN_STREAM, IterationLog, rng_for
from .unitarize import MODES, unitarize

OPERATOR_MODES = ("sigmoid", "projective", "identity")
INTERPRETATIONS = ("A", "B")
SCORE_INDEX = 1
CUTOFF = 0.5


@dataclass(frozen=True, eq=False)
class LayeredNetwork:
    layers: tuple
    unitarize_mode: str = "uv"
    operator_mode: str = "sigmoid"
    interpretation: str = "A"
    observable: np.ndarray = None  # hermitian matrix, projective mode only
    normalize_inputs: bool = True

    def __post_init__(self):
        layers = tuple(np.array(w, dtype=float) for w in self.layers)
        if not layers:
            raise DomainError("a network needs at least one layer")
        d = layers[0].shape[0]
        for w in layers:
            if w.shape != (d, d):
                raise DomainError(f"all layers must be {d}x{d}, got {w.shape}")
            w.setflags(write=False)
        if self.unitarize_mode not in MODES:
            raise DomainError(f"unitarize_mode must be one of {MODES}")
        if self.operator_mode not in OPERATOR_MODES:
            raise DomainError(f"operator_mode must be one of {OPERATOR_MODES}")
        if self.interpretation not in INTERPRETATIONS:
            raise DomainError(f"interpretation must be one of {INTERPRETATIONS}")
        object.__setattr__(self, "layers", layers)
        if self.operator_mode == "projective":
            obs = np.diag(np.arange(d, dtype=float)) if self.observable is None else np.array(self.observable, dtype=float)
            if obs.shape != (d, d):
                raise DomainError(f"observable must be {d}x{d}")
            obs.setflags(write=False)
            object.__setattr__(self, "observable", obs)
        elif self.observable is not None:
            raise DomainError("an observable is only meaningful in projective mode")

    @property
    def width(self):
        return self.layers[0].shape[0]

    @property
    def depth(self):
        return len(self.layers)

    def operator(self):
        if self.operator_mode == "sigmoid":
            return SigmoidOperator()
        if self.operator_mode == "identity":
            return IdentityOperator()
        return MeasurableOperator(self.observable)

    def with_layers(self, layers):
        return LayeredNetwork(
            layers, self.unitarize_mode, self.operator_mode, self.interpretation, self.observable, self.normalize_inputs
        )

    def __eq__(self, other):
        if not isinstance(other, LayeredNetwork):
            return NotImplemented
        same_obs = (self.observable is None and other.observable is None) or (
            self.observable is not None
            and other.observable is not None
            and np.array_equal(self.observable, other.observable)
        )
        return (
            (self.unitarize_mode, self.operator_mode, self.interpretation, self.normalize_inputs)
            == (other.unitarize_mode, other.operator_mode, other.interpretation, other.normalize_inputs)
            and self.depth == other.depth
            and all(np.array_equal(a, b) for a, b in zip(self.layers, other.layers))
            and same_obs
        )


def init_network(width=3, depth=2, seed=0, **modes):
    """Weights uniform in (0, 1) from the seed's initialization stream."""
    rng = rng_for(seed, INIT_STREAM)
    layers = [rng.uniform(0.0, 1.0, size=(width, width)) for _ in range(depth)]
    return LayeredNetwork(tuple(layers), **modes)


def encode_input(bits, d=3, normalize=True):
    """Bias-augmented, zero-padded input ``[a, b, 1, 0, ...]``, by default
    scaled to unit length."""
    if d < 3:
        raise DomainError(f"input encoding needs width >= 3, got {d}")
    v = np.zeros(d)
    v[0], v[1], v[2] = bits[0], bits[1], 1.0
    if not normalize:
        return Ket(v)
    return Ket(v / np.linalg.norm(v), normalized=True)


def encode_label(y, d=3):
    if d < 2:
        raise DomainError(f"label encoding needs width >= 2, got {d}")
    return basis_ket(int(y), d)


def encode_pair(bits, y, d=3, normalize=True):
    return encode_input(bits, d, normalize), encode_label(y, d)


def _unitaries(net):
    return [unitarize(w, net.unitarize_mode).matrix.real for w in net.layers]


def _pullback(unitaries, label):
    targets = [label]
    for f in reversed(unitaries[1:]):
        targets.append(f.T @ targets[-1])
    return targets[::-1]


def layer_targets(net, pair):
    """Per-layer targets for an encoded ``(input, label)`` pair."""
    label = np.asarray(pair[1].amplitudes.real, dtype=float)
    return [Ket(t) for t in _pullback(_unitaries(net), label)]


def activations(net, x):
    """Forward pass; element ``l`` is the input to layer ``l`` (so the last
    element is the network output)."""
    acts = [np.asarray(x.amplitudes.real if isinstance(x, Ket) else x, dtype=float)]
    for w in net.layers:
        acts.append(sigmoid(w @ acts[-1]))
    return acts


def _layer_update(net, op, layer, acts, targets):
    a = np.array([ac[layer] for ac in acts])
    t = np.array([tg[layer] for tg in targets])
    g = t.T @ a
    r = linalg.svd(g)
    u = r.U.real
    f = u if net.unitarize_mode == "u" else (r.U @ r.V.conj().T).real
    if net.interpretation == "A":
        y_hat = a @ f.T
        delta = (y_hat @ u.T).T @ a / len(a)
    else:
        delta = f
    return np.real(op.apply(delta - net.layers[layer]))


def dfree_step(net, batch, order=None):
    """One update of every layer from the same pre-step snapshot.

    ``batch`` holds encoded ``(input, label)`` pairs. ``order`` only changes
    the sequence in which layers are visited; the result does not depend on it.
    """
    batch = list(batch)
    if not batch:
        raise DomainError("dfree_step needs a nonempty batch")
    op = net.operator()
    unitaries = _unitaries(net)
    acts = [activations(net, x) for x, _ in batch]
    targets = [_pullback(unitaries, np.asarray(y.amplitudes.real, dtype=float)) for _, y in batch]
    order = range(net.depth) if order is None else order
    new = [None] * net.depth
    for layer in order:
        new[layer] = _layer_update(net, op, layer, acts, targets)
    return net.with_layers(new)


def score(net, bits):
    x = encode_input(bits, net.width, net.normalize_inputs)
    return float(activations(net, x)[-1][SCORE_INDEX])


def classify(score_value):
    return 1 if score_value >= CUTOFF else 0


def predict(net, bits):
    return classify(score(net, bits))


def mean_error(score_fn, sampler):
    rows = sampler.support()
    return float(np.mean([abs(score_fn(bits) - y) for bits, y in rows]))


def train(net, sampler, iters, seed):
    """Run ``iters`` single-pair updates; returns the final network and its log.

    Every iteration draws a training pair, updates, then scores a freshly
    drawn test pair. ``loss`` is the mean L1 error over the task's whole
    truth table.
    """
    if iters < 0:
        raise DomainError("iters must be nonnegative")
    rng = rng_for(seed, TRAIN_STREAM)
    log = IterationLog()
    d = net.width
    for _ in range(iters):
        bits, y = sampler.draw(rng)
        net = dfree_step(net, [encode_pair(bits, y, d, net.normalize_inputs)])
        test_bits, test_y = sampler.draw(rng)
        s_train = score(net, bits)
        s_test = score(net, test_bits)
        log.append(
            abs(s_train - y),
            abs(s_test - test_y),
            mean_error(lambda b: score(net, b), sampler),
            classify(s_test) == test_y,
        )
    return net, log
