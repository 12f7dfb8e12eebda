"""Classical sigmoid MLP trained by backpropagation on an L1 loss.

Inputs are raw bits. Each layer computes ``a = sigmoid(W a_prev + b)`` and
the network output is the single component of the last activation.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .measure import sigmoid
from .tasks import INIT_STREAM, TRAIN_STREAM, IterationLog, rng_for

CUTOFF = 0.5


@dataclass(frozen=True, eq=False)
class MlpParams:
    weights: tuple
    biases: tuple

    def __post_init__(self):
        ws = tuple(np.array(w, dtype=float) for w in self.weights)
        bs = tuple(np.array(b, dtype=float).reshape(-1) for b in self.biases)
        if len(ws) != len(bs) or not ws:
            raise DomainError("need one bias vector per weight matrix")
        for i, (w, b) in enumerate(zip(ws, bs)):
            if w.ndim != 2 or b.shape != (w.shape[0],):
                raise DomainError(f"layer {i}: weight {w.shape} and bias {b.shape} do not fit")
            if i and w.shape[1] != ws[i - 1].shape[0]:
                raise DomainError(f"layer {i} expects {w.shape[1]} inputs, previous layer gives {ws[i - 1].shape[0]}")
        for a in ws + bs:
            a.setflags(write=False)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "biases", bs)

    @property
    def widths(self):
        return (self.weights[0].shape[1],) + tuple(w.shape[0] for w in self.weights)

    def __eq__(self, other):
        if not isinstance(other, MlpParams):
            return NotImplemented
        return len(self.weights) == len(other.weights) and all(
            np.array_equal(a, b)
            for a, b in zip(self.weights + self.biases, other.weights + other.biases)
        )


def init_params(widths=(2, 2, 1), seed=0):
    """Weights and biases uniform in (-1, 1)."""
    rng = rng_for(seed, INIT_STREAM)
    ws, bs = [], []
    for n_in, n_out in zip(widths[:-1], widths[1:]):
        ws.append(rng.uniform(-1.0, 1.0, size=(n_out, n_in)))
        bs.append(rng.uniform(-1.0, 1.0, size=n_out))
    return MlpParams(tuple(ws), tuple(bs))


def mlp_forward(params, x):
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape[0] != params.widths[0]:
        raise DomainError(f"input has {x.shape[0]} entries, network expects {params.widths[0]}")
    acts = [x]
    for w, b in zip(params.weights, params.biases):
        acts.append(sigmoid(w @ acts[-1] + b))
    return acts, float(acts[-1][0])


def mlp_grad(params, x, y):
    """Gradient of ``|output - y|``; returns ``(weight_grads, bias_grads)``.

    The subgradient at ``output == y`` is taken as zero.
    """
    acts, out = mlp_forward(params, x)
    delta = np.array([np.sign(out - y)]) * acts[-1] * (1.0 - acts[-1])
    gw = [None] * len(params.weights)
    gb = [None] * len(params.weights)
    for layer in range(len(params.weights) - 1, -1, -1):
        gw[layer] = np.outer(delta, acts[layer])
        gb[layer] = delta.copy()
        if layer:
            a = acts[layer]
            delta = (params.weights[layer].T @ delta) * a * (1.0 - a)
    return gw, gb


def sgd_step(params, x, y, lr):
    gw, gb = mlp_grad(params, x, y)
    return MlpParams(
        tuple(w - lr * g for w, g in zip(params.weights, gw)),
        tuple(b - lr * g for b, g in zip(params.biases, gb)),
    )


def predict(params, bits):
    return 1 if mlp_forward(params, bits)[1] >= CUTOFF else 0


def sgd_train(params, sampler, iters, lr=0.5, seed=0):
    """Single-sample SGD with the same logging protocol as the derivative-free trainer."""
    if not lr >= 0:
        raise DomainError("learning rate must be nonnegative")
    if iters < 0:
        raise DomainError("iters must be nonnegative")
    rng = rng_for(seed, TRAIN_STREAM)
    log = IterationLog()
    for _ in range(iters):
        bits, y = sampler.draw(rng)
        params = sgd_step(params, bits, y, lr)
        test_bits, test_y = sampler.draw(rng)
        out_train = mlp_forward(params, bits)[1]
        out_test = mlp_forward(params, test_bits)[1]
        loss = np.mean([abs(mlp_forward(params, b)[1] - t) for b, t in sampler.support()])
        log.append(abs(out_train - y), abs(out_test - test_y), loss, (out_test >= CUTOFF) == test_y)
    return params, log
