"""Markov chains driven by unitary amplitudes, and neuron dynamics.

Transition convention: ``T[i, j] = |u_ij|^2`` is the probability of moving
TO state ``i`` FROM state ``j``, so columns of ``T`` are the conditional
distributions. Unitarity makes ``T`` doubly stochastic, so rows sum to one
as well.

The classical chain simulator draws from a seeded generator; physical
measurement randomness is not something a classical program can provide.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError
from .measure import sigmoid

MAX_STEPS = 10**6
RANDOMNESS_NOTE = "classical emulation: transitions drawn from a seeded pseudo-random generator"


@dataclass(frozen=True)
class TransitionMatrix:
    entries: np.ndarray

    @property
    def n(self):
        return self.entries.shape[0]

    def column(self, j):
        return self.entries[:, j]


def transition_matrix(u):
    if not getattr(u, "certified", False):
        raise DomainError("transition matrices are only defined for certified unitaries")
    t = np.abs(u.matrix) ** 2
    t.setflags(write=False)
    return TransitionMatrix(t)


def simulate_chain(u, start, steps, seed):
    """Trajectory of ``steps + 1`` state indices beginning at ``start``.

    ``seed`` is an integer or an existing ``numpy.random.Generator``.
    """
    t = transition_matrix(u)
    if not 0 <= start < t.n:
        raise DomainError(f"start state {start} out of range for dimension {t.n}")
    if steps < 0:
        raise DomainError("steps must be nonnegative")
    rng = np.random.default_rng(seed)
    cdfs = np.cumsum(t.entries, axis=0)
    path = [start]
    state = start
    for _ in range(steps):
        cdf = cdfs[:, state]
        nxt = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
        state = min(nxt, t.n - 1)
        path.append(state)
    return path


@dataclass(frozen=True)
class DynamicsState:
    z: np.ndarray
    tau: np.ndarray
    w: np.ndarray
    h: float

    def __post_init__(self):
        z = np.array(self.z, dtype=float).reshape(-1)
        tau = np.broadcast_to(np.asarray(self.tau, dtype=float), z.shape).copy()
        w = np.array(self.w, dtype=float)
        if w.shape != (z.size, z.size):
            raise DomainError(f"coupling matrix must be {z.size}x{z.size}, got {w.shape}")
        if np.any(tau <= 0):
            raise DomainError("time constants must be positive")
        if not self.h > 0:
            raise DomainError("step size must be positive")
        for name, val in (("z", z), ("tau", tau), ("w", w)):
            val.setflags(write=False)
            object.__setattr__(self, name, val)


def integrate_zw(state, steps):
    """Explicit Euler for ``tau dZ/dt = -Z + sigmoid(W Z)``.

    Returns an array of shape ``(steps + 1, n)`` whose first row is ``Z0``.
    """
    if not 0 <= steps <= MAX_STEPS:
        raise DomainError(f"steps must lie in [0, {MAX_STEPS}]")
    ratio = state.h / state.tau
    out = np.empty((steps + 1, state.z.size))
    z = state.z.copy()
    out[0] = z
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, steps + 1):
            z = z + ratio * (-z + sigmoid(state.w @ z))
            if not np.all(np.isfinite(z)):
                raise NumericError(f"non-finite activation at step {k}", step=k)
            out[k] = z
    return out
