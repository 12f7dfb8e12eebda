"""Measurable operators.

Two variants share the ``apply`` interface used by the weight update:

``projective(H)``
    A hermitian observable. Supports Born-rule sampling and expectation
    values; ``apply`` is the non-selective (Lüders) measurement map
    ``X -> sum_k P_k X P_k`` over its eigenspaces.
``sigmoid()``
    The elementwise logistic function on real parts.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import HERMITIAN_TOL, herm_eig
from .qstate import NORM_TOL, Ket

DEGENERACY_TOL = 1e-10


def sigmoid(z):
    return 1.0 / (1.0 + np.exp(-z))


def sigmoid_map(a):
    """Elementwise ``1 / (1 + exp(-Re a))``; accepts a matrix, vector or :class:`Ket`."""
    if isinstance(a, Ket):
        return Ket(sigmoid(a.amplitudes.real))
    return sigmoid(np.real(np.asarray(a)))


@dataclass(frozen=True)
class MeasurementOutcome:
    eigenvalue: float
    post_state: Ket
    probability: float


class MeasurableOperator:
    """Hermitian observable with its spectral decomposition cached."""

    kind = "projective"

    def __init__(self, matrix):
        matrix = np.array(matrix, dtype=complex)
        self.eigenvalues, self.eigenvectors = herm_eig(matrix)
        matrix.setflags(write=False)
        self.matrix = matrix
        self._groups = self._group_eigenvalues()

    @property
    def dim(self):
        return self.matrix.shape[0]

    def _group_eigenvalues(self):
        groups = []
        start = 0
        lam = self.eigenvalues
        for j in range(1, len(lam) + 1):
            if j == len(lam) or abs(lam[j] - lam[start]) > DEGENERACY_TOL:
                groups.append((float(np.mean(lam[start:j])), self.eigenvectors[:, start:j]))
                start = j
        return groups

    def projectors(self):
        return [(val, vecs @ vecs.conj().T) for val, vecs in self._groups]

    def _check(self, psi, need_normalized=True):
        if psi.dim != self.dim:
            raise DomainError(f"state dim {psi.dim} does not match operator dim {self.dim}")
        if need_normalized and abs(psi.norm() - 1.0) > NORM_TOL:
            raise DomainError("measurement needs a normalized state")

    def probabilities(self, psi):
        """Distinct eigenvalues and their Born probabilities."""
        self._check(psi)
        vals, probs = [], []
        for val, vecs in self._groups:
            amps = vecs.conj().T @ psi.amplitudes
            vals.append(val)
            probs.append(float(np.sum(np.abs(amps) ** 2)))
        return np.array(vals), np.array(probs)

    def apply(self, x):
        x = np.asarray(x)
        return sum(p @ x @ p for _, p in self.projectors())


def projective(h):
    return MeasurableOperator(h)


class SigmoidOperator:
    kind = "sigmoid"

    def apply(self, x):
        return sigmoid_map(x)


class IdentityOperator:
    """Leaves its argument untouched; exists so the update arithmetic can be tested in isolation."""

    kind = "identity"

    def apply(self, x):
        return np.real(np.asarray(x)).copy()


def sigmoid_operator():
    return SigmoidOperator()


def born_measure(op, psi, rng):
    """Sample one projective measurement of ``psi``.

    ``rng`` is a ``numpy.random.Generator`` owned by the caller.
    """
    vals, probs = op.probabilities(psi)
    cdf = np.cumsum(probs)
    k = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
    k = min(k, len(vals) - 1)
    vecs = op._groups[k][1]
    proj = vecs @ (vecs.conj().T @ psi.amplitudes)
    post = proj / np.linalg.norm(proj)
    return MeasurementOutcome(float(vals[k]), Ket(post, normalized=True), float(probs[k]))


def expectation(op, psi):
    """``<psi|M|psi>``; the imaginary residue is checked and dropped."""
    op._check(psi)
    val = np.vdot(psi.amplitudes, op.matrix @ psi.amplitudes)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise DomainError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


__all__ = [
    "MeasurableOperator",
    "MeasurementOutcome",
    "SigmoidOperator",
    "IdentityOperator",
    "born_measure",
    "expectation",
    "projective",
    "sigmoid",
    "sigmoid_map",
    "sigmoid_operator",
    "HERMITIAN_TOL",
]
