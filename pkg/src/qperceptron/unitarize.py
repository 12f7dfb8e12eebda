"""Unitary perceptron maps built from training pairs.

The weight matrix is the sum of outer products ``|y_i><x_i|``. It is
generally not unitary, so it is replaced by a unitary built from its SVD:

* ``"uv"`` (default): ``U V^H``, i.e. the singular values set to one.
* ``"u"``: the left singular factor ``U`` on its own.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError
from .linalg import UnitaryMap, certify
from .qstate import Ket, outer

MODES = ("uv", "u")

__all__ = ["TrainingPair", "UnitaryMap", "accumulate", "unitarize", "forward", "MODES"]


@dataclass(frozen=True)
class TrainingPair:
    input: Ket
    label: Ket


def accumulate(pairs):
    """Sum of ``|label><input|`` over the dataset."""
    pairs = list(pairs)
    if not pairs:
        raise DomainError("cannot accumulate an empty dataset")
    din, dout = pairs[0].input.dim, pairs[0].label.dim
    total = np.zeros((dout, din), dtype=complex)
    for p in pairs:
        if p.input.dim != din or p.label.dim != dout:
            raise DomainError("training pairs must share input and label dimensions")
        total += outer(p.label, p.input)
    return total


def unitarize(w_hat, mode="uv"):
    if mode not in MODES:
        raise DomainError(f"unknown unitarize mode {mode!r}; expected one of {MODES}")
    w_hat = np.asarray(w_hat)
    if w_hat.ndim != 2 or w_hat.shape[0] != w_hat.shape[1]:
        raise DomainError(f"only square weight matrices can be unitarized, got {w_hat.shape}")
    r = linalg.svd(w_hat)
    if mode == "u":
        return certify(r.U)
    return certify(r.U @ r.V.conj().T)


def forward(f_hat, x):
    """Perceptron output ``F x``."""
    if not f_hat.certified:
        raise DomainError("forward needs a certified unitary map")
    if x.dim != f_hat.dim:
        raise DomainError(f"input dim {x.dim} does not match map dim {f_hat.dim}")
    return Ket(f_hat.matrix @ x.amplitudes)
