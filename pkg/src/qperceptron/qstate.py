"""Complex state vectors: kets, bras, inner, outer and tensor products.

Matrices are plain 2-D ``numpy`` arrays of ``complex128`` (or ``float64``
where a pipeline stays real). The inner product is conjugate-linear in its
first argument, as in bra-ket notation: ``inner(a, b) = <a|b>``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class Ket:
    """Immutable column state vector.

    ``normalized`` is only ever set by :func:`normalize` (or an explicit
    constructor argument that is checked); no operation renormalizes behind
    the caller's back.
    """

    amplitudes: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size < 1:
            raise DomainError("a ket needs at least one amplitude")
        if self.normalized and abs(np.linalg.norm(amps) - 1.0) > NORM_TOL:
            raise DomainError("ket flagged normalized but its norm is not 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self):
        return self.amplitudes.size

    @property
    def bra(self):
        """Conjugate row view ``<psi|``."""
        return self.amplitudes.conj()

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, Ket):
            return NotImplemented
        return self.normalized == other.normalized and np.array_equal(
            self.amplitudes, other.amplitudes
        )

    def __hash__(self):
        return hash((self.amplitudes.tobytes(), self.normalized))


def ket(values, normalized=False):
    return Ket(np.asarray(values), normalized=normalized)


def basis_ket(index, dim):
    """One-hot ket ``|index>`` in a ``dim``-dimensional space."""
    if dim < 1:
        raise DomainError(f"dim must be positive, got {dim}")
    if not 0 <= index < dim:
        raise DomainError(f"basis index {index} out of range for dim {dim}")
    amps = np.zeros(dim, dtype=complex)
    amps[index] = 1.0
    return Ket(amps, normalized=True)


def normalize(k):
    n = k.norm()
    if n == 0.0:
        raise DomainError("cannot normalize the zero ket")
    return Ket(k.amplitudes / n, normalized=True)


def tensor(a, b):
    """Kronecker product; entry ``i*dim(b) + j`` is ``a_i * b_j``."""
    out = np.outer(a.amplitudes, b.amplitudes).reshape(-1)
    return Ket(out)


def outer(y, x):
    """``|y><x|`` as a ``dim(y) x dim(x)`` matrix."""
    return np.outer(y.amplitudes, x.amplitudes.conj())


def inner(a, b):
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def apply(matrix, k):
    """Matrix-vector product returning a fresh (unflagged) ket."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[1] != k.dim:
        raise DomainError(f"cannot apply {matrix.shape} matrix to dim-{k.dim} ket")
    return Ket(matrix @ k.amplitudes)
