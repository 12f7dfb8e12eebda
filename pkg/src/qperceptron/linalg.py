"""Dense complex factorizations for small matrices.

One-sided (Hestenes) Jacobi for the SVD and cyclic Jacobi for hermitian
eigenproblems. Both are deterministic, need nothing beyond elementwise numpy,
and are accurate to a few ulps at the sizes used here (d <= 32).

Phase convention for singular and eigen vectors: the largest-magnitude
component (first one on ties) is made real and positive.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError

MAX_SWEEPS = 100
OFF_TOL = 1e-13
UNITARY_TOL = 1e-10
HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class SvdResult:
    U: np.ndarray
    singular_values: np.ndarray
    V: np.ndarray

    def reconstruct(self):
        return (self.U * self.singular_values) @ self.V.conj().T


@dataclass(frozen=True)
class UnitaryMap:
    """Square matrix with a unitarity certificate.

    Build through :func:`certify` so that ``certified`` is only ``True`` when
    ``max|F^H F - I| <= 1e-10`` actually holds.
    """

    matrix: np.ndarray
    certified: bool = False

    @property
    def dim(self):
        return self.matrix.shape[0]


def unitarity_residual(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0]))))


def certify(a, tol=UNITARY_TOL):
    """Wrap ``a`` as a :class:`UnitaryMap`; raise if it is not unitary."""
    a = np.array(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"unitary maps are square, got shape {a.shape}")
    res = unitarity_residual(a)
    if res > tol:
        raise DomainError(f"matrix is not unitary (residual {res:.3e})")
    a.setflags(write=False)
    return UnitaryMap(a, certified=True)


def _square(a, what):
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"{what} needs a square matrix, got shape {a.shape}")
    return a.astype(complex)


def _phase_fix(col):
    mags = np.abs(col)
    k = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    if mags[k] == 0.0:
        return 1.0
    return np.conj(col[k]) / mags[k]


def _complete_basis(q, keep):
    """Replace columns of ``q`` not flagged in ``keep`` by an orthonormal
    completion (modified Gram-Schmidt against the standard basis)."""
    n = q.shape[0]
    basis = [q[:, j] for j in range(q.shape[1]) if keep[j]]
    fill = []
    for e in np.eye(n, dtype=complex):
        if len(basis) + len(fill) == n:
            break
        v = e.copy()
        for _ in range(2):
            for b in basis + fill:
                v = v - np.vdot(b, v) * b
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            fill.append(v / nv)
    out = q.copy()
    it = iter(fill)
    for j in range(q.shape[1]):
        if not keep[j]:
            out[:, j] = next(it)
    return out


def svd(a):
    """Singular value decomposition ``A = U diag(s) V^H`` of a square matrix.

    Singular values come back non-increasing. Columns of ``U`` belonging to
    zero singular values are completed to a full orthonormal basis.
    """
    a = _square(a, "svd")
    n = a.shape[0]
    w = a.copy()
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if not np.isfinite(scale):
        raise NumericError("svd input has non-finite entries")

    # columns this small are numerically null and get completed afterwards
    negligible = (max(scale, 1.0) * n * 1e-15) ** 2
    off = np.inf
    for _ in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = np.vdot(w[:, p], w[:, p]).real
                beta = np.vdot(w[:, q], w[:, q]).real
                gamma = np.vdot(w[:, p], w[:, q])
                g = abs(gamma)
                norm = np.sqrt(alpha * beta)
                if g == 0.0 or alpha <= negligible or beta <= negligible:
                    continue
                off = max(off, g / norm)
                if g <= OFF_TOL * norm:
                    continue
                phase = gamma / g
                zeta = (beta - alpha) / (2.0 * g)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                for m in (w, v):
                    mp = m[:, p].copy()
                    mq = m[:, q]
                    m[:, p] = c * mp - s * np.conj(phase) * mq
                    m[:, q] = s * phase * mp + c * mq
        if off <= OFF_TOL:
            break
    else:
        raise NumericError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps", residual=off)

    sv = np.linalg.norm(w, axis=0)
    order = np.argsort(-sv, kind="stable")
    sv = sv[order]
    w = w[:, order]
    v = v[:, order]

    keep = sv * sv > negligible
    u = np.zeros_like(w)
    u[:, keep] = w[:, keep] / sv[keep]
    u = _complete_basis(u, keep)
    sv = np.where(keep, sv, 0.0)

    for j in range(n):
        ph = _phase_fix(u[:, j])
        u[:, j] *= ph
        v[:, j] *= ph
    return SvdResult(u, sv, v)


def herm_eig(h):
    """Eigendecomposition of a hermitian matrix, eigenvalues descending.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns.
    """
    h = _square(h, "herm_eig")
    asym = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if asym > HERMITIAN_TOL:
        raise DomainError(f"matrix is not hermitian (asymmetry {asym:.3e})")
    n = h.shape[0]
    a = 0.5 * (h + h.conj().T)
    x = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), 1.0)

    for _ in range(MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a - np.diag(np.diag(a))) ** 2))
        if off <= OFF_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g <= 1e-300:
                    continue
                phase = a[p, q] / g
                app, aqq = a[p, p].real, a[q, q].real
                zeta = (aqq - app) / (2.0 * g)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                # rotation acting on columns p, q: G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g2 = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                cols = a[:, [p, q]] @ g2
                a[:, [p, q]] = cols
                a[[p, q], :] = g2.conj().T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0
                x[:, [p, q]] = x[:, [p, q]] @ g2
    else:
        raise NumericError(f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps", residual=off)

    evals = np.diag(a).real.copy()
    order = np.argsort(-evals, kind="stable")
    evals = evals[order]
    x = x[:, order]
    for j in range(n):
        x[:, j] *= _phase_fix(x[:, j])
    return evals, x


def polar_unitary(a):
    """Unitary polar factor ``U V^H``, the unitary nearest to ``a``."""
    r = svd(a)
    return certify(r.U @ r.V.conj().T)
