"""Dense symmetric eigen/SVD kernels and the shared tolerance policy."""

from dataclasses import dataclass

import numpy as np

from .errors import NonFinite


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances used across the package.

    ``sym`` is the partial-symmetry check, ``eq`` the numeric equality used
    for the Omega-class test; the rest guard eigen/SVD/PSD decisions.
    """

    eig: float = 1e-10
    psd: float = 1e-10
    rank: float = 1e-12
    sym: float = 1e-12
    eq: float = 1e-8


TOL = Tolerances()


@dataclass(frozen=True)
class SymEigResult:
    values: np.ndarray  # descending
    vectors: np.ndarray  # columns

    @property
    def beta_max(self):
        return float(self.values[0])

    @property
    def beta_min(self):
        return float(self.values[-1])

    @property
    def top_vector(self):
        return self.vectors[:, 0]


@dataclass(frozen=True)
class SvdResult:
    U: np.ndarray
    sigma: np.ndarray
    V: np.ndarray
    rank_plus: int


def _check_finite(M):
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise NonFinite("matrix has non-finite entries")
    return M


def fix_sign(v):
    """Flip ``v`` so its largest-magnitude entry (first on ties) is positive."""
    v = np.asarray(v, dtype=float)
    if v.size == 0:
        return v
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v


def sym_eig(S):
    """Full spectrum of a symmetric matrix, eigenvalues in descending order.

    The input is symmetrized as (S + S^T)/2 first. Eigenvector signs are
    normalized with :func:`fix_sign` so results are deterministic.
    """
    S = _check_finite(S)
    S = 0.5 * (S + S.T)
    w, V = np.linalg.eigh(S)
    w = w[::-1].copy()
    V = V[:, ::-1].copy()
    for c in range(V.shape[1]):
        V[:, c] = fix_sign(V[:, c])
    return SymEigResult(values=w, vectors=V)


def beta_max(S):
    return sym_eig(S).beta_max


def beta_min(S):
    return sym_eig(S).beta_min


def svd(M, tol=TOL):
    M = _check_finite(M)
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    if s.size and s[0] > 0:
        rank_plus = int(np.sum(s > tol.rank * s[0]))
    else:
        rank_plus = 0
    return SvdResult(U=U, sigma=s, V=Vt.T, rank_plus=rank_plus)


def is_psd(S, scale, tol=TOL):
    """True iff beta_min(S) >= -tol.psd * scale."""
    S = np.asarray(S, dtype=float)
    if S.size == 0:
        return True
    return beta_min(S) >= -tol.psd * abs(scale)
