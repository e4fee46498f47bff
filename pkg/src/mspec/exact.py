"""Closed-form greatest M-eigenpairs for special tensor classes."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import require_nonnegative
from .errors import NotApplicable, ShapeMismatch
from .spectral import TOL, svd, sym_eig
from .structure import omega_membership
from .tensor import PsTensor, make_eigenpair, random_ps, shift as shift_tensor, symmetrize


def exact_from_omega(B, tol=TOL):
    """Greatest M-eigenpair of a nonnegative tensor in Omega1 or Omega2.

    Omega1: lambda = beta_max(C_bar), y uniform, x the top eigenvector of C_bar.
    Omega2: lambda = beta_max(D_bar), x uniform, y the top eigenvector of D_bar.
    Omega1 is tried first.
    """
    require_nonnegative(B, "exact_from_omega")
    o1, o2 = omega_membership(B, tol)
    st = B.struct
    if o1:
        e = sym_eig(st.C_bar)
        return make_eigenpair(B, e.beta_max, e.top_vector, np.full(B.n, 1 / np.sqrt(B.n)))
    if o2:
        e = sym_eig(st.D_bar)
        return make_eigenpair(B, e.beta_max, np.full(B.m, 1 / np.sqrt(B.m)), e.top_vector)
    raise NotApplicable("tensor is in neither Omega1 nor Omega2")


def exact_shifted(B, eta, tol=TOL):
    """Greatest M-eigenpair of B - eta*I for B in Omega1/Omega2."""
    base = exact_from_omega(B, tol)
    A = shift_tensor(B, -eta)
    return make_eigenpair(A, base.lam - eta, base.x, base.y)


def gen_delta1(m, n, seed):
    """Random nonnegative PS tensor with all ES matrices C_l equal.

    Starts from a random nonnegative tensor, zeroes the diagonal blocks
    b[:, i, :, i], accumulates the off-diagonal block sums T_i, and refills
    each diagonal block with (sum_i |T_i - T_{i-1}|) - T_i.
    """
    rng = np.random.default_rng(seed)
    b = np.array(random_ps(m, n, rng).entries)
    T = np.zeros((n + 1, m, m))
    c_bar = np.zeros((m, m))
    for i in range(n):
        b[:, i, :, i] = 0.0
        for j in range(n):
            T[i + 1] += b[:, i, :, j]
        c_bar += np.abs(T[i + 1] - T[i])
    for i in range(n):
        block = c_bar - T[i + 1]
        # telescoping: sum_i |T_i - T_{i-1}| >= T_i elementwise since T_0 = 0
        assert np.all(block >= 0), "diagonal block went negative"
        assert np.array_equal(block, block.T), "diagonal block not symmetric"
        b[:, i, :, i] = block
    return PsTensor(b)


@dataclass
class MatricizationDecomp:
    """SVD of the n^2 x m^2 matricization and the eigen-split of each factor.

    Row (j, l) of ``A_tilde`` (index n*j + l) holds a[:, j, :, l] flattened.
    For each retained singular triple r: ``U_r_mats[r] = P[r] diag(lam[r]) P[r]^T``
    and ``V_r_mats[r] = Q[r] diag(mu[r]) Q[r]^T``.
    """

    A_tilde: np.ndarray
    svd: object
    U_r_mats: list
    V_r_mats: list
    P: list
    lam: list
    Q: list
    mu: list

    @property
    def sigma(self):
        return self.svd.sigma[: self.svd.rank_plus]

    def coefficients(self):
        """Array c[r, i, j] = sigma_r * lam_ri * mu_rj."""
        if not self.U_r_mats:
            return np.zeros((0, 0, 0))
        return np.einsum("r,ri,rj->rij", self.sigma, np.array(self.lam), np.array(self.mu))

    def expansion(self, x, y):
        """f(x, y) through the double eigen-expansion."""
        if not self.U_r_mats:
            return 0.0
        py = np.array([(P.T @ y) ** 2 for P in self.P])  # (R, n)
        qx = np.array([(Q.T @ x) ** 2 for Q in self.Q])  # (R, m)
        return float(np.einsum("rij,ri,rj->", self.coefficients(), py, qx))


def matricize(A, tol=TOL):
    m, n = A.m, A.n
    A_tilde = A.entries.transpose(1, 3, 0, 2).reshape(n * n, m * m)
    res = svd(A_tilde, tol)
    Us, Vs, Ps, lams, Qs, mus = [], [], [], [], [], []
    for r in range(res.rank_plus):
        Ur = res.U[:, r].reshape(n, n)
        Vr = res.V[:, r].reshape(m, m)
        Ur = 0.5 * (Ur + Ur.T)
        Vr = 0.5 * (Vr + Vr.T)
        eu, ev = sym_eig(Ur), sym_eig(Vr)
        Us.append(Ur)
        Vs.append(Vr)
        Ps.append(eu.vectors)
        lams.append(eu.values)
        Qs.append(ev.vectors)
        mus.append(ev.values)
    return MatricizationDecomp(A_tilde, res, Us, Vs, Ps, lams, Qs, mus)


def _pairwise_orthogonal(vectors, atol):
    if len(vectors) < 2:
        return True
    G = np.array(vectors) @ np.array(vectors).T
    off = G - np.diag(np.diag(G))
    return bool(np.all(np.abs(off) <= atol))


def closed_form_if_orthogonal(decomp, tol=TOL, orth_atol=1e-10):
    """Global maximizer when the active eigenvectors are mutually orthogonal.

    Active P columns are those with |sigma_r lam_ri| above the rank
    threshold; likewise for Q with mu. Ties in the argmax go to the
    lexicographically smallest (r, i, j).
    """
    R = len(decomp.U_r_mats)
    if R == 0:
        raise NotApplicable("zero tensor: no nonzero singular values")
    sigma = decomp.sigma
    thresh = tol.rank * sigma[0]
    p_active = [decomp.P[r][:, i] for r in range(R) for i in range(len(decomp.lam[r]))
                if abs(sigma[r] * decomp.lam[r][i]) > thresh]
    q_active = [decomp.Q[r][:, j] for r in range(R) for j in range(len(decomp.mu[r]))
                if abs(sigma[r] * decomp.mu[r][j]) > thresh]
    if not (_pairwise_orthogonal(p_active, orth_atol) and _pairwise_orthogonal(q_active, orth_atol)):
        raise NotApplicable("eigenvectors of different singular factors are not orthogonal")
    c = decomp.coefficients()
    r, i, j = np.unravel_index(int(np.argmax(c)), c.shape)
    if c[r, i, j] <= 0:
        raise NotApplicable("no positive coefficient in the expansion")
    return float(c[r, i, j]), decomp.Q[r][:, j].copy(), decomp.P[r][:, i].copy()


def closed_form_eigenpair(A, tol=TOL):
    lam, x, y = closed_form_if_orthogonal(matricize(A, tol), tol)
    return make_eigenpair(A, lam, x, y)


def rank_one_matricization(sigma, U_tilde, V_tilde):
    """Tensor a_ijkl = sigma * U_tilde[j, l] * V_tilde[i, k] (Ã has rank one)."""
    U_tilde = np.asarray(U_tilde, dtype=float)
    V_tilde = np.asarray(V_tilde, dtype=float)
    return PsTensor(sigma * np.einsum("jl,ik->ijkl", 0.5 * (U_tilde + U_tilde.T),
                                      0.5 * (V_tilde + V_tilde.T)))


@dataclass
class KroneckerSpec:
    """Two n x m factors of the matricization Ã = A1 kron A2.

    Build shared-basis specs with :meth:`shared`, which records the common
    singular bases so the exact maximizer is available.
    """

    A1: np.ndarray
    A2: np.ndarray
    shared_basis: bool = False
    U: Optional[np.ndarray] = field(default=None, repr=False)
    V: Optional[np.ndarray] = field(default=None, repr=False)
    sigma1: Optional[np.ndarray] = None
    sigma2: Optional[np.ndarray] = None

    def __post_init__(self):
        self.A1 = np.asarray(self.A1, dtype=float)
        self.A2 = np.asarray(self.A2, dtype=float)
        if self.A1.ndim != 2 or self.A1.shape != self.A2.shape:
            raise ShapeMismatch("A1 and A2 must be matrices of the same n x m shape")

    @classmethod
    def shared(cls, U, V, sigma1, sigma2):
        """A1 = U diag(sigma1) V^T, A2 = U diag(sigma2) V^T, sigmas descending."""
        U = np.asarray(U, dtype=float)
        V = np.asarray(V, dtype=float)
        s1 = np.asarray(sigma1, dtype=float)
        s2 = np.asarray(sigma2, dtype=float)
        r = len(s1)
        if len(s2) != r or U.shape[1] != r or V.shape[1] != r:
            raise ShapeMismatch("U, V, sigma1, sigma2 must share the inner dimension")
        for s in (s1, s2):
            if np.any(s < 0) or np.any(np.diff(s) > 0):
                raise ValueError("singular values must be nonnegative and descending")
        return cls(U @ np.diag(s1) @ V.T, U @ np.diag(s2) @ V.T, True, U, V, s1, s2)

    @classmethod
    def random_shared(cls, m, n, rng, sigma1=None, sigma2=None):
        r = min(m, n)
        U, _ = np.linalg.qr(rng.standard_normal((n, r)))
        V, _ = np.linalg.qr(rng.standard_normal((m, r)))
        if sigma1 is None:
            sigma1 = np.sort(rng.uniform(0.1, 3.0, r))[::-1]
        if sigma2 is None:
            sigma2 = np.sort(rng.uniform(0.1, 3.0, r))[::-1]
        return cls.shared(U, V, sigma1, sigma2)


def kron_build(spec):
    """PS tensor with f(x, y) = vec(yy^T)^T (A1 kron A2) vec(xx^T).

    The raw tensor m_ijkl = A1[j, i] * A2[l, k] is not partially symmetric in
    general; symmetrizing it leaves f unchanged because xx^T and yy^T are
    symmetric.
    """
    raw = np.einsum("ji,lk->ijkl", spec.A1, spec.A2)
    return symmetrize(raw)


def kron_matricization_value(spec, x, y):
    """vec(yy^T)^T (A1 kron A2) vec(xx^T) = (y^T A1 x)(y^T A2 x)."""
    return float((y @ spec.A1 @ x) * (y @ spec.A2 @ x))


def kron_exact_max(spec):
    if not spec.shared_basis:
        raise NotApplicable("exact maximizer needs factors with a shared singular basis")
    x = spec.V[:, 0].copy()
    y = spec.U[:, 0].copy()
    lam = float(spec.sigma1[0] * spec.sigma2[0])
    return make_eigenpair(kron_build(spec), lam, x, y)


@dataclass
class ExactSolution:
    eigenpair: object
    method: str  # "omega1", "omega2" or "orthogonal"


def solve_exact(A, tol=TOL):
    """Try the Omega route (nonnegative tensors) then the orthogonal closed form."""
    reasons = []
    if A.flags.nonnegative:
        o1, o2 = omega_membership(A, tol)
        if o1 or o2:
            return ExactSolution(exact_from_omega(A, tol), "omega1" if o1 else "omega2")
        reasons.append("not in Omega1/Omega2")
    else:
        reasons.append("Omega route needs a nonnegative tensor")
    try:
        return ExactSolution(closed_form_eigenpair(A, tol), "orthogonal")
    except NotApplicable as exc:
        reasons.append(str(exc))
    raise NotApplicable("; ".join(reasons))
