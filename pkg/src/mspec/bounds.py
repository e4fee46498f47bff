"""Closed-form lower and upper bounds of the M-spectral radius."""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import DegenerateDimension, NotNonnegative
from .spectral import sym_eig
from .tensor import unfold


class EsUpper(NamedTuple):
    R1: float
    l_star: int
    R2: float
    i_star: int

    @property
    def best(self):
        return min(self.R1, self.R2)


class MesLower(NamedTuple):
    lower_C: float
    x_star: np.ndarray
    lower_D: float
    y_star: np.ndarray

    @property
    def best(self):
        return max(self.lower_C, self.lower_D)


@dataclass
class BoundReport:
    """All bounds that apply to a tensor; inapplicable ones are ``None``.

    ``omitted`` maps a bound name to the reason it was skipped.
    """

    R1: Optional[float] = None
    l_star: Optional[int] = None
    R2: Optional[float] = None
    i_star: Optional[int] = None
    tau: Optional[float] = None
    tau1: Optional[float] = None
    tau2: Optional[float] = None
    lower_C: Optional[float] = None
    x_star: Optional[np.ndarray] = None
    lower_D: Optional[float] = None
    y_star: Optional[np.ndarray] = None
    best_upper: Optional[float] = None
    best_lower: Optional[float] = None
    omitted: dict = field(default_factory=dict)


def require_nonnegative(B, what):
    if not B.flags.nonnegative:
        raise NotNonnegative(f"{what} requires a nonnegative tensor")


def upper_es(B):
    """R1 = max_l beta_max(C_l) and R2 = max_i beta_max(D_i) with argmax indices."""
    require_nonnegative(B, "upper_es")
    st = B.struct
    c = np.array([sym_eig(C).beta_max for C in st.C_l])
    d = np.array([sym_eig(D).beta_max for D in st.D_i])
    l_star = int(np.argmax(c))
    i_star = int(np.argmax(d))
    return EsUpper(float(c[l_star]), l_star, float(d[i_star]), i_star)


def lower_mes(B):
    """beta_max of the mean ES matrices, with their top eigenvectors."""
    require_nonnegative(B, "lower_mes")
    st = B.struct
    ec = sym_eig(st.C_bar)
    ed = sym_eig(st.D_bar)
    return MesLower(ec.beta_max, ec.top_vector, ed.beta_max, ed.top_vector)


def tau_wang(A):
    """Sum of |entries| over the upper triangle (diagonal included) of unfold(A)."""
    return float(np.abs(np.triu(unfold(A))).sum())


def gamma_psi(B):
    """Gamma_l (sum over all but the 4th index) and Psi_i (all but the 1st)."""
    a = np.abs(B.entries)
    return a.sum(axis=(0, 1, 2)), a.sum(axis=(1, 2, 3))


def tau1_li(B):
    require_nonnegative(B, "tau1")
    gamma, psi = gamma_psi(B)
    return float(min(psi.max(), gamma.max()))


def _theta(diag_sums, totals):
    # max over ordered pairs a != b of (s_a + sqrt(s_a^2 + 4 (T_a - s_a) T_b)) / 2
    best = -np.inf
    for a in range(len(totals)):
        s = diag_sums[a]
        for b in range(len(totals)):
            if a == b:
                continue
            v = 0.5 * (s + np.sqrt(s * s + 4.0 * (totals[a] - s) * totals[b]))
            best = max(best, v)
    return float(best)


def theta_terms(B):
    a = np.abs(B.entries)
    gamma, psi = gamma_psi(B)
    s_l = np.einsum("ilkl->l", a)  # sum_{i,k} |b_ilkl|
    t_i = np.einsum("ijil->i", a)  # sum_{j,l} |b_ijil|
    return _theta(s_l, gamma), _theta(t_i, psi)


def tau2_li(B):
    require_nonnegative(B, "tau2")
    if B.m < 2 or B.n < 2:
        raise DegenerateDimension("tau2 needs m >= 2 and n >= 2")
    th1, th2 = theta_terms(B)
    return min(th1, th2)


def bound_report(A):
    rep = BoundReport(tau=tau_wang(A))
    if not A.flags.nonnegative:
        reason = "tensor has negative entries"
        for name in ("R1", "R2", "tau1", "tau2", "lower_C", "lower_D"):
            rep.omitted[name] = reason
        rep.best_upper = rep.tau
        return rep
    es = upper_es(A)
    rep.R1, rep.l_star, rep.R2, rep.i_star = es
    rep.tau1 = tau1_li(A)
    try:
        rep.tau2 = tau2_li(A)
    except DegenerateDimension as exc:
        rep.omitted["tau2"] = str(exc)
    lo = lower_mes(A)
    rep.lower_C, rep.x_star, rep.lower_D, rep.y_star = lo
    uppers = [v for v in (rep.R1, rep.R2, rep.tau, rep.tau1, rep.tau2) if v is not None]
    rep.best_upper = min(uppers)
    rep.best_lower = lo.best
    return rep
