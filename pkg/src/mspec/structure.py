"""Membership tests for the structured classes of nonnegative PS tensors.

* Upsilon1^p: C_jp - C_jl is PSD for all j, l (Upsilon2^q symmetric in D).
* Delta1: all ES matrices C_l equal (Delta2: all D_i equal).
* Omega1: beta_max(C_bar) reaches R1 or R2 (Omega2: same with D_bar).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import require_nonnegative, upper_es
from .errors import InvalidWitness, NotMember, NotNonnegative
from .spectral import TOL, beta_max, is_psd
from .tensor import PsTensor


@dataclass(frozen=True)
class StructureReport:
    upsilon1_p: Optional[int]
    upsilon2_q: Optional[int]
    delta1: bool
    delta2: bool
    omega1: Optional[bool]
    omega2: Optional[bool]


def _position_ok(blocks, p, scale, tol):
    # blocks[j, l] symmetric; need blocks[j, p] - blocks[j, l] PSD for all j, l
    n = blocks.shape[0]
    for j in range(n):
        for l in range(n):
            if not is_psd(blocks[j, p] - blocks[j, l], scale, tol):
                return False
    return True


def upsilon1_ok(B, p, tol=TOL):
    return _position_ok(B.struct.C_jl, p, B.tol_scale, tol)


def upsilon2_ok(B, q, tol=TOL):
    # D_qk - D_ik == blocks[k, q] - blocks[k, i] after swapping the grid axes
    return _position_ok(B.struct.D_ik.transpose(1, 0, 2, 3), q, B.tol_scale, tol)


def position_membership(B, tol=TOL):
    """Smallest p with B in Upsilon1^p and smallest q with B in Upsilon2^q."""
    require_nonnegative(B, "position_membership")
    p = next((p for p in range(B.n) if upsilon1_ok(B, p, tol)), None)
    q = next((q for q in range(B.m) if upsilon2_ok(B, q, tol)), None)
    return p, q


def upper_from_position(B, p=None, q=None, tol=TOL):
    """beta_max(C_p) (or beta_max(D_q)) for a verified position witness."""
    require_nonnegative(B, "upper_from_position")
    if (p is None) == (q is None):
        raise ValueError("give exactly one of p or q")
    if p is not None:
        if not upsilon1_ok(B, p, tol):
            raise InvalidWitness(f"p={p + 1} does not satisfy the position condition")
        return beta_max(B.struct.C_l[p])
    if not upsilon2_ok(B, q, tol):
        raise InvalidWitness(f"q={q + 1} does not satisfy the position condition")
    return beta_max(B.struct.D_i[q])


def _all_equal(mats, atol):
    return bool(np.all(np.abs(mats - mats[0]) <= atol))


def delta_membership(B, tol=TOL):
    st = B.struct
    atol = tol.sym * B.scale
    return _all_equal(st.C_l, atol), _all_equal(st.D_i, atol)


def omega_membership(B, tol=TOL):
    require_nonnegative(B, "omega_membership")
    es = upper_es(B)
    st = B.struct
    eps = tol.eq * B.tol_scale
    bc = beta_max(st.C_bar)
    bd = beta_max(st.D_bar)
    omega1 = abs(bc - es.R1) <= eps or abs(bc - es.R2) <= eps
    omega2 = abs(bd - es.R2) <= eps or abs(bd - es.R1) <= eps
    return omega1, omega2


def structure_report(B, tol=TOL):
    d1, d2 = delta_membership(B, tol)
    if B.flags.nonnegative:
        p, q = position_membership(B, tol)
        o1, o2 = omega_membership(B, tol)
    else:
        p = q = o1 = o2 = None
    return StructureReport(p, q, d1, d2, o1, o2)


SETS = ("upsilon1", "upsilon2", "delta1", "delta2")


def is_member(B, which, index=None, tol=TOL):
    if which in ("upsilon1", "upsilon2"):
        if index is None:
            raise ValueError(f"{which} needs an index")
        if not B.flags.nonnegative:
            return False
        check = upsilon1_ok if which == "upsilon1" else upsilon2_ok
        return check(B, index, tol)
    if which in ("delta1", "delta2"):
        d1, d2 = delta_membership(B, tol)
        return d1 if which == "delta1" else d2
    raise ValueError(f"unknown set {which!r}; expected one of {SETS}")


def check_semigroup_closure(X, Y, which, index=None, tol=TOL):
    """Membership of X + Y in a class both X and Y belong to."""
    for name, T in (("X", X), ("Y", Y)):
        if not is_member(T, which, index, tol):
            raise NotMember(f"{name} is not in {which}")
    return is_member(X + Y, which, index, tol)


def separable_member(u, M):
    """Tensor b_sjtl = u_j u_l M_st.

    With u >= 0 and M symmetric, PSD and entrywise nonnegative, this lies in
    Upsilon1^p for every p attaining max(u).
    """
    u = np.asarray(u, dtype=float)
    M = np.asarray(M, dtype=float)
    if np.any(u < 0) or np.any(M < 0):
        raise NotNonnegative("u and M must be nonnegative")
    return PsTensor(np.einsum("j,l,st->sjtl", u, u, 0.5 * (M + M.T)))


def random_separable_member(m, n, rng, p=None):
    """Random Upsilon1 member via :func:`separable_member`; max(u) sits at ``p``."""
    u = rng.uniform(0.0, 1.0, size=n)
    if p is not None:
        u[p] = u.max() + rng.uniform(0.1, 1.0)
    G = rng.uniform(0.0, 1.0, size=(m, m))
    return separable_member(u, G @ G.T)
