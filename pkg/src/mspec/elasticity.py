"""Strong-ellipticity certificates for elasticity (PS) tensors.

A Z-tensor A is written as A = eta*I - B with B nonnegative. If eta exceeds
an ES-matrix upper bound of B, then every M-eigenvalue of A is positive and
the strong ellipticity condition holds.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bounds import require_nonnegative, upper_es
from .errors import DimensionMismatch, EtaTooSmall, NotZTensor
from .spectral import beta_min
from .tensor import PsTensor, diagonal_mask, from_coo, unfold_wx

VERDICTS = ("certified_strong_ellipticity", "not_certified", "refuted_not_ew")
STRICT_REL = 1e-9  # eta - R must exceed this times the tensor scale


@dataclass
class EllipticityCertificate:
    verdict: str
    eta: Optional[float]
    bound_used: Optional[float]
    z_tensor: bool
    R1: Optional[float] = None
    R2: Optional[float] = None
    min_eig_lower: Optional[float] = None
    ding_beta_min: Optional[float] = None
    notes: list = field(default_factory=list)

    @property
    def certified(self):
        return self.verdict == "certified_strong_ellipticity"


def diagonal_max(A):
    """max a_ijij."""
    return float(np.max(A.entries[diagonal_mask(A.m, A.n)]))


def ding_unfold_check(A):
    """beta_min of the block unfolding W_x; a positive value proves M-positive definiteness."""
    return beta_min(unfold_wx(A))


def _diag_offdiag_sums(A):
    mask = diagonal_mask(A.m, A.n)
    return float(A.entries[mask].sum()), A.entries[~mask]


def not_ew_check(A, mode="z_tensor"):
    """True when f at the uniform product state is provably negative.

    ``mode="z_tensor"`` compares sum a_ijij with sum |a_ijkl| over the
    off-diagonal entries (requires a Z-tensor); ``mode="general"`` compares it
    with minus the plain off-diagonal sum, which is the same as f < 0 at the
    uniform unit vectors.
    """
    diag, off = _diag_offdiag_sums(A)
    if mode == "z_tensor":
        if not A.flags.z_tensor:
            raise NotZTensor("z_tensor mode needs non-positive off-diagonal entries")
        return bool(diag < np.abs(off).sum())
    if mode == "general":
        return bool(diag < -off.sum())
    raise ValueError(f"unknown mode {mode!r}; expected 'z_tensor' or 'general'")


def certify_strong_ellipticity(A, eta=None):
    """Sufficient test: A Z-tensor, eta >= max a_ijij and eta > min(R1, R2) of eta*I - A."""
    notes = []
    ding = ding_unfold_check(A)
    if ding > 0:
        notes.append("unfolding W_x is positive definite (independent certificate)")
    if not_ew_check(A, "general"):
        notes.append("f is negative at the uniform product state")
        return EllipticityCertificate("refuted_not_ew", eta, None, A.flags.z_tensor,
                                      ding_beta_min=ding, notes=notes)
    if not A.flags.z_tensor:
        if eta is not None:
            raise NotZTensor("certificate needs non-positive off-diagonal entries")
        notes.append("not a Z-tensor: the sufficient condition does not apply")
        return EllipticityCertificate("not_certified", None, None, False,
                                      ding_beta_min=ding, notes=notes)
    floor = diagonal_max(A)
    if eta is None:
        eta = floor
    elif eta < floor:
        raise EtaTooSmall(f"eta={eta} is below max a_ijij = {floor}")
    B = PsTensor(eta * diagonal_mask(A.m, A.n) - A.entries)
    es = upper_es(B)
    bound = es.best
    margin = eta - bound
    if margin > STRICT_REL * A.tol_scale:
        notes.append(f"smallest M-eigenvalue >= eta - min(R1, R2) = {margin:.10g}")
        return EllipticityCertificate("certified_strong_ellipticity", float(eta), bound, True,
                                      es.R1, es.R2, float(margin), ding, notes)
    notes.append("eta does not exceed min(R1, R2) of eta*I - A")
    return EllipticityCertificate("not_certified", float(eta), bound, True,
                                  es.R1, es.R2, None, ding, notes)


def scan_eta(A, points=21):
    """Smallest eta on a grid over [floor, 2*floor] that certifies A, or None.

    For eta >= max a_ijij, eta - R1(eta*I - A) = min_l beta_min(C_l(A)) does
    not depend on eta, so the floor certifies whenever any grid point does.
    """
    floor = diagonal_max(A)
    hi = 2 * floor if floor > 0 else floor + 1.0
    for eta in np.linspace(floor, hi, points):
        cert = certify_strong_ellipticity(A, float(eta))
        if cert.certified:
            return cert
    return None


def make_m_tensor(B, which="R1"):
    """R(B)*I - B, an elasticity M-tensor for nonnegative B."""
    require_nonnegative(B, "make_m_tensor")
    es = upper_es(B)
    if which not in ("R1", "R2"):
        raise ValueError("which must be 'R1' or 'R2'")
    r = es.R1 if which == "R1" else es.R2
    A = PsTensor(r * diagonal_mask(B.m, B.n) - B.entries)
    assert A.flags.z_tensor
    return A


# 1-based index quadruples that vanish in a rhombic elasticity tensor
RHOMBIC_ZEROS = (
    (2, 3, 3, 1), (3, 3, 3, 1), (2, 3, 1, 2), (3, 3, 2, 3), (3, 1, 1, 2), (3, 3, 1, 2),
    (1, 1, 1, 2), (1, 1, 2, 3), (2, 2, 1, 2), (1, 1, 3, 1), (2, 2, 3, 1), (2, 2, 2, 3),
)
# the nine free elasticities, keyed by their 1-based index string
RHOMBIC_KEYS = ("1111", "2222", "3333", "1122", "2233", "3311", "2323", "1313", "1212")


def rhombic_validate(A, atol=None):
    if A.m != 3 or A.n != 3:
        raise DimensionMismatch("rhombic tensors are 3 x 3 x 3 x 3")
    atol = 1e-12 * A.tol_scale if atol is None else atol
    return all(abs(A.entries[tuple(v - 1 for v in idx)]) <= atol for idx in RHOMBIC_ZEROS)


def rhombic_generate(params):
    """PS tensor from the nine rhombic elasticities (dict keyed like ``"1122"``)."""
    unknown = set(params) - set(RHOMBIC_KEYS)
    if unknown:
        raise ValueError(f"unknown rhombic keys {sorted(unknown)}; expected {RHOMBIC_KEYS}")
    items = [[int(c) for c in key] + [float(params[key])] for key in RHOMBIC_KEYS if key in params]
    return PsTensor(from_coo(3, 3, items))
