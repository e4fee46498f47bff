"""Fourth-order partially symmetric (PS) tensors and their contraction algebra.

A PS tensor has shape ``(m, n, m, n)`` with ``a[i,j,k,l] == a[k,j,i,l] ==
a[i,l,k,j]``. Indices are 0-based throughout the Python API; the JSON
formats and CLI reports are 1-based.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, NonFinite, ShapeMismatch, SymmetryViolation
from .spectral import TOL


def _swap_ik(a):
    return a.transpose(2, 1, 0, 3)


def _swap_jl(a):
    return a.transpose(0, 3, 2, 1)


def symmetry_deviation(raw):
    """Worst partial-symmetry defect of a 4-array: ``(deviation, index)``."""
    raw = np.asarray(raw, dtype=float)
    d = np.maximum(np.abs(raw - _swap_ik(raw)), np.abs(raw - _swap_jl(raw)))
    if d.size == 0:
        return 0.0, (0, 0, 0, 0)
    idx = np.unravel_index(int(np.argmax(d)), d.shape)
    return float(d[idx]), tuple(int(v) for v in idx)


def diagonal_mask(m, n):
    """Boolean mask of the entries a[i,j,i,j]."""
    ik = np.eye(m, dtype=bool)[:, None, :, None]
    jl = np.eye(n, dtype=bool)[None, :, None, :]
    return ik & jl


@dataclass(frozen=True)
class TensorClassFlags:
    nonnegative: bool
    z_tensor: bool
    diagonal: bool


@dataclass(frozen=True)
class StructMatrices:
    """Slices and sums of a PS tensor.

    ``C_jl[j, l]`` is the m x m matrix ``(a[s,j,t,l])_{st}``; ``D_ik[i, k]`` is
    the n x n matrix ``(a[i,u,k,v])_{uv}``.
    """

    C_jl: np.ndarray  # (n, n, m, m)
    D_ik: np.ndarray  # (m, m, n, n)
    C_l: np.ndarray  # (n, m, m)
    D_i: np.ndarray  # (m, n, n)
    C_bar: np.ndarray  # (m, m)
    D_bar: np.ndarray  # (n, n)


@dataclass(frozen=True, eq=False)
class PsTensor:
    """Dense, immutable, validated fourth-order PS tensor."""

    entries: np.ndarray
    repaired: bool = False

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 4 or a.shape[0] != a.shape[2] or a.shape[1] != a.shape[3]:
            raise ShapeMismatch(f"expected shape (m, n, m, n), got {a.shape}")
        if not np.all(np.isfinite(a)):
            raise NonFinite("tensor has non-finite entries")
        dev, idx = symmetry_deviation(a)
        s = float(np.max(np.abs(a))) if a.size else 0.0
        if dev > TOL.sym * s:
            raise SymmetryViolation(idx, dev, s)
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def m(self):
        return self.entries.shape[0]

    @property
    def n(self):
        return self.entries.shape[1]

    @property
    def scale(self):
        """max |a|; 0 for the zero tensor."""
        return float(np.max(np.abs(self.entries))) if self.entries.size else 0.0

    @property
    def tol_scale(self):
        """Scale used for relative tolerances (1 for the zero tensor)."""
        s = self.scale
        return s if s > 0 else 1.0

    @cached_property
    def flags(self):
        a = self.entries
        diag = diagonal_mask(self.m, self.n)
        off = a[~diag]
        return TensorClassFlags(
            nonnegative=bool(np.all(a >= 0)),
            z_tensor=bool(np.all(off <= 0)),
            diagonal=bool(np.all(off == 0)),
        )

    @cached_property
    def struct(self):
        return struct_matrices(self)

    def __add__(self, other):
        return axpy(1.0, self, 1.0, other)

    def __sub__(self, other):
        return axpy(1.0, self, -1.0, other)

    def __repr__(self):
        return f"PsTensor(m={self.m}, n={self.n}, scale={self.scale:.6g})"


@dataclass(frozen=True)
class Eigenpair:
    lam: float
    x: np.ndarray
    y: np.ndarray
    residual_x: float
    residual_y: float

    @property
    def residual(self):
        return max(self.residual_x, self.residual_y)


def validate(raw, m=None, n=None, repair=False):
    """Check a raw 4-array and return it as a :class:`PsTensor`.

    With ``repair=True`` an asymmetric input is symmetrized instead of
    rejected, and the result is flagged ``repaired``.
    """
    raw = np.asarray(raw, dtype=float)
    if raw.ndim != 4:
        raise ShapeMismatch(f"expected a 4-array, got ndim={raw.ndim}")
    m = raw.shape[0] if m is None else m
    n = raw.shape[1] if n is None else n
    if raw.shape != (m, n, m, n):
        raise ShapeMismatch(f"expected shape {(m, n, m, n)}, got {raw.shape}")
    if not np.all(np.isfinite(raw)):
        raise NonFinite("tensor has non-finite entries")
    if repair:
        dev, _ = symmetry_deviation(raw)
        s = float(np.max(np.abs(raw))) if raw.size else 0.0
        if dev > TOL.sym * s:
            return PsTensor(_symmetrize_array(raw), repaired=True)
    return PsTensor(raw)


def _symmetrize_array(raw):
    # pairwise sums keep the result exactly symmetric in floating point
    s = raw + _swap_ik(raw)
    return (s + _swap_jl(s)) / 4.0


def symmetrize(raw):
    """Partial symmetrization (c_ijkl + c_kjil + c_ilkj + c_klij) / 4."""
    raw = np.asarray(raw.entries if isinstance(raw, PsTensor) else raw, dtype=float)
    if raw.ndim != 4 or raw.shape[0] != raw.shape[2] or raw.shape[1] != raw.shape[3]:
        raise ShapeMismatch(f"expected shape (m, n, m, n), got {raw.shape}")
    return PsTensor(_symmetrize_array(raw))


def _vec(v, size, name):
    v = np.asarray(v, dtype=float)
    if v.shape != (size,):
        raise DimensionMismatch(f"{name} must have shape ({size},), got {v.shape}")
    return v


def f_eval(A, x, y):
    """Bi-quadratic form sum a_ijkl x_i y_j x_k y_l."""
    x = _vec(x, A.m, "x")
    y = _vec(y, A.n, "y")
    return float(np.einsum("ijkl,i,j,k,l->", A.entries, x, y, x, y))


def contract_x(A, x, y):
    """The m-vector A(., y, x, y)."""
    x = _vec(x, A.m, "x")
    y = _vec(y, A.n, "y")
    return np.einsum("ijkl,j,k,l->i", A.entries, y, x, y)


def contract_y(A, x, y):
    """The n-vector A(x, y, x, .)."""
    x = _vec(x, A.m, "x")
    y = _vec(y, A.n, "y")
    return np.einsum("ijkl,i,j,k->l", A.entries, x, y, x)


def unfold(A):
    """mn x mn matrix with row n*i + j and column n*k + l (0-based)."""
    mn = A.m * A.n
    return A.entries.reshape(mn, mn).copy()


def unfold_wx(A):
    """nm x nm matrix whose (j, l) block of size m x m is a[:, j, :, l]."""
    nm = A.n * A.m
    return A.entries.transpose(1, 0, 3, 2).reshape(nm, nm).copy()


def struct_matrices(A):
    a = A.entries
    C_l = a.sum(axis=1).transpose(2, 0, 1)
    D_i = a.sum(axis=2)
    return StructMatrices(
        C_jl=a.transpose(1, 3, 0, 2).copy(),
        D_ik=a.transpose(0, 2, 1, 3).copy(),
        C_l=C_l,
        D_i=D_i,
        C_bar=C_l.mean(axis=0),
        D_bar=D_i.mean(axis=0),
    )


def identity_tensor(m, n):
    return PsTensor(diagonal_mask(m, n).astype(float))


def zero_tensor(m, n):
    return PsTensor(np.zeros((m, n, m, n)))


def axpy(alpha, A, beta, B):
    """alpha*A + beta*B."""
    if A.entries.shape != B.entries.shape:
        raise DimensionMismatch(f"shapes differ: {A.entries.shape} vs {B.entries.shape}")
    return PsTensor(alpha * A.entries + beta * B.entries)


def shift(A, eta):
    """A + eta*I (use a negative eta for A - |eta|*I)."""
    return PsTensor(A.entries + eta * diagonal_mask(A.m, A.n))


def residuals(A, e):
    rx = float(np.linalg.norm(contract_x(A, e.x, e.y) - e.lam * np.asarray(e.x)))
    ry = float(np.linalg.norm(contract_y(A, e.x, e.y) - e.lam * np.asarray(e.y)))
    return rx, ry


def make_eigenpair(A, lam, x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rx = float(np.linalg.norm(contract_x(A, x, y) - lam * x))
    ry = float(np.linalg.norm(contract_y(A, x, y) - lam * y))
    return Eigenpair(lam=float(lam), x=x, y=y, residual_x=rx, residual_y=ry)


def canonical_fill(values):
    """Copy each orbit representative (i<=k, j<=l) onto its symmetric images."""
    values = np.asarray(values, dtype=float)
    m, n = values.shape[0], values.shape[1]
    i, j, k, l = np.indices((m, n, m, n))
    return values[np.minimum(i, k), np.minimum(j, l), np.maximum(i, k), np.maximum(j, l)]


def random_ps(m, n, rng, low=0.0, high=1.0):
    """PS tensor whose independent entries are i.i.d. uniform on [low, high]."""
    return PsTensor(canonical_fill(rng.uniform(low, high, size=(m, n, m, n))))


def from_coo(m, n, items):
    """Build a raw 4-array from 1-based ``[i, j, k, l, value]`` records.

    Unlisted symmetric images of a listed entry are filled in; listed entries
    are never overwritten, so inconsistent input is caught by :func:`validate`.
    """
    raw = np.zeros((m, n, m, n))
    listed = np.zeros((m, n, m, n), dtype=bool)
    for rec in items:
        if len(rec) != 5:
            raise ShapeMismatch(f"COO record must be [i, j, k, l, value], got {rec!r}")
        idx = tuple(int(v) - 1 for v in rec[:4])
        dims = (m, n, m, n)
        if any(not 0 <= v < d for v, d in zip(idx, dims)):
            raise ShapeMismatch(f"COO index {list(rec[:4])} out of range for m={m}, n={n}")
        raw[idx] = float(rec[4])
        listed[idx] = True
    for idx in zip(*np.nonzero(listed)):
        i, j, k, l = idx
        for img in ((k, j, i, l), (i, l, k, j), (k, l, i, j)):
            if not listed[img]:
                raw[img] = raw[idx]
    return raw
