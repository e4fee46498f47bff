"""Reference maximizer for small tensors, independent of the BIM code path.

Each block subproblem (x given y, or y given x) is a symmetric eigenproblem,
solved exactly with a dense eigendecomposition.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionTooLarge
from .spectral import fix_sign
from .tensor import make_eigenpair

MAX_GRID_DIM = 3


@dataclass
class OracleResult:
    best: object
    local_values: list = field(repr=False)
    restarts: int
    method: str  # "multistart" or "grid"


def _top(S):
    w, V = np.linalg.eigh(0.5 * (S + S.T))
    return w[-1], V[:, -1]


def x_block(a, y):
    """M(y) = sum_{j,l} y_j y_l C_jl, whose top eigenvector is the best x for fixed y."""
    return np.einsum("ijkl,j,l->ik", a, y, y)


def y_block(a, x):
    """N(x) = sum_{i,k} x_i x_k D_ik."""
    return np.einsum("ijkl,i,k->jl", a, x, x)


def alternating_exact_ascent(A, x0, y0, tol=1e-12, max_sweeps=10_000, trace=None):
    """Block-exact alternating maximization of f from (x0, y0).

    Stops when a sweep raises f by at most ``tol * scale``. If ``trace`` is a
    list, the f value after every half-step is appended to it.
    """
    a = A.entries
    x = np.asarray(x0, dtype=float)
    y = np.asarray(y0, dtype=float)
    x = x / np.linalg.norm(x)
    y = y / np.linalg.norm(y)
    f = float(x @ x_block(a, y) @ x)
    stop = tol * A.tol_scale
    for _ in range(max_sweeps):
        fx, x = _top(x_block(a, y))
        fy, y = _top(y_block(a, x))
        if trace is not None:
            trace.extend((float(fx), float(fy)))
        done = fy - f <= stop
        f = fy
        if done:
            break
    x, y = fix_sign(x), fix_sign(y)
    return make_eigenpair(A, float(np.einsum("ijkl,i,j,k,l->", a, x, y, x, y)), x, y)


def _sphere_starts(m, n, count, rng):
    for _ in range(count):
        x = rng.standard_normal(m)
        y = rng.standard_normal(n)
        yield x / np.linalg.norm(x), y / np.linalg.norm(y)


def _structured_starts(A):
    a = A.entries
    m, n = A.m, A.n
    C_bar = a.sum(axis=1).mean(axis=2)  # (1/n) sum_l C_l
    D_bar = a.sum(axis=2).mean(axis=0)
    yield _top(C_bar)[1], _top(D_bar)[1]
    _, w = _top(a.reshape(m * n, m * n))
    U, _, Vt = np.linalg.svd(w.reshape(m, n))
    yield U[:, 0], Vt[0]


def _pick(pairs, method, restarts):
    values = [p.lam for p in pairs]
    best = pairs[int(np.argmax(values))]
    return OracleResult(best, values, restarts, method)


def global_max_multistart(A, restarts=200, seed=0, tol=1e-12):
    """Best local maximum over random sphere starts plus the MES and unfold starts."""
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = np.random.default_rng(seed)
    starts = list(_structured_starts(A)) + list(_sphere_starts(A.m, A.n, restarts, rng))
    pairs = [alternating_exact_ascent(A, x, y, tol) for x, y in starts]
    return _pick(pairs, "multistart", restarts)


def sphere_grid(dim, resolution):
    """Points covering the unit sphere in R^dim up to sign (f is even in each vector)."""
    if dim == 1:
        return np.ones((1, 1))
    if dim == 2:
        t = np.linspace(0.0, np.pi, resolution, endpoint=False)
        return np.stack([np.cos(t), np.sin(t)], axis=1)
    if dim == 3:
        theta = np.linspace(0.0, np.pi / 2, resolution)
        phi = np.linspace(0.0, 2 * np.pi, resolution, endpoint=False)
        T, P = np.meshgrid(theta, phi, indexing="ij")
        pts = np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1)
        return pts.reshape(-1, 3)
    raise DimensionTooLarge(f"grid search supports dimensions <= {MAX_GRID_DIM}")


def grid_search(A, resolution=100, polish=5, tol=1e-12):
    """Dense scan over one sphere, exact maximization over the other, then polish.

    The vector of smaller dimension is gridded; for each grid point the other
    block's optimum is the top eigenvalue of its block matrix. The ``polish``
    best grid points are refined with :func:`alternating_exact_ascent`.
    """
    if A.m > MAX_GRID_DIM or A.n > MAX_GRID_DIM:
        raise DimensionTooLarge(f"grid search needs m, n <= {MAX_GRID_DIM}")
    a = A.entries
    if A.n <= A.m:
        pts = sphere_grid(A.n, resolution)
        blocks = np.einsum("ijkl,pj,pl->pik", a, pts, pts)
    else:
        pts = sphere_grid(A.m, resolution)
        blocks = np.einsum("ijkl,pi,pk->pjl", a, pts, pts)
    w, V = np.linalg.eigh(blocks)
    order = np.argsort(-w[:, -1], kind="stable")[:polish]
    pairs = []
    for p in order:
        if A.n <= A.m:
            x0, y0 = V[p, :, -1], pts[p]
        else:
            x0, y0 = pts[p], V[p, :, -1]
        pairs.append(alternating_exact_ascent(A, x0, y0, tol))
    return _pick(pairs, "grid", len(pts))
