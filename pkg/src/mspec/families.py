"""Tensor generators: trigonometric benchmark families and random class members."""

from dataclasses import dataclass

import numpy as np

from .elasticity import RHOMBIC_KEYS, rhombic_generate
from .exact import KroneckerSpec, gen_delta1, kron_build
from .structure import random_separable_member
from .tensor import PsTensor, random_ps

CLAMP_EPS = 1e-12


@dataclass
class Generated:
    tensor: PsTensor
    clamps: int = 0  # singular arguments nudged away from a pole


def _grid(m):
    # 1-based index grids for a[i, p, k, q]
    return np.indices((m, m, m, m)) + 1


def _clamp_away(d):
    """Push values within CLAMP_EPS of zero out to +-CLAMP_EPS."""
    bad = np.abs(d) < CLAMP_EPS
    return np.where(bad, np.where(d < 0, -CLAMP_EPS, CLAMP_EPS), d), bad


def _abs_tan_inv(d):
    """|tan(1/d)| with both the 1/d and the tan pole clamped."""
    d, bad1 = _clamp_away(d)
    t = 1.0 / d
    cos_t, bad2 = _clamp_away(np.cos(t))
    return np.abs(np.sin(t) / cos_t), bad1 | bad2


def cos_sin_family(h, m=10):
    """Diagonal blocks (1+cos(p+q+i))/h, off-diagonal blocks (1+sin(p+q+i+k))/h."""
    i, p, k, q = _grid(m)
    a = np.where(i == k, (1 + np.cos(p + q + i)) / h, (1 + np.sin(p + q + i + k)) / h)
    return Generated(PsTensor(a))


def tan_family(h, m=10):
    """Diagonal blocks |tan(1/(p+q-sin i-1))|; off-diagonal blocks
    |tan(1/(h(cos(p+q)-sin i-cos i-cos k)))| evaluated with i < k and mirrored."""
    i, p, k, q = _grid(m)
    diag, bad_d = _abs_tan_inv(p + q - np.sin(i) - 1.0)
    lo, hi = np.minimum(i, k), np.maximum(i, k)
    off, bad_o = _abs_tan_inv(h * (np.cos(p + q) - np.sin(lo) - np.cos(lo) - np.cos(hi)))
    a = np.where(i == k, diag, off)
    return Generated(PsTensor(a), clamps=int(np.where(i == k, bad_d, bad_o).sum()))


def inv_sin_family(m=10):
    """Diagonal blocks 1/|sin(p+q+i)|, off-diagonal blocks |cos(p+q+i+k)|."""
    i, p, k, q = _grid(m)
    s, bad = _clamp_away(np.abs(np.sin(p + q + i)))
    a = np.where(i == k, 1.0 / s, np.abs(np.cos(p + q + i + k)))
    return Generated(PsTensor(a), clamps=int((bad & (i == k)).sum()))


def abs_sin_family(hfun, m=10):
    """Diagonal blocks |sin(p+q+i)+h(i)|, off-diagonal blocks sin(p+q+i+k)+1.

    ``hfun`` is ``"sin"`` or ``"cos"``.
    """
    i, p, k, q = _grid(m)
    h = {"sin": np.sin, "cos": np.cos}[hfun](i)
    a = np.where(i == k, np.abs(np.sin(p + q + i) + h), np.sin(p + q + i + k) + 1)
    return Generated(PsTensor(a))


FIGURE_FAMILIES = {
    "cossin-h2": lambda: cos_sin_family(2),
    "cossin-h3": lambda: cos_sin_family(3),
    "tan-h1": lambda: tan_family(1),
    "tan-h3": lambda: tan_family(3),
    "tan-h4": lambda: tan_family(4),
    "invsin": inv_sin_family,
    "abssin-sin": lambda: abs_sin_family("sin"),
    "abssin-cos": lambda: abs_sin_family("cos"),
}


def figure_family(name):
    try:
        return FIGURE_FAMILIES[name]()
    except KeyError:
        raise ValueError(f"unknown figure family {name!r}; expected one of {sorted(FIGURE_FAMILIES)}") from None


def random_rhombic(rng, low=0.0, high=1.0):
    return rhombic_generate({k: rng.uniform(low, high) for k in RHOMBIC_KEYS})


FAMILIES = ("uniform", "delta1", "kron", "position", "rhombic")


def generate(family, m=3, n=3, seed=0):
    """Generate one tensor of a named family (or ``figure:<name>``)."""
    if family.startswith("figure:"):
        return figure_family(family.split(":", 1)[1])
    rng = np.random.default_rng(seed)
    if family == "uniform":
        return Generated(random_ps(m, n, rng))
    if family == "delta1":
        return Generated(gen_delta1(m, n, seed))
    if family == "kron":
        return Generated(kron_build(KroneckerSpec.random_shared(m, n, rng)))
    if family == "position":
        return Generated(random_separable_member(m, n, rng, p=int(rng.integers(n))))
    if family == "rhombic":
        return Generated(random_rhombic(rng))
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES} or figure:<name>")
