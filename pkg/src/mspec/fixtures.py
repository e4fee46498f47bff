"""Bundled example tensors.

The JSON files under ``mspec/data`` are the reference copies; the builder
functions here regenerate the ones that follow from a formula.
"""

import itertools
import json
from importlib import resources

import numpy as np

from .io import tensor_from_dict
from .tensor import PsTensor, from_coo, shift

FIXTURES = ("B1", "B2", "B3", "B4", "ex42_B", "ex42_A", "ex51_A", "ex52_B")
RAW_FIXTURES = ("ex21_C",)


def _read(name):
    return json.loads(resources.files("mspec").joinpath("data").joinpath(f"{name}.json").read_text("utf-8"))


def load_fixture(name):
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; expected one of {FIXTURES}")
    return tensor_from_dict(_read(name))


def load_raw(name):
    """A bundled 4-array that is not partially symmetric (returned as ndarray)."""
    if name not in RAW_FIXTURES:
        raise KeyError(f"unknown raw fixture {name!r}; expected one of {RAW_FIXTURES}")
    doc = _read(name)
    return from_coo(doc["m"], doc["n"], doc["entries"]) if doc["format"] == "coo" else np.array(doc["entries"])


def b4(a=4.0, b=1.0, c=1.0, x=4.0, y=3.0, z=1.0):
    """2x2x2x2 tensor with six free parameters; its ES matrices D_1 and D_2 coincide."""
    t = np.zeros((2, 2, 2, 2))
    t[:, :, 0, 0] = [[a, b], [x, y]]
    t[:, :, 1, 0] = [[x, y], [a, b]]
    t[:, :, 0, 1] = [[b, c], [y, z]]
    t[:, :, 1, 1] = [[y, z], [b, c]]
    return PsTensor(t)


def ex42_B():
    """4x4x4x4 nonnegative tensor whose ES matrices C_l all coincide.

    b(i,1,k,1) = i+k, b(i,p,k,q) = i+k+|p-q| for p != q, and the diagonal
    blocks b(i,t,k,t), t >= 2, fill the slice sums up to those of t = 1.
    """
    r = range(4)
    b = np.zeros((4, 4, 4, 4))
    for i, k, p, q in itertools.product(r, r, r, r):
        if p != q:
            b[i, p, k, q] = (i + 1) + (k + 1) + abs(p - q)
    for i, k in itertools.product(r, r):
        b[i, 0, k, 0] = (i + 1) + (k + 1)
    for i, k in itertools.product(r, r):
        target = b[i, 0, k, :].sum()
        for t in range(1, 4):
            b[i, t, k, t] = target - (b[i, t, k, :].sum() - b[i, t, k, t])
    return PsTensor(b)


def ex42_A():
    return shift(ex42_B(), -4.0)


def ex51_A():
    """2x2x2x2 Z-tensor: a1111 = a2222 = 13, a1122 = -7, a1212 = 6, a2121 = 5."""
    return PsTensor(from_coo(2, 2, [[1, 1, 1, 1, 13], [2, 2, 2, 2, 13], [1, 1, 2, 2, -7],
                                    [1, 2, 1, 2, 6], [2, 1, 2, 1, 5]]))


def ex52_B():
    """Rhombic tensor with nine nonzero elasticities (symmetric images filled in)."""
    vals = {"1111": 1, "2222": 2, "3333": 3, "1122": 4, "2233": 5,
            "3311": 6, "2323": 7, "1313": 8, "1212": 9}
    return PsTensor(from_coo(3, 3, [[int(c) for c in k] + [v] for k, v in vals.items()]))


def ex21_C_items():
    """Listed entries of the raw rhombic elasticity tensor (1-based COO)."""
    listed = {"1111": 6, "2222": 8, "3333": 10, "1122": 1, "2211": 1, "2233": 2, "3322": 2,
              "1133": 3, "3311": 3, "2323": 4, "3223": 4, "2332": 4, "3232": 4, "1212": 5,
              "2112": 5, "1221": 5, "2121": 5, "1313": 6, "3113": 6, "1331": 6, "3131": 6}
    return [[int(c) for c in k] + [v] for k, v in listed.items()]


def ex21_C_raw():
    c = np.zeros((3, 3, 3, 3))
    for i, j, k, l, v in ex21_C_items():
        c[i - 1, j - 1, k - 1, l - 1] = v
    return c


def b2_listed():
    """B2 as its nine listed diagonal entries b_ijij."""
    diag = {(1, 1): 6, (1, 2): 5, (1, 3): 6, (2, 1): 5, (2, 2): 8,
            (2, 3): 4, (3, 1): 6, (3, 2): 4, (3, 3): 10}
    return PsTensor(from_coo(3, 3, [[i, j, i, j, v] for (i, j), v in diag.items()]))


BUILDERS = {
    "B2": b2_listed,
    "B4": b4,
    "ex42_B": ex42_B,
    "ex42_A": ex42_A,
    "ex51_A": ex51_A,
    "ex52_B": ex52_B,
}
