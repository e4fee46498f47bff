"""Final BIM value from the unfolding start versus the MES start, against the oracle."""

import argparse

from mspec.bim import BimConfig, bim_solve
from mspec.fixtures import FIXTURES, load_fixture
from mspec.oracle import global_max_multistart
from mspec.tensor import PsTensor, diagonal_mask


def cases():
    for name in FIXTURES:
        yield name, load_fixture(name)
    A = load_fixture("ex51_A")
    # the nonnegative part of the elasticity example, 13*I - A
    yield "13I-A", PsTensor(13.0 * diagonal_mask(A.m, A.n) - A.entries)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=1e-8)
    args = ap.parse_args()
    print(f"{'tensor':<8}{'oracle':>12}{'unfold':>12}{'iters':>7}{'mes':>12}{'iters':>7}")
    for name, A in cases():
        shift = "es_upper" if A.flags.nonnegative else "wang_tau"
        best = global_max_multistart(A, restarts=100).best.lam
        row = [f"{name:<8}{best:>12.6f}"]
        for init in ("unfold", "mes"):
            res = bim_solve(A, BimConfig(shift=shift, init=init, tol=args.tol))
            flag = "" if abs(res.eigenpair.lam - best) <= 1e-5 else "*"
            row.append(f"{res.eigenpair.lam:>11.6f}{flag or ' '}{res.iterations:>7}")
        print("".join(row))
    print("* local value below the oracle maximum")


if __name__ == "__main__":
    main()
