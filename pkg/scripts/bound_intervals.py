"""Print lower/upper bound intervals and the BIM value for the bundled 3x3 fixtures."""

import argparse

from mspec.bim import BimConfig, bim_solve
from mspec.bounds import bound_report
from mspec.fixtures import load_fixture


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", default=["B1", "B2", "B3"])
    args = ap.parse_args()
    print(f"{'tensor':<8}{'lower':>12}{'upper':>12}{'tau':>12}{'tau1':>12}{'bim':>12}")
    for name in args.names:
        A = load_fixture(name)
        rep = bound_report(A)
        lam = bim_solve(A, BimConfig(tol=1e-10)).eigenpair.lam
        lower = "n/a" if rep.best_lower is None else f"{rep.best_lower:.4f}"
        print(f"{name:<8}{lower:>12}{rep.best_upper:>12.4f}{rep.tau:>12.4f}{rep.tau1:>12.4f}{lam:>12.4f}")


if __name__ == "__main__":
    main()
