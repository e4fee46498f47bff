"""Command-line interface: ``mspec <command> [options]``.

Exit codes: 0 success, 1 usage or parse error, 2 not certified / not
applicable, 3 refuted (not an entanglement witness), 4 numeric failure.
"""

import argparse
import csv
import io as _io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict

import numpy as np

from . import __version__
from .bim import BimConfig, bim_solve
from .bounds import bound_report, lower_mes, tau1_li, tau2_li, tau_wang, upper_es
from .elasticity import certify_strong_ellipticity, scan_eta
from .errors import DegenerateDimension, MSpecError, NotApplicable
from .exact import solve_exact
from .families import FAMILIES, FIGURE_FAMILIES, generate
from .io import dumps, load_tensor, tensor_to_dict, to_jsonable
from .oracle import global_max_multistart, grid_search
from .structure import structure_report
from .tensor import random_ps

EXIT_OK, EXIT_USAGE, EXIT_NOT_CERTIFIED, EXIT_REFUTED, EXIT_NUMERIC = 0, 1, 2, 3, 4

COMPARE_COLUMNS = ("id", "m", "n", "R1", "R2", "tau", "tau1", "tau2", "lowerC", "lowerD",
                   "bim_lambda", "bim_iters", "t_R_ms", "t_tau_ms", "t_tau1_ms", "t_tau2_ms",
                   "t_bim_ms")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Timer:
    def __init__(self):
        self.stages = {}

    def __call__(self, name):
        timer = self

        class _Stage:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.stages[name] = (time.perf_counter() - self.t0) * 1e3

        return _Stage()


def manifest(args, timer, inputs=()):
    config = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    return {
        "command": args.command,
        "inputs": [str(p) for p in inputs],
        "config": to_jsonable(config),
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "timings_ms": {k: round(v, 3) if getattr(args, "timings", True) else 0.0
                       for k, v in timer.stages.items()},
    }


def emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def emit_json(args, payload, timer, inputs=()):
    payload = dict(payload)
    payload["manifest"] = manifest(args, timer, inputs)
    emit(args, dumps(payload) + "\n")


def _one_based(v):
    return None if v is None else int(v) + 1


def _eigenpair_dict(e):
    return {"lambda": e.lam, "x": e.x, "y": e.y, "residual_x": e.residual_x,
            "residual_y": e.residual_y}


# ---- commands -------------------------------------------------------------

def cmd_validate(args):
    t = _Timer()
    with t("validate"):
        A = load_tensor(args.path, repair=args.repair)
    emit_json(args, {"valid": True, "m": A.m, "n": A.n, "scale": A.scale,
                     "repaired": A.repaired, "flags": asdict(A.flags)}, t, [args.path])
    return EXIT_OK


def cmd_bounds(args):
    t = _Timer()
    A = load_tensor(args.path)
    with t("bounds"):
        rep = bound_report(A)
    d = asdict(rep)
    d["l_star"] = _one_based(rep.l_star)
    d["i_star"] = _one_based(rep.i_star)
    emit_json(args, d, t, [args.path])
    return EXIT_OK


def _parse_shift(s):
    names = {"wang": "wang_tau", "li1": "li_tau1", "li2": "li_tau2", "es": "es_upper"}
    if s in names:
        return names[s]
    if s in names.values():
        return s
    if s.startswith("value:"):
        return float(s.split(":", 1)[1])
    raise argparse.ArgumentTypeError(f"bad shift {s!r}: use wang|li1|li2|es|value:<eta>")


def _parse_init(s):
    if s in ("unfold", "mes"):
        return s, None
    if s.startswith("random:"):
        return "random", int(s.split(":", 1)[1])
    raise argparse.ArgumentTypeError(f"bad init {s!r}: use unfold|mes|random:<seed>")


def cmd_solve(args):
    t = _Timer()
    A = load_tensor(args.path)
    init, seed = args.init
    cfg = BimConfig(shift=args.shift, init=init, seed=seed, tol=args.tol,
                    max_iter=args.max_iter, stop=args.stop)
    with t("bim"):
        res = bim_solve(A, cfg)
    if args.history_csv:
        with open(args.history_csv, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("iteration", "lambda_shifted", "lambda"))
            for k, v in enumerate(res.history):
                w.writerow((k, repr(float(v)), repr(float(v - res.shift_value))))
    emit_json(args, {
        "eigenpair": _eigenpair_dict(res.eigenpair),
        "iterations": res.iterations,
        "converged": res.converged,
        "shift_value": res.shift_value,
        "history": res.history,
    }, t, [args.path])
    return EXIT_OK


def cmd_exact(args):
    t = _Timer()
    A = load_tensor(args.path)
    with t("exact"):
        try:
            sol = solve_exact(A)
        except NotApplicable as exc:
            emit_json(args, {"applicable": False, "reason": str(exc)}, t, [args.path])
            return EXIT_NOT_CERTIFIED
    emit_json(args, {"applicable": True, "method": sol.method,
                     "eigenpair": _eigenpair_dict(sol.eigenpair)}, t, [args.path])
    return EXIT_OK


def cmd_structure(args):
    t = _Timer()
    A = load_tensor(args.path)
    with t("structure"):
        rep = structure_report(A)
    d = asdict(rep)
    d["upsilon1_p"] = _one_based(rep.upsilon1_p)
    d["upsilon2_q"] = _one_based(rep.upsilon2_q)
    emit_json(args, d, t, [args.path])
    return EXIT_OK


def cmd_certify(args):
    t = _Timer()
    A = load_tensor(args.path)
    with t("certify"):
        cert = None
        if args.scan:
            cert = scan_eta(A)
        if cert is None:
            cert = certify_strong_ellipticity(A, args.eta)
    emit_json(args, asdict(cert), t, [args.path])
    return {"certified_strong_ellipticity": EXIT_OK, "not_certified": EXIT_NOT_CERTIFIED,
            "refuted_not_ew": EXIT_REFUTED}[cert.verdict]


def cmd_oracle(args):
    t = _Timer()
    A = load_tensor(args.path)
    with t("oracle"):
        if args.grid_resolution:
            res = grid_search(A, args.grid_resolution)
        else:
            res = global_max_multistart(A, args.restarts, args.seed)
    emit_json(args, {"method": res.method, "restarts": res.restarts,
                     "best": _eigenpair_dict(res.best),
                     "local_values": sorted(res.local_values, reverse=True)}, t, [args.path])
    return EXIT_OK


def cmd_generate(args):
    t = _Timer()
    with t("generate"):
        g = generate(args.family, args.m, args.n, args.seed)
    doc = tensor_to_dict(g.tensor, args.format)
    doc["manifest"] = manifest(args, t)
    doc["manifest"]["clamps"] = g.clamps
    emit(args, dumps(doc) + "\n")
    return EXIT_OK


def _ms(f):
    t0 = time.perf_counter()
    v = f()
    return v, (time.perf_counter() - t0) * 1e3


def compare_row(item):
    """One CSV row of bounds, BIM value and per-bound wall time."""
    ident, A, tol, timings = item
    es, t_R = _ms(lambda: upper_es(A))
    tau, t_tau = _ms(lambda: tau_wang(A))
    tau1, t_tau1 = _ms(lambda: tau1_li(A))
    try:
        tau2, t_tau2 = _ms(lambda: tau2_li(A))
    except DegenerateDimension:
        tau2, t_tau2 = float("nan"), 0.0
    lo = lower_mes(A)
    res, t_bim = _ms(lambda: bim_solve(A, BimConfig(shift="es_upper", tol=tol)))
    times = (t_R, t_tau, t_tau1, t_tau2, t_bim) if timings else (0.0,) * 5
    times = tuple(f"{v:.3f}" for v in times)
    return (ident, A.m, A.n, es.R1, es.R2, tau, tau1, tau2, lo.lower_C, lo.lower_D,
            res.eigenpair.lam, res.iterations) + times


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    return str(v)


def _compare_items(args):
    if args.dir:
        names = sorted(p for p in os.listdir(args.dir) if p.endswith(".json"))
        for name in names:
            yield name[:-5], load_tensor(os.path.join(args.dir, name)), args.tol, args.timings
    else:
        rng = np.random.default_rng(args.seed)
        for k in range(args.count):
            yield str(k + 1), random_ps(args.m, args.n, rng), args.tol, args.timings


def cmd_compare(args):
    t = _Timer()
    items = list(_compare_items(args))
    with t("compare"):
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(compare_row, items, chunksize=16))
        else:
            rows = [compare_row(it) for it in items]
    buf = _io.StringIO()
    buf.write("# manifest: " + json.dumps(manifest(args, t, [args.dir] if args.dir else [])) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COMPARE_COLUMNS)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    emit(args, buf.getvalue())
    return EXIT_OK


# ---- parser ---------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--tol", type=float, default=1e-6)

    p = _Parser(prog="mspec", description="M-eigenvalues of partially symmetric tensors.")
    p.add_argument("--version", action="version", version=f"mspec {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, path=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if path:
            sp.add_argument("path", help="tensor JSON file")
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check partial symmetry and report class flags")
    sp.add_argument("--repair", action="store_true", help="symmetrize instead of rejecting")
    add("bounds", cmd_bounds, "all lower and upper bounds of the M-spectral radius")
    sp = add("solve", cmd_solve, "greatest M-eigenpair by the block improvement method")
    sp.add_argument("--shift", type=_parse_shift, default="es_upper")
    sp.add_argument("--init", type=_parse_init, default=("unfold", None))
    sp.add_argument("--max-iter", type=int, default=10_000)
    sp.add_argument("--stop", choices=("residual", "lambda"), default="residual")
    sp.add_argument("--history-csv")
    add("exact", cmd_exact, "closed-form eigenpair for special classes")
    add("structure", cmd_structure, "structured-class membership")
    sp = add("certify", cmd_certify, "strong-ellipticity certificate")
    sp.add_argument("--eta", type=float)
    sp.add_argument("--scan", action="store_true", help="scan eta over [floor, 2*floor]")
    sp = add("oracle", cmd_oracle, "multistart or grid reference maximum")
    sp.add_argument("--restarts", type=int, default=200)
    sp.add_argument("--grid-resolution", type=int, default=0)
    sp = add("generate", cmd_generate, "generate a tensor from a named family", path=False)
    sp.add_argument("--family", required=True,
                    help=f"one of {', '.join(FAMILIES)} or figure:<{'|'.join(FIGURE_FAMILIES)}>")
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--format", choices=("dense", "coo"), default="dense")
    sp = add("compare", cmd_compare, "bound/BIM comparison CSV over many tensors", path=False)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--dir", help="directory of tensor JSON files")
    src.add_argument("--count", type=int, help="number of random uniform[0,1] tensors")
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--no-timings", dest="timings", action="store_false",
                    help="write zeros in the timing columns (byte-identical reruns)")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MSpecError as exc:
        print(f"error[{exc.tag}]: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
