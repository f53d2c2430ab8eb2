"""Command-line interface.

Subcommands: ``best``, ``estimate-omega``, ``aaa``, ``sweep`` and ``eval``.
Exit codes: 0 success, 1 runtime or domain error, 2 not converged,
64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .aaa_lawson import (
    TestNodeSet, aaa, adaptive_test_nodes, detect_interpolation_nodes, lawson,
)
from .driver import BestApproxConfig, StrategyChoice, compute_best
from .equi_metrics import local_error_maxima, sampled_max_error
from .interpolation import NodeSet
from .numerics import (
    BarycentricRational, approximation_error, evaluate_imag, phase_error_values, poles_zeros,
)
from .omega_estimate import estimate, omega_auto

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2
EXIT_USAGE = 64

TRACE_HEADER = ["iter", "uniform_error", "delta", "strategy", "alternating"]
SWEEP_HEADER = ["n", "omega", "method", "error", "delta", "iterations", "seconds"]
EVAL_HEADER = ["x", "re", "im", "abs_err", "phase_err"]

STRATEGIES = {
    "combined": StrategyChoice.COMBINED,
    "brasil": StrategyChoice.BRASIL_ONLY,
    "maehly": StrategyChoice.MAEHLY_ONLY,
}

REFERENCE_OMEGAS = {
    32: [95.48, 91.35, 84.16, 77.86, 72.19, 67.03, 62.29],
    256: [797.18, 791.45, 780.93, 771.16, 761.89, 753.01, 744.44],
}
#: Equispaced test node counts for AAA per degree; 4600 is an alternative for n=256.
AAA_TEST_COUNTS = {32: 4900, 256: 35000}
OMEGA_GRID = {"n": [8, 32, 256], "eps": [1e-2, 1e-6, 1e-12]}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------- documents

def _num(v):
    v = float(v)
    return v if math.isfinite(v) else None


def _list(a):
    if a is None:
        return None
    return [_num(v) for v in np.asarray(a, dtype=float)]


def approximant_document(r: BarycentricRational, omega, *, nodes=None, report=None,
                         iterations=0, strategy="", converged=False, uniform_error=None,
                         extra=None):
    """JSON-ready dictionary describing an approximant and its error report."""
    pz = poles_zeros(r)
    lower = upper = None
    if report is not None:
        uniform_error = report.uniform_error
        if report.alternating and report.uniform_error < 2:
            lower, upper = float(np.min(report.eps)), float(report.uniform_error)
    doc = {
        "n": int(r.degree),
        "omega": float(omega),
        "support_nodes": _list(r.support_nodes),
        "weight_real": _list(r.weights.real),
        "weight_imag": _list(r.weights.imag),
        "support_value_real": _list(r.support_values.real),
        "support_value_imag": _list(r.support_values.imag),
        "centered_weights": _list(None if r.centered is None else np.real(r.centered)),
        "phase_offsets": _list(r.phase_offsets),
        "interp_nodes": _list(None if nodes is None else nodes.nodes),
        "eta": _list(None if report is None else report.eta),
        "eps": _list(None if report is None else report.eps),
        "delta": None if report is None else _num(report.delta),
        "uniform_error": None if uniform_error is None else _num(uniform_error),
        "lower_bound": lower,
        "upper_bound": upper,
        "poles_real": _list(pz.poles.real),
        "poles_imag": _list(pz.poles.imag),
        "zeros_real": _list(pz.zeros.real),
        "zeros_imag": _list(pz.zeros.imag),
        "iterations": int(iterations),
        "strategy": strategy,
        "converged": bool(converged),
        "tool_version": __version__,
    }
    if extra:
        doc.update(extra)
    return doc


def load_approximant(path):
    """``(r, omega, document)`` from a JSON approximant document."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    omega = float(doc["omega"])
    s = np.asarray(doc["support_nodes"], dtype=float)
    if doc.get("centered_weights") is not None:
        psi = doc.get("phase_offsets")
        r = BarycentricRational.from_centered(
            s, np.asarray(doc["centered_weights"], dtype=float), omega,
            None if psi is None else np.asarray(psi, dtype=float))
    else:
        w = np.asarray(doc["weight_real"], dtype=float) + 1j * np.asarray(doc["weight_imag"], dtype=float)
        f = (np.asarray(doc["support_value_real"], dtype=float)
             + 1j * np.asarray(doc["support_value_imag"], dtype=float))
        r = BarycentricRational(s, w, f)
    return r, omega, doc


def _write_json(doc, path):
    text = json.dumps(doc, indent=1, allow_nan=False) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_csv(header, rows, path):
    if path is None or path == "-":
        _emit_csv(sys.stdout, header, rows)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _emit_csv(fh, header, rows)


def _emit_csv(fh, header, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return v


def _read_nodes(path):
    """Interpolation nodes from a JSON document or a one-per-line text file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        vals = [float(tok) for tok in text.replace(",", " ").split()]
        return NodeSet.from_points(vals)
    pts = doc["interp_nodes"] if isinstance(doc, dict) else doc
    return NodeSet.from_points(pts)


# ---------------------------------------------------------------- commands

def cmd_best(args):
    omega = args.omega if args.omega is not None else omega_auto(args.n, args.eps)
    config = BestApproxConfig(n=args.n, omega=omega, tol_delta=args.tol_delta,
                              max_iter=args.max_iter, strategy=STRATEGIES[args.strategy])
    init = _read_nodes(args.seed_nodes) if args.seed_nodes else None
    res = compute_best(config, init)
    doc = approximant_document(res.rational, omega, nodes=res.nodes, report=res.report,
                               iterations=res.iterations, strategy=args.strategy,
                               converged=res.converged)
    _write_json(doc, args.out)
    if args.trace:
        rows = [[i + 1, _fmt(rec.uniform_error), _fmt(rec.delta),
                 "" if rec.strategy_used is None else rec.strategy_used.value,
                 _fmt(rec.alternating)] for i, rec in enumerate(res.trace)]
        _write_csv(TRACE_HEADER, rows, args.trace)
    return EXIT_OK if res.converged else EXIT_NOT_CONVERGED


def cmd_estimate_omega(args):
    omega, method = estimate(args.n, args.eps, args.method)
    print(f"{omega!r} {method}")
    return EXIT_OK


def run_aaa(n, omega, test_nodes, lawson_iters):
    """AAA (optionally Lawson) run and its document fields."""
    if test_nodes == "adaptive":
        tests = adaptive_test_nodes(omega, n)
    else:
        tests = TestNodeSet.equispaced(int(test_nodes))
    r = aaa(omega, tests, n)
    r, state = lawson(r, omega, tests, lawson_iters)
    err = sampled_max_error(r, omega)
    nodes = detect_interpolation_nodes(r, omega)
    report = None
    if nodes is not None:
        report = local_error_maxima(r, omega, nodes)
        if not (report.alternating and report.uniform_error < 2):
            nodes, report = None, None
    return r, state, err, nodes, report, tests


def cmd_aaa(args):
    if args.test_nodes != "adaptive":
        try:
            int(args.test_nodes)
        except ValueError:
            raise UsageError("--test-nodes takes an integer or 'adaptive'") from None
    r, state, err, nodes, report, tests = run_aaa(args.n, args.omega, args.test_nodes, args.lawson)
    converged = report is not None
    method = "aaa-lawson" if args.lawson > 0 else "aaa"
    extra = {
        "test_nodes": len(tests),
        "test_node_kind": tests.kind.value,
        "uniform_error": err,
    }
    doc = approximant_document(r, args.omega, nodes=nodes, report=report,
                               iterations=state.iteration, strategy=method,
                               converged=converged, uniform_error=err, extra=extra)
    _write_json(doc, args.out)
    if args.trace:
        rows = [[i + 1, _fmt(e)] for i, e in enumerate(state.error_history)]
        _write_csv(["iter", "error"], rows, args.trace)
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def _sweep_tasks(preset, only_n):
    tasks = []
    if preset in ("table2-n32", "table2-n256"):
        n = 32 if preset.endswith("n32") else 256
        tasks = [("best", n, w, None) for w in REFERENCE_OMEGAS[n]]
    elif preset == "table3":
        for n in (32, 256):
            tasks += [("aaa", n, w, AAA_TEST_COUNTS[n]) for w in REFERENCE_OMEGAS[n]]
            tasks += [("aaa-adaptive", n, w, "adaptive") for w in REFERENCE_OMEGAS[n]]
    elif preset == "omega-grid":
        tasks = [("best-auto", n, omega_auto(n, eps), eps)
                 for n in OMEGA_GRID["n"] for eps in OMEGA_GRID["eps"]]
    if only_n is not None:
        tasks = [t for t in tasks if t[1] == only_n]
    return tasks


def _sweep_row(task):
    method, n, omega, arg = task
    t0 = time.perf_counter()
    if method.startswith("best"):
        res = compute_best(BestApproxConfig(n=n, omega=omega))
        err, delta, its = res.report.uniform_error, res.report.delta, res.iterations
    else:
        _, state, err, _, report, _ = run_aaa(n, omega, arg, 0)
        delta = None if report is None else report.delta
        its = 0
    return [n, _fmt(omega), method, _fmt(err), "" if delta is None else _fmt(delta), its,
            f"{time.perf_counter() - t0:.3f}"]


SWEEP_PRESETS = ("table2-n32", "table2-n256", "table3", "omega-grid")


def cmd_sweep(args):
    if args.preset not in SWEEP_PRESETS:
        raise UsageError(f"unknown preset {args.preset!r}; choose from {', '.join(SWEEP_PRESETS)}")
    tasks = _sweep_tasks(args.preset, args.only_n)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_row, tasks))
    else:
        rows = [_sweep_row(t) for t in tasks]
    _write_csv(SWEEP_HEADER, rows, args.out)
    return EXIT_OK


def _read_points(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    vals = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        tok = line.split(",")[0].strip()
        try:
            vals.append(float(tok))
        except ValueError:
            if vals:
                raise
            # header line
    return np.asarray(vals, dtype=float)


def cmd_eval(args):
    try:
        r, omega, _ = load_approximant(args.approx)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise RuntimeError(f"malformed approximant document: {exc}") from exc
    x = _read_points(args.points) if args.points else np.linspace(-1.0, 1.0, args.grid)
    vals = evaluate_imag(r, x)
    err = approximation_error(r, omega, x)
    ph = phase_error_values(r, omega, x)
    rows = [[_fmt(a), _fmt(v.real), _fmt(v.imag), _fmt(e), _fmt(p)]
            for a, v, e, p in zip(x, vals, err, ph)]
    _write_csv(EVAL_HEADER, rows, args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser():
    p = _Parser(prog="uniexp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    b = sub.add_parser("best", help="compute the unitary best approximant")
    b.add_argument("--n", type=_positive_int, required=True)
    g = b.add_mutually_exclusive_group(required=True)
    g.add_argument("--omega", type=float)
    g.add_argument("--eps", type=float, help="target error; omega from the automatic estimate")
    b.add_argument("--tol-delta", type=float, default=1e-6)
    b.add_argument("--max-iter", type=_positive_int, default=100)
    b.add_argument("--strategy", choices=sorted(STRATEGIES), default="combined")
    b.add_argument("--out")
    b.add_argument("--trace")
    b.add_argument("--seed-nodes")
    b.set_defaults(func=cmd_best)

    e = sub.add_parser("estimate-omega", help="a-priori omega for a target error")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--eps", type=float, required=True)
    e.add_argument("--method", choices=["auto", "experimental", "asymptotic"], default="auto")
    e.set_defaults(func=cmd_estimate_omega)

    a = sub.add_parser("aaa", help="AAA and AAA-Lawson approximation")
    a.add_argument("--n", type=_positive_int, required=True)
    a.add_argument("--omega", type=float, required=True)
    a.add_argument("--test-nodes", default="4900", help="count of equispaced nodes or 'adaptive'")
    a.add_argument("--lawson", type=int, default=0, help="Lawson steps (0 = AAA only)")
    a.add_argument("--out")
    a.add_argument("--trace")
    a.set_defaults(func=cmd_aaa)

    s = sub.add_parser("sweep", help="run a preset batch of experiments")
    s.add_argument("--preset", required=True)
    s.add_argument("--out")
    s.add_argument("--jobs", type=_positive_int, default=1)
    s.add_argument("--only-n", type=int)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("eval", help="evaluate a stored approximant")
    v.add_argument("--approx", required=True)
    pts = v.add_mutually_exclusive_group(required=True)
    pts.add_argument("--points")
    pts.add_argument("--grid", type=_positive_int)
    v.add_argument("--out")
    v.set_defaults(func=cmd_eval)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(parser.format_usage().strip())
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:
        print(f"uniexp: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
