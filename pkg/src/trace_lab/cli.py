"""``trace-lab`` command line.

Exit codes: 0 every check passed, 1 a property failed, 2 usage or parse
error, 3 construction failure.
"""
import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import binomials as bn
from . import construct as cs
from . import decompose as dc
from . import hypergraph as hg
from . import oracle
from .edgelist import read_edge_list, write_edge_rows
from .errors import ConstructionFailure, ParseError, TraceLabError
from .rng import DEFAULT_SEED
from .sampling import (
    MAX_LOCAL_BITS,
    SubsetUnion,
    maximal_edges_if_down_closed,
    sample_windows,
    trace_counts,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONSTRUCTION = 0, 1, 2, 3


def _clean(obj):
    """Round floats to 9 significant digits; non-finite numbers become "vacuous"."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if not math.isfinite(v):
            return "vacuous"
        return float(f"{v:.9g}")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return str(obj)


def dumps(obj):
    return json.dumps(_clean(obj), indent=2, sort_keys=True) + "\n"


def _write(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def record(prop, params, expected, observed, passed, witness=None):
    out = {"property": prop, "params": params, "expected": expected,
           "observed": observed, "pass": bool(passed)}
    if witness is not None:
        out["witness"] = witness
    return out


def _fmt(v):
    return f"{v:.9g}" if math.isfinite(v) else "vacuous"


# construct -----------------------------------------------------------------

def _construct_checks(args, spec, rep):
    checks = []
    params = spec.as_dict()
    if rep.mode == "sparse-kk":
        limit = 3 * spec.r
        checks.append(record("E1", params, "max pairwise |S_j & S_j'| < 3r",
                             {"max_pairwise_intersection": rep.max_pairwise_intersection, "limit": limit},
                             rep.e1_holds))
        ell = rep.stats["ell"]
        want = ell * math.comb(spec.x, spec.k)
        checks.append(record("edge-count", params, "|F| = l C(x,k) before trimming",
                             {"untrimmed_size": rep.untrimmed_size, "expected": want},
                             rep.untrimmed_size == want))
        for i in range(spec.k + 1):
            c = cs.verify_shadow_upper(rep, spec, i)
            checks.append(record("shadow-upper", {**params, "i": i}, "|shadow(F,i)| <= l C(x,i)",
                                 c._asdict(), c.holds))
        st = cs.verify_wp_upper(rep, spec, "sample", args.trials, threads=args.threads)
        checks.append(record("wp-upper", {**params, "trials": args.trials},
                             "sampled induced count <= 6 C(x,k) n (sample max is a lower bound on wp)",
                             st.as_dict(), st.holds))
    else:
        checks.append(record("E1", params, "|F| >= n^r",
                             {"size": rep.size, "n^r": spec.n ** spec.r}, rep.e1_holds))
        est = cs.estimate_trace_ub(rep, spec, args.trials, threads=args.threads)
        checks.append(record("X-mean", {**params, "trials": args.trials},
                             "mean of sum_j 2^|S_j & I| <= 4 n^mu within 99% CI",
                             est["X"], est["x_mean_within_ci"]))
        checks.append(record("trace-max", {**params, "trials": args.trials},
                             "sampled max |F_I| <= 8 n^mu",
                             est["trace"], est["trace_max_within_bound"]))
        checks.append(record("trace-sandwich-lower", params,
                             "trace_tau_lower(n,r,alpha) <= sampled max trace",
                             {"lower_bound": est["lower_bound"], "sampled_max": est["trace"]["max"]},
                             est["sandwich_lower_holds"]))
    return checks


def cmd_construct(args):
    if args.mode == "sparse-kk" and (args.k is None or args.x is None):
        args.parser.error("--mode sparse-kk requires --k and --x")
    spec = cs.ConstructionSpec(
        n=args.n, r=args.r, alpha=args.alpha, k=args.k, x=args.x, ell=args.ell,
        seed=args.seed, max_retries=args.max_retries, relaxed=args.relaxed,
    )
    try:
        if args.mode == "sparse-kk":
            rep = cs.build_sparse_kk_extremal(spec, threads=args.threads)
        else:
            rep = cs.build_trace_ub_family(spec, threads=args.threads)
    except ConstructionFailure as exc:
        failure = record("construction", spec.as_dict(), "E1 within max_retries",
                         {"attempts": exc.attempts, "histogram": exc.histogram}, False)
        _write(dumps({"construction": None, "checks": [failure]}), args.report or f"{args.mode}-report.json")
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    spec = rep.spec
    checks = _construct_checks(args, spec, rep)
    out = args.output or f"{args.mode}-family.txt"
    write_edge_rows(spec.n, rep.size, rep.vertex_lists(), out)
    report = {"construction": rep.as_dict(), "checks": checks}
    _write(dumps(report), args.report or f"{args.mode}-report.json")
    ok = all(c["pass"] for c in checks)
    print(f"{args.mode}: |F|={rep.size} retries={rep.retries_used} checks={'pass' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


# bounds ----------------------------------------------------------------------

BOUNDS_COLUMNS = ["n", "r", "alpha", "mu", "lambda", "lower_exponent", "upper_exponent"]


def bounds_rows(ns, rs, alphas):
    rows = []
    for n in ns:
        for r in rs:
            for a in alphas:
                m = bn.mu(r, a)
                lam = bn.lambda_br(a)
                rows.append({"n": n, "r": r, "alpha": a, "mu": m, "lambda": lam,
                             "lower_exponent": r * lam, "upper_exponent": m})
    return rows


def _bounds_extra(row):
    n, r, a = row["n"], row["r"], row["alpha"]
    k = max(1, math.ceil(3 * r))
    lb = dc.trace_tau_lower(n, r, a)
    out = {
        "trace_tau_lower": lb.value, "trace_tau_lower_log2": lb.log2_value,
        "trace_tau_lower_vacuous": lb.vacuous, "log_loss": lb.log_loss,
        "trace_upper": 8 * n ** row["mu"],
        "sparse_kk_k": k,
        "sparse_kk_log2_c": math.ceil(round(2 * r, 9)) * math.log2(8 * k)
        - math.ceil(round(r, 9)) * math.log2(a),
        "sparse_kk_log2_C": math.ceil(round(4 * r, 9)) * math.log2(8 * k / a) + math.log2(math.log2(n)),
    }
    return out


def cmd_bounds(args):
    rows = bounds_rows(args.n, args.r, args.alpha)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(BOUNDS_COLUMNS)
        for row in rows:
            w.writerow([row["n"], _fmt(row["r"]), _fmt(row["alpha"])]
                       + [_fmt(row[c]) for c in BOUNDS_COLUMNS[3:]])
        _write(buf.getvalue(), args.output)
    else:
        _write(dumps([{**row, **_bounds_extra(row)} for row in rows]), args.output)
    return EXIT_OK


# verify ----------------------------------------------------------------------

def cmd_verify(args):
    budget = oracle.OracleBudget(args.max_n, args.max_m, args.max_families, args.time_limit)
    reports = oracle.run_property_suite(args.suite, budget, args.seed)
    records = [r.as_dict() for r in reports]
    report_path = args.report or "verify-report.json"
    _write(dumps(records), report_path)
    failed = [r for r in reports if not r.passed]
    for r in reports:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.property} ({r.observed.get('checked', 0)} checks)")
    if failed:
        base = Path(report_path if report_path != "-" else "verify-report.json")
        for r in failed:
            wpath = base.with_name(f"{base.stem}.{r.property}.witness.txt")
            wpath.write_text(r.witness or "", encoding="utf-8")
            print(f"witness: {wpath}")
        return EXIT_FAIL
    return EXIT_OK


# analyze ---------------------------------------------------------------------

def cmd_analyze(args):
    F = read_edge_list(args.input, labels=args.labels)
    maximal = maximal_edges_if_down_closed(F)
    out = {"n": F.n, "m": len(F), "uniformity": F.uniformity,
           "max_edge_size": F.max_edge_size(), "down_closed": maximal is not None or not len(F)}
    checks = []
    if args.trace is not None:
        out["trace"] = hg.trace_value(F, args.trace)
        out["trace_window"] = args.trace
    if args.shadow is not None:
        out["shadow"] = hg.shadow_size(F, args.shadow)
        out["shadow_i"] = args.shadow
    if args.wp is not None:
        out["wp"] = hg.wp(F, args.wp)
        out["wp_i"] = args.wp
    if args.vc:
        out["vc"] = hg.vc_dimension(F)
    if args.sample_trace:
        q = args.window if args.window is not None else math.floor(args.alpha * F.n)
        if not 0 <= q <= F.n:
            args.parser.error(f"window {q} outside [0, {F.n}]")
        if maximal is not None and F.max_edge_size() <= MAX_LOCAL_BITS:
            stat = SubsetUnion.build(F.n, [hg.bits(e) for e in maximal]).window_counts
        else:
            stat = lambda member: trace_counts(F, member)
        vals = sample_windows(F.n, q, args.sample_trace, args.seed, stat, tag=4, threads=args.threads)
        r = args.r if args.r is not None else math.log(max(len(F), 1)) / math.log(F.n)
        bound = 8 * F.n ** bn.mu(r, args.alpha) if r >= 1 else math.inf
        st = cs._summary(vals, "sampled-lower-bound", bound)
        out["sampled_trace"] = st.as_dict()
        checks.append(record("trace-max", {"window": q, "trials": args.sample_trace, "r": r,
                                           "alpha": args.alpha},
                             "sampled max |F_I| <= 8 n^mu", st.as_dict(), st.holds))
    out["checks"] = checks
    _write(dumps(out), args.output)
    return EXIT_OK if all(c["pass"] for c in checks) else EXIT_FAIL


# parser ----------------------------------------------------------------------

def _positive(kind):
    def parse(text):
        v = kind(text)
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v
    return parse


def _alpha(text):
    v = float(text)
    if not 0 < v <= 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1], got {text}")
    return v


def _seed(text):
    return int(text, 0)


def build_parser():
    p = argparse.ArgumentParser(prog="trace-lab", description="Traces of hypergraphs: constructions, bounds and checks.")
    p.add_argument("--threads", type=_positive(int), default=None,
                   help="worker threads (default: TRACE_LAB_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a randomized extremal family")
    c.add_argument("--mode", choices=["sparse-kk", "trace-ub"], required=True)
    c.add_argument("--n", type=_positive(int), required=True)
    c.add_argument("--r", type=_positive(float), required=True)
    c.add_argument("--alpha", type=_alpha, required=True)
    c.add_argument("--k", type=_positive(int))
    c.add_argument("--x", type=_positive(int))
    c.add_argument("--ell", type=_positive(int))
    c.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    c.add_argument("--max-retries", type=int, default=16)
    c.add_argument("--relaxed", action="store_true", help="allow parameters outside the proven regime")
    c.add_argument("--trials", type=_positive(int), default=1000, help="random windows for verification")
    c.add_argument("--output", help="edge-list file (default <mode>-family.txt)")
    c.add_argument("--report", help="JSON report (default <mode>-report.json, '-' for stdout)")
    c.set_defaults(func=cmd_construct)

    b = sub.add_parser("bounds", help="tabulate exponents and constants")
    b.add_argument("--n", type=_positive(int), nargs="+", default=[1024])
    b.add_argument("--r", type=_positive(float), nargs="+", default=[2.0])
    b.add_argument("--alpha", type=_alpha, nargs="+", default=[0.5])
    b.add_argument("--format", choices=["csv", "json"], default="csv")
    b.add_argument("--output", help="file (default stdout)")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", choices=oracle.SUITE_NAMES, default="all")
    v.add_argument("--max-n", type=int, default=oracle.OracleBudget.max_n)
    v.add_argument("--max-m", type=int, default=oracle.OracleBudget.max_m)
    v.add_argument("--max-families", type=int, default=oracle.OracleBudget.max_families)
    v.add_argument("--time-limit", type=float, default=oracle.OracleBudget.time_limit)
    v.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    v.add_argument("--report", help="JSON report (default verify-report.json, '-' for stdout)")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="statistics of an edge-list family")
    a.add_argument("input")
    a.add_argument("--labels", action="store_true", help="vertex tokens are labels, not indices")
    a.add_argument("--trace", type=int, metavar="K", help="exact trace on K-vertex windows")
    a.add_argument("--shadow", type=int, metavar="I", help="exact shadow size on I-sets")
    a.add_argument("--wp", type=int, metavar="I", help="exact wp(F, I)")
    a.add_argument("--vc", action="store_true", help="VC dimension")
    a.add_argument("--sample-trace", type=_positive(int), metavar="TRIALS")
    a.add_argument("--window", type=int, help="window size for sampling (default floor(alpha n))")
    a.add_argument("--alpha", type=_alpha, default=0.5)
    a.add_argument("--r", type=_positive(float), help="exponent for the 8 n^mu check (default log m / log n)")
    a.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    a.add_argument("--output", help="file (default stdout)")
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.parser = parser
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TraceLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
