"""Batch verification harness: single checks, sweeps, tightness tables, means.

Subcommands: verify | sweep | tightness | means.  CSV and JSON outputs use a
fixed column order and shortest round-trip float formatting so identical
inputs always produce byte-identical files (schema version 1).

Exit codes: 0 all bounds hold, 1 a violation was found, 2 a convexity gate
failed (hypothesis not satisfied, not a violation), 3 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from . import bounds, coefficients, quadrature
from .convexity import check_alpha_m_convex, derivative_power
from .core import (DomainError, GateError, Interval, ParamError, Params,
                   corpus_by_id, make_report)
from .means import proposition_check

SCHEMA_VERSION = 1

COLUMNS = [
    "schema", "fn", "a", "b", "alpha", "m", "lambda", "mu", "q", "theorem",
    "status", "lhs", "rhs", "slack", "holds", "quad_error",
    "branch1", "branch2", "rhs_loose", "gate_violation",
]

QUADRATIC_ONLY = {"bop_m", "thm211", "thm22"}  # bounds needing q > 1


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


# ---------------------------------------------------------------------------
# Cached per-process building blocks for sweeps.

@lru_cache(maxsize=None)
def _cached_mean(fn_id: str, a: float, b: float, tol: float) -> tuple[float, float]:
    fn = corpus_by_id()[fn_id]
    res = quadrature.integrate(fn.f, (a, b), tol=tol)
    return res.value / (b - a), res.error_estimate / (b - a)


@lru_cache(maxsize=None)
def _cached_gate(fn_id: str, kind: str, upper: float, alpha: float, m: float,
                 q: float, grid_n: int):
    fn = corpus_by_id()[fn_id]
    if kind == "absdf":
        g = lambda x: abs(fn.df(x))
    elif kind == "f":
        g = fn.f
    else:
        g = derivative_power(fn, q)
    verdict = check_alpha_m_convex(g, upper, alpha, m, grid_n)
    return verdict.holds, verdict.worst_violation, verdict.witness


def _gate_for(fn_id: str, theorem: str, iv: Interval, p: Params, grid_n: int):
    upper = max(iv.b, iv.b / p.m)
    if theorem == "da":
        return _cached_gate(fn_id, "absdf", iv.b, 1.0, 1.0, 1.0, grid_n)
    if theorem == "sso":
        return _cached_gate(fn_id, "f", upper, p.alpha, p.m, 1.0, grid_n)
    if theorem == "bop_m":
        return _cached_gate(fn_id, "dpow", upper, 1.0, p.m, p.q, grid_n)
    return _cached_gate(fn_id, "dpow", upper, p.alpha, p.m, p.q, grid_n)


def eval_row(fn_id: str, a: float, b: float, alpha: float, m: float,
             lam: float, mu: float, q: float, theorem: str,
             quad_tol: float = 1e-9, holds_tol: float = 1e-12,
             gate_grid_n: int = 16) -> dict:
    """Evaluate one (config, theorem) cell and return a report row."""
    row = {c: None for c in COLUMNS}
    row.update({"schema": SCHEMA_VERSION, "fn": fn_id, "a": a, "b": b,
                "alpha": alpha, "m": m, "lambda": lam, "mu": mu, "q": q,
                "theorem": theorem})
    corpus = corpus_by_id()
    if fn_id not in corpus:
        row["status"] = "input_error"
        return row
    fn = corpus[fn_id]
    if theorem in QUADRATIC_ONLY and q == 1:
        row["status"] = "not_applicable"
        return row
    try:
        iv = Interval(a, b)
        p = Params(alpha=alpha, m=m, lam=lam, mu=mu, q=q)
        if theorem not in bounds.THEOREM_IDS:
            raise ParamError(f"unknown theorem {theorem!r}")
        if min(a, a / m) < fn.domain_min:
            row["status"] = "not_applicable"
            return row
    except (ParamError, DomainError):
        row["status"] = "input_error"
        return row

    holds_gate, worst, _witness = _gate_for(fn_id, theorem, iv, p, gate_grid_n)
    if not holds_gate:
        row["status"] = "gate_skipped"
        row["gate_violation"] = worst
        return row
    row["gate_violation"] = worst

    try:
        if theorem == "sso":
            lhs, err = _cached_mean(fn_id, a, b, quad_tol)
            rhs, branches = bounds.sso_rhs(fn, iv, alpha, m)
        else:
            if theorem in ("thm11", "thm211", "thm22"):
                wl, wm = lam, mu
            else:
                wl, wm = 1.0, 1.0
            mean, err = _cached_mean(fn_id, a, b, quad_tol)
            endpoint = (wl * float(fn.f(a)) + wm * float(fn.f(b))) / (wl + wm)
            lhs = abs(endpoint - mean)
            if theorem == "da":
                rhs, branches = bounds.da_rhs(fn, iv), {}
            elif theorem == "bop_m":
                rhs, branches = bounds.bop_m_rhs(fn, iv, m, q)
            elif theorem == "bop_am":
                rhs, branches = bounds.bop_am_rhs(fn, iv, alpha, m, q)
            elif theorem == "thm11":
                rhs, branches = bounds.thm11_rhs(fn, iv, p)
            elif theorem == "thm211":
                rhs, branches = bounds.thm211_rhs(fn, iv, p)
            else:
                rhs, branches = bounds.thm22_rhs(fn, iv, p)
    except (ParamError, DomainError):
        row["status"] = "input_error"
        return row

    report = make_report(theorem, float(lhs), float(rhs), float(err))
    # Tolerance on top of the quadrature error, widened by the caller's knob.
    holds = report.lhs <= report.rhs + report.quad_error + holds_tol
    row.update({"status": "ok" if holds else "violation",
                "lhs": report.lhs, "rhs": report.rhs, "slack": report.slack,
                "holds": holds, "quad_error": report.quad_error})
    keys = sorted(k for k in branches if k != "loose")
    if len(keys) >= 2:
        row["branch1"], row["branch2"] = branches[keys[0]], branches[keys[1]]
    row["rhs_loose"] = branches.get("loose")
    return row


def _eval_row_tuple(args) -> dict:
    return eval_row(*args)


# ---------------------------------------------------------------------------
# Sweep specification.

@dataclass
class SweepSpec:
    functions: list = field(default_factory=list)
    intervals: list = field(default_factory=list)  # list of (a, b)
    alpha: list = field(default_factory=lambda: [1.0])
    m: list = field(default_factory=lambda: [1.0])
    lam: list = field(default_factory=lambda: [1.0])
    mu: list = field(default_factory=lambda: [1.0])
    q: list = field(default_factory=lambda: [1.0])
    theorems: list = field(default_factory=lambda: list(bounds.THEOREM_IDS))
    quad_tol: float = 1e-9
    holds_tol: float = 1e-12

    def size(self) -> int:
        return (len(self.functions) * len(self.intervals) * len(self.alpha)
                * len(self.m) * len(self.lam) * len(self.mu) * len(self.q)
                * len(self.theorems))

    def configs(self):
        for fn_id, (a, b), alpha, m, lam, mu, q, theorem in itertools.product(
                self.functions, self.intervals, self.alpha, self.m,
                self.lam, self.mu, self.q, self.theorems):
            yield (fn_id, a, b, alpha, m, lam, mu, q, theorem,
                   self.quad_tol, self.holds_tol)


def default_sweep_spec() -> SweepSpec:
    """The full acceptance sweep: corpus x intervals x parameter grids."""
    grid = [0.0, 0.5, 1.0, 2.0, 5.0]
    return SweepSpec(
        functions=sorted(corpus_by_id()),
        intervals=[(0.0, 1.0), (1.0, 2.0), (0.5, 3.0), (2.0, 5.0)],
        alpha=[0.5, 1.0],
        m=[0.5, 1.0],
        lam=grid,
        mu=grid,
        q=[1.0, 2.0, 3.0],
    )


def parse_sweep_file(path: str) -> SweepSpec:
    """Flat ``key = comma separated values`` format; intervals as a:b pairs."""
    spec = SweepSpec()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParamError(f"{path}:{lineno}: expected 'key = values'")
            key, _, rest = line.partition("=")
            key = key.strip().lower()
            items = [s.strip() for s in rest.split(",") if s.strip()]
            if key in ("functions", "theorems"):
                setattr(spec, key, items)
            elif key == "intervals":
                pairs = []
                for item in items:
                    a, _, b = item.partition(":")
                    pairs.append((float(a), float(b)))
                spec.intervals = pairs
            elif key in ("alpha", "m", "lambda", "mu", "q"):
                setattr(spec, "lam" if key == "lambda" else key,
                        [float(s) for s in items])
            elif key in ("quad_tol", "holds_tol"):
                setattr(spec, key, float(items[0]))
            else:
                raise ParamError(f"{path}:{lineno}: unknown key {key!r}")
    if not spec.functions or not spec.intervals:
        raise ParamError(f"{path}: functions and intervals must be non-empty")
    return spec


def _row_sort_key(row):
    return (row["fn"], row["a"], row["b"], row["alpha"], row["m"],
            row["lambda"], row["mu"], row["q"], row["theorem"])


def run_sweep(spec: SweepSpec, jobs: int = 1) -> tuple[list, dict]:
    """Evaluate the full cross product; rows come back sorted and the
    summary counts every status plus the minimum observed slack."""
    configs = list(spec.configs())
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_eval_row_tuple, configs, chunksize=64))
    else:
        rows = [_eval_row_tuple(cfg) for cfg in configs]
    rows.sort(key=_row_sort_key)

    summary = {"total": len(rows), "holds": 0, "violations": 0,
               "gate_skipped": 0, "not_applicable": 0, "input_error": 0,
               "min_slack": None, "min_slack_config": None}
    for row in rows:
        status = row["status"]
        if status == "ok":
            summary["holds"] += 1
            if summary["min_slack"] is None or row["slack"] < summary["min_slack"]:
                summary["min_slack"] = row["slack"]
                summary["min_slack_config"] = _row_sort_key(row)
        elif status == "violation":
            summary["violations"] += 1
        elif status == "gate_skipped":
            summary["gate_skipped"] += 1
        elif status == "not_applicable":
            summary["not_applicable"] += 1
        else:
            summary["input_error"] += 1
    return rows, summary


# ---------------------------------------------------------------------------
# Output helpers.

def rows_to_csv(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_fmt(row.get(c)) for c in COLUMNS])
    return buf.getvalue()


def rows_to_json(rows: list) -> str:
    return json.dumps([{c: row.get(c) for c in COLUMNS} for row in rows],
                      indent=2, sort_keys=False) + "\n"


def _emit_rows(rows: list, fmt: str, out) -> None:
    if fmt == "csv":
        out.write(rows_to_csv(rows))
    elif fmt == "json":
        out.write(rows_to_json(rows))
    else:
        for row in rows:
            pairs = (f"{c}={_fmt(row.get(c))}" for c in COLUMNS
                     if row.get(c) is not None)
            out.write("  ".join(pairs) + "\n")


# ---------------------------------------------------------------------------
# Subcommands.

def cmd_verify(args) -> int:
    row = eval_row(args.fn, args.a, args.b, args.alpha, args.m, args.lam,
                   args.mu, args.q, args.theorem, quad_tol=args.tol)
    _emit_rows([row], args.format, sys.stdout)
    if args.crosscheck and row["status"] in ("ok", "violation"):
        residual = crosscheck_coefficients(args.alpha, args.lam, args.mu)
        print(f"crosscheck: max gamma deviation from quadrature oracle = {residual:.3e}")
    return {"ok": 0, "violation": 1, "gate_skipped": 2}.get(row["status"], 3)


def crosscheck_coefficients(alpha: float, lam: float, mu: float) -> float:
    """Largest deviation of the closed-form kernel moments from quadrature."""
    g = coefficients.gamma_coeffs(alpha, lam, mu)
    pairs = [
        (g["gamma1"], quadrature.kernel_moment(alpha, lam, mu, "t^alpha", "lambda")),
        (g["gamma2"], quadrature.kernel_moment(alpha, lam, mu, "1-t^alpha", "lambda")),
        (g["gamma3"], quadrature.kernel_moment(alpha, lam, mu, "t^alpha", "mu")),
        (g["gamma4"], quadrature.kernel_moment(alpha, lam, mu, "1-t^alpha", "mu")),
    ]
    return max(abs(c - o) for c, o in pairs)


def cmd_sweep(args) -> int:
    try:
        spec = default_sweep_spec() if args.spec == "default" else parse_sweep_file(args.spec)
    except (ParamError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"sweep: {spec.size()} rows "
          f"({len(spec.functions)} functions x {len(spec.intervals)} intervals x "
          f"{len(spec.alpha)}x{len(spec.m)} (alpha,m) x "
          f"{len(spec.lam)}x{len(spec.mu)} weights x {len(spec.q)} q x "
          f"{len(spec.theorems)} theorems)")
    rows, summary = run_sweep(spec, jobs=args.jobs)

    output = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)

    print(f"total={summary['total']} holds={summary['holds']} "
          f"violations={summary['violations']} gate_skipped={summary['gate_skipped']} "
          f"not_applicable={summary['not_applicable']} "
          f"input_error={summary['input_error']}")
    if summary["min_slack"] is not None:
        print(f"min_slack={_fmt(summary['min_slack'])} at {summary['min_slack_config']}")
    return 1 if summary["violations"] else 0


def cmd_tightness(args) -> int:
    theorems = [t.strip() for t in args.theorems.split(",") if t.strip()]
    if len(theorems) < 2:
        print("error: tightness needs at least two theorems", file=sys.stderr)
        return 3
    rows = [eval_row(args.fn, args.a, args.b, args.alpha, args.m, args.lam,
                     args.mu, args.q, t, quad_tol=args.tol) for t in theorems]
    # Baseline: the classical endpoint-average upper bound on the integral mean.
    try:
        fn = corpus_by_id()[args.fn]
        iv = Interval(args.a, args.b)
        if args.a >= fn.domain_min:
            lower, upper = bounds.bound_hh(fn, iv)
            mean, err = _cached_mean(args.fn, args.a, args.b, args.tol)
            base = {c: None for c in COLUMNS}
            base.update({"schema": SCHEMA_VERSION, "fn": args.fn, "a": args.a,
                         "b": args.b, "alpha": args.alpha, "m": args.m,
                         "lambda": args.lam, "mu": args.mu, "q": args.q,
                         "theorem": "hh_upper", "status": "ok", "lhs": mean,
                         "rhs": upper, "slack": upper - mean,
                         "holds": mean <= upper + err + 1e-12, "quad_error": err,
                         "branch1": lower})
            rows.append(base)
    except (ParamError, DomainError):
        pass

    ranked = sorted((r for r in rows if r["status"] in ("ok", "violation")),
                    key=lambda r: r["slack"])
    _emit_rows(rows, args.format, sys.stdout)
    if ranked:
        print(f"tightest: {ranked[0]['theorem']} (slack={_fmt(ranked[0]['slack'])})")
    if any(r["status"] == "violation" for r in rows):
        return 1
    if any(r["status"] == "input_error" for r in rows):
        return 3
    return 0


def cmd_means(args) -> int:
    try:
        p = Params(alpha=1.0, m=1.0, lam=args.lam, mu=args.mu, q=args.q)
        result = proposition_check(args.prop, args.a, args.b, p, n=args.n)
    except (ParamError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    payload = {
        "schema": SCHEMA_VERSION, "prop": result.prop,
        "mean_lhs": result.mean_lhs, "mean_rhs": result.mean_rhs,
        "corollary_rhs": result.corollary_rhs, "residual": result.residual,
        "holds": result.holds, "note": result.note,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}={_fmt(value) if not isinstance(value, str) else value}")
    return 0 if result.holds else 1


# ---------------------------------------------------------------------------

def _add_point_flags(sub) -> None:
    sub.add_argument("--fn", required=True, help="corpus function id")
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--b", type=float, required=True)
    sub.add_argument("--alpha", type=float, default=1.0)
    sub.add_argument("--m", type=float, default=1.0)
    sub.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sub.add_argument("--mu", type=float, default=1.0)
    sub.add_argument("--q", type=float, default=1.0)
    sub.add_argument("--tol", type=float, default=1e-9)
    sub.add_argument("--format", choices=["json", "csv", "text"], default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hh-verify",
                                     description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p_verify = subs.add_parser("verify", help="check one bound on one configuration")
    _add_point_flags(p_verify)
    p_verify.add_argument("--theorem", required=True, choices=bounds.THEOREM_IDS)
    p_verify.add_argument("--crosscheck", action="store_true",
                          help="also check coefficients against the quadrature oracle")
    p_verify.set_defaults(func=cmd_verify)

    p_sweep = subs.add_parser("sweep", help="run a parameter sweep from a spec file")
    p_sweep.add_argument("spec", help="spec file path, or 'default' for the acceptance sweep")
    p_sweep.add_argument("--output", "-o", help="write CSV/JSON here instead of stdout")
    p_sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    p_sweep.add_argument("--jobs", type=int,
                         default=int(os.environ.get("HH_VERIFY_JOBS", "1")))
    p_sweep.set_defaults(func=cmd_sweep)

    p_tight = subs.add_parser("tightness", help="rank several bounds on one configuration")
    _add_point_flags(p_tight)
    p_tight.add_argument("--theorems", required=True,
                         help="comma separated theorem ids (at least two)")
    p_tight.set_defaults(func=cmd_tightness)

    p_means = subs.add_parser("means", help="check one special-means proposition")
    p_means.add_argument("--prop", type=int, required=True, choices=range(1, 7))
    p_means.add_argument("--a", type=float, required=True)
    p_means.add_argument("--b", type=float, required=True)
    p_means.add_argument("--n", type=int, default=None,
                         help="power exponent for propositions 1-3 (|n| >= 2)")
    p_means.add_argument("--lambda", dest="lam", type=float, default=1.0)
    p_means.add_argument("--mu", type=float, default=1.0)
    p_means.add_argument("--q", type=float, default=1.0)
    p_means.add_argument("--format", choices=["json", "text"], default="text")
    p_means.set_defaults(func=cmd_means)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParamError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except GateError as exc:
        print(f"gate failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
