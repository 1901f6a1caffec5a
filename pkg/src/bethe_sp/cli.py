"""Command-line front end: ``bethe-sp <command> --input FILE``.

Every command reads a JSON problem file, runs exact checks (either on the
configuration given in the file or on seeded random trials) and writes a
JSON report. The exit status is 0 exactly when every verdict passes.
"""

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .dwpf import (
    lemma_gg_check,
    lemma_KK_check,
    lemma_longdet_check,
    row_stack_check,
    single_sum_checks,
)
from .errors import BetheError, BudgetExceeded, ParseError, PoleError, ZeroPivot
from .highest import Z_eta, Z_omega, ZArgs
from .kernels import cauchy_identities, inv_h, kernel_g, kernel_t
from .partitions import delta_factorization_check, laplace_check
from .problem import COMMANDS, config_to_dict, parse_problem, problem_to_dict
from .sampling import DEFAULT_HEIGHT, Sampler, trial_seed
from .scalar import (
    SEMI,
    SumStats,
    analytic_term_counts,
    apply_constraints,
    derivation_checks,
    det_rep,
    sum_formula,
    swap_CB_check,
)
from .spectral import (
    formfactor_derivative_check,
    formfactor_matrix,
    formfactor_value,
    jacobian_check,
    norm_limit_check,
    norm_via_gaudin,
    omega,
    on_shell_values,
    orthogonality_check,
    supertrace_check,
)
from .verdict import Verdict

log = logging.getLogger("bethe_sp")

SCHEMA = "bethe-sp-report/1"
DEFAULTS = {
    "crosscheck": {"trials": 50, "max_a": 3, "max_b": 3},
    "identities": {"trials": 50, "max_a": 3, "max_b": 3},
    "norm": {"trials": 10, "max_a": 2, "max_b": 2},
    "formfactor": {"trials": 10, "max_a": 2, "max_b": 1},
    "bench": {"trials": 1, "max_a": 4, "max_b": 4},
}
NORM_SIZES = ((1, 0), (0, 1), (1, 1), (2, 1), (2, 2))
BENCH_SIZES = (1, 2, 3)
LARGE_BENCH = 4


def _error_entry(exc, **witness):
    entry = {"kind": type(exc).__name__, "message": str(exc), "witness": witness}
    if isinstance(exc, ParseError) and exc.field is not None:
        entry["field"] = exc.field
    if isinstance(exc, PoleError) and exc.pair is not None:
        entry["pair"] = [str(x) for x in exc.pair]
    if isinstance(exc, ZeroPivot):
        entry["admissible"] = list(exc.admissible)
    return entry


def _check(verdict, **extra):
    """Report entry for a verdict; full detail only when it failed."""
    out = verdict.to_dict() if not verdict.passed else {
        "name": verdict.name, "passed": True,
        "witness": verdict.to_dict().get("witness", {}),
    }
    out.update(extra)
    return out


def _sizes(max_a, max_b, floor=0):
    return [(a, b) for a in range(max_a + 1) for b in range(max_b + 1) if a + b >= floor]


# --- trial bodies (top level so worker processes can import them) ------------


def _crosscheck_body(cfg, variant, deadline=None, extras=False):
    r = apply_constraints(cfg, variant)
    stats = SumStats()
    t0 = time.perf_counter()
    det = det_rep(cfg, r, variant)
    det_secs = time.perf_counter() - t0
    total = sum_formula(cfg, r, stats, deadline)
    outer, inner = analytic_term_counts(cfg.a, cfg.b)
    parts = [
        Verdict.compare("sum-vs-det", total, det),
        Verdict.compare("outer-term-count", stats.outer_terms, outer),
        Verdict.compare("inner-term-count", stats.inner_terms, inner),
    ]
    if extras:
        parts.append(swap_CB_check(cfg))
        if variant == SEMI:
            parts.append(derivation_checks(cfg, r, reference=total))
    verdict = Verdict.combine("crosscheck", parts, a=cfg.a, b=cfg.b, variant=variant)
    return verdict, {
        "values": {"sum": str(total), "det": str(det)},
        "term_counts": {"outer": stats.outer_terms, "inner": stats.inner_terms},
        "timing": {"sum_secs": stats.seconds, "det_secs": det_secs},
    }


def _run_trial(task):
    kind, params = task
    witness = {k: v for k, v in params.items() if k in ("seed", "trial", "a", "b", "variant", "i")}
    sampler = None
    try:
        sampler = Sampler(trial_seed(params["seed"], params["key"]), params["height"])
        checks = _TRIALS[kind](sampler, params)
        for c in checks:
            c.setdefault("witness", {}).update(witness, redraws=sampler.redraws)
        return {"checks": checks, "errors": []}
    except BetheError as exc:
        return {"checks": [], "errors": [_error_entry(exc, **witness)]}


def _trial_crosscheck(s, p):
    variant = p["variant"]
    cfg = s.config(p["a"], p["b"])
    deadline = None if p.get("budget") is None else time.monotonic() + p["budget"]
    try:
        verdict, extra = _crosscheck_body(cfg, variant, deadline, extras=max(p["a"], p["b"]) <= 2)
    except BudgetExceeded as exc:
        return [{"name": "crosscheck", "passed": False, "budget_exceeded": str(exc)}]
    entry = _check(verdict, **extra)
    if not verdict.passed:
        entry["config"] = config_to_dict(cfg)
    return [entry]


def _trial_identities(s, p):
    max_a, max_b = p["a"], p["b"]
    top = max(max_a, max_b, 1)
    out = []
    for n in range(1, top + 1):
        c = s.gaussian(True)
        us = s.points(n, c)
        vs = s.points(n, c, us)
        out.append(_check(cauchy_identities(us, vs, c)))
        out.append(_check(laplace_check(lambda x, y: kernel_g(x, y, c),
                                        lambda x, y: inv_h(x, y, c), us, vs, c)))
        out.append(_check(delta_factorization_check(us + vs, c)))
    for m1 in range(0, min(top, 2) + 1):
        for m2 in range(0, min(top, 2) + 1):
            c = s.gaussian(True)
            pts = s.points(2 * (m1 + m2), c)
            ws, us, vs = pts[:m1 + m2], pts[m1 + m2:2 * m1 + m2], pts[2 * m1 + m2:]
            out.append(_check(lemma_gg_check(ws, us, vs, c)))
            out.append(_check(lemma_KK_check(ws, us, vs, c)))
    for m in range(1, min(top, 3) + 1):
        c = s.gaussian(True)
        pts = s.points(2 * m, c)
        ws, xis = pts[:m], pts[m:]
        c1 = {w: s.gaussian() for w in ws}
        c2 = {w: s.gaussian() for w in ws}
        out.append(_check(lemma_longdet_check(ws, xis, c1, c2, c)))
    for a, b in _sizes(min(max_a, 2), min(max_b, 2), 1):
        c = s.gaussian(True)
        xs = s.points(a + b, c)
        ys = s.points(max(a, b), c, xs)
        out.append(_check(row_stack_check(lambda j, x: kernel_t(ys[j], x, c),
                                          lambda j, x: kernel_g(x, ys[j], c), xs, a, b, c)))
    for a, b in _sizes(max_a, max_b):
        c = s.gaussian(True)
        pts = s.points(2 * a + 2 * b, c)
        z = ZArgs(pts[:a], pts[a:2 * a], pts[2 * a:2 * a + b], pts[2 * a + b:], c)
        out.append(_check(Verdict.compare("Z-omega-vs-eta", Z_omega(z), Z_eta(z), a=a, b=b)))
    for a, b in _sizes(max_a, max_b, 1):
        cfg = s.config(a, b)
        probes = s.points(2, cfg.c, cfg.all_points())
        out.append(_check(single_sum_checks(cfg, probes)))
        if a <= 2 and b <= 2:
            out.append(_check(orthogonality_check(cfg)))
    return out


def _random_norm_data(s, a, b):
    c = s.gaussian(True)
    pts = s.points(a + b, c)
    u, v = pts[:a], pts[a:]
    derivs = (s.values(a), s.values(b))
    directions = [(s.values(a), s.values(b)) for _ in range(2)]
    return c, u, v, derivs, directions


def _norm_entries(c, u, v, derivs, directions):
    v1, v3 = on_shell_values(u, v, c)
    logs = ([d / r for d, r in zip(derivs[0], v1)], [d / r for d, r in zip(derivs[1], v3)])
    value = norm_via_gaudin(u, v, logs, c)
    limit = norm_limit_check(u, v, directions, derivs, c)
    jac = jacobian_check(u, v, logs, c)
    return [_check(limit, norm=str(value)), _check(jac)]


def _trial_norm(s, p):
    return _norm_entries(*_random_norm_data(s, p["a"], p["b"]))


def _formfactor_entries(cfg, i_list, pivot=None):
    om = omega(cfg)
    out = []
    for i in i_list:
        spec = formfactor_matrix(cfg, i, pivot)
        value = formfactor_value(cfg, i, pivot)
        pivot_row = [str(spec.matrix[spec.p, k]) for k in range(spec.matrix.cols)]
        if pivot is None:
            v = formfactor_derivative_check(cfg, i, pivots=om.admissible())
        else:
            v = Verdict.compare(f"formfactor-{i}", value, formfactor_value(cfg, i), i=i, pivot=pivot)
        out.append(_check(v, value=str(value), pivot=spec.p, pivot_row=pivot_row))
    if set(i_list) == {1, 2, 3}:
        out.append(_check(supertrace_check(cfg, pivot)))
    return out


def _trial_formfactor(s, p):
    cfg = s.config(p["a"], p["b"])
    return _formfactor_entries(cfg, p["i_list"])


_TRIALS = {
    "crosscheck": _trial_crosscheck,
    "identities": _trial_identities,
    "norm": _trial_norm,
    "formfactor": _trial_formfactor,
}


# --- commands ---------------------------------------------------------------


def _pool_map(fn, tasks, threads):
    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def _random_tasks(kind, sizes, opts, extra=None):
    tasks = []
    for a, b in sizes:
        for t in range(opts["trials"]):
            params = {"seed": opts["seed"], "trial": t, "a": a, "b": b,
                      "key": f"{kind}:{a},{b}:{t}", "height": opts["height"]}
            params.update(extra or {})
            tasks.append((kind, params))
    return tasks


def _collect(results):
    checks, errors = [], []
    for r in results:
        checks.extend(r["checks"])
        errors.extend(r["errors"])
    return checks, errors


def cmd_crosscheck(pf, opts):
    if pf.config is not None:
        cfg = pf.config
        deadline = None if opts["budget"] is None else time.monotonic() + opts["budget"]
        try:
            verdict, extra = _crosscheck_body(cfg, pf.variant, deadline)
        except BudgetExceeded as exc:
            return [{"name": "crosscheck", "passed": False, "budget_exceeded": str(exc)}], []
        return [_check(verdict, **extra)], []
    sizes = _sizes(opts["max_a"], opts["max_b"])
    tasks = _random_tasks("crosscheck", sizes, opts,
                          {"variant": pf.variant, "budget": opts["budget"]})
    return _collect(_pool_map(_run_trial, tasks, opts["threads"]))


def cmd_identities(pf, opts):
    checks = []
    if pf.config is not None:
        cfg = pf.config
        checks.append(_check(single_sum_checks(cfg)))
        z = ZArgs(cfg.uC, cfg.uB, cfg.vC, cfg.vB, cfg.c)
        checks.append(_check(Verdict.compare("Z-omega-vs-eta", Z_omega(z), Z_eta(z),
                                             a=cfg.a, b=cfg.b)))
        checks.append(_check(cauchy_identities(cfg.uC, cfg.uB, cfg.c)))
        return checks, []
    tasks = [("identities", {"seed": opts["seed"], "trial": t, "a": opts["max_a"],
                             "b": opts["max_b"], "key": f"identities:{t}",
                             "height": opts["height"]})
             for t in range(opts["trials"])]
    return _collect(_pool_map(_run_trial, tasks, opts["threads"]))


def cmd_norm(pf, opts):
    norm = pf.norm or {}
    if "u" in norm:
        return _norm_entries(norm["c"], norm["u"], norm["v"], norm["derivs"],
                             norm["directions"]), []
    sizes = norm.get("sizes") or [s for s in NORM_SIZES
                                  if s[0] <= opts["max_a"] and s[1] <= opts["max_b"]]
    tasks = _random_tasks("norm", sizes, opts)
    return _collect(_pool_map(_run_trial, tasks, opts["threads"]))


def cmd_formfactor(pf, opts):
    ff = pf.formfactor or {}
    i_list = ff.get("i", [1, 2, 3])
    if pf.config is not None:
        return _formfactor_entries(pf.config, i_list, ff.get("pivot")), []
    sizes = ff.get("sizes") or _sizes(opts["max_a"], opts["max_b"], 1)
    tasks = _random_tasks("formfactor", sizes, opts, {"i_list": i_list})
    return _collect(_pool_map(_run_trial, tasks, opts["threads"]))


def _bench_size(n, seed, height, budget, key):
    s = Sampler(trial_seed(seed, key), height)
    cfg = s.config(n, n).replace(kappa=(1, 1, 1))
    r = apply_constraints(cfg, SEMI)
    t0 = time.perf_counter()
    det = det_rep(cfg, r, SEMI)
    det_secs = time.perf_counter() - t0
    outer, inner = analytic_term_counts(n, n)
    row = {"a": n, "b": n, "det_secs": det_secs, "det_size": 2 * n,
           "analytic_terms": {"outer": outer, "inner": inner}}
    stats = SumStats()
    deadline = None if budget is None else time.monotonic() + budget
    try:
        total = sum_formula(cfg, r, stats, deadline)
    except BudgetExceeded:
        row.update(sum_completed=False, sum_secs=stats.seconds)
        return row, None
    row.update(sum_completed=True, sum_secs=stats.seconds,
               speedup=stats.seconds / max(det_secs, 1e-9),
               measured_terms={"outer": stats.outer_terms, "inner": stats.inner_terms})
    verdict = Verdict.combine("bench-size", [
        Verdict.compare("sum-vs-det", total, det),
        Verdict.compare("outer-term-count", stats.outer_terms, outer),
        Verdict.compare("inner-term-count", stats.inner_terms, inner),
    ], a=n, b=n)
    return row, verdict


def cmd_bench(pf, opts):
    bench = pf.bench or {}
    sizes = bench.get("sizes") or [n for n in BENCH_SIZES if n <= min(opts["max_a"], opts["max_b"])]
    allow_large = bench.get("allow_large", False)
    repeats = bench.get("repeats", 1)
    checks, errors, rows = [], [], []
    for n in sizes:
        if n >= LARGE_BENCH and not allow_large:
            rows.append({"a": n, "b": n, "skipped": "set bench.allow_large to run this size"})
            continue
        best = None
        for rep in range(repeats):
            try:
                row, verdict = _bench_size(n, opts["seed"], opts["height"], opts["budget"],
                                           f"bench:{n}:{rep}")
            except BetheError as exc:
                errors.append(_error_entry(exc, a=n, b=n, repeat=rep))
                continue
            if verdict is not None:
                checks.append(_check(verdict))
            if best is None or (row.get("sum_secs", 0) + row["det_secs"]
                                < best.get("sum_secs", 0) + best["det_secs"]):
                best = row
        if best is not None:
            rows.append(best)
    timed = [r for r in rows if "det_secs" in r]
    complete = [r for r in timed if r.get("sum_completed")]
    parts = []
    if timed:
        last = timed[-1]
        # a sum that ran out of budget already lost to the determinant
        if last.get("sum_completed"):
            parts.append(Verdict.compare("det-faster-at-largest",
                                         last["det_secs"] < last["sum_secs"], True, a=last["a"]))
        else:
            parts.append(Verdict.compare("det-finished-sum-over-budget", True, True, a=last["a"]))
        if len(complete) >= 2:
            first, final = complete[0], complete[-1]
            parts.append(Verdict.compare("speedup-grows", final["speedup"] > first["speedup"], True,
                                         smallest=first["a"], largest=final["a"],
                                         speedups=[f"{r['speedup']:.2f}" for r in complete]))
    if parts:
        checks.append(_check(Verdict.combine("crossover", parts)))
    return checks, errors, {"bench": rows}


COMMAND_FUNCS = {
    "crosscheck": cmd_crosscheck,
    "identities": cmd_identities,
    "norm": cmd_norm,
    "formfactor": cmd_formfactor,
    "bench": cmd_bench,
}


def _options(command, pf, args):
    defaults = DEFAULTS[command]

    def pick(name):
        cli = getattr(args, name)
        if cli is not None:
            return cli
        from_file = getattr(pf, name, None)
        return from_file if from_file is not None else defaults[name]

    return {
        "seed": args.seed if args.seed is not None else (pf.seed if pf.seed is not None else 0),
        "trials": pick("trials"),
        "max_a": pick("max_a"),
        "max_b": pick("max_b"),
        "height": pf.height or DEFAULT_HEIGHT,
        "threads": max(1, args.threads),
        "budget": args.budget_secs,
    }


def run(command, text, args):
    """Build the report for one invocation; never raises on domain errors."""
    report = {"schema": SCHEMA, "command": command}
    try:
        pf = parse_problem(text)
        if pf.command is not None and pf.command != command:
            raise ParseError(f"file is for {pf.command!r}, not {command!r}", "command")
    except BetheError as exc:
        report.update(seed=args.seed, passed=False, checks=[], errors=[_error_entry(exc)])
        return report
    opts = _options(command, pf, args)
    report["seed"] = opts["seed"]
    report["problem"] = problem_to_dict(replace(pf, seed=opts["seed"]))
    started = time.perf_counter()
    extra = {}
    try:
        result = COMMAND_FUNCS[command](pf, opts)
        checks, errors = result[0], result[1]
        if len(result) > 2:
            extra = result[2]
    except BetheError as exc:
        checks, errors = [], [_error_entry(exc)]
    report.update(extra)
    report["checks"] = checks
    report["errors"] = errors
    report["summary"] = _summary(checks)
    report["seconds"] = time.perf_counter() - started
    report["passed"] = not errors and all(c["passed"] for c in checks)
    return report


def _summary(checks):
    out = {}
    for c in checks:
        s = out.setdefault(c["name"], {"total": 0, "passed": 0})
        s["total"] += 1
        s["passed"] += bool(c["passed"])
    return out


def build_parser():
    p = argparse.ArgumentParser(
        prog="bethe-sp",
        description="Exact checks of scalar products, norms and form factors of Bethe vectors.",
    )
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="JSON problem file ('-' for stdin)")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--max-a", type=int, dest="max_a")
    p.add_argument("--max-b", type=int, dest="max_b")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", help="report path; stdout when omitted")
    p.add_argument("--budget-secs", type=float, dest="budget_secs",
                   help="wall-clock budget for each partition-sum evaluation")
    p.add_argument("-v", "--verbose", action="store_true", help="log re-draws and progress")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    for name in ("trials", "max_a", "max_b"):
        if getattr(args, name) is not None and getattr(args, name) < 0:
            print(f"bethe-sp: --{name.replace('_', '-')} must be non-negative", file=sys.stderr)
            return 2
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"bethe-sp: cannot read {args.input}: {exc.strerror}", file=sys.stderr)
        return 2
    report = run(args.command, text, args)
    payload = json.dumps(report, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
