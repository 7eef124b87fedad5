"""Command-line interface: bound, verify, lemma-check, constants, optimize.

Exit codes: 0 success, 1 a bound was violated, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import statistics
import sys
import time

from .config import SEARCH_KEYS, ConfigError, build_params, merged, read_config
from .exp_sums import Beta4Mode, SecondDerivVariant, second_derivative_bound
from .instances import MAX_L, run_suite
from .optimizer import OptimizeResult, SearchSpec, optimize
from .phase_models import derivative_envelope
from .pipeline import (
    REFERENCE_CONSTANT,
    REFERENCE_CROSSOVER,
    REFERENCE_STITCHED,
    REFERENCE_TAILS,
    crossover,
    pipeline_breakdown,
    stitch_constant,
    stitch_requirements,
    zeta_one_line_bound,
)
from .verify import check_range, sample_t_values, soundness_sweep

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def _summary(values) -> dict:
    values = sorted(values)
    if not values:
        return {}
    return {"min": values[0], "median": statistics.median(values), "max": values[-1]}


# --- commands -------------------------------------------------------------


def cmd_bound(args, params) -> tuple[dict, int]:
    t = args.t
    if not (math.isfinite(t) and t >= 3):
        raise UsageError(f"--t must be >= 3, got {t}")
    b = zeta_one_line_bound(t, params)
    report = {
        "t": t,
        "bounds": [{"which": k, "value": v} for k, v in b.candidates.items()],
        "min": b.value,
        "which": b.which.value,
        "breakdown": b.breakdown.to_dict(),
    }
    return report, EXIT_OK


def _text_bound(r: dict) -> str:
    lines = [f"t = {r['t']:.6g}"]
    for b in r["bounds"]:
        mark = " <- min" if b["which"] == r["which"] else ""
        lines.append(f"  {b['which']:<7s} {b['value']:.6f}{mark}")
    bd = r["breakdown"]
    lines.append(f"|zeta(1+it)| <= {r['min']:.6f}  ({bd['leading_coeff']:g} log t + {bd['additive_constant']:.6f})")
    return "\n".join(lines)


def cmd_verify(args, params) -> tuple[dict, int]:
    try:
        check_range(args.t_min, args.t_max, args.bound)
        ts = sample_t_values(args.t_min, args.t_max, args.samples, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    start = time.perf_counter()
    samples = soundness_sweep(ts, args.bound, params, args.workers)
    fails = [s for s in samples if not s.ok]
    report = {
        "bound": args.bound,
        "t_min": args.t_min,
        "t_max": args.t_max,
        "samples": [s.to_dict() for s in samples],
        "violations": len(fails),
        "max_ratio": max(s.ratio for s in samples),
        "seconds": time.perf_counter() - start,
    }
    return report, EXIT_VIOLATION if fails else EXIT_OK


def _text_verify(r: dict) -> str:
    lines = []
    for s in r["samples"]:
        status = "pass" if s["ok"] else "FAIL"
        lines.append(f"{status} t={s['t']:.6g} |zeta|={s['zeta_abs']:.6f} bound={s['bound']:.6f} "
                     f"({s['which']}) ratio={s['ratio']:.4f}")
    lines.append(f"{len(r['samples'])} samples, {r['violations']} violations, "
                 f"max ratio {r['max_ratio']:.4f}, {r['seconds']:.2f} s")
    return "\n".join(lines)


def _variant_comparison(results) -> dict:
    """How often the Platt-Trudgian form is at most the corrected Cheng-Graham one."""
    wins = 0
    for r in results:
        inst = r.instance
        env = derivative_envelope(inst.phase, inst.n_start, inst.L, 2)
        V = env.W / env.lam if env.lam > 1 else env.W * (1 - 1e-12)
        pt = second_derivative_bound(inst.L, V, env.W, SecondDerivVariant.PLATT_TRUDGIAN)
        cg = second_derivative_bound(inst.L, V, env.W, SecondDerivVariant.CHENG_GRAHAM_CORRECTED)
        wins += pt <= cg
    return {"platt_trudgian_le_cheng_graham": wins / len(results) if results else math.nan}


def cmd_lemma_check(args, params) -> tuple[dict, int]:
    if args.order not in (1, 2, 3, 4, 5):
        raise UsageError(f"--order must be 1..5, got {args.order}")
    if args.pipeline_shaped and args.order != 5:
        raise UsageError("--pipeline-shaped needs --order 5")
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    kind = None if args.kind == "mixed" else args.kind
    start = time.perf_counter()
    results = run_suite(args.order, args.trials, args.seed, kind, args.max_l, args.pipeline_shaped, args.workers)
    ratios = [r.ratio for r in results]
    report = {
        "order": args.order,
        "trials": len(results),
        "kind": args.kind,
        "pipeline_shaped": args.pipeline_shaped,
        "violations": sum(not r.ok for r in results),
        "ratio": _summary(ratios),
        "seconds": time.perf_counter() - start,
    }
    if args.order == 2:
        report.update(_variant_comparison(results))
    return report, EXIT_VIOLATION if report["violations"] else EXIT_OK


def _text_lemma(r: dict) -> str:
    s = r["ratio"]
    lines = [f"order {r['order']} ({r['kind']}{', pipeline-shaped' if r['pipeline_shaped'] else ''}): "
             f"{r['trials']} instances, {r['violations']} violations",
             f"bound/(|S|+err): min {s['min']:.4g}  median {s['median']:.4g}  max {s['max']:.4g}"]
    if "platt_trudgian_le_cheng_graham" in r:
        lines.append(f"platt_trudgian <= cheng_graham_corrected on {100 * r['platt_trudgian_le_cheng_graham']:.1f}%")
    lines.append(f"{r['seconds']:.2f} s")
    return "\n".join(lines)


def _constants_column(params) -> dict:
    bd = pipeline_breakdown(params)
    stitched = stitch_constant(params)
    return {
        "beta4_mode": params.beta4_mode.value,
        "constant": bd.additive_constant,
        "tails": [c for c, _ in bd.tail_terms],
        "tail_powers": [p for _, p in bd.tail_terms],
        "stitch_requirements": stitch_requirements(params),
        "stitched": stitched,
        "crossover": crossover(stitched),
        "components": bd.components,
    }


def cmd_constants(args, params) -> tuple[dict, int]:
    modes = [params.beta4_mode] + [m for m in Beta4Mode if m is not params.beta4_mode]
    columns = [_constants_column(params.with_(beta4_mode=m)) for m in modes]
    reference = {"constant": REFERENCE_CONSTANT, "tails": list(REFERENCE_TAILS), "stitched": REFERENCE_STITCHED,
               "crossover": REFERENCE_CROSSOVER}
    for col in columns:
        col["relative_error"] = {
            "constant": _rel(col["constant"], REFERENCE_CONSTANT),
            "tails": [_rel(a, b) for a, b in zip(col["tails"], REFERENCE_TAILS)],
            "stitched": _rel(col["stitched"], REFERENCE_STITCHED),
        }
    return {"params": params.to_dict(), "reference": reference, "columns": columns}, EXIT_OK


def _text_constants(r: dict) -> str:
    cols = r["columns"]
    ref = r["reference"]
    head = f"{'':<12s}{'reference':>14s}" + "".join(f"{c['beta4_mode']:>20s}{'rel.err':>10s}" for c in cols)
    lines = [head]

    def row(name, refv, get, err):
        s = f"{name:<12s}{refv:>14.6g}"
        for c in cols:
            s += f"{get(c):>20.6g}{err(c):>10.2e}"
        lines.append(s)

    row("constant", ref["constant"], lambda c: c["constant"], lambda c: c["relative_error"]["constant"])
    for i in range(4):
        row(f"A{i + 1}", ref["tails"][i], lambda c, i=i: c["tails"][i], lambda c, i=i: c["relative_error"]["tails"][i])
    row("stitched", ref["stitched"], lambda c: c["stitched"], lambda c: c["relative_error"]["stitched"])
    row("crossover", ref["crossover"], lambda c: c["crossover"], lambda c: _rel(c["crossover"], ref["crossover"]))
    lines.append("stitched = max(" + ", ".join(f"{k}={v:.4f}" for k, v in cols[0]["stitch_requirements"].items())
                 + f") for {cols[0]['beta4_mode']}")
    return "\n".join(lines)


def _search_spec(args, params, file_values) -> SearchSpec:
    v = merged(file_values, {"budget": args.budget, "seed": args.seed, "grid_points": args.grid_points},
               SEARCH_KEYS)
    kw = {k: v[k] for k in ("budget", "seed", "grid_points") if v[k] is not None}
    base = SearchSpec() if args.full else SearchSpec.around(params)
    ranges = {}
    for name in ("epsilon", "eta3", "eta4", "eta5", "t0"):
        lo, hi = getattr(base, name)
        lo = v[f"{name}_min"] if v[f"{name}_min"] is not None else lo
        hi = v[f"{name}_max"] if v[f"{name}_max"] is not None else hi
        ranges[name] = (lo, hi)
    js = v["j_values"] if v["j_values"] is not None else base.j
    return SearchSpec(j=js, beta4_mode=params.beta4_mode, start=base.start, **ranges, **kw)


def cmd_optimize(args, params, file_values) -> tuple[dict, int]:
    try:
        spec = _search_spec(args, params, file_values)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res: OptimizeResult = optimize(spec)
    values = [v for _, v in res.trace if math.isfinite(v)]
    report = {
        "best_params": res.best_params.to_dict() if res.best_params else None,
        "best_value": res.best_value,
        "evaluations": res.evaluations,
        "budget": spec.budget,
        "seed": spec.seed,
        "budget_exhausted": res.budget_exhausted,
        "rejected": res.evaluations - len(values),
        "trace_values": _summary(values),
    }
    return report, EXIT_OK


def _text_optimize(r: dict) -> str:
    lines = [f"best stitched constant {r['best_value']:.4f} after {r['evaluations']} evaluations "
             f"(budget {r['budget']}, seed {r['seed']}{', exhausted' if r['budget_exhausted'] else ''})"]
    if r["best_params"]:
        lines.append("  " + "  ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}"
                                      for k, v in r["best_params"].items()))
    s = r["trace_values"]
    if s:
        lines.append(f"trace: min {s['min']:.4f}  median {s['median']:.4f}  max {s['max']:.4f}, "
                     f"{r['rejected']} rejected")
    return "\n".join(lines)


# --- argument parsing -----------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("parameters")
    g.add_argument("--config", help="flat key = value file (default: $ZETALINE_CONFIG)")
    g.add_argument("--epsilon", type=float)
    g.add_argument("--j", type=int)
    g.add_argument("--eta3", type=float)
    g.add_argument("--eta4", type=float)
    g.add_argument("--eta5", type=float)
    g.add_argument("--t0", type=float)
    g.add_argument("--beta4-mode", choices=[m.value for m in Beta4Mode])
    g.add_argument("--format", choices=("text", "json"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="zetaline", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common], help="the three bounds on |zeta(1+it)| at t")
    p.add_argument("--t", type=float, required=True)

    p = sub.add_parser("verify", parents=[common], help="oracle |zeta(1+it)| against the bound on a t range")
    p.add_argument("--t-min", type=float, default=3.0)
    p.add_argument("--t-max", type=float, default=1e5)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", choices=("min", "triangle"), default="min")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("lemma-check", parents=[common], help="randomized derivative-test soundness suite")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=("mixed", "zeta_log", "polynomial"), default="mixed")
    p.add_argument("--max-l", type=int, default=MAX_L)
    p.add_argument("--pipeline-shaped", action="store_true")
    p.add_argument("--workers", type=int, default=1)

    sub.add_parser("constants", parents=[common], help="pipeline constants under both beta4 modes")

    p = sub.add_parser("optimize", parents=[common], help="search parameters minimising the stitched constant")
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--grid-points", type=int)
    p.add_argument("--full", action="store_true", help="search the wide default box instead of around the parameters")
    return parser


_TEXT = {"bound": _text_bound, "verify": _text_verify, "lemma-check": _text_lemma,
         "constants": _text_constants, "optimize": _text_optimize}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        file_values = read_config(args.config)
        overrides = {k: getattr(args, k) for k in ("epsilon", "j", "eta3", "eta4", "eta5", "t0")}
        overrides["beta4_mode"] = args.beta4_mode
        params = build_params(file_values, overrides)
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be >= 1")
        if args.command == "bound":
            report, code = cmd_bound(args, params)
        elif args.command == "verify":
            report, code = cmd_verify(args, params)
        elif args.command == "lemma-check":
            report, code = cmd_lemma_check(args, params)
        elif args.command == "constants":
            report, code = cmd_constants(args, params)
        else:
            report, code = cmd_optimize(args, params, file_values)
    except (UsageError, ConfigError, ValueError) as exc:
        print(f"zetaline {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {"schema_version": SCHEMA_VERSION, "command": args.command, **report}
    if args.format == "json":
        print(json.dumps(report, indent=2, allow_nan=False))
    else:
        print(_TEXT[args.command](report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
