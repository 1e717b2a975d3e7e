"""Command-line entry point.

Every command prints one document holding the effective configuration
and the result.  JSON is the canonical format; CSV exists for bound
tables; the human format is for reading at a terminal.

Exit codes: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Callable, Optional

from . import bounds as bounds_mod
from .certifier import CLAIM_ORDER, CertConfig, build_claims, certify, check_certificates, shifted
from .errors import RadGaussError
from .exact import exact_count, exact_tail, normalize, ratio
from .gaussian import constants, normal_tail, optimal_constant
from .search import grid_search, local_search
from .selfnorm import MagnitudeModel, exact_selfnorm_tail, mc_selfnorm_tail

FORMAT_ENV = "RADGAUSS_FORMAT"
FORMATS = ("json", "csv", "human")
NORM_NOTICE_TOL = 1e-9

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _weights(text: str) -> list[float]:
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"weights must be comma-separated numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("weights must not be empty")
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("weights must be finite")
    return vals


def _finite(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _load_weights(raw: list[float], config: dict):
    w = normalize(raw)
    sq = math.fsum(v * v for v in raw)
    config["weights_input"] = list(raw)
    config["weights"] = list(w.weights)
    if abs(sq - 1.0) > NORM_NOTICE_TOL:
        print(f"notice: weights rescaled to unit sum of squares (input sum of squares {sq!r})", file=sys.stderr)
    return w


# -- commands -----------------------------------------------------------------
# Each returns (result, exit code, optional CSV rows).


def cmd_constants(args, config):
    config["c_L"] = args.c_l
    return constants(args.c_l).as_dict(), EXIT_OK, None


def cmd_tail(args, config):
    w = _load_weights(args.weights, config)
    config["x"] = args.x
    count = exact_count(w, args.x)
    result = {"tail": exact_tail(w, args.x), "count": count, "n": w.n, "denominator": 2**w.n}
    return result, EXIT_OK, None


def cmd_bounds(args, config):
    w = _load_weights(args.weights, config)
    config.update(x=args.x, c_L=args.c_l, tau=w.tau)
    table, valid = bounds_mod.bound_table(args.x, w.tau, args.c_l)
    exact = exact_tail(w, args.x)
    rows = [{"name": k, "value": v, "valid": k in valid} for k, v in table.items()]
    violated = [r["name"] for r in rows if r["valid"] and exact > r["value"] + 1e-12]
    result = {"exact": exact, "bounds": rows, "violated": violated}
    csv_rows = [["name", "value", "valid"], ["exact", exact, ""]] + [[r["name"], r["value"], r["valid"]] for r in rows]
    return result, EXIT_FAILED if violated else EXIT_OK, csv_rows


def cmd_ratio(args, config):
    w = _load_weights(args.weights, config)
    config.update(x=args.x, c_L=args.c_l)
    rep = ratio(w, args.x, args.c_l)
    d = rep.as_dict()
    d.pop("weights")
    d["c_star"] = optimal_constant()
    d["within_optimal_bound"] = rep.exact <= optimal_constant() * rep.gauss_tail * (1 + 1e-9)
    return d, EXIT_OK if d["within_optimal_bound"] else EXIT_FAILED, None


def cmd_chain(args, config):
    w = _load_weights(args.weights, config)
    config["k_max"] = args.k_max
    total, slack = bounds_mod.chebyshev_chain(w, args.k_max)
    ok = slack >= -1e-12
    return {"sum": total, "slack": slack, "holds": ok}, EXIT_OK if ok else EXIT_FAILED, None


def cmd_certify(args, config):
    cfg = CertConfig(x_max=args.x_max, delta=args.delta, tol=args.tol, max_depth=args.max_depth, c_L=args.c_l)
    config.update(cfg.as_dict())
    config.update(claim=args.claim, offset=args.offset, soundness=args.soundness)
    claims = build_claims(cfg)
    if args.claim == "all":
        if args.offset:
            raise UsageError("--offset needs a single claim")
        chosen = [claims[n] for n in CLAIM_ORDER]
    elif args.claim in claims:
        chosen = [claims[args.claim]]
        if args.offset:
            chosen = [shifted(chosen[0], args.offset)]
    else:
        raise UsageError(f"unknown claim {args.claim!r}; choose from all, {', '.join(CLAIM_ORDER)}")
    certs = [certify(c, tol=cfg.tol, max_depth=cfg.max_depth, config=cfg) for c in chosen]
    ok = all(c.proved for c in certs)
    result = {
        "all_proved": ok,
        "total_leaves": sum(c.leaf_count for c in certs),
        "certificates": [c.as_dict(include_leaves=not args.summary) for c in certs],
    }
    if args.soundness:
        lookup = {c.name: c for c in chosen}
        rep = check_certificates(certs, lookup, cfg, seed=args.seed)
        result["soundness"] = rep.as_dict()
        ok = ok and rep.ok
    return result, EXIT_OK if ok else EXIT_FAILED, None


def cmd_search(args, config):
    config.update(n=args.n, step=args.step, refine=args.refine, iters=args.iters, seed=args.seed)
    res = grid_search(args.n, args.step)
    out = {"grid": res.as_dict()}
    best = res.best_ratio
    if args.refine:
        ref = local_search(res.best_weights, args.iters, args.seed)
        out["refined"] = ref.as_dict()
        best = max(best, ref.best_ratio)
    out["c_star"] = optimal_constant()
    out["within_optimal_bound"] = best <= optimal_constant() * (1 + 1e-9)
    return out, EXIT_OK if out["within_optimal_bound"] else EXIT_FAILED, None


def cmd_selfnorm(args, config):
    model = MagnitudeModel.parse(args.model)
    config.update(model=model.as_dict(), samples=args.samples, seed=args.seed, x=args.x, threads=args.threads)
    est = mc_selfnorm_tail(model, args.samples, args.seed, args.x, threads=args.threads)
    bound = optimal_constant() * normal_tail(args.x)
    ok = est.estimate <= bound + 4 * est.stderr
    result = {"estimate": est.estimate, "stderr": est.stderr, "bound": bound, "pass": ok}
    if model.kind == "fixed":
        result["exact"] = exact_selfnorm_tail(model.values, args.x)
    return result, EXIT_OK if ok else EXIT_FAILED, None


# -- rendering ----------------------------------------------------------------


def _render_human(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v!r}" if isinstance(v, float) else f"{pad}{k}: {v}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_render_human(item, indent + 1))
            else:
                lines.append(f"{pad}- {item!r}" if isinstance(item, float) else f"{pad}- {item}")
    else:
        lines.append(f"{pad}{doc}")
    return "\n".join(lines)


def _render(doc: dict, fmt: str, csv_rows) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        if csv_rows is None:
            raise UsageError("csv output is only available for the bounds command")
        buf = io.StringIO()
        for k, v in doc["config"].items():
            buf.write(f"# {k}={json.dumps(v)}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows([[repr(c) if isinstance(c, float) else c for c in row] for row in csv_rows])
        return buf.getvalue()
    return _render_human(doc) + "\n"


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    env_fmt = os.environ.get(FORMAT_ENV, "json")
    if env_fmt not in FORMATS:
        env_fmt = "json"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=env_fmt, help=f"output format (default from ${FORMAT_ENV}, else json)")
    common.add_argument("--out", help="write the output to this file instead of stdout")
    common.add_argument("--threads", type=_positive_int, default=1, help="worker cap for parallel sections")

    parser = argparse.ArgumentParser(prog="radgauss", description="Exact tails and sign certificates for weighted Rademacher sums.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("constants", cmd_constants, "named constants")
    p.add_argument("--c-l", type=_finite, default=0.56, help="Berry-Esseen constant")

    for name, fn, text in (
        ("tail", cmd_tail, "exact P{S_n >= x}"),
        ("bounds", cmd_bounds, "bound table at x next to the exact tail"),
        ("ratio", cmd_ratio, "exact tail over the Gaussian tail"),
    ):
        p = add(name, fn, text)
        p.add_argument("-w", "--weights", type=_weights, required=True, help="comma-separated weights")
        p.add_argument("-x", type=_finite, required=True, help="threshold")
        if name != "tail":
            p.add_argument("--c-l", type=_finite, default=0.56, help="Berry-Esseen constant")

    p = add("chain", cmd_chain, "sum of P{S_n >= sqrt k} for k = 1..k_max against 1/2")
    p.add_argument("-w", "--weights", type=_weights, required=True, help="comma-separated weights")
    p.add_argument("--k-max", type=_positive_int, default=50)

    p = add("certify", cmd_certify, "interval certificates for the sign claims")
    p.add_argument("claim", help=f"all or one of {', '.join(CLAIM_ORDER)}")
    p.add_argument("--tol", type=_finite, default=1e-12)
    p.add_argument("--max-depth", type=int, default=40)
    p.add_argument("--x-max", type=_finite, default=8.0)
    p.add_argument("--delta", type=_finite, default=1e-3)
    p.add_argument("--c-l", type=_finite, default=0.56)
    p.add_argument("--offset", type=_finite, default=0.0, help="certify margin < -offset instead")
    p.add_argument("--summary", action="store_true", help="omit the leaf boxes")
    p.add_argument("--soundness", action="store_true", help="spot-check leaves in high precision")
    p.add_argument("--seed", type=int, default=0, help="seed for soundness sampling")

    p = add("search", cmd_search, "grid search (and optional refinement) for the largest ratio")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--step", type=_finite, default=0.05)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--iters", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=int, default=0)

    p = add("selfnorm", cmd_selfnorm, "Monte Carlo tail of a self-normalized sum")
    p.add_argument("--model", required=True, help="fixed:1,1 or lognormal:n=5,mu=0,sigma=1 (also exponential, pareto)")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-x", type=_finite, required=True)
    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config: dict = {"command": args.command, "format": args.format, "threads": args.threads}
    try:
        result, code, csv_rows = args.func(args, config)
        text = _render({"config": config, "result": result}, args.format, csv_rows)
    except (RadGaussError, UsageError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
