"""Command-line entry point.

Subcommands: alpha, cover, bound, simulate, verify, probe.
Exit codes: 0 success, 2 parse error, 3 size cap exceeded, 4 domain error,
5 bound violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

import numpy as np

from . import report as report_mod
from .alpha import alpha_dependence, alpha_separation
from .bounds import (
    BoundResult,
    RangeSpec,
    bosq_bound,
    cascade_bound,
    fractional_soft_cover_bound,
    hoeffding_bound,
    janson_bound,
    lattice_bound,
    lipschitz_sup_bound,
    lower_bound_tail,
    lp_distance_bound,
    mixing_bound,
    optimize_lambda,
    soft_cover_bound,
    variance_bound,
)
from .covers import (
    SoftCover,
    fractional_soft_cover,
    min_soft_cover_exact,
    min_soft_cover_greedy,
    verify_soft_cover,
)
from .dist import JointDistribution, from_json_dict
from .errors import CapExceeded, DepboundsError, DomainError, ParseError
from .generators import (
    Graph,
    LatticeSpec,
    MarkovSpec,
    cascade_exact,
    cascade_sample,
    chain_graph,
    interleaved_blocks,
    ising_exact,
    lower_bound_distribution,
    markov_sample_means,
    stationary_distribution,
    star_graph,
    window_alpha,
)
from .mc import compare_bounds, conjecture_probe, estimate_tail

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_DOMAIN = 4
EXIT_VIOLATION = 5


class BoundViolation(DepboundsError):
    """A verified pipeline produced at least one VIOLATION verdict."""


def _load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {path}: {exc}") from exc


def _load_dist(path: str) -> JointDistribution:
    return from_json_dict(_load_json(path))


def _emit(obj: Any, out: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n")
    else:
        print(text)


# -- alpha -----------------------------------------------------------------


def cmd_alpha(args) -> int:
    dist = _load_dist(args.dist)
    if args.separation is not None:
        res = alpha_separation(dist, args.separation, mode=args.mode)
        _emit(
            {
                "alpha_sep": res.value,
                "ordering": list(res.ordering),
                "mode": res.mode,
            },
            args.out,
        )
    else:
        if not args.left or not args.right:
            raise ParseError("need --left and --right, or --separation")
        value = alpha_dependence(dist, args.left, args.right)
        _emit(
            {"alpha": value, "left": args.left, "right": args.right}, args.out
        )
    return EXIT_OK


# -- cover -----------------------------------------------------------------


def cmd_cover(args) -> int:
    dist = _load_dist(args.dist)
    if args.mode == "exact":
        cover = min_soft_cover_exact(dist, args.gamma)
        payload = cover.to_json_dict()
        payload["chi"] = cover.size
    elif args.mode == "greedy":
        cover = min_soft_cover_greedy(dist, args.gamma)
        payload = cover.to_json_dict()
        payload["chi_upper"] = cover.size
    else:
        cover, chi_star = fractional_soft_cover(dist, args.gamma)
        payload = cover.to_json_dict()
        payload["chi_star"] = chi_star
    payload["certified"] = cover.certified
    _emit(payload, args.out)
    return EXIT_OK


# -- bound -----------------------------------------------------------------


def _evaluate_bound(args) -> BoundResult | dict:
    kind = args.kind
    if kind == "hoeffding":
        return hoeffding_bound(args.n, args.t)
    if kind == "janson":
        return janson_bound(args.n, args.t, args.chi, RangeSpec.unit(args.n))
    if kind == "soft":
        ranges = RangeSpec.unit(args.n)
        if args.optimize_lambda:
            lam_star, best, half = optimize_lambda(
                lambda lam: soft_cover_bound(
                    args.n, args.t, lam, args.gamma, args.chi, ranges
                ),
                args.t,
            )
            return {
                "lambda_star": lam_star,
                "optimized": best.to_json_dict(),
                "half_t": half.to_json_dict(),
            }
        return soft_cover_bound(
            args.n, args.t, args.lam, args.gamma, args.chi, ranges
        )
    if kind == "fractional":
        return fractional_soft_cover_bound(
            args.n,
            args.t,
            args.lam,
            args.gamma,
            args.chi,
            RangeSpec.unit(args.n),
            form=args.form,
        )
    if kind == "lower":
        return lower_bound_tail(args.n, int(args.t), args.alpha)
    if kind == "variance":
        return variance_bound(args.n, args.t, args.lam, args.gamma, args.chi)
    if kind == "lp":
        return {
            "kind": "lp",
            "value": lp_distance_bound(args.p, args.alpha, args.range),
        }
    if kind == "lipschitz":
        return lipschitz_sup_bound(
            args.n, args.t, args.gamma, args.chi, args.B, args.L, args.range
        )
    if kind == "mixing":
        return mixing_bound(args.n, args.mu, args.nu, args.t, args.alpha)
    if kind == "bosq":
        return bosq_bound(args.n, args.mu, args.t, args.alpha)
    if kind == "lattice":
        return lattice_bound(
            args.n, args.t, args.chi, args.poly, args.decay, args.nu
        )
    if kind == "cascade":
        return cascade_bound(
            args.n, args.t, args.chi, args.C, args.c, args.p, args.d
        )
    raise ParseError(f"unknown bound kind {kind!r}")


def cmd_bound(args) -> int:
    result = _evaluate_bound(args)
    payload = result.to_json_dict() if isinstance(result, BoundResult) else result
    _emit(payload, args.out)
    return EXIT_OK


# -- simulate --------------------------------------------------------------


def _build_model(spec: dict) -> tuple[JointDistribution | None, dict]:
    """(exact law or None if too large, context with sampler parameters)."""
    kind = spec.get("kind")
    ctx: dict = {"kind": kind}
    if kind == "lower_bound":
        n, t, gamma = int(spec["n"]), int(spec["t"]), float(spec["gamma"])
        dist = lower_bound_distribution(n, t, gamma)
        ctx.update(n=n, sampler=dist.sample_means, expected=dist.mean_of_sum())
        return dist, ctx
    if kind == "cascade_chain":
        n, q, p = int(spec["n"]), float(spec["q"]), float(spec["p"])
        graph = chain_graph(n)
        dist = cascade_exact(graph, q, p)
        ctx.update(
            n=n,
            expected=dist.mean_of_sum(),
            sampler=lambda seed, count: cascade_sample(
                graph, q, p, seed, count
            ).mean(axis=1),
        )
        return dist, ctx
    if kind == "ising":
        lat = LatticeSpec(
            width=int(spec["width"]),
            height=int(spec["height"]),
            beta=float(spec["beta"]),
            boundary=spec.get("boundary"),
            coupling_sign=int(spec.get("coupling_sign", 1)),
        )
        dist = ising_exact(lat)
        ctx.update(n=lat.cells, sampler=dist.sample_means, expected=dist.mean_of_sum())
        return dist, ctx
    if kind == "markov":
        n = int(spec["n"])
        mspec = MarkovSpec(
            tuple(spec["states"]),
            tuple(tuple(row) for row in spec["transition"]),
            n,
        )
        pi = stationary_distribution(mspec)
        expected = float(pi @ np.asarray(mspec.states))
        ctx.update(
            n=n,
            markov_spec=mspec,
            expected=expected,
            sampler=lambda seed, count: markov_sample_means(mspec, seed, count),
        )
        dist = None
        if len(mspec.states) ** n <= 1 << 22:
            from .generators import markov_process

            dist = markov_process(mspec)
        return dist, ctx
    raise ParseError(f"unknown model kind {kind!r}")


def cmd_simulate(args) -> int:
    spec = _load_json(args.model)
    dist, ctx = _build_model(spec)
    if args.samples:
        means = np.asarray(ctx["sampler"](args.seed, args.samples))
        lines = ["mean"] + [f"{m:.12g}" for m in means]
        text = "\n".join(lines) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if dist is None:
        raise CapExceeded(
            "exact law exceeds the table cap; use --samples for this model"
        )
    _emit(dist.to_json_dict(), args.out)
    return EXIT_OK


# -- verify ----------------------------------------------------------------


def _pipeline_cover(
    dist: JointDistribution | None, cover_cfg: dict, n: int
) -> SoftCover | None:
    mode = cover_cfg.get("mode", "whole")
    gamma = float(cover_cfg.get("gamma", 0.0))
    if mode == "none":
        return None
    if mode == "whole":
        blocks = (tuple(range(n)),)
        cover = SoftCover(blocks, (1.0,), gamma)
    elif mode == "interleaved":
        mu, nu = int(cover_cfg["mu"]), int(cover_cfg["nu"])
        blocks = tuple(interleaved_blocks(n, mu, nu))
        cover = SoftCover(blocks, (1.0,) * len(blocks), gamma)
    elif mode == "exact":
        return min_soft_cover_exact(dist, gamma)
    elif mode == "greedy":
        return min_soft_cover_greedy(dist, gamma)
    else:
        raise ParseError(f"unknown cover mode {mode!r}")
    if dist is None:
        raise DomainError("cover certification needs the exact law")
    return verify_soft_cover(dist, cover)


def run_pipeline(config: dict, out_dir: str | Path) -> dict:
    """Model -> certified cover -> bounds on t_grid -> tail estimate ->
    comparison -> CSV + summary JSON + figure.  Returns the summary dict."""
    name = config.get("name", "pipeline")
    seed = int(config.get("seed", 0))
    samples = int(config["samples"])
    t_grid = [float(t) for t in config["t_grid"]]
    if not t_grid:
        raise ParseError("t_grid must be non-empty")
    bound_cfg = dict(config.get("bound", {}))
    scale = float(bound_cfg.get("scale", 1.0))
    report_only = bool(config.get("report_only", False))

    dist, ctx = _build_model(config["model"])
    n = ctx["n"]

    cover = _pipeline_cover(dist, config.get("cover", {"mode": "none"}), n)
    cover_summary = None
    gamma_eff = None
    if cover is not None:
        if not cover.certified:
            raise DomainError(
                f"cover failed certification: alphas={cover.certified_alphas}"
            )
        gamma_eff = max(cover.certified_alphas)
        cover_summary = cover.to_json_dict()
        cover_summary["certified"] = True
        cover_summary["gamma_eff"] = gamma_eff

    kind = bound_cfg.get("kind", "soft")
    ranges = RangeSpec.unit(n)
    bounds: list[BoundResult] = []
    for t in t_grid:
        if kind == "soft":
            chi = float(bound_cfg.get("chi", cover.size))
            # the certified per-block alpha is the value the bound actually
            # needs, so use it rather than the looser configured gamma
            g = gamma_eff if gamma_eff is not None else float(bound_cfg["gamma"])
            if bound_cfg.get("optimize_lambda", True):
                _, best, _ = optimize_lambda(
                    lambda lam: soft_cover_bound(n, t, lam, g, chi, ranges), t
                )
                bounds.append(best)
            else:
                bounds.append(
                    soft_cover_bound(
                        n, t, float(bound_cfg["lambda"]), g, chi, ranges
                    )
                )
        elif kind == "mixing":
            mu, nu = int(bound_cfg["mu"]), int(bound_cfg["nu"])
            alpha_nu = bound_cfg.get("alpha_nu")
            if alpha_nu is None:
                mspec = ctx["markov_spec"]
                alpha_nu = window_alpha(
                    mspec,
                    int(bound_cfg.get("past_window", 4)),
                    nu,
                    int(bound_cfg.get("future_window", 4)),
                )
            b = mixing_bound(n, mu, nu, t, float(alpha_nu))
            b = BoundResult(
                b.kind,
                b.value,
                b.terms,
                b.params,
                note="alpha_nu is a finite-window surrogate (lower bound on "
                "the mixing coefficient); verdicts are report-only",
            )
            bounds.append(b)
        else:
            raise ParseError(f"unsupported pipeline bound kind {kind!r}")

    estimate = estimate_tail(ctx["sampler"], ctx["expected"], t_grid, samples, seed)
    comparison = compare_bounds(estimate, bounds, scale=scale)

    out_dir = Path(out_dir)
    csv_path = report_mod.write_csv(comparison, out_dir / f"{name}_report.csv")
    fig_path = report_mod.render_figure(
        comparison, out_dir / f"{name}_tail.png", title=name
    )
    summary = {
        "name": name,
        "model": config["model"],
        "samples": samples,
        "seed": seed,
        "cover": cover_summary,
        "bound_kind": kind,
        "bound_scale": scale,
        "report_only": report_only,
        "ok": comparison.ok_count,
        "violations": comparison.violation_count,
        "bounds": [b.to_json_dict() for b in bounds],
        "csv": str(csv_path),
        "figure": str(fig_path),
    }
    report_mod.write_summary(summary, out_dir / f"{name}_summary.json")
    return summary


def cmd_verify(args) -> int:
    config = _load_json(args.config)
    summary = run_pipeline(config, args.out or ".")
    print(json.dumps({k: summary[k] for k in ("name", "ok", "violations")}))
    if summary["violations"] and not summary["report_only"]:
        raise BoundViolation(
            f"{summary['violations']} bound violation(s) in {summary['name']}"
        )
    return EXIT_OK


# -- probe -----------------------------------------------------------------


def cmd_probe(args) -> int:
    graphs: list[Graph] = []
    for n in args.chain or []:
        graphs.append(chain_graph(n))
    for n in args.star or []:
        graphs.append(star_graph(n))
    if not graphs:
        raise ParseError("need at least one --chain or --star graph")
    sets = []
    for s in args.set:
        try:
            sets.append([int(x) for x in s.split(",")])
        except ValueError as exc:
            raise ParseError(f"bad index set {s!r}") from exc
    if not sets:
        raise ParseError("need at least one --set")
    table = conjecture_probe(graphs, args.q, args.p_grid, sets)
    payload = {
        "fitted_C": table.fitted_C,
        "fitted_c": table.fitted_c,
        "rows": [
            {
                "graph": r.graph,
                "p": r.p,
                "set": list(r.index_set),
                "distance": r.distance,
                "alpha_sep": r.alpha_sep,
            }
            for r in table.rows
        ],
        "note": "exploratory decay-law fit; no pass/fail semantics",
    }
    _emit(payload, args.out)
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="depbounds",
        description="Dependence measures, soft covers, and concentration "
        "bounds for finite discrete distributions.",
    )
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--threads", type=int, default=1, help="reserved; computation is single-process"
    )
    parser.add_argument("--out", default=None, help="output file or directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("alpha", help="alpha-dependence / alpha-separation")
    p.add_argument("dist", help="distribution JSON file")
    p.add_argument("--left", type=int, nargs="+")
    p.add_argument("--right", type=int, nargs="+")
    p.add_argument("--separation", type=int, nargs="+", default=None)
    p.add_argument(
        "--mode",
        choices=["exact_dp", "brute_force", "greedy"],
        default="exact_dp",
    )
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("cover", help="minimum / fractional soft covers")
    p.add_argument("dist")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument(
        "--mode", choices=["exact", "greedy", "fractional"], default="exact"
    )
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("bound", help="evaluate a concentration bound")
    p.add_argument(
        "--kind",
        required=True,
        choices=[
            "hoeffding", "janson", "soft", "fractional", "lower", "variance",
            "lp", "lipschitz", "mixing", "bosq", "lattice", "cascade",
        ],
    )
    p.add_argument("-n", type=int)
    p.add_argument("-t", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--chi", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--mu", type=int)
    p.add_argument("--nu", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--d", type=int)
    p.add_argument("--C", type=float)
    p.add_argument("--c", type=float)
    p.add_argument("--B", type=float)
    p.add_argument("--L", type=float)
    p.add_argument("--range", type=float, default=1.0)
    p.add_argument("--poly", type=float)
    p.add_argument("--decay", type=float)
    p.add_argument("--form", choices=["tight", "loose"], default="tight")
    p.add_argument("--optimize-lambda", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("simulate", help="generate a model law or sample means")
    p.add_argument("model", help="model spec JSON file")
    p.add_argument("--samples", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run an end-to-end pipeline config")
    p.add_argument("config")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("probe", help="cascade decay-law probe")
    p.add_argument("--chain", type=int, nargs="*", default=[])
    p.add_argument("--star", type=int, nargs="*", default=[])
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--p-grid", type=float, nargs="+", required=True)
    p.add_argument("--set", action="append", default=[], help='e.g. "0,3"')
    p.set_defaults(func=cmd_probe)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BoundViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
