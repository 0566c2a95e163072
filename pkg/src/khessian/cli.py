"""Command line interface.

Subcommands: identities, scaling, norm, pairing, embedding, lemma31.
Exit status: 0 all checks pass, 1 check failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .besov import BesovParams, besov_norm, dyadic_norm, gagliardo_seminorm, w1p_norm
from .constructions import make_profile, radial_minor_identity
from .errors import ConfigError, DomainError, EvaluationError
from .grid import load_field
from .harness import (
    parse_config,
    render_identity_report,
    run_embedding_table,
    run_identities,
    run_scaling,
    scaling_inputs_from_config,
    write_embedding_csv,
    write_manifest,
    write_plots,
    write_scaling_csv,
)
from .operators import pair_direct, pair_extension, pair_weak2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khessian",
        description="Minor-algebra identities, Besov norms and k-Hessian pairing studies on grids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_id = sub.add_parser("identities", help="run the randomized identity suite")
    p_id.add_argument("--seed", type=int, default=1)
    p_id.add_argument("--trials", type=int, default=100)

    p_sc = sub.add_parser("scaling", help="run a norm/pairing scaling study from a config file")
    p_sc.add_argument("--config", required=True)
    p_sc.add_argument("--out", required=True)
    p_sc.add_argument("--plots", action="store_true", help="also write SVG plots (needs matplotlib)")

    p_no = sub.add_parser("norm", help="norm of a stored field")
    p_no.add_argument("--field", required=True)
    p_no.add_argument("--s", type=float, required=True)
    p_no.add_argument("--p", type=float, required=True)
    p_no.add_argument("--method", choices=("auto", "gagliardo", "dyadic"), default="auto")
    p_no.add_argument("--budget", type=int, default=2_000_000)
    p_no.add_argument("--seed", type=int, default=0)

    p_pa = sub.add_parser("pairing", help="pairing of a stored field against a stored test function")
    p_pa.add_argument("--field", required=True)
    p_pa.add_argument("--phi", required=True)
    p_pa.add_argument("--k", type=int, required=True)
    p_pa.add_argument("--method", choices=("direct", "weak2", "extension"), default="direct")

    p_em = sub.add_parser("embedding", help="tabulate the embedding classifier over an (s, p) grid")
    p_em.add_argument("--k", type=int, required=True)
    p_em.add_argument("--n", type=int, required=True)
    p_em.add_argument("--out", required=True)
    p_em.add_argument("--s-min", type=float, default=0.15)
    p_em.add_argument("--s-max", type=float, default=1.95)
    p_em.add_argument("--p-min", type=float, default=1.1)
    p_em.add_argument("--p-max", type=float, default=12.0)
    p_em.add_argument("--points", type=int, default=20)

    p_l3 = sub.add_parser("lemma31", help="radial minor integral identity check")
    p_l3.add_argument("--k", type=int, required=True)
    p_l3.add_argument("--n", type=int, required=True)
    p_l3.add_argument("--profile", choices=("two_bump", "odd"), default="two_bump")
    p_l3.add_argument("--seed", type=int, default=1)
    p_l3.add_argument("--grid-points", type=int, default=None)

    return parser


def _cmd_identities(args) -> int:
    report = run_identities(args.seed, args.trials)
    sys.stdout.write(render_identity_report(report))
    return 0 if report.passed else 1


def _cmd_scaling(args) -> int:
    with open(args.config) as fh:
        cfg = parse_config(fh.read())
    spec, m_list, params, seed, budget, grid_points, base_box = scaling_inputs_from_config(cfg)
    report = run_scaling(
        spec, m_list, params, seed=seed, budget=budget, grid_points=grid_points, base_box=base_box
    )
    os.makedirs(args.out, exist_ok=True)
    write_scaling_csv(report, os.path.join(args.out, "report.csv"))
    write_manifest(cfg, os.path.join(args.out, "manifest.txt"), seed=seed)
    if args.plots:
        write_plots(report, args.out)
    print(
        f"{report.family}: pairing slope {report.fitted_pairing_slope:.4f} "
        f"(r2 {report.r_squared[1]:.4f}), norm slope {report.fitted_norm_slope:.4f} "
        f"(r2 {report.r_squared[0]:.4f})"
        + (" [degraded]" if report.degraded else "")
    )
    return 1 if report.degraded else 0


def _cmd_norm(args) -> int:
    u = load_field(args.field)
    params = BesovParams(args.s, args.p)
    if args.method == "auto":
        rep = besov_norm(u, params, budget=args.budget, seed=args.seed)
    elif args.method == "gagliardo":
        w1 = w1p_norm(u, params.p)
        semi = gagliardo_seminorm(u, params, budget=args.budget, seed=args.seed)
        from .besov import NormReport

        rep = NormReport(w1, semi, w1 + semi, "gagliardo", args.budget)
    else:
        total = dyadic_norm(u, params)
        from .besov import NormReport, dyadic_blocks
        from .grid import lp_norm

        _, blocks = dyadic_blocks(u)
        semi = sum(
            2.0 ** (params.s * j * params.p) * lp_norm(b, params.p) ** params.p for j, b in blocks
        ) ** (1.0 / params.p)
        rep = NormReport(total - semi, semi, total, "dyadic", 0)
    print("method,s,p,w1p,seminorm,total,budget,seed")
    print(
        f"{rep.method},{args.s:.12g},{args.p:.12g},{rep.w1p:.12g},"
        f"{rep.seminorm:.12g},{rep.total:.12g},{rep.sampling_budget},{args.seed}"
    )
    return 0


def _cmd_pairing(args) -> int:
    u = load_field(args.field)
    phi = load_field(args.phi)
    if args.method == "direct":
        res = pair_direct(u, args.k, phi)
    elif args.method == "weak2":
        if args.k != 2:
            raise DomainError("the weak form is defined for k = 2 only")
        res = pair_weak2(u, phi)
    else:
        res = pair_extension(u, args.k, phi)
    print("method,k,m,value,grid")
    print(f"{res.method},{res.k},,{res.value:.12g},{res.grid}")
    return 0


def _cmd_embedding(args) -> int:
    s_values = np.linspace(args.s_min, args.s_max, args.points)
    p_values = np.linspace(args.p_min, args.p_max, args.points)
    rows = run_embedding_table(s_values, p_values, args.k, args.n)
    write_embedding_csv(rows, args.out)
    held = sum(1 for r in rows if r[2] == "holds")
    print(f"wrote {len(rows)} rows to {args.out} ({held} hold, {len(rows) - held} fail)")
    return 0


def _cmd_lemma31(args) -> int:
    profile = make_profile(args.k, args.n, seed=args.seed, kind=args.profile)
    lhs, rhs = radial_minor_identity(profile, args.k, args.n, grid_points=args.grid_points)
    rel = abs(lhs - rhs) / abs(rhs)
    print(f"lhs = {lhs:.10g}")
    print(f"rhs = {rhs:.10g}")
    print(f"relative error = {rel:.3e} (tolerance 2e-2)")
    return 0 if rel <= 0.02 else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "identities": _cmd_identities,
        "scaling": _cmd_scaling,
        "norm": _cmd_norm,
        "pairing": _cmd_pairing,
        "embedding": _cmd_embedding,
        "lemma31": _cmd_lemma31,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, DomainError, EvaluationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
