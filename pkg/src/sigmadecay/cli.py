"""Command line front end.

Exit codes: 0 success, 2 bad usage or invalid domain input, 3 a
quadrature or oracle tolerance was not met, 4 a checked claim failed
its verdict.  For exit codes 3 and 4 the report is still written, so a
failing run always leaves its evidence behind.

All outputs are deterministic: rerunning a subcommand with the same
configuration produces byte-identical files.  The --seed flag is
accepted for forward compatibility but no current subcommand draws
random numbers.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .bounds import (
    BOUND_IDS,
    EXPANSION_IDS,
    check_expansion_bounds,
    check_kernel_bounds,
    check_l1_lemma,
    check_convolution_lemma,
    check_riemann_lebesgue,
    oracle_comparison,
)
from .data import CATALOG_NAMES, catalog_lookup
from .errors import (
    DegenerateFit,
    DomainError,
    NonFiniteIntegrand,
    StepTooLarge,
    ToleranceNotMet,
    UnknownDatum,
    ZoneEmpty,
)
from .quadrature import NormQuery, Target, plancherel_norm
from .rates import TimeGrid, fit_rate, run_theorem_suite, theoretical_exponent, THEOREM_IDS
from .reporting import (
    BOUNDS_HEADER,
    NORM_HEADER,
    render_csv,
    render_json,
    render_loglog_svg,
)
from .spectral import ModelParams, ProfileKind, char_roots, kernel_eval, profile_kind_for

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOLERANCE = 3
EXIT_CHECK_FAILED = 4

_KIND_NAMES = {k.value: k for k in ProfileKind}


def _params_dict(p: ModelParams) -> dict:
    return {
        "sigma": p.sigma,
        "delta1": p.delta1,
        "delta2": p.delta2,
        "a": p.a,
        "b": p.b,
        "n": p.n,
    }


def _add_model_args(sp):
    sp.add_argument("--sigma", type=float, default=1.0, help="sigma >= 1")
    sp.add_argument("--delta1", type=float, default=0.25, help="0 < delta1 < sigma/2")
    sp.add_argument("--delta2", type=float, default=0.75, help="sigma/2 < delta2 < sigma")
    sp.add_argument("-a", type=int, choices=(0, 1), default=1, help="low-order damping switch")
    sp.add_argument("-b", type=int, choices=(0, 1), default=0, help="high-order damping switch")
    sp.add_argument("-n", type=int, default=3, help="space dimension")


def _add_output_args(sp, svg=False):
    sp.add_argument("--out", default=None, help="output path (default: stdout)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--seed", type=int, default=None, help="reserved; no subcommand uses it yet")
    if svg:
        sp.add_argument("--svg", default=None, help="also write a log-log plot to this path")


def _model(args) -> ModelParams:
    return ModelParams(
        sigma=args.sigma, delta1=args.delta1, delta2=args.delta2, a=args.a, b=args.b, n=args.n
    )


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_svg(args, series, title: str) -> None:
    if getattr(args, "svg", None):
        with open(args.svg, "w") as fh:
            fh.write(render_loglog_svg(series, title=title))


def _cmd_roots(args) -> int:
    p = _model(args)
    rows = []
    for r in args.r:
        rp = char_roots(p, r)
        rows.append(
            (
                float(r),
                rp.lambda1.real,
                rp.lambda1.imag,
                rp.lambda2.real,
                rp.lambda2.imag,
                rp.discriminant,
                rp.confluent,
            )
        )
    if args.format == "csv":
        header = ("r", "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im", "discriminant", "confluent")
        _emit(args, render_csv(header, rows))
    else:
        _emit(
            args,
            render_json(
                {
                    "params": _params_dict(p),
                    "roots": [
                        {
                            "r": row[0],
                            "lambda1": [row[1], row[2]],
                            "lambda2": [row[3], row[4]],
                            "discriminant": row[5],
                            "confluent": row[6],
                        }
                        for row in rows
                    ],
                }
            ),
        )
    return EXIT_OK


def _cmd_kernel(args) -> int:
    p = _model(args)
    rows = []
    for t in args.t:
        for r in args.r:
            ks = kernel_eval(p, t, r)
            rows.append(
                (float(t), float(r), ks.k0.real, ks.k1.real, ks.dt_k0.real, ks.dt_k1.real)
            )
    if args.format == "csv":
        _emit(args, render_csv(("t", "r", "k0", "k1", "dt_k0", "dt_k1"), rows))
    else:
        _emit(
            args,
            render_json(
                {
                    "params": _params_dict(p),
                    "kernels": [
                        {
                            "t": row[0],
                            "r": row[1],
                            "k0": row[2],
                            "k1": row[3],
                            "dt_k0": row[4],
                            "dt_k1": row[5],
                        }
                        for row in rows
                    ],
                }
            ),
        )
    return EXIT_OK


def _resolve_kind(args, p: ModelParams, target: Target):
    if target is Target.SOLUTION:
        return None
    if args.kind == "auto":
        return profile_kind_for(p, args.j)
    return _KIND_NAMES[args.kind]


def _cmd_norm(args) -> int:
    p = _model(args)
    target = Target(args.target)
    kind = _resolve_kind(args, p, target)
    data0 = catalog_lookup(args.data0)
    data1 = catalog_lookup(args.data1)
    rows = []
    ok = True
    for t in sorted(args.t):
        q = NormQuery(t=float(t), s=args.s, j=args.j, target=target, kind=kind)
        nr = plancherel_norm(p, q, data0, data1, tol=args.tol)
        ok = ok and nr.converged
        rows.append((float(t), args.s, args.j, target.value, nr.value, nr.abs_error_estimate, nr.nodes_used))
    if args.format == "csv":
        _emit(args, render_csv(NORM_HEADER, rows))
    else:
        _emit(
            args,
            render_json(
                {
                    "params": _params_dict(p),
                    "data0": data0.name,
                    "data1": data1.name,
                    "kind": kind.value if kind else None,
                    "converged": ok,
                    "norms": [
                        {
                            "t": r[0],
                            "s": r[1],
                            "j": r[2],
                            "target": r[3],
                            "value": r[4],
                            "abs_error": r[5],
                            "nodes": r[6],
                        }
                        for r in rows
                    ],
                }
            ),
        )
    _write_svg(args, [(target.value, [r[0] for r in rows], [r[4] for r in rows])], "weighted norm")
    return EXIT_OK if ok else EXIT_TOLERANCE


def _time_grid(args) -> TimeGrid:
    lo, hi = args.t_exponents
    return TimeGrid(tuple(range(int(lo), int(hi) + 1)), int(args.fit_tail))


def _cmd_rates(args) -> int:
    p = _model(args)
    data0 = catalog_lookup(args.data0)
    data1 = catalog_lookup(args.data1)
    grid = _time_grid(args)
    rows = []
    ok = True
    for t in grid.times:
        q = NormQuery(t=t, s=args.s, j=args.j, target=Target.SOLUTION)
        nr = plancherel_norm(p, q, data0, data1, tol=args.tol)
        ok = ok and nr.converged
        rows.append((t, args.s, args.j, "solution", nr.value, nr.abs_error_estimate, nr.nodes_used))
    fit = fit_rate(grid.tail_times, [r[4] for r in rows][-grid.fit_tail :])
    try:
        theo = theoretical_exponent(p, args.m, args.s, args.j)
        theo_dict = {"value": float(theo.value), "exact": str(theo.value), "condition": theo.condition}
    except DomainError as exc:
        theo_dict = {"value": None, "error": str(exc)}
    if args.format == "csv":
        _emit(args, render_csv(NORM_HEADER, rows))
    else:
        _emit(
            args,
            render_json(
                {
                    "params": _params_dict(p),
                    "data0": data0.name,
                    "data1": data1.name,
                    "s": args.s,
                    "j": args.j,
                    "m": args.m,
                    "fitted_rate": fit.rate,
                    "fit_intercept": fit.intercept,
                    "fit_max_log_residual": fit.max_log_residual,
                    "theoretical": theo_dict,
                    "converged": ok,
                    "norms": [
                        {
                            "t": r[0],
                            "s": r[1],
                            "j": r[2],
                            "target": r[3],
                            "value": r[4],
                            "abs_error": r[5],
                            "nodes": r[6],
                        }
                        for r in rows
                    ],
                }
            ),
        )
    _write_svg(args, [("solution", [r[0] for r in rows], [r[4] for r in rows])], "solution norm decay")
    return EXIT_OK if ok else EXIT_TOLERANCE


def _parse_queries(text: str):
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        bits = part.split(",")
        if len(bits) != 2:
            raise DomainError(f"query {part!r} is not 's,j'")
        out.append((float(bits[0]), int(bits[1])))
    if not out:
        raise DomainError("no queries given")
    return out


_THEOREM_DEFAULTS = {
    "data0": "gaussian",
    "data1": "gaussian",
    "queries": [[0.0, 0]],
    "t_exponents": [6, 16],
    "fit_tail": 6,
    "tol": 1e-10,
}


def _cmd_theorem(args) -> int:
    cfg = dict(_THEOREM_DEFAULTS)
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise DomainError("config file must hold a JSON object")
        unknown = set(loaded) - {
            "sigma", "delta1", "delta2", "a", "b", "n",
            "data0", "data1", "queries", "t_exponents", "fit_tail", "tol",
        }
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    # explicit flags win over config values
    for key in ("sigma", "delta1", "delta2", "a", "b", "n"):
        flag = getattr(args, key)
        if flag is not None:
            cfg[key] = flag
        elif key not in cfg:
            raise DomainError(f"model parameter {key} missing: pass --{key} or put it in the config")
    if args.data0 is not None:
        cfg["data0"] = args.data0
    if args.data1 is not None:
        cfg["data1"] = args.data1
    if args.queries is not None:
        cfg["queries"] = [[s, j] for s, j in _parse_queries(args.queries)]
    if args.t_exponents is not None:
        cfg["t_exponents"] = list(args.t_exponents)
    if args.fit_tail is not None:
        cfg["fit_tail"] = args.fit_tail
    if args.tol is not None:
        cfg["tol"] = args.tol

    p = ModelParams(
        sigma=float(cfg["sigma"]), delta1=float(cfg["delta1"]), delta2=float(cfg["delta2"]),
        a=int(cfg["a"]), b=int(cfg["b"]), n=int(cfg["n"]),
    )
    lo, hi = cfg["t_exponents"]
    grid = TimeGrid(tuple(range(int(lo), int(hi) + 1)), int(cfg["fit_tail"]))
    queries = [(float(s), int(j)) for s, j in cfg["queries"]]
    report = run_theorem_suite(
        p,
        args.claim,
        catalog_lookup(str(cfg["data0"])),
        catalog_lookup(str(cfg["data1"])),
        queries,
        grid=grid,
        tol=float(cfg["tol"]),
    )
    if args.format == "csv":
        rows = [
            (row.t, row.s, row.j, row.target, row.value, row.abs_error, row.nodes)
            for row in report.rows()
        ]
        _emit(args, render_csv(NORM_HEADER, rows))
    else:
        _emit(args, render_json(report.to_json_dict()))
    series = []
    for rec in report.records:
        tag = f"s={rec.s:g},j={rec.j}"
        for target in ("solution", "profile", "difference"):
            rows = [row for row in rec.rows if row.target == target]
            if rows:
                series.append((f"{target} {tag}", [r.t for r in rows], [r.value for r in rows]))
    _write_svg(args, series, f"claim {args.claim}")
    if not report.all_converged:
        return EXIT_TOLERANCE
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _cmd_bounds(args) -> int:
    p = _model(args)
    bid = args.id
    if bid in BOUND_IDS:
        report = check_kernel_bounds(p, bid, args.s, args.j)
        if args.format == "csv":
            _emit(args, render_csv(BOUNDS_HEADER, report.rows()))
        else:
            _emit(args, render_json(report.to_json_dict()))
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED
    if bid in EXPANSION_IDS:
        report = check_expansion_bounds(p, bid, args.s, args.j)
        if args.format == "csv":
            _emit(args, render_csv(BOUNDS_HEADER, report.rows()))
        else:
            _emit(args, render_json(report.to_json_dict()))
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED
    if bid == "l1":
        rep = check_l1_lemma(args.alpha, args.beta, args.c, args.n)
        if args.format == "csv":
            rows = list(zip(rep.times, rep.scaled_low, rep.scaled_high))
            _emit(args, render_csv(("t", "scaled_low", "scaled_high"), rows))
        else:
            _emit(
                args,
                render_json(
                    {
                        "check": "l1",
                        "alpha": args.alpha,
                        "beta": args.beta,
                        "c": args.c,
                        "n": args.n,
                        "sup_low": rep.sup_low,
                        "sup_high": rep.sup_high,
                        "passed": rep.passed,
                        "times": list(rep.times),
                        "scaled_low": list(rep.scaled_low),
                        "scaled_high": list(rep.scaled_high),
                    }
                ),
            )
        return EXIT_OK if rep.passed else EXIT_CHECK_FAILED
    if bid == "convolution":
        kind = _KIND_NAMES[args.kind] if args.kind != "auto" else profile_kind_for(p, 0)
        rep = check_convolution_lemma(p, kind, args.weight, catalog_lookup(args.data1))
        if args.format == "csv":
            _emit(args, render_csv(("t", "remainder_ratio"), list(zip(rep.times, rep.ratio))))
        else:
            _emit(
                args,
                render_json(
                    {
                        "check": "convolution",
                        "params": _params_dict(p),
                        "kind": kind.value,
                        "weight": args.weight,
                        "data": args.data1,
                        "rate_full": rep.rate_full,
                        "expected_full": rep.expected_full,
                        "rate_shifted": rep.rate_shifted,
                        "expected_shifted": rep.expected_shifted,
                        "drop": rep.drop,
                        "passed": rep.passed,
                        "times": list(rep.times),
                        "remainder_ratio": list(rep.ratio),
                    }
                ),
            )
        return EXIT_OK if rep.passed else EXIT_CHECK_FAILED
    # riemann_lebesgue
    rep = check_riemann_lebesgue(args.weight, args.decay, taus=args.taus)
    if args.format == "csv":
        rows = list(zip(rep.taus, rep.cos_values, rep.sin_values, rep.magnitudes))
        _emit(args, render_csv(("tau", "cos_value", "sin_value", "magnitude"), rows))
    else:
        _emit(
            args,
            render_json(
                {
                    "check": "riemann_lebesgue",
                    "weight": args.weight,
                    "decay": args.decay,
                    "ratio_last_first": rep.ratio_last_first,
                    "passed": rep.passed,
                    "taus": list(rep.taus),
                    "cos_values": list(rep.cos_values),
                    "sin_values": list(rep.sin_values),
                    "magnitudes": list(rep.magnitudes),
                }
            ),
        )
    return EXIT_OK if rep.passed else EXIT_CHECK_FAILED


def _cmd_oracle_check(args) -> int:
    p = _model(args)
    rs = np.geomspace(args.r_lo, args.r_hi, args.r_points)
    cmp = oracle_comparison(p, rs, args.t)
    passed = cmp.max_abs_diff <= args.tol
    if args.format == "csv":
        _emit(args, render_csv(("r", "t", "abs_diff"), cmp.rows))
    else:
        _emit(
            args,
            render_json(
                {
                    "params": _params_dict(p),
                    "max_abs_diff": cmp.max_abs_diff,
                    "tolerance": args.tol,
                    "passed": passed,
                    "rows": [{"r": r, "t": t, "abs_diff": d} for r, t, d in cmp.rows],
                }
            ),
        )
    return EXIT_OK if passed else EXIT_TOLERANCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sigmadecay",
        description="numerical laboratory for decay rates of structurally damped "
        "sigma-evolution equations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("roots", help="characteristic roots at given frequencies")
    _add_model_args(sp)
    _add_output_args(sp)
    sp.add_argument("--r", type=float, action="append", required=True, help="frequency (repeatable)")
    sp.set_defaults(func=_cmd_roots)

    sp = sub.add_parser("kernel", help="solution kernels at given times and frequencies")
    _add_model_args(sp)
    _add_output_args(sp)
    sp.add_argument("--t", type=float, action="append", required=True, help="time (repeatable)")
    sp.add_argument("--r", type=float, action="append", required=True, help="frequency (repeatable)")
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("norm", help="weighted norms of solution, profile, or difference")
    _add_model_args(sp)
    _add_output_args(sp, svg=True)
    sp.add_argument("--t", type=float, action="append", required=True, help="time (repeatable)")
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--j", type=int, choices=(0, 1), default=0)
    sp.add_argument("--target", choices=[t.value for t in Target], default="solution")
    sp.add_argument("--kind", choices=["auto"] + sorted(_KIND_NAMES), default="auto")
    sp.add_argument("--data0", default="gaussian", help=f"one of {', '.join(CATALOG_NAMES)}")
    sp.add_argument("--data1", default="gaussian")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=_cmd_norm)

    sp = sub.add_parser("rates", help="fit the empirical decay rate of the solution norm")
    _add_model_args(sp)
    _add_output_args(sp, svg=True)
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--j", type=int, choices=(0, 1), default=0)
    sp.add_argument("--m", type=float, default=1.0, help="data integrability exponent in [1, 2]")
    sp.add_argument("--data0", default="gaussian")
    sp.add_argument("--data1", default="gaussian")
    sp.add_argument("--t-exponents", type=int, nargs=2, default=(6, 16), metavar=("LO", "HI"))
    sp.add_argument("--fit-tail", type=int, default=6)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(func=_cmd_rates)

    sp = sub.add_parser("theorem", help="run the full decay-claim verification suite")
    sp.add_argument("--claim", choices=THEOREM_IDS, required=True)
    sp.add_argument("--config", default=None, help="JSON configuration file")
    for key, kw in (
        ("--sigma", dict(type=float)),
        ("--delta1", dict(type=float)),
        ("--delta2", dict(type=float)),
        ("-a", dict(type=int, choices=(0, 1))),
        ("-b", dict(type=int, choices=(0, 1))),
        ("-n", dict(type=int)),
    ):
        sp.add_argument(key, default=None, **kw)
    _add_output_args(sp, svg=True)
    sp.add_argument("--data0", default=None)
    sp.add_argument("--data1", default=None)
    sp.add_argument("--queries", default=None, help="semicolon-separated s,j pairs, e.g. '0,0;1,1'")
    sp.add_argument("--t-exponents", type=int, nargs=2, default=None, metavar=("LO", "HI"))
    sp.add_argument("--fit-tail", type=int, default=None)
    sp.add_argument("--tol", type=float, default=None)
    sp.set_defaults(func=_cmd_theorem)

    sp = sub.add_parser("bounds", help="check pointwise kernel and expansion bounds or scalar lemmas")
    _add_model_args(sp)
    _add_output_args(sp)
    sp.add_argument(
        "--id",
        required=True,
        choices=list(BOUND_IDS) + list(EXPANSION_IDS) + ["l1", "convolution", "riemann_lebesgue"],
    )
    sp.add_argument("--s", type=float, default=0.0)
    sp.add_argument("--j", type=int, choices=(0, 1), default=0)
    sp.add_argument("--alpha", type=float, default=2.0, help="l1: decay exponent")
    sp.add_argument("--beta", type=float, default=0.0, help="l1: weight power")
    sp.add_argument("--c", type=float, default=1.0, help="l1: decay coefficient")
    sp.add_argument("--kind", choices=["auto"] + sorted(_KIND_NAMES), default="auto")
    sp.add_argument("--data1", default="gaussian", help="convolution: data name")
    sp.add_argument("--weight", type=float, default=0.0, help="convolution/riemann_lebesgue weight")
    sp.add_argument("--decay", type=float, default=1.5, help="riemann_lebesgue: envelope exponent")
    sp.add_argument("--taus", type=float, nargs="+", default=(1.0, 10.0, 100.0, 1e3, 1e4))
    sp.set_defaults(func=_cmd_bounds)

    sp = sub.add_parser("oracle-check", help="compare exact kernels against the RK4 oracle")
    _add_model_args(sp)
    _add_output_args(sp)
    sp.add_argument("--r-points", type=int, default=50)
    sp.add_argument("--r-lo", type=float, default=1e-3)
    sp.add_argument("--r-hi", type=float, default=10.0)
    sp.add_argument("--t", type=float, action="append", default=None, help="time (repeatable)")
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.set_defaults(func=_cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "oracle-check" and args.t is None:
        args.t = [0.5, 1.0, 2.0, 5.0]
    try:
        return args.func(args)
    except (DomainError, UnknownDatum, StepTooLarge, ZoneEmpty, DegenerateFit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ToleranceNotMet, NonFiniteIntegrand) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
