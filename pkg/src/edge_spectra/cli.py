"""Command-line front end: figure datasets, bounds reports, cross-validation.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 empty-result
domain cases (e.g. no gap level in the requested channel), 4 geometry
violations (collar pinch >= 1).

Every CSV starts with '#'-prefixed provenance comments recording the full
parameter set, so a dataset file is self-describing and byte-reproducible.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import __version__
from . import aps_bound, collar_bounds, dirac_ball, fd_oracle, robin1d, validation
from .errors import CollarTooWideError, DomainError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_EMPTY = 3
EXIT_GEOMETRY = 4

WEIGHT_EXPONENTS = {"flat": 0.0, "ball2": 1.0, "ball3": 2.0}


@dataclass
class RunConfig:
    command: str
    parameters: dict
    output_path: str = "-"
    format: str = "csv"
    precision: int = 9


def format_number(x: float, precision: int) -> str:
    """Fixed-precision decimal; scientific notation beyond 1e+-6."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0.0:
        return "0"
    ax = abs(x)
    if ax >= 1e6 or ax < 1e-6:
        return f"{x:.{precision - 1}e}"
    return f"{x:.{precision}g}"


def _resolve_workers(args) -> int:
    env = os.environ.get("EDGE_SPECTRA_THREADS")
    if getattr(args, "threads", None):
        return max(1, args.threads)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _pool_map(fn, items, workers: int):
    """Map over items with a worker pool; results come back in input order."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(cfg: RunConfig, header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [f"# edge-spectra {cfg.command}"]
    for key in sorted(cfg.parameters):
        lines.append(f"# {key}={cfg.parameters[key]}")
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_number(v, cfg.precision) if not isinstance(v, str) else v
                              for v in row))
    return "\n".join(lines) + "\n"


def _json_text(cfg: RunConfig, results, checks=None) -> str:
    obj = {
        "config": {"command": cfg.command, "parameters": cfg.parameters,
                   "precision": cfg.precision},
        "results": results,
        "checks": checks if checks is not None else [],
    }
    return json.dumps(obj, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not JSON-serializable: {type(x)!r}")


# ---------------------------------------------------------------- figure data


def cmd_fig2(args) -> int:
    if not (0.0 < args.c_min < args.c_max):
        raise UsageError("need 0 < c-min < c-max")
    if args.n_points < 2:
        raise UsageError("need at least 2 points")
    cfg = RunConfig(
        command="fig2",
        parameters={"epsilon": args.epsilon, "c_min": args.c_min, "c_max": args.c_max,
                    "n_points": args.n_points},
        output_path=args.output, format=args.format, precision=args.precision,
    )
    cs = np.linspace(args.c_min, args.c_max, args.n_points)

    def row(c: float):
        p = robin1d.RobinProblem(args.epsilon, float(c))
        k = robin1d.solve_edge_mode(p).kappa_or_k
        return (float(c), k, robin1d.kappa_m(p), robin1d.kappa_M(p))

    rows = _pool_map(row, list(cs), _resolve_workers(args))
    bad = [r for r in rows if not (r[3] <= r[1] <= r[2])]
    if bad:
        print(f"sandwich violated at c={bad[0][0]}", file=sys.stderr)
        return EXIT_VALIDATION
    if cfg.format == "json":
        _emit(_json_text(cfg, {"rows": [dict(zip(("c", "kappa_exact", "kappa_m", "kappa_M"), r))
                                        for r in rows]}), cfg.output_path)
    else:
        _emit(_csv_text(cfg, ("c", "kappa_exact", "kappa_m", "kappa_M"), rows), cfg.output_path)
    return EXIT_OK


def cmd_fig3(args) -> int:
    cfg = RunConfig(
        command="fig3",
        parameters={"m": args.m, "R0": args.R0, "alpha": args.alpha,
                    "n_points": args.n_points, "convention": args.convention},
        output_path=args.output, format=args.format, precision=args.precision,
    )
    p = dirac_ball.DiracBallProblem(args.m, args.R0, args.alpha, args.convention)
    ch = dirac_ball.Channel.from_j(0.5)
    levels = dirac_ball.solve_channel(p, ch)
    if not levels:
        thr = dirac_ball.existence_threshold(p, ch)
        print(
            f"no gap level in the j=1/2 channel at alpha={args.alpha} "
            f"(existence threshold under figure_calibrated: alpha > {thr:.6f})",
            file=sys.stderr,
        )
        return EXIT_EMPTY
    level = levels[0]
    prof = dirac_ball.radial_profile(p, level, args.n_points)
    cfg.parameters["level_E"] = float(level.E)
    rows = list(zip(prof.r_grid, prof.phi1, prof.phi2, prof.density))
    if cfg.format == "json":
        _emit(_json_text(cfg, {
            "level": {"E": level.E, "j": ch.j, "family": ch.family,
                      "degeneracy": level.degeneracy},
            "rows": [dict(zip(("r", "phi1", "phi2", "density"), r)) for r in rows],
        }), cfg.output_path)
    else:
        _emit(_csv_text(cfg, ("r", "phi1", "phi2", "density"), rows), cfg.output_path)
    return EXIT_OK


def cmd_fig4(args) -> int:
    alphas = [float(a) for a in args.alpha]
    cfg = RunConfig(
        command="fig4",
        parameters={"m": args.m, "R0": args.R0, "alpha_list": alphas,
                    "counting": args.counting, "families": args.families,
                    "convention": args.convention},
        output_path=args.output, format=args.format, precision=args.precision,
    )

    def solve(alpha: float):
        p = dirac_ball.DiracBallProblem(args.m, args.R0, alpha, args.convention)
        levels = dirac_ball.enumerate_edge_levels(p, families=args.families)
        if args.counting == "levels":
            n = len(levels)
        else:
            n = sum(lv.degeneracy for lv in levels)
        return alpha, n, levels

    solved = _pool_map(solve, alphas, _resolve_workers(args))
    is_ref = math.isclose(args.m * args.R0, 1.0, rel_tol=1e-12)
    rows = []
    for alpha, n, _levels in solved:
        ref = dirac_ball.REFERENCE_LEVEL_COUNTS.get(alpha) if is_ref else None
        rows.append((alpha, n,
                     "" if ref is None else ref,
                     "" if ref is None else str(int(n == ref))))
    if cfg.format == "json":
        results = {
            "rows": [
                {"alpha": a, "count": n,
                 "reference_count": (dirac_ball.REFERENCE_LEVEL_COUNTS.get(a) if is_ref else None),
                 "levels": [
                     {"family": lv.channel.family, "j": lv.channel.j, "E": lv.E,
                      "degeneracy": lv.degeneracy} for lv in levels
                 ]}
                for (a, n, levels) in solved
            ],
            "discrepancy": validation.counting_report(args.convention) if is_ref else None,
        }
        _emit(_json_text(cfg, results), cfg.output_path)
    else:
        _emit(_csv_text(cfg, ("alpha", "count", "reference_count", "matches_reference"),
                        rows), cfg.output_path)
    return EXIT_OK


# -------------------------------------------------------------------- bounds


def cmd_bounds(args) -> int:
    cfg = RunConfig(
        command="bounds",
        parameters={"R0": args.R0, "epsilon": args.epsilon, "mu": args.mu,
                    "weight": args.weight, "weight_file": args.weight_file,
                    "check_fd": args.check_fd},
        output_path=args.output, format="json", precision=args.precision,
    )
    if args.weight_file:
        data = np.loadtxt(args.weight_file, delimiter=",")
        if data.ndim != 2 or data.shape[1] != 2:
            raise UsageError("weight table must be two-column CSV (r, w)")
        r_tab, w_tab = data[:, 0], data[:, 1]
        w = collar_bounds.WeightFunction(
            evaluate=lambda r: np.interp(np.asarray(r, dtype=float), r_tab, w_tab),
            name=f"table:{os.path.basename(args.weight_file)}",
        )
    else:
        w = collar_bounds.WeightFunction.radial_power(
            WEIGHT_EXPONENTS[args.weight], name=args.weight
        )
    geom0 = collar_bounds.CollarGeometry(
        R0=args.R0, epsilon=args.epsilon, delta=0.0, mu_bar=args.mu, mu_under=args.mu
    )
    try:
        delta = collar_bounds.compute_delta(w, geom0)
    except CollarTooWideError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_GEOMETRY
    geom = collar_bounds.CollarGeometry(
        R0=args.R0, epsilon=args.epsilon, delta=delta, mu_bar=args.mu, mu_under=args.mu
    )
    mu0 = collar_bounds.lower_bound_mu0(geom)
    rep = collar_bounds.sandwich_report(geom) if args.mu > 0 else None
    results = {
        "delta": delta,
        "mu0": mu0,
        "lower_bound": -mu0 ** 2,
        "upper_edge_bound": rep.upper if rep else None,
        "regime": rep.regime if rep else None,
        "asymptotic_bounds": list(rep.asymptotic_bounds) if rep and rep.asymptotic_bounds else None,
        "edge_certificate": bool(rep and rep.upper is not None),
    }
    checks = []
    if args.check_fd and args.mu > 0:
        T = fd_oracle.build_radial(w, geom, mu=args.mu, angular_term=None, N=args.fd_nodes)
        lam = fd_oracle.lowest_eigenvalues(T, 1)[0]
        inside = rep.lower <= lam <= rep.upper
        results["fd_lowest_eigenvalue"] = lam
        checks.append({"name": "fd-enclosure", "measured": lam,
                       "tolerance": 0.0, "passed": bool(inside),
                       "detail": f"window [{rep.lower}, {rep.upper}]"})
    if args.k_bar is not None:
        forms = collar_bounds.gauge_bound_forms(collar_bounds.GaugeBoundInput(
            K_bar=args.k_bar, lambda_min=args.lambda_min,
            lambda_tilde_max=args.lambda_tilde_max, delta=delta, epsilon=args.epsilon,
        ))
        results["gauge_C"] = {"robin_constant": forms.robin_constant,
                              "first_power": forms.first_power,
                              "squared": forms.squared}
    _emit(_json_text(cfg, results, checks), cfg.output_path)
    if checks and not all(c["passed"] for c in checks):
        return EXIT_VALIDATION
    return EXIT_OK


# ------------------------------------------------------------------ validate


def cmd_validate(args) -> int:
    cfg = RunConfig(
        command="validate", parameters={"suite": args.suite},
        output_path=args.output, format="json", precision=args.precision,
    )
    t0 = time.perf_counter()
    checks: list[validation.Check] = []
    results = {}
    if args.suite in ("robin", "all"):
        checks += validation.robin_suite()
    if args.suite in ("dirac", "all"):
        checks += validation.dirac_suite()
        results["counting"] = validation.counting_report()
    if args.suite in ("aps", "all"):
        checks += validation.aps_suite()
    results["wall_time_s"] = time.perf_counter() - t0
    results["all_passed"] = all(c.passed for c in checks)
    _emit(_json_text(cfg, results, [c.as_dict() for c in checks]), cfg.output_path)
    if not results["all_passed"]:
        for c in checks:
            if not c.passed:
                print(f"FAIL {c.name}: measured={c.measured!r} tol={c.tolerance!r}",
                      file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


# ----------------------------------------------------------------- plumbing


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="edge-spectra",
        description="Edge-state spectra of Robin-type boundary conditions: "
                    "figure datasets, analytic bounds, and oracle cross-validation.",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="csv"):
        sp.add_argument("--output", default="-", help="output path ('-' for stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=fmt_default)
        sp.add_argument("--precision", type=int, default=9, help="decimal digits")
        sp.add_argument("--threads", type=int, default=None,
                        help="worker pool size (default: number of processors; "
                             "EDGE_SPECTRA_THREADS overrides)")

    sp = sub.add_parser("fig2", help="sandwich-bound sweep of the 1D edge root")
    sp.add_argument("--epsilon", type=float, default=1.0)
    sp.add_argument("--c-min", type=float, default=0.05)
    sp.add_argument("--c-max", type=float, default=4.0)
    sp.add_argument("--n-points", type=int, default=80)
    common(sp)
    sp.set_defaults(fn=cmd_fig2)

    sp = sub.add_parser("fig3", help="radial density of the lowest j=1/2 gap level")
    sp.add_argument("--m", type=float, default=1.0)
    sp.add_argument("--R0", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=1.16144)
    sp.add_argument("--n-points", type=int, default=200)
    sp.add_argument("--convention", choices=("paper_literal", "figure_calibrated"),
                    default="figure_calibrated")
    common(sp)
    sp.set_defaults(fn=cmd_fig3)

    sp = sub.add_parser("fig4", help="gap-level counts per chiral angle")
    sp.add_argument("--m", type=float, default=1.0)
    sp.add_argument("--R0", type=float, default=1.0)
    sp.add_argument("--alpha", nargs="+", default=["1", "2", "3", "4", "5"])
    sp.add_argument("--counting", choices=("levels", "degeneracy_weighted"),
                    default="levels")
    sp.add_argument("--families", choices=("primary_only", "both"), default="both")
    sp.add_argument("--convention", choices=("paper_literal", "figure_calibrated"),
                    default="figure_calibrated")
    common(sp)
    sp.set_defaults(fn=cmd_fig4)

    sp = sub.add_parser("bounds", help="collar bound report for a named weight")
    sp.add_argument("--R0", type=float, default=1.0)
    sp.add_argument("--epsilon", type=float, default=0.1)
    sp.add_argument("--mu", type=float, default=1.0)
    sp.add_argument("--weight", choices=tuple(WEIGHT_EXPONENTS), default="ball3")
    sp.add_argument("--weight-file", default=None,
                    help="two-column CSV (r, w) overriding --weight")
    sp.add_argument("--check-fd", action="store_true",
                    help="also verify the finite-difference enclosure")
    sp.add_argument("--fd-nodes", type=int, default=4000)
    sp.add_argument("--k-bar", type=float, default=None, help="gauge bound K-bar")
    sp.add_argument("--lambda-min", type=float, default=1.0)
    sp.add_argument("--lambda-tilde-max", type=float, default=1.0)
    common(sp, fmt_default="json")
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("validate", help="run the oracle cross-validation suites")
    sp.add_argument("--suite", choices=("robin", "dirac", "aps", "all"), default="all")
    common(sp, fmt_default="json")
    sp.set_defaults(fn=cmd_validate)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CollarTooWideError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_GEOMETRY
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
