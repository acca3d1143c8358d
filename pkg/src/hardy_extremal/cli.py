"""Command-line interface: ``hardy-extremal <subcommand> [options]``.

Subcommands
-----------
closed-form   value, beta and branch of the explicit solution
solve         run the IRLS oracle and compare with the explicit value
certify       check the inner-function optimality certificate and the duality gap
sweep         tabulate the value over a range of |lambda| (plot-ready CSV)
schwarz-pick  evaluate the Schwarz-Pick type inequality for a test function

Exit status: 0 success, 1 invalid input, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import concurrent.futures
import csv
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from . import __version__
from .circle import make_grid
from .closedform import (
    DegenerateCertificateWarning,
    certificate_I,
    closed_form,
    extremal_h,
    subcritical_value,
    supercritical_value,
)
from .config import (
    ConfigError,
    LambdaSweep,
    RunConfig,
    SolverOptions,
    format_complex,
    load_config,
    parse_complex,
    parse_complex_list,
)
from .inner import InnerFunctionSpec
from .kernels import WeightQuery, sample_weighted_kernel
from .oracle import IllConditionedError, duality_lower_bound, lemma1_certificate, solve_l1
from .schwarzpick import (
    FunctionKind,
    TestFunctionSpec,
    corollary_lhs,
    corollary_rhs,
    random_case,
    schwarz_pick_check,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERICAL = 2
SEED_ENV = "HARDY_EXTREMAL_SEED"

CSV_COLUMNS_HELP = """\
CSV columns
  closed-form : z, lambda, e, beta_re, beta_im, abs_beta, branch, threshold
  solve       : z, lambda, objective, closed_form_value, rel_gap, iterations,
                converged, abs_c1 .. abs_cN
  certify     : z, lambda, is_certified, min_real, max_abs_imag, closed_form_value,
                duality_bound, duality_gap, certificate
  sweep       : abs_lambda, e, branch, e_over_abs_lambda, e_subcritical_formula,
                e_supercritical_formula, oracle_objective, rel_gap
  schwarz-pick: lhs, rhs, holds, slack (with --random-cases: case, z, lambda,
                corollary_lhs, corollary_rhs, corollary_holds, lhs, rhs, holds, slack)
Floats use 17 significant digits; empty cells mean "not applicable".
"""


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % float(value)
    if isinstance(value, complex):
        return format_complex(value)
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, list):
        return [_json_value(v) for v in value]
    return value


def render(command: str, cfg: RunConfig, records: list[dict]) -> str:
    if cfg.output_format == "json":
        doc = {
            "command": command,
            "config": cfg.to_dict(),
            "records": [{k: _json_value(v) for k, v in r.items()} for r in records],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    columns = list(records[0]) if records else []
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        writer.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(command: str, cfg: RunConfig, records: list[dict]) -> None:
    text = render(command, cfg, records)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _query(cfg: RunConfig, lam=None) -> WeightQuery:
    return WeightQuery(cfg.z, cfg.lam if lam is None else lam, cfg.phi)


def cmd_closed_form(cfg: RunConfig, args) -> list[dict]:
    res = closed_form(cfg.z, cfg.lam)
    return [{
        "z": cfg.z,
        "lambda": cfg.lam,
        "e": res.value,
        "beta_re": res.beta.real,
        "beta_im": res.beta.imag,
        "abs_beta": abs(res.beta),
        "branch": res.branch.value,
        "threshold": res.threshold,
    }]


def _solve_record(cfg: RunConfig, lam, zero_target=False) -> dict:
    grid = make_grid(cfg.grid_size)
    q = _query(cfg, lam)
    k = sample_weighted_kernel(q, grid).conj()
    if zero_target:
        k = k * 0.0
    s = cfg.solver
    report = solve_l1(k, cfg.truncation, s.max_iter, s.tol, s.delta)
    target = 0.0 if zero_target else closed_form(q.z, q.lam).value
    gap = abs(report.objective - target) / target if target > 0 else abs(report.objective)
    return {
        "objective": report.objective,
        "closed_form_value": target,
        "rel_gap": gap,
        "iterations": report.iterations,
        "converged": report.converged,
        "magnitudes": np.abs(report.coefficients.coeffs),
    }


def cmd_solve(cfg: RunConfig, args) -> list[dict]:
    rec = _solve_record(cfg, cfg.lam, zero_target=args.zero_target)
    mags = rec.pop("magnitudes")
    row = {"z": cfg.z, "lambda": cfg.lam, **rec}
    for n, m in enumerate(mags, start=1):
        row[f"abs_c{n}"] = float(m)
    return [row]


def cmd_certify(cfg: RunConfig, args) -> list[dict]:
    grid = make_grid(cfg.grid_size)
    q = _query(cfg)
    k = sample_weighted_kernel(q, grid).conj()
    h = extremal_h(q, grid)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateCertificateWarning)
        I = certificate_I(q, grid)
    kind = "constant" if any(issubclass(w.category, DegenerateCertificateWarning) for w in caught) else "mobius"
    cert = lemma1_certificate(k, h, I, tol=args.cert_tol)
    value = closed_form(q.z, q.lam).value
    bound = duality_lower_bound(k, I)
    return [{
        "z": cfg.z,
        "lambda": cfg.lam,
        "is_certified": cert.is_certified,
        "min_real": cert.min_real,
        "max_abs_imag": cert.max_abs_imag,
        "closed_form_value": value,
        "duality_bound": bound,
        "duality_gap": value - bound,
        "certificate": kind,
    }]


def cmd_sweep(cfg: RunConfig, args) -> list[dict]:
    sweep = cfg.lambda_sweep
    if sweep is None:
        raise InvalidInput("sweep needs --lambda-start/--lambda-stop/--steps or lambda_sweep in the config")
    unit = complex(math.cos(sweep.phase), math.sin(sweep.phase))

    def row(r):
        lam = r * unit
        res = closed_form(cfg.z, lam)
        out = {
            "abs_lambda": r,
            "e": res.value,
            "branch": res.branch.value,
            "e_over_abs_lambda": res.value / abs(lam) if r > 0 else None,
            "e_subcritical_formula": subcritical_value(cfg.z, lam),
            "e_supercritical_formula": supercritical_value(cfg.z, lam),
            "oracle_objective": None,
            "rel_gap": None,
        }
        if args.oracle:
            rec = _solve_record(cfg, lam)
            out["oracle_objective"] = rec["objective"]
            out["rel_gap"] = rec["rel_gap"]
        return out

    moduli = sweep.moduli()
    if args.jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(args.jobs) as pool:
            return list(pool.map(row, moduli))  # map keeps |lambda| order
    return [row(r) for r in moduli]


def _test_function(cfg: RunConfig) -> TestFunctionSpec:
    spec = dict(cfg.f or {})
    kind = spec.get("kind", "phi-mobius")
    scale = parse_complex(spec.get("scale", 1.0))
    zeros = tuple(parse_complex(a) for a in spec.get("zeros") or ())
    inner = InnerFunctionSpec(float(spec.get("phase", 0.0)), spec.get("power", 0), zeros)
    if kind == "phi-mobius":
        return TestFunctionSpec(FunctionKind.INNER_TIMES_MOBIUS, cfg.phi, scale, cfg.z)
    if kind in ("inner-times-mobius", FunctionKind.INNER_TIMES_MOBIUS.value):
        point = parse_complex(spec.get("mobius_point", cfg.z))
        return TestFunctionSpec(FunctionKind.INNER_TIMES_MOBIUS, inner, scale, point)
    if kind in ("blaschke", FunctionKind.BLASCHKE_PRODUCT.value):
        return TestFunctionSpec(FunctionKind.BLASCHKE_PRODUCT, inner, scale)
    if kind in ("polynomial", FunctionKind.SCALED_POLYNOMIAL.value):
        coeffs = tuple(parse_complex(c) for c in spec.get("coeffs") or ())
        return TestFunctionSpec(FunctionKind.SCALED_POLYNOMIAL, coeffs=coeffs)
    raise InvalidInput(f"unknown test function kind {kind!r}")


def cmd_schwarz_pick(cfg: RunConfig, args) -> list[dict]:
    grid = make_grid(cfg.grid_size)
    if args.random_cases:
        seed = int(os.environ.get(SEED_ENV, "0"))
        rng = np.random.default_rng(seed)
        rows = []
        for i in range(args.random_cases):
            f, phi, z, lam = random_case(rng)
            lhs = corollary_lhs(f, phi, z, lam, grid)
            rhs = corollary_rhs(z, lam)
            sp = schwarz_pick_check(f, phi, z, grid)
            rows.append({
                "case": i, "z": z, "lambda": lam,
                "corollary_lhs": lhs, "corollary_rhs": rhs,
                "corollary_holds": lhs <= rhs + 1e-9,
                **sp.to_record(),
            })
        return rows
    f = _test_function(cfg)
    return [schwarz_pick_check(f, cfg.phi, cfg.z, grid).to_record()]


COMMANDS = {
    "closed-form": cmd_closed_form,
    "solve": cmd_solve,
    "certify": cmd_certify,
    "sweep": cmd_sweep,
    "schwarz-pick": cmd_schwarz_pick,
}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="YAML/JSON config file; flags override its values")
    p.add_argument("--z", help="disk point, e.g. 0.5+0.2i (|z| <= 0.99)")
    p.add_argument("--lambda", dest="lam", help="complex weight, e.g. 1-2i")
    p.add_argument("--phi-phase", type=float, help="phase of the unimodular constant of phi")
    p.add_argument("--phi-power", type=int, help="monomial power of phi")
    p.add_argument("--phi-zeros", help="comma-separated Blaschke zeros of phi, e.g. 0.4,-0.3i")
    p.add_argument("--grid-size", type=int, help="number of circle nodes M (power of two >= 16)")
    p.add_argument("--truncation", type=int, help="oracle truncation degree N")
    p.add_argument("--max-iter", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--format", choices=("csv", "json"), dest="output_format")
    p.add_argument("--output", dest="output_path", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hardy-extremal",
        description="Best L1 approximation of the weighted Cauchy-Szego kernel by H^1_0.",
        epilog=CSV_COLUMNS_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("closed-form", "explicit value, beta and branch"),
        ("solve", "IRLS oracle vs explicit value"),
        ("certify", "optimality certificate and duality gap"),
        ("sweep", "tabulate over |lambda|"),
        ("schwarz-pick", "Schwarz-Pick type inequality for a test function"),
    ]:
        p = sub.add_parser(
            name, help=help_, epilog=CSV_COLUMNS_HELP,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        _common(p)
        if name == "solve":
            p.add_argument("--zero-target", action="store_true", help="debug: approximate k = 0")
        if name == "certify":
            p.add_argument("--cert-tol", type=float, default=1e-9)
        if name == "sweep":
            p.add_argument("--lambda-start", type=float)
            p.add_argument("--lambda-stop", type=float)
            p.add_argument("--steps", type=int)
            p.add_argument("--lambda-phase", type=float)
            p.add_argument("--oracle", action="store_true", help="also run the IRLS oracle per row")
            p.add_argument("--jobs", type=int, default=1)
        if name == "schwarz-pick":
            p.add_argument(
                "--f-kind",
                choices=("phi-mobius", "inner-times-mobius", "blaschke", "polynomial"),
                help="test function family (default phi-mobius: f = phi * b_z)",
            )
            p.add_argument("--f-phase", type=float)
            p.add_argument("--f-power", type=int)
            p.add_argument("--f-zeros", help="comma-separated zeros of f")
            p.add_argument("--f-scale")
            p.add_argument("--f-mobius-point")
            p.add_argument("--f-coeffs", help="comma-separated polynomial coefficients, lowest first")
            p.add_argument(
                "--random-cases", type=int, default=0,
                help=f"check N random admissible cases (seed from ${SEED_ENV})",
            )
    return parser


def resolve_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    phi = cfg.phi
    if any(v is not None for v in (args.phi_phase, args.phi_power, args.phi_zeros)):
        phi = InnerFunctionSpec(
            phi.phase if args.phi_phase is None else args.phi_phase,
            phi.power if args.phi_power is None else args.phi_power,
            phi.zeros if args.phi_zeros is None else parse_complex_list(args.phi_zeros),
        )
    solver = cfg.solver
    if any(v is not None for v in (args.max_iter, args.tol, args.delta)):
        solver = SolverOptions(
            solver.max_iter if args.max_iter is None else args.max_iter,
            solver.tol if args.tol is None else args.tol,
            solver.delta if args.delta is None else args.delta,
        )
    sweep = cfg.lambda_sweep
    if getattr(args, "lambda_start", None) is not None or getattr(args, "steps", None) is not None \
            or getattr(args, "lambda_stop", None) is not None or getattr(args, "lambda_phase", None) is not None:
        start = args.lambda_start if args.lambda_start is not None else getattr(sweep, "start", None)
        stop = args.lambda_stop if args.lambda_stop is not None else getattr(sweep, "stop", None)
        steps = args.steps if args.steps is not None else getattr(sweep, "steps", None)
        phase = args.lambda_phase if args.lambda_phase is not None else getattr(sweep, "phase", 0.0)
        if start is None or stop is None or steps is None:
            raise InvalidInput("sweep needs --lambda-start, --lambda-stop and --steps")
        sweep = LambdaSweep(start, stop, steps, phase)
    f = cfg.f
    if args.command == "schwarz-pick":
        overrides = {
            "kind": args.f_kind, "phase": args.f_phase, "power": args.f_power,
            "zeros": None if args.f_zeros is None else [format_complex(a) for a in parse_complex_list(args.f_zeros)],
            "scale": args.f_scale, "mobius_point": args.f_mobius_point,
            "coeffs": None if args.f_coeffs is None else args.f_coeffs.split(","),
        }
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if overrides:
            f = {**(f or {}), **overrides}
    return cfg.with_overrides(
        z=None if args.z is None else parse_complex(args.z),
        lam=None if args.lam is None else parse_complex(args.lam),
        phi=phi,
        grid_size=args.grid_size,
        truncation=args.truncation,
        solver=solver,
        lambda_sweep=sweep,
        output_format=args.output_format,
        output_path=args.output_path,
        f=f,
    )


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code
    try:
        cfg = resolve_config(args)
        records = COMMANDS[args.command](cfg, args)
        emit(args.command, cfg, records)
    except (IllConditionedError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"hardy-extremal: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidInput, ConfigError, ValueError, TypeError) as exc:
        print(f"hardy-extremal: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
