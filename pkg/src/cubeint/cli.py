"""Command-line interface: ``cubeint {reduce,closed-form,eval,verify}``.

Exit codes: 0 success, 1 a verification or consistency failure, 2 bad usage.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import __version__
from ._backend import BACKEND
from .errors import ConsistencyError
from .exact import Poly
from .loggamma import ClosedFormValue, closed_form, numeric_value
from .quadrature import (METHODS, Integrand, QuadPolicy, exact_poly_cube,
                         integrate_reduced, mc_cube)
from .reduction import reduction_plan
from .verify import SUITES, run_suite

SCHEMA_VERSION = "1"

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def closed_form_payload(v: ClosedFormValue, digits: int) -> dict:
    return {
        "constant": rat(v.constant),
        "log_pi": rat(v.log_pi),
        "log_primes": {str(p): rat(q) for p, q in v.log_primes.items()},
        "decimal": numeric_value(v, digits),
        "symbolic": str(v),
    }


def parse_integrand(spec: str) -> Integrand:
    """``loggamma``, ``exp``, ``sin``, ``recip`` or ``poly:c0,c1,...``."""
    spec = spec.strip()
    if spec == "loggamma":
        return Integrand.loggamma()
    if spec in ("exp", "sin"):
        return Integrand.named(spec)
    if spec == "recip":
        return Integrand.named("reciprocal-shift")
    if spec.startswith("poly:"):
        body = spec[len("poly:"):]
        coeffs = []
        for tok in body.split(","):
            try:
                coeffs.append(Fraction(tok.strip()))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"invalid polynomial coefficient {tok!r} in --f") from None
        return Integrand.polynomial(Poly(coeffs))
    raise UsageError(f"unknown integrand {spec!r} in --f "
                     "(expected loggamma, exp, sin, recip or poly:c0,c1,...)")


def _doc(command: str, inputs: dict, results: dict, diagnostics=()) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "diagnostics": list(diagnostics),
    }


def cmd_reduce(args):
    if not 1 <= args.n <= 64:
        raise UsageError("n must be in [1, 64] for reduce")
    plan = reduction_plan(args.n)
    results = {
        "n": plan.n,
        "prefactor": rat(plan.prefactor),
        "shifts": [w.shift for w in plan.weights],
        "weights": [[rat(c) for c in w.g.coeffs] for w in plan.weights],
    }
    text = "; ".join([f"prefactor {plan.prefactor}"]
                     + [f"G{w.m} = {w.g}" for w in plan.weights])
    return _doc("reduce", {"n": args.n}, results), text, EXIT_OK


def cmd_closed_form(args):
    if not 1 <= args.n <= 200:
        raise UsageError("n must be in [1, 200] for closed-form")
    if not 1 <= args.digits <= 50:
        raise UsageError("digits must be in [1, 50]")
    v = closed_form(args.n)
    payload = closed_form_payload(v, args.digits)
    text = f"I({args.n}) = {payload['symbolic']}\ndecimal {payload['decimal']}"
    return (_doc("closed-form", {"n": args.n, "digits": args.digits},
                 {"n": args.n, "closed_form": payload}), text, EXIT_OK)


def cmd_eval(args):
    if args.n < 1:
        raise UsageError("n must be ≥ 1")
    if args.n > 64:
        raise UsageError("n must be ≤ 64 for eval")
    if not args.tol > 0:
        raise UsageError("tol must be positive")
    if args.samples < 2:
        raise UsageError("samples must be ≥ 2")
    if args.workers < 1:
        raise UsageError("workers must be ≥ 1")
    f = parse_integrand(args.f)
    inputs = {"n": args.n, "f": args.f, "method": args.method, "tol": args.tol,
              "quad": args.quad, "samples": args.samples, "seed": args.seed}
    reports, diagnostics, lines = {}, [], []
    if args.method in ("reduced", "both"):
        r = integrate_reduced(args.n, f, QuadPolicy(args.quad, args.tol), workers=args.workers)
        reports["reduced"] = r
        diagnostics += r.diagnostics
    if args.method in ("mc", "both"):
        reports["mc"] = mc_cube(args.n, f, args.samples, args.seed, workers=args.workers)
    results = {"backend": BACKEND,
               "reports": {k: r.as_dict() for k, r in reports.items()}}

    if f.kind == "polynomial":
        exact = exact_poly_cube(args.n, f.poly)
        results["reference"] = {"exact": rat(exact), "decimal": repr(float(exact))}
    elif f.kind == "log-gamma":
        payload = closed_form_payload(closed_form(args.n), 15)
        results["reference"] = {"closed_form": payload, "decimal": payload["decimal"]}

    for k, r in reports.items():
        extra = f" seed {r.seed}" if r.seed is not None else ""
        lines.append(f"{k:8s} {r.value!r} ± {r.error:.3e} ({r.method}, effort {r.effort}{extra})")
    if "reference" in results:
        lines.append(f"reference {results['reference']['decimal']}")

    code = EXIT_OK
    if args.method == "both":
        red, mc = reports["reduced"], reports["mc"]
        disc = abs(red.value - mc.value)
        tol = args.tol + red.error + 4 * mc.error
        ok = disc <= tol
        results.update(discrepancy=disc, combined_tolerance=tol, within_tolerance=ok)
        lines.append(f"discrepancy {disc:.3e} (tolerance {tol:.3e}): {'ok' if ok else 'EXCEEDED'}")
        if not ok:
            code = EXIT_FAIL
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["method", "value", "error", "effort", "seed", "converged"])
            for k, r in reports.items():
                w.writerow([k, repr(r.value), repr(r.error), r.effort,
                            "" if r.seed is None else r.seed, r.converged])
    return _doc("eval", inputs, results, diagnostics), "\n".join(lines), code


def cmd_verify(args):
    limit = 30 if args.suite == "identities" else 12
    if not 1 <= args.n_max <= limit:
        raise UsageError(f"n-max must be in [1, {limit}] for suite {args.suite}")
    if args.samples < 2:
        raise UsageError("samples must be ≥ 2")
    checks = run_suite(args.suite, args.n_max, seed=args.seed, samples=args.samples,
                       workers=args.workers)
    failed = [c for c in checks if not c.passed]
    results = {"checks": [c.as_dict() for c in checks],
               "passed": len(checks) - len(failed), "failed": len(failed),
               "all_passed": not failed}
    lines = []
    for c in checks:
        where = "" if c.n is None else f" n={c.n}"
        detail = f"  [{c.detail}]" if c.detail else ""
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.suite}{where}: {c.name}{detail}")
    lines.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["suite", "check", "n", "passed", "detail"])
            for c in checks:
                w.writerow([c.suite, c.name, "" if c.n is None else c.n, c.passed, c.detail])
    inputs = {"suite": args.suite, "n_max": args.n_max, "seed": args.seed,
              "samples": args.samples}
    return (_doc("verify", inputs, results), "\n".join(lines),
            EXIT_FAIL if failed else EXIT_OK)


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubeint",
        description="Reduce unit-cube integrals of f(x1+...+xn) to 1-D integrals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=_u64, default=0)
    # repeated on each subcommand so the flags work on either side of it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=_u64, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="print the weight polynomials G_m")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("closed-form", parents=[common],
                       help="exact integral of log Gamma over the n-cube")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--digits", type=int, default=15)
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("eval", parents=[common], help="numeric evaluation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True, metavar="SPEC",
                   help="loggamma | exp | sin | recip | poly:c0,c1,... (coefficients as p/q)")
    p.add_argument("--method", choices=("reduced", "mc", "both"), default="reduced")
    p.add_argument("--quad", choices=METHODS, default=METHODS[0],
                   help="rule for smooth shells (singular log-gamma shell always uses tanh-sinh)")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="run the property suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--samples", type=int, default=200_000,
                   help="Monte Carlo samples per n in the loggamma suite")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        doc, text, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
