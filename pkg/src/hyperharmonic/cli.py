"""Command-line verifier for the identity registry.

Subcommands:
    list    show every registry entry
    verify  evaluate identities at seeded sample points and compare sides
    sweep   walk one parameter across a grid, reporting both sides per point

Exit codes: 0 all requested checks passed, 2 at least one comparison
mismatched, 3 evaluation failure (divergence, pole, domain violation),
64 usage error. The HYPERHARMONIC_SEED environment variable overrides
--seed when set.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

from .catalog import (DEFAULT_SEED, Identity, VerifyReport, build_registry,
                      verify, with_perturbed_rhs)
from .errors import HyperharmonicError, UnknownIdentityError

USAGE_ERROR = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# formatting


def _fmt_float(v: float) -> str:
    return "%.17g" % v


def _fmt_value(v) -> str:
    """Compact human-readable scalar: drops a zero imaginary part."""
    c = complex(v)
    if c.imag == 0.0:
        return "%.10g" % c.real
    return "%.10g%+.10gj" % (c.real, c.imag)


def _fmt_params(ident: Identity, params: dict) -> str:
    if not params:
        return "(no parameters)"
    names = ident.param_names or tuple(params)
    return " ".join(f"{name}={_fmt_value(params[name])}" for name in names)


def _json_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return _fmt_float(v)
    raise TypeError(f"unexpected scalar {type(v)!r}")


def _json_write(obj, out, indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{\n")
        for i, (key, val) in enumerate(obj.items()):
            out.write(f'{pad}  "{key}": ')
            _json_write(val, out, indent + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.write("[]")
            return
        out.write("[\n")
        for i, val in enumerate(obj):
            out.write(pad + "  ")
            _json_write(val, out, indent + 1)
            out.write(",\n" if i < len(obj) - 1 else "\n")
        out.write(pad + "]")
    elif isinstance(obj, str):
        out.write('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, complex):
        out.write('{"re": %s, "im": %s}'
                  % (_fmt_float(obj.real), _fmt_float(obj.imag)))
    else:
        out.write(_json_scalar(obj))


def _jsonable_number(v):
    c = complex(v)
    return c.real if c.imag == 0.0 else c


def _report_payload(report: VerifyReport, ident: Identity) -> dict:
    checks = []
    for chk in report.checks:
        checks.append({
            "params": {k: _jsonable_number(v) for k, v in chk.params.items()},
            "lhs": complex(chk.lhs),
            "rhs": complex(chk.rhs),
            "abs_err": chk.abs_err,
            "rel_err": chk.rel_err,
            "passed": chk.passed,
            "terms_used": chk.terms_used,
            "method": chk.method,
        })
    return {
        "id": report.identity_id,
        "kind": ident.kind,
        "tol": report.tol,
        "passed": report.passed,
        "checks": checks,
    }


# ---------------------------------------------------------------------------
# argument plumbing


def _resolve_seed(args) -> int:
    env = os.environ.get("HYPERHARMONIC_SEED")
    if env is not None and env != "":
        try:
            return int(env)
        except ValueError:
            raise _UsageError(
                f"HYPERHARMONIC_SEED must be an integer, got {env!r}")
    return args.seed


def _parse_perturb(specs) -> dict:
    out = {}
    for spec in specs or ():
        ident_id, sep, eps_text = spec.partition("=")
        if not sep or not ident_id:
            raise _UsageError(f"--perturb expects ID=EPS, got {spec!r}")
        try:
            out[ident_id] = float(eps_text)
        except ValueError:
            raise _UsageError(f"--perturb epsilon must be a number, got {eps_text!r}")
    return out


def _select_ids(args, registry) -> list:
    if args.all:
        return list(registry)
    if not args.ids:
        raise _UsageError("verify needs --ids or --all")
    for ident_id in args.ids:
        if ident_id not in registry:
            raise _UsageError(f"unknown identity id {ident_id!r}; "
                              "run `hyperharmonic list`")
    return list(args.ids)


def _parse_fixed(specs) -> dict:
    out = {}
    for spec in specs or ():
        name, sep, text = spec.partition("=")
        if not sep or not name:
            raise _UsageError(f"--fixed expects NAME=VALUE, got {spec!r}")
        try:
            val = complex(text)
        except ValueError:
            raise _UsageError(f"--fixed value must be a number, got {text!r}")
        out[name] = val.real if val.imag == 0.0 else val
    return out


# ---------------------------------------------------------------------------
# subcommands


def _cmd_list(args) -> int:
    registry = build_registry(_resolve_seed(args))
    width = max(len(i) for i in registry)
    for ident in registry.values():
        print(f"{ident.id:<{width}}  {ident.kind:<14}  "
              f"{len(ident.sample_points):>2} points  tol {ident.tol:g}  "
              f"{ident.description}")
    return 0


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    registry = build_registry(seed)
    ids = _select_ids(args, registry)
    perturb = _parse_perturb(args.perturb)
    for ident_id in perturb:
        if ident_id not in registry:
            raise _UsageError(f"--perturb references unknown id {ident_id!r}")
        registry[ident_id] = with_perturbed_rhs(
            registry[ident_id], perturb[ident_id], registry)
    if args.jobs < 1:
        raise _UsageError("--jobs must be a positive integer")

    def run_one(ident_id):
        try:
            return verify(ident_id, tol=args.tol, registry=registry), None
        except HyperharmonicError as exc:
            return None, f"{type(exc).__name__}: {exc}"

    if args.jobs == 1:
        outcomes = [run_one(i) for i in ids]
    else:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(run_one, i) for i in ids]
            outcomes = [f.result() for f in futures]

    payload_results = []
    n_pass = n_fail = n_error = 0
    width = max(len(i) for i in ids)
    for ident_id, (report, err) in zip(ids, outcomes):
        ident = registry[ident_id]
        if err is not None:
            n_error += 1
            print(f"{ident_id:<{width}}  ERROR  {err}", file=sys.stderr)
            payload_results.append({"id": ident_id, "kind": ident.kind,
                                    "error": err})
            continue
        status = "PASS" if report.passed else "FAIL"
        if report.passed:
            n_pass += 1
        else:
            n_fail += 1
        print(f"{ident_id:<{width}}  {status}  "
              f"{len(report.checks)} points  tol {report.tol:g}")
        if not args.quiet:
            for chk in report.checks:
                rel = ("rel %.3e" % chk.rel_err) if chk.rel_err is not None \
                    else "rel n/a"
                mark = "ok" if chk.passed else "MISMATCH"
                print(f"    {_fmt_params(ident, chk.params)}: "
                      f"|lhs-rhs| = {chk.abs_err:.3e} ({rel}, "
                      f"{chk.terms_used} terms, {chk.method}) {mark}")
        payload_results.append(_report_payload(report, ident))

    total = len(ids)
    print(f"{total} checked: {n_pass} passed, {n_fail} failed, {n_error} errors")

    if args.json is not None:
        payload = {
            "run": {
                "command": "verify",
                "seed": seed,
                "timestamp": datetime.now(timezone.utc)
                                     .strftime("%Y-%m-%dT%H:%M:%SZ"),
                "ids": list(ids),
                "tol_override": args.tol,
                "perturb": {k: perturb[k] for k in sorted(perturb)},
            },
            "results": payload_results,
        }
        if args.json == "-":
            _json_write(payload, sys.stdout, 0)
            sys.stdout.write("\n")
        else:
            with open(args.json, "w") as handle:
                _json_write(payload, handle, 0)
                handle.write("\n")

    if n_error:
        return 3
    return 0 if n_fail == 0 else 2


def _cmd_sweep(args) -> int:
    seed = _resolve_seed(args)
    registry = build_registry(seed)
    if args.id not in registry:
        raise _UsageError(f"unknown identity id {args.id!r}; "
                          "run `hyperharmonic list`")
    ident = registry[args.id]
    if args.steps < 2:
        raise _UsageError("--steps must be at least 2")
    if args.param not in ident.param_names:
        raise _UsageError(
            f"{args.id} has no parameter {args.param!r}; "
            f"parameters: {', '.join(ident.param_names) or '(none)'}")
    fixed = _parse_fixed(args.fixed)
    for name in fixed:
        if name not in ident.param_names:
            raise _UsageError(f"{args.id} has no parameter {name!r}")
    missing = [n for n in ident.param_names
               if n != args.param and n not in fixed]
    if missing:
        raise _UsageError(
            f"sweep leaves parameters unpinned: {', '.join(missing)} "
            "(use --fixed NAME=VALUE)")

    from .catalog import _check_point  # shared comparison semantics

    lo, hi, steps = args.start, args.stop, args.steps
    rows = []
    n_fail = 0
    for j in range(steps):
        val = lo + (hi - lo) * j / (steps - 1)
        env = dict(fixed)
        env[args.param] = val
        chk = _check_point(ident, env, args.tol if args.tol is not None
                           else ident.tol)
        rows.append((val, chk))
        if not chk.passed:
            n_fail += 1

    if args.csv is not None:
        handle = sys.stdout if args.csv == "-" else open(args.csv, "w",
                                                         newline="")
        try:
            writer = csv.writer(handle)
            writer.writerow([args.param, "lhs_re", "lhs_im", "rhs_re",
                             "rhs_im", "abs_err", "rel_err", "passed"])
            for val, chk in rows:
                writer.writerow([
                    _fmt_float(val),
                    _fmt_float(chk.lhs.real), _fmt_float(chk.lhs.imag),
                    _fmt_float(chk.rhs.real), _fmt_float(chk.rhs.imag),
                    _fmt_float(chk.abs_err),
                    _fmt_float(chk.rel_err) if chk.rel_err is not None else "",
                    "true" if chk.passed else "false",
                ])
        finally:
            if handle is not sys.stdout:
                handle.close()
    else:
        for val, chk in rows:
            mark = "ok" if chk.passed else "MISMATCH"
            print(f"{args.param}={_fmt_value(val)}: lhs={_fmt_value(chk.lhs)} "
                  f"rhs={_fmt_value(chk.rhs)} |diff|={chk.abs_err:.3e} {mark}")

    if args.csv != "-":
        print(f"{steps} points swept: {steps - n_fail} passed, {n_fail} failed")
    return 0 if n_fail == 0 else 2


# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="hyperharmonic",
        description="Verify harmonic-number series identities numerically.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="sample-point seed (default %(default)s; the "
                             "HYPERHARMONIC_SEED environment variable wins)")

    sub.add_parser("list", parents=[common],
                   help="show registry ids, kinds, and tolerances")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="check identities at seeded sample points")
    p_verify.add_argument("--ids", nargs="+", metavar="ID",
                          help="identity ids to check")
    p_verify.add_argument("--all", action="store_true",
                          help="check the whole registry")
    p_verify.add_argument("--tol", type=float, default=None,
                          help="override comparison tolerance for all ids")
    p_verify.add_argument("--jobs", type=int, default=1,
                          help="evaluate identities in N worker threads")
    p_verify.add_argument("--perturb", action="append", metavar="ID=EPS",
                          help="scale the closed form of ID by (1+EPS); "
                               "fault injection for the failure path")
    p_verify.add_argument("--json", metavar="FILE",
                          help="write a JSON report to FILE ('-' = stdout)")
    p_verify.add_argument("--quiet", action="store_true",
                          help="suppress per-point lines")

    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="walk one parameter across a linear grid")
    p_sweep.add_argument("--id", required=True, help="identity id")
    p_sweep.add_argument("--param", required=True, help="parameter to sweep")
    p_sweep.add_argument("--from", dest="start", type=float, required=True,
                         help="grid start")
    p_sweep.add_argument("--to", dest="stop", type=float, required=True,
                         help="grid end")
    p_sweep.add_argument("--steps", type=int, required=True,
                         help="number of grid points (>= 2)")
    p_sweep.add_argument("--fixed", action="append", metavar="NAME=VALUE",
                         help="pin another parameter (repeatable)")
    p_sweep.add_argument("--tol", type=float, default=None,
                         help="override the identity's tolerance")
    p_sweep.add_argument("--csv", metavar="FILE",
                         help="write rows as CSV to FILE ('-' = stdout)")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_sweep(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except UnknownIdentityError as exc:
        print(f"error: unknown identity {exc}", file=sys.stderr)
        return USAGE_ERROR
    except HyperharmonicError as exc:
        print(f"evaluation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
