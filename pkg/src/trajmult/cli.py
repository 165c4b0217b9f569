"""Command-line front-end: problem files in, result documents out.

Subcommands: mult, bound, nonholonomy, noetherian-mult,
noetherian-nonholonomy, selftest.  Problem files are JSON with polynomial
expressions embedded as strings in the package grammar; see
docs/problem_format.md.  Results are JSON on stdout with exact rationals
and big integers serialized as strings; see docs/result_format.md.

Exit codes: 0 for finite / identically-zero / certified results, 2 for
inconclusive or uncertified results, 1 for input errors (diagnostic on
stderr, a well-formed error document on stdout).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import selftest as selftest_module
from .bounds import (VARIANT_CONSISTENT, VARIANT_LITERAL, bound_thm3, bound_thm5,
                     bound_thm6, bound_thm7)
from .errors import TrajmultError
from .lie import PolyVectorField
from .noetherian import NoetherianChain, NoetherianField, lift_system, noetherian_multiplicity
from .nonholonomy import VectorFieldSystem, degree_of_nonholonomy
from .poly import parse_polynomial
from .series import compose_with_series
from .trajectory import (DEFAULT_CAP, STATUS_FINITE, STATUS_IDENTICALLY_ZERO,
                         AutonomousSystem, RationalSystem, expand_trajectory,
                         multiplicity)

SCHEMA_VERSION = 1
SERIES_PREFIX_LEN = 16
T_NAME = "t"


class ProblemError(TrajmultError, ValueError):
    """Malformed problem file."""


# ----------------------------------------------------------------------
# problem files


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ProblemError(f"{path}: top level must be a JSON object")
    return data


def _get_vars(problem: dict) -> list:
    names = problem.get("vars")
    if not isinstance(names, list) or not names or not all(isinstance(v, str) for v in names):
        raise ProblemError("member 'vars' must be a nonempty list of names")
    return names


def _parse_all(exprs, names, member: str) -> list:
    if not isinstance(exprs, list) or not all(isinstance(e, str) for e in exprs):
        raise ProblemError(f"member {member!r} must be a list of expression strings")
    return [parse_polynomial(e, names) for e in exprs]


def _get_basepoint(problem: dict, n: int) -> list:
    point = problem.get("basepoint")
    if point is None:
        return ["0"] * n
    if not isinstance(point, list) or len(point) != n:
        raise ProblemError(f"member 'basepoint' must list {n} rationals")
    return point


def _option(problem: dict, args, name: str, default):
    """CLI flag wins over the file's options member, which wins over the default."""
    cli_value = getattr(args, name.replace("-", "_"), None)
    if cli_value is not None:
        return cli_value
    options = problem.get("options", {})
    if not isinstance(options, dict):
        raise ProblemError("member 'options' must be an object")
    return options.get(name, default)


def _build_mult_system(problem: dict, names: list):
    """Returns (system, poly_vars) for autonomous or rational problems."""
    has_field = "field" in problem
    has_rational = "rational_system" in problem
    if has_field == has_rational:
        raise ProblemError("exactly one of 'field' or 'rational_system' is required")
    basepoint = _get_basepoint(problem, len(names))
    if has_field:
        comps = _parse_all(problem["field"], names, "field")
        return AutonomousSystem(PolyVectorField(comps), basepoint), names
    spec = problem["rational_system"]
    if not isinstance(spec, dict) or "S" not in spec or "Q" not in spec:
        raise ProblemError("member 'rational_system' must be an object with 'S' and 'Q'")
    if T_NAME in names:
        raise ProblemError(f"variable name {T_NAME!r} is reserved for rational systems")
    full = names + [T_NAME]
    S = _parse_all(spec["S"], full, "rational_system.S")
    Q = _parse_all(spec["Q"], full, "rational_system.Q")
    return RationalSystem(S, Q, basepoint), full


def _build_chain(problem: dict, names: list):
    spec = problem.get("chain")
    if not isinstance(spec, dict):
        raise ProblemError("member 'chain' must be an object with 'fvars', 'g', 'f0'")
    fvars = spec.get("fvars")
    if not isinstance(fvars, list) or not all(isinstance(v, str) for v in fvars):
        raise ProblemError("member 'chain.fvars' must be a list of names")
    full = names + fvars
    g_rows = spec.get("g")
    if not isinstance(g_rows, list) or len(g_rows) != len(fvars):
        raise ProblemError(f"member 'chain.g' must have one row per entry of 'chain.fvars'")
    g = [_parse_all(row, full, "chain.g") for row in g_rows]
    f0 = spec.get("f0")
    if not isinstance(f0, list) or len(f0) != len(fvars):
        raise ProblemError("member 'chain.f0' must list one rational per chain entry")
    return NoetherianChain(len(names), g, f0), full


# ----------------------------------------------------------------------
# result documents


def _mult_document(path: str, result, prefix) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "mult",
        "input": path,
        "status": result.status,
        "mu": result.mu,
        "certified_bound": None if result.certified_bound is None else str(result.certified_bound),
        "checked_to": result.checked_to,
        "method": result.method,
        "bound_used": None if result.bound_used is None else str(result.bound_used),
        "stabilized_at": result.stabilized_at,
        "series_prefix": prefix,
    }


def _series_prefix(result, system, poly) -> Optional[list]:
    series = result.series
    if series is None:
        # the chain route does not build the series; a short display
        # expansion is cheap and uses the already validated system
        order = SERIES_PREFIX_LEN - 1
        xs = expand_trajectory(system, order)
        series = compose_with_series(poly, system.full_series(xs), order)
    return [str(c) for c in series.coeffs[:SERIES_PREFIX_LEN]]


def _mult_exit(result) -> int:
    return 0 if result.status in (STATUS_FINITE, STATUS_IDENTICALLY_ZERO) else 2


def _nonholonomy_document(path: str, result, command: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "input": path,
        "d": result.d,
        "N": result.N,
        "certified": result.certified,
        "rank_trace": list(result.rank_trace),
        "explored_to": result.explored_to,
        "bound_threshold": None if result.bound_threshold is None else str(result.bound_threshold),
    }


# ----------------------------------------------------------------------
# per-file runners (module level so ProcessPoolExecutor can pickle them)


def _run_mult_file(path: str, args) -> tuple:
    problem = _load_json(path)
    names = _get_vars(problem)
    system, poly_vars = _build_mult_system(problem, names)
    if "poly" not in problem or not isinstance(problem["poly"], str):
        raise ProblemError("member 'poly' must be an expression string")
    poly = parse_polynomial(problem["poly"], poly_vars)
    result = multiplicity(
        poly, system,
        method=_option(problem, args, "method", "both"),
        cap=_option(problem, args, "cap", DEFAULT_CAP),
        certify=_option(problem, args, "certify", False))
    doc = _mult_document(path, result, _series_prefix(result, system, poly))
    return _mult_exit(result), doc


def _run_nonholonomy_file(path: str, args) -> tuple:
    problem = _load_json(path)
    names = _get_vars(problem)
    system_spec = problem.get("system")
    if not isinstance(system_spec, list) or not system_spec:
        raise ProblemError("member 'system' must be a nonempty list of component lists")
    fields = [PolyVectorField(_parse_all(comps, names, "system")) for comps in system_spec]
    result = degree_of_nonholonomy(
        VectorFieldSystem(fields),
        _get_basepoint(problem, len(names)),
        max_order=_option(problem, args, "max_order", 6),
        bound_variant=_option(problem, args, "bound_variant", VARIANT_CONSISTENT))
    return (0 if result.certified else 2), _nonholonomy_document(path, result, "nonholonomy")


def _run_noetherian_mult_file(path: str, args) -> tuple:
    problem = _load_json(path)
    names = _get_vars(problem)
    chain, full = _build_chain(problem, names)
    if "field" not in problem:
        raise ProblemError("member 'field' (the coefficient list) is required")
    nf = NoetherianField(chain, _parse_all(problem["field"], full, "field"))
    if "poly" not in problem or not isinstance(problem["poly"], str):
        raise ProblemError("member 'poly' must be an expression string")
    psi = parse_polynomial(problem["poly"], full)
    result = noetherian_multiplicity(
        psi, nf,
        cap=_option(problem, args, "cap", DEFAULT_CAP),
        method=_option(problem, args, "method", "both"),
        certify=_option(problem, args, "certify", False))
    system = AutonomousSystem(lift_system(chain, [nf.Q]).fields[0], chain.augmented_basepoint())
    doc = _mult_document(path, result, _series_prefix(result, system, psi))
    doc["command"] = "noetherian-mult"
    return _mult_exit(result), doc


def _run_noetherian_nonholonomy_file(path: str, args) -> tuple:
    problem = _load_json(path)
    names = _get_vars(problem)
    chain, full = _build_chain(problem, names)
    system_spec = problem.get("system")
    if not isinstance(system_spec, list) or not system_spec:
        raise ProblemError("member 'system' must be a nonempty list of coefficient lists")
    Qs = [_parse_all(comps, full, "system") for comps in system_spec]
    result = degree_of_nonholonomy(
        lift_system(chain, Qs),
        chain.augmented_basepoint(),
        max_order=_option(problem, args, "max_order", 6),
        bound_variant=_option(problem, args, "bound_variant", VARIANT_CONSISTENT))
    return ((0 if result.certified else 2),
            _nonholonomy_document(path, result, "noetherian-nonholonomy"))


_FILE_RUNNERS = {
    "mult": _run_mult_file,
    "nonholonomy": _run_nonholonomy_file,
    "noetherian-mult": _run_noetherian_mult_file,
    "noetherian-nonholonomy": _run_noetherian_nonholonomy_file,
}


def _run_one(task: tuple) -> tuple:
    command, path, args = task
    return _FILE_RUNNERS[command](path, args)


# ----------------------------------------------------------------------
# command handlers


def _emit(doc, started: float) -> None:
    doc["timings"] = {"seconds": round(time.monotonic() - started, 6)}
    print(json.dumps(doc, sort_keys=True, indent=2))


def _run_file_command(command: str, args) -> int:
    started = time.monotonic()
    tasks = [(command, path, args) for path in args.input]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_run_one, tasks))
    else:
        outcomes = [_run_one(task) for task in tasks]
    if len(outcomes) == 1:
        code, doc = outcomes[0]
        _emit(doc, started)
        return code
    docs = []
    code = 0
    for file_code, doc in outcomes:
        doc["timings"] = {"seconds": None}
        docs.append(doc)
        code = max(code, file_code)
    wrapper = {"schema_version": SCHEMA_VERSION, "command": command, "results": docs}
    _emit(wrapper, started)
    return code


def _run_bound(args) -> int:
    started = time.monotonic()
    inputs = {}
    if args.formula == "thm3":
        value = bound_thm3(args.n, args.p, args.q)
        inputs = {"n": args.n, "p": args.p, "q": args.q}
    elif args.formula == "thm5":
        value = bound_thm5(args.n, args.q, args.d, args.variant)
        inputs = {"n": args.n, "q": args.q, "d": args.d}
    elif args.formula == "thm6":
        value = bound_thm6(args.n, args.m, args.p, args.q, args.alpha)
        inputs = {"n": args.n, "m": args.m, "p": args.p, "q": args.q, "alpha": args.alpha}
    else:
        value = bound_thm7(args.n, args.m, args.q, args.alpha, args.d)
        inputs = {"n": args.n, "m": args.m, "q": args.q, "alpha": args.alpha, "d": args.d}
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "bound",
        "formula": args.formula,
        "inputs": inputs,
        "variant": args.variant if args.formula == "thm5" else None,
        "value": str(value),
    }
    _emit(doc, started)
    return 0


def _run_selftest(args) -> int:
    started = time.monotonic()
    passed, failed, failures = selftest_module.run(verbose=True)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "selftest",
        "passed": passed,
        "failed": failed,
        "failures": failures,
    }
    _emit(doc, started)
    return 0 if failed == 0 else 1


# ----------------------------------------------------------------------
# argument parsing


def _add_input_options(sub, with_method: bool, with_order: bool):
    sub.add_argument("-i", "--input", action="append", required=True,
                     help="problem file (repeat for batch mode)")
    sub.add_argument("--jobs", type=int, default=1,
                     help="parallel workers for batch mode (default 1)")
    if with_method:
        sub.add_argument("--method", choices=["series", "lie", "both"], default=None)
        sub.add_argument("--cap", type=int, default=None,
                         help=f"max expansion order (default {DEFAULT_CAP})")
        sub.add_argument("--certify", action="store_true", default=None,
                         help="lift the cap to the certificate threshold")
    if with_order:
        sub.add_argument("--max-order", type=int, default=None, dest="max_order",
                         help="max bracket order to explore (default 6)")
        sub.add_argument("--bound-variant", choices=[VARIANT_CONSISTENT, VARIANT_LITERAL],
                         default=None, dest="bound_variant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trajmult",
        description="Exact multiplicities along vector-field trajectories, "
                    "certification bounds, and degrees of nonholonomy.")
    subs = parser.add_subparsers(dest="command", required=True)

    mult = subs.add_parser("mult", help="multiplicity of a polynomial zero along a trajectory")
    _add_input_options(mult, with_method=True, with_order=False)

    bound = subs.add_parser("bound", help="evaluate an explicit bound formula exactly")
    bound.add_argument("formula", choices=["thm3", "thm5", "thm6", "thm7"])
    bound.add_argument("-n", type=int, required=True, help="ambient dimension")
    bound.add_argument("-p", type=int, default=None, help="polynomial degree")
    bound.add_argument("-q", type=int, required=True, help="field coefficient degree")
    bound.add_argument("-d", type=int, default=None, help="span dimension")
    bound.add_argument("-m", type=int, default=None, help="chain order")
    bound.add_argument("--alpha", type=int, default=None, help="chain degree")
    bound.add_argument("--variant", choices=[VARIANT_CONSISTENT, VARIANT_LITERAL],
                       default=VARIANT_CONSISTENT,
                       help="parenthesization of the d > 2 nonholonomy formula")

    nh = subs.add_parser("nonholonomy", help="span dimension and degree of nonholonomy")
    _add_input_options(nh, with_method=False, with_order=True)

    nm = subs.add_parser("noetherian-mult", help="multiplicity with a lifted chain")
    _add_input_options(nm, with_method=True, with_order=False)

    nn = subs.add_parser("noetherian-nonholonomy", help="nonholonomy with a lifted chain")
    _add_input_options(nn, with_method=False, with_order=True)

    subs.add_parser("selftest", help="run the built-in invariant and golden-example suite")
    return parser


_REQUIRED_BOUND_ARGS = {
    "thm3": ("n", "p", "q"),
    "thm5": ("n", "q", "d"),
    "thm6": ("n", "m", "p", "q", "alpha"),
    "thm7": ("n", "m", "q", "alpha", "d"),
}


def _check_bound_args(args) -> None:
    for name in _REQUIRED_BOUND_ARGS[args.formula]:
        if getattr(args, name) is None:
            flag = f"--{name}" if name == "alpha" else f"-{name}"
            raise ProblemError(f"bound {args.formula} requires {flag}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "bound":
            _check_bound_args(args)
            return _run_bound(args)
        if args.command == "selftest":
            return _run_selftest(args)
        return _run_file_command(args.command, args)
    except TrajmultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps({
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "status": "error",
            "error": str(exc),
        }, sort_keys=True, indent=2))
        return 1


if __name__ == "__main__":
    sys.exit(main())
