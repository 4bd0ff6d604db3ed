"""Command-line front end.

Subcommands: bound, delta, crit, check, fiber.  Every run is deterministic
given (inputs, seed, prime) and emits a single versioned document (text
table for ``bound`` without --output).  Exit codes: 0 success, 2 validation
failure, 3 probabilistic failure after reseed, 4 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .bounds import (
    PolarDegrees,
    bidegree_product,
    conormal_bidegree,
    critical_point_bound,
    delta_of_variety,
    projection_degree,
    regular_sequence_bound,
    span_locus_bidegree,
)
from .critpoints import critical_points_direct, critical_points_from_fiber
from .errors import (
    DegenerateInputError,
    EmptyVarietyError,
    InstabilityError,
    NotFiniteError,
    NotRadicalError,
    NotSeparatingError,
    SolveFailError,
)
from .geores import (
    build_lifting_fiber,
    change_primitive_element,
    fiber_to_json,
    parametrization_from_json,
    parametrization_to_json,
    validate_fiber,
)
from .parsing import ParseError
from .polar import VarietySpec
from .problemfile import load_problem
from .rand import derive_seed
from .ring import DEFAULT_PRIME, SPARE_PRIMES, CoefficientField, reduce_poly_mod

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SOLVE_FAIL = 3
EXIT_PARSE = 4

FORMAT_VERSION = 1


def _emit(doc: dict, output: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _base_doc(command: str, args) -> dict:
    return {
        "format": FORMAT_VERSION,
        "command": command,
        "seed": getattr(args, "seed", None),
        "prime": getattr(args, "prime", None),
    }


def _problem_variety(problem, prime: int | None):
    """The variety over the requested field (reducing rationals mod prime)."""
    gens = problem.generators
    if not gens:
        raise ParseError("problem file has no generators", 0)
    if prime is not None and problem.field.modulus is None:
        gens = [reduce_poly_mod(g, prime) for g in gens]
    elif prime is not None and problem.field.modulus != prime:
        raise ParseError(f"problem field is GF({problem.field.modulus}); --prime {prime} conflicts", 0)
    return VarietySpec(gens, problem.dim), gens[0].ring


def cmd_bound(args) -> int:
    t0 = time.time()
    if args.file:
        problem = load_problem(args.file)
        delta_list = problem.delta
        degrees = [g.total_degree() for g in problem.generators] or None
        nvars = problem.ring.nvars
        dim = problem.dim
        if delta_list is None:
            raise ParseError("problem file has no DELTA section; run `delta` first or pass --delta", 0)
    else:
        if not args.delta:
            print("error: provide --delta or a problem file", file=sys.stderr)
            return EXIT_VALIDATION
        delta_list = [int(tok) for tok in args.delta.replace(",", " ").split()]
        degrees = [int(tok) for tok in args.degrees.replace(",", " ").split()] if args.degrees else None
        dim = len(delta_list) - 1
        nvars = args.n if args.n else dim + 1
    delta = PolarDegrees(tuple(delta_list))
    if nvars <= delta.dim:
        print("error: ambient variable count must exceed the dimension", file=sys.stderr)
        return EXIT_VALIDATION
    levels = [int(tok) for tok in args.level.replace(",", " ").split()] if args.level else [0]
    rows = []
    for level in levels:
        bound = critical_point_bound(delta, args.objective_degree, level)
        pipeline = projection_degree(
            bidegree_product(
                conormal_bidegree(delta, nvars),
                span_locus_bidegree(nvars, level + 1, args.objective_degree),
            ),
            nvars,
            level,
        )
        row = {"level": level, "bound": bound, "bidegree_check": pipeline}
        if degrees:
            row["dense_bound"] = regular_sequence_bound(degrees, args.objective_degree, nvars, dim)
        rows.append(row)
    doc = _base_doc("bound", args)
    doc["inputs"] = {"delta": delta_list, "objective_degree": args.objective_degree, "n": nvars, "degrees": degrees}
    doc["results"] = rows
    doc["timings"] = {"total_s": round(time.time() - t0, 6)}
    if args.output:
        _emit(doc, args.output)
    else:
        for row in rows:
            line = f"level {row['level']}: bound {row['bound']} (bidegree check {row['bidegree_check']}"
            if "dense_bound" in row:
                line += f", dense bound {row['dense_bound']}"
            line += ")"
            print(line)
    mismatch = any(row["bound"] != row["bidegree_check"] for row in rows)
    return EXIT_VALIDATION if mismatch else EXIT_OK


def cmd_delta(args) -> int:
    t0 = time.time()
    problem = load_problem(args.file)
    prime = args.prime if problem.field.modulus is None else problem.field.modulus
    v, _ = _problem_variety(problem, prime)
    delta = delta_of_variety(v, seed=args.seed)
    doc = _base_doc("delta", args)
    doc["prime"] = prime
    doc["inputs"] = {"file": args.file, "dim": problem.dim, "variables": list(problem.ring.variables)}
    doc["results"] = {"delta": list(delta)}
    if args.check_prime:
        second = SPARE_PRIMES[0] if prime != SPARE_PRIMES[0] else SPARE_PRIMES[1]
        v2, _ = _problem_variety(problem, second)
        delta2 = delta_of_variety(v2, seed=args.seed)
        doc["results"]["delta_second_prime"] = list(delta2)
        doc["results"]["primes_agree"] = list(delta) == list(delta2)
        if list(delta) != list(delta2):
            print(f"warning: polar degrees differ between primes {prime} and {second}", file=sys.stderr)
    doc["timings"] = {"total_s": round(time.time() - t0, 6)}
    _emit(doc, args.output)
    if args.check_prime and not doc["results"]["primes_agree"]:
        return EXIT_VALIDATION
    return EXIT_OK


def _crit_once(problem, route: str, seed: int, prime: int | None):
    v, ring = _problem_variety(problem, prime)
    if problem.objective is None:
        raise ParseError("problem file has no OBJECTIVE section", 0)
    objective = problem.objective
    if prime is not None and problem.field.modulus is None:
        objective = reduce_poly_mod(objective, prime)
    results = {}
    if route in ("direct", "both"):
        results["direct"] = critical_points_direct(v, objective, seed=seed)
    if route in ("algorithm1", "both"):
        fiber = build_lifting_fiber(v.generators, v.dim, seed=derive_seed(seed, "cli-fiber"))
        results["algorithm1"] = critical_points_from_fiber(fiber, objective, seed=seed)
    return v, objective, results


def _crit_document(path: str, route: str, seed: int, prime_flag: int, field_flag: str):
    """(exit_code, document) for one problem file."""
    t0 = time.time()
    problem = load_problem(path)
    prime = prime_flag if problem.field.modulus is None and field_flag != "rationals" else problem.field.modulus
    _, objective, results = _crit_once(problem, route, seed, prime)
    doc = {
        "format": FORMAT_VERSION,
        "command": "crit",
        "seed": seed,
        "prime": prime,
        "inputs": {
            "file": path,
            "route": route,
            "objective": objective.format(),
        },
    }
    out = {}
    for name, res in results.items():
        entry = {
            "count": res.count,
            "route": res.route,
            "notes": res.notes,
            "hypotheses": {
                "finite": res.hypotheses.finite if res.hypotheses else None,
                "radical": res.hypotheses.radical if res.hypotheses else None,
                "smooth_sampled": res.hypotheses.smooth_sampled if res.hypotheses else None,
            },
        }
        if res.parametrization is not None:
            entry["parametrization"] = parametrization_to_json(res.parametrization)
        out[name] = entry
    agree = True
    if route == "both":
        direct, algo = results["direct"], results["algorithm1"]
        agree = direct.count == algo.count
        if agree and direct.parametrization is not None and algo.parametrization is not None:
            common = change_primitive_element(direct.parametrization, algo.parametrization.lam)
            agree = common.q == algo.parametrization.q
        out["routes_agree"] = agree
    doc["results"] = out
    doc["timings"] = {"total_s": round(time.time() - t0, 6)}
    return (EXIT_OK if agree else EXIT_VALIDATION), doc


def _crit_worker(payload):
    path, route, seed, prime_flag, field_flag = payload
    try:
        code, doc = _crit_document(path, route, seed, prime_flag, field_flag)
        return path, code, doc, None
    except Exception as exc:
        return path, EXIT_SOLVE_FAIL, None, f"{type(exc).__name__}: {exc}"


def cmd_crit(args) -> int:
    files = args.file
    if len(files) == 1:
        code, doc = _crit_document(files[0], args.route, args.seed, args.prime, args.field)
        _emit(doc, args.output)
        return code
    # batch mode: shard independent problem files across workers
    payloads = [(path, args.route, args.seed, args.prime, args.field) for path in files]
    worst = EXIT_OK
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_crit_worker, payloads))
    else:
        outcomes = [_crit_worker(p) for p in payloads]
    import os

    for path, code, doc, err in outcomes:
        worst = max(worst, code)
        if err is not None:
            print(f"{path}: {err}", file=sys.stderr)
            continue
        if args.output:
            os.makedirs(args.output, exist_ok=True)
            base = os.path.splitext(os.path.basename(path))[0] + ".json"
            _emit(doc, os.path.join(args.output, base))
        else:
            _emit(doc, None)
    return worst


def cmd_check(args) -> int:
    t0 = time.time()
    with open(args.parametrization, "r", encoding="utf-8") as fh:
        par = parametrization_from_json(json.load(fh))
    problem = load_problem(args.file)
    gens = problem.generators
    if par.ring.field != problem.field:
        print("error: parametrization and problem fields differ", file=sys.stderr)
        return EXIT_VALIDATION
    if par.ring.variables != problem.ring.variables:
        print("error: variable lists differ", file=sys.stderr)
        return EXIT_VALIDATION
    issues = par.validate(gens)
    doc = _base_doc("check", args)
    doc["inputs"] = {"parametrization": args.parametrization, "file": args.file}
    doc["results"] = {"valid": not issues, "issues": issues, "count": par.count}
    doc["timings"] = {"total_s": round(time.time() - t0, 6)}
    _emit(doc, args.output)
    return EXIT_OK if not issues else EXIT_VALIDATION


def cmd_fiber(args) -> int:
    t0 = time.time()
    problem = load_problem(args.file)
    prime = args.prime if problem.field.modulus is None and args.field != "rationals" else problem.field.modulus
    v, _ = _problem_variety(problem, prime)
    fiber = build_lifting_fiber(v.generators, v.dim, seed=args.seed)
    checks = validate_fiber(fiber)
    doc = _base_doc("fiber", args)
    doc["prime"] = prime
    doc["inputs"] = {"file": args.file}
    doc["results"] = {
        "fiber": fiber_to_json(fiber),
        "checks": [{"name": c.name, "ok": c.ok} for c in checks],
    }
    doc["timings"] = {"total_s": round(time.time() - t0, 6)}
    _emit(doc, args.output)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polarcrit",
        description="Exact critical points on smooth varieties, with polar-degree bound certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_route=False):
        p.add_argument("--seed", type=int, default=0, help="seed for all random choices")
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME, help="prime modulus for rational inputs")
        p.add_argument("--field", choices=["prime", "rationals"], default="prime", help="computation field")
        p.add_argument("--output", help="write the JSON document here instead of stdout")
        p.add_argument("--jobs", type=int, default=1, help="parallel workers for multiple files")
        if with_route:
            p.add_argument("--route", choices=["direct", "algorithm1", "both"], default="direct")

    p_bound = sub.add_parser("bound", help="degree bounds from polar degrees")
    p_bound.add_argument("file", nargs="?", help="problem file with a DELTA section")
    p_bound.add_argument("--delta", help="polar degrees, e.g. '1,4,10,12,6'")
    p_bound.add_argument("--degrees", help="generator degrees for the dense comparison bound")
    p_bound.add_argument("-D", "--objective-degree", type=int, required=True)
    p_bound.add_argument("-n", type=int, help="ambient variable count (default dim+1)")
    p_bound.add_argument("--level", help="levels i to report, e.g. '0,1' (default 0)")
    p_bound.add_argument("--output", help="write the JSON document here instead of stdout")
    p_bound.add_argument("--seed", type=int, default=0)
    p_bound.set_defaults(func=cmd_bound)

    p_delta = sub.add_parser("delta", help="polar degrees of a variety")
    p_delta.add_argument("file", help="problem file")
    p_delta.add_argument("--check-prime", action="store_true", help="recompute modulo a second prime and compare")
    common(p_delta)
    p_delta.set_defaults(func=cmd_delta)

    p_crit = sub.add_parser("crit", help="critical points of the objective on the variety")
    p_crit.add_argument("file", nargs="+", help="problem file(s) with GENS and OBJECTIVE")
    common(p_crit, with_route=True)
    p_crit.set_defaults(func=cmd_crit)

    p_check = sub.add_parser("check", help="validate a parametrization against a problem file")
    p_check.add_argument("parametrization", help="parametrization JSON document")
    p_check.add_argument("file", help="problem file")
    p_check.add_argument("--output")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=cmd_check)

    p_fiber = sub.add_parser("fiber", help="build and validate a lifting fiber")
    p_fiber.add_argument("file", help="problem file")
    common(p_fiber)
    p_fiber.set_defaults(func=cmd_fiber)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SolveFailError, InstabilityError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVE_FAIL
    except (
        NotFiniteError,
        NotRadicalError,
        NotSeparatingError,
        DegenerateInputError,
        EmptyVarietyError,
        ValueError,
    ) as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
