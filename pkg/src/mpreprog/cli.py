"""Command-line interface.

Exit status: 0 when at least one result line is printed, 1 when none, 2 on
usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import mp
from .bn import load_bnet
from .ensembles import (
    domain_attractors,
    enumerate_domain,
    iter_ensemble_solutions,
    load_domain,
)
from .errors import BNError
from .reprogramming import Reprogramming


class UsageError(Exception):
    pass


def _json_map(text: str, what: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON for {what}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{what} must be a JSON object")
    allowed = (0, 1)
    for k, v in data.items():
        if isinstance(v, bool):
            v = int(v)
            data[k] = v
        if v not in allowed or isinstance(v, float):
            raise UsageError(f"{what}: value of {k} must be in {allowed}")
    return data


def _dumps(obj: dict) -> str:
    return json.dumps(dict(sorted(obj.items())))


def _problem(args) -> str:
    if args.fixpoints:
        return "P2" if args.reachable_from is not None else "P1"
    return "P4" if args.reachable_from is not None else "P3"


def _exclude(text):
    return [s.strip() for s in text.split(",") if s.strip()] if text else []


def _emit(lines, out) -> int:
    count = 0
    for line in lines:
        print(line, file=out, flush=True)
        count += 1
    return 0 if count else 1


def cmd_reprogram(args, out) -> int:
    f = load_bnet(args.model)
    marker = _json_map(args.marker, "marker")
    source = _json_map(args.reachable_from, "--reachable-from") \
        if args.reachable_from is not None else None
    query = Reprogramming(f, marker, args.k, problem=_problem(args), source=source,
                          ensure_exists=not args.allow_no_fixpoint,
                          exclude=_exclude(args.exclude))
    return _emit((_dumps(P) for P in query), out)


def cmd_fixpoints(args, out) -> int:
    f = load_bnet(args.model)
    return _emit((_dumps(x) for x in mp.fixed_points(f)), out)


def cmd_attractors(args, out) -> int:
    f = load_bnet(args.model)
    source = _json_map(args.reachable_from, "--reachable-from") \
        if args.reachable_from is not None else None
    return _emit((_dumps(a) for a in mp.minimal_trap_spaces(f, reachable_from=source)), out)


def cmd_trapspace(args, out) -> int:
    f = load_bnet(args.model)
    x = _json_map(args.config, "configuration")
    return _emit([_dumps(mp.smallest_trap_space(f, x))], out)


def cmd_influence_graph(args, out) -> int:
    f = load_bnet(args.model)
    out.write(f.influence_graph().to_dot())
    return 0


def cmd_ensemble(args, out) -> int:
    domain = load_domain(args.domain, exact=args.exact, max_clauses=args.max_clauses)
    if args.verb == "enumerate":
        members = enumerate_domain(domain)
        for i, f in enumerate(members):
            out.write(f"--- {i}\n{f.source()}")
        return 0 if members else 1
    if args.verb == "attractors":
        lines = (json.dumps({"member": i, "attractors": [dict(sorted(a.items())) for a in atts]})
                 for i, atts in enumerate(domain_attractors(domain)))
        return _emit(lines, out)
    if args.marker is None or args.k is None:
        raise UsageError("ensemble reprogram requires a marker and k")
    marker = _json_map(args.marker, "marker")
    source = _json_map(args.reachable_from, "--reachable-from") \
        if args.reachable_from is not None else None
    solutions = iter_ensemble_solutions(
        domain, marker, args.k, _problem(args), args.quantifier, source=source,
        ensure_exists=not args.allow_no_fixpoint, exclude=_exclude(args.exclude))
    return _emit((_dumps(P) for P in solutions), out)


def _non_negative(text):
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if k < 0:
        raise argparse.ArgumentTypeError("k must be non-negative")
    return k


def _reprogram_flags(p):
    p.add_argument("--fixpoints", action="store_true",
                   help="reprogram fixed points instead of attractors")
    p.add_argument("--reachable-from", metavar="Z",
                   help="only consider fixed points/attractors reachable from "
                        "this configuration (JSON map; omitted components are free)")
    p.add_argument("--allow-no-fixpoint", action="store_true",
                   help="do not require a fixed point to exist (fixed-point problems)")
    p.add_argument("--exclude", metavar="A,B,...",
                   help="comma-separated components that must not be perturbed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mpreprog",
        description="Most Permissive analysis and marker reprogramming of "
                    "locally-monotone Boolean networks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reprogram", help="minimal perturbations toward a marker")
    p.add_argument("model", help="BooleanNet file")
    p.add_argument("marker", help='marker as JSON map, e.g. \'{"C": 1}\'')
    p.add_argument("k", type=_non_negative, help="maximum number of perturbations")
    _reprogram_flags(p)
    p.set_defaults(func=cmd_reprogram)

    p = sub.add_parser("fixpoints", help="list fixed points")
    p.add_argument("model")
    p.set_defaults(func=cmd_fixpoints)

    p = sub.add_parser("attractors", help="list MP attractors (minimal trap spaces)")
    p.add_argument("model")
    p.add_argument("--reachable-from", metavar="Z")
    p.set_defaults(func=cmd_attractors)

    p = sub.add_parser("trapspace", help="smallest trap space containing a configuration")
    p.add_argument("model")
    p.add_argument("config", help="configuration as JSON map")
    p.set_defaults(func=cmd_trapspace)

    p = sub.add_parser("influence-graph", help="signed influence graph as DOT")
    p.add_argument("model")
    p.set_defaults(func=cmd_influence_graph)

    p = sub.add_parser("ensemble", help="ensembles of networks")
    p.add_argument("domain", help="directory of .bnet files, multi-model .bnet file "
                                  "(--- name separators) or influence-graph edge list")
    p.add_argument("verb", choices=["enumerate", "attractors", "reprogram"])
    p.add_argument("marker", nargs="?")
    p.add_argument("k", nargs="?", type=_non_negative)
    q = p.add_mutually_exclusive_group()
    q.add_argument("--universal", dest="quantifier", action="store_const", const="universal")
    q.add_argument("--existential", dest="quantifier", action="store_const",
                   const="existential")
    e = p.add_mutually_exclusive_group()
    e.add_argument("--exact", dest="exact", action="store_true", default=None,
                   help="members must have exactly the given influence graph")
    e.add_argument("--no-exact", dest="exact", action="store_false")
    p.add_argument("--max-clauses", type=int, metavar="N")
    _reprogram_flags(p)
    p.set_defaults(func=cmd_ensemble)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args, out)
    except (UsageError, BNError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
