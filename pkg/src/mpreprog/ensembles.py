"""Reprogramming over ensembles of locally-monotone networks.

An ensemble is either an explicit list of networks or every locally-monotone
network whose influence graph is included in (or equal to, with ``exact``) a
given signed graph.  Implicit domains are materialized: each local function is
generated as an antichain of clauses over signed regulator literals, which is
an irredundant monotone DNF, and duplicates are removed semantically.

Solutions are either *existential* (valid for at least one member) or
*universal* (valid for every member).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .bn import (
    And,
    BooleanNetwork,
    Const,
    Expression,
    InfluenceGraph,
    Not,
    Or,
    Var,
    parse_booleannet,
    truth_table,
)
from .errors import BooleanNetSyntaxError, DomainTooLargeError
from .mp import Limits, minimal_trap_spaces
from .reprogramming import PROBLEMS, enumerate_minimal, make_predicate

__all__ = [
    "ExplicitDomain", "GraphDomain", "Domain", "enumerate_domain",
    "domain_attractors", "solve_ensemble", "iter_ensemble_solutions",
    "solve_existential_fixpoints", "solve_universal_attractors",
    "solve_universal_fixpoints", "load_domain", "parse_multimodel",
    "node_functions",
]

MAX_INDEGREE = 4
MAX_MEMBERS = 10 ** 5


@dataclass(frozen=True)
class ExplicitDomain:
    networks: tuple

    def __init__(self, networks: Iterable[BooleanNetwork]):
        networks = tuple(networks)
        if not networks:
            raise ValueError("an explicit ensemble needs at least one network")
        comps = set(networks[0].components)
        for f in networks[1:]:
            if set(f.components) != comps:
                raise ValueError("ensemble members have different components")
        object.__setattr__(self, "networks", networks)


@dataclass(frozen=True)
class GraphDomain:
    graph: InfluenceGraph
    exact: bool = False
    max_clauses: Optional[int] = None


Domain = Union[ExplicitDomain, GraphDomain]


def _antichains(subsets: list[frozenset], max_size: Optional[int]) -> Iterator[list]:
    """All antichains (w.r.t. inclusion) of ``subsets``, in a fixed order."""
    def rec(start, chosen):
        yield list(chosen)
        if max_size is not None and len(chosen) >= max_size:
            return
        for idx in range(start, len(subsets)):
            s = subsets[idx]
            if all(not (s <= t or t <= s) for t in chosen):
                chosen.append(s)
                yield from rec(idx + 1, chosen)
                chosen.pop()
    yield from rec(0, [])


def _dnf(clauses, signs: Mapping[str, int]) -> Expression:
    if not clauses:
        return Const(0)
    terms = []
    for clause in clauses:
        if not clause:
            return Const(1)
        lits = [Var(r) if signs[r] > 0 else Not(Var(r)) for r in clause]
        terms.append(lits[0] if len(lits) == 1 else And(tuple(lits)))
    return terms[0] if len(terms) == 1 else Or(tuple(terms))


def _signs_of(t: int, d: int) -> dict[int, int]:
    """Sign of each variable in truth table ``t`` over ``d`` variables (0 = unused)."""
    out = {}
    for k in range(d):
        inc = dec = False
        for r in range(1 << d):
            if r >> k & 1:
                continue
            a, b = (t >> r) & 1, (t >> (r | 1 << k)) & 1
            inc |= b > a
            dec |= a > b
        out[k] = 2 if inc and dec else 1 if inc else -1 if dec else 0
    return out


def node_functions(regulators: Sequence[tuple[str, int]], exact: bool = False,
                   max_clauses: Optional[int] = None) -> list[Expression]:
    """Distinct unate functions compatible with signed in-edges ``regulators``.

    With ``exact``, the function must depend on every regulator with exactly
    the edge signs listed.
    """
    names = list(dict.fromkeys(r for r, _ in regulators))
    if len(names) > MAX_INDEGREE:
        raise DomainTooLargeError(f"in-degree {len(names)} exceeds {MAX_INDEGREE}")
    allowed = {r: sorted({s for rr, s in regulators if rr == r}, reverse=True)
               for r in names}
    wanted = {(r, s) for r, s in regulators}
    subsets = [frozenset(c) for size in range(len(names) + 1)
               for c in combinations(names, size)]
    seen: set[int] = set()
    out = []
    for choice in product(*(allowed[r] for r in names)):
        signs = dict(zip(names, choice))
        for clauses in _antichains(subsets, max_clauses):
            clauses = [sorted(c, key=names.index) for c in clauses]
            e = _dnf(clauses, signs)
            t = truth_table(e, names)
            if t in seen:
                continue
            seen.add(t)
            if exact:
                used = _signs_of(t, len(names))
                if {(names[k], s) for k, s in used.items() if s} != wanted:
                    continue
            out.append(e)
    return out


def enumerate_domain(d: Domain, max_members: int = MAX_MEMBERS) -> list[BooleanNetwork]:
    """Members of the domain, duplicate-free and in a deterministic order."""
    if isinstance(d, ExplicitDomain):
        members: list[BooleanNetwork] = []
        for f in d.networks:
            if not any(f.equivalent(g) for g in members):
                members.append(f)
        return members
    g = d.graph
    per_node = [node_functions(g.in_edges(v), d.exact, d.max_clauses) for v in g.nodes]
    count = 1
    for fs in per_node:
        count *= len(fs)
    if count > max_members:
        raise DomainTooLargeError(f"domain has {count} members (cap {max_members})")
    return [BooleanNetwork(dict(zip(g.nodes, rules))) for rules in product(*per_node)]


def domain_attractors(d: Domain, limits: Limits = None) -> list[list[dict]]:
    return [minimal_trap_spaces(f, limits=limits) for f in enumerate_domain(d)]


def _members(d) -> list[BooleanNetwork]:
    if isinstance(d, (ExplicitDomain, GraphDomain)):
        return enumerate_domain(d)
    return list(d)


def iter_ensemble_solutions(d, marker: Mapping[str, int], k: int, problem: str = "P3",
                            quantifier: Optional[str] = None,
                            source: Optional[Mapping[str, int]] = None,
                            ensure_exists: bool = True, exclude: Iterable[str] = (),
                            framing: str = "direct", limits: Limits = None) -> Iterator[dict]:
    """Stream minimal solutions of ``problem`` under ``quantifier``.

    ``quantifier`` is ``"existential"`` or ``"universal"``; by default fixed-point
    problems are existential and attractor problems universal.
    """
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if quantifier is None:
        quantifier = "existential" if problem in ("P1", "P2") else "universal"
    if quantifier not in ("existential", "universal"):
        raise ValueError(f"unknown quantifier {quantifier!r}")
    if not isinstance(k, int) or k < 0:
        raise ValueError("k must be a non-negative integer")
    members = _members(d)
    exclude = set(exclude)
    for f in members:
        f.check_components(exclude)
    preds = [make_predicate(f, problem, marker, source, ensure_exists, framing, limits)
             for f in members]
    names = sorted(c for c in members[0].components if c not in exclude)
    if quantifier == "existential":
        def good(items):
            return any(p(items) for p in preds)
    else:
        def good(items):
            return all(p(items) for p in preds)
    return enumerate_minimal(names, k, good)


def solve_ensemble(d, marker, k, problem="P3", quantifier=None, **kwargs) -> list[dict]:
    return list(iter_ensemble_solutions(d, marker, k, problem, quantifier, **kwargs))


def solve_existential_fixpoints(d, M, k, ensure_exists=True, exclude=(), limits=None):
    return solve_ensemble(d, M, k, "P1", "existential", ensure_exists=ensure_exists,
                          exclude=exclude, limits=limits)


def solve_universal_attractors(d, M, k, exclude=(), framing="direct", limits=None):
    return solve_ensemble(d, M, k, "P3", "universal", exclude=exclude,
                          framing=framing, limits=limits)


def solve_universal_fixpoints(d, M, k, exclude=(), limits=None):
    """Perturbations making every fixed point of every member match ``M``.

    No existence of fixed points is required.
    """
    return solve_ensemble(d, M, k, "P1", "universal", ensure_exists=False,
                          exclude=exclude, limits=limits)


# ---------------------------------------------------------------------------
# loading

def parse_multimodel(text: str) -> list[tuple[str, BooleanNetwork]]:
    """Split a file of BooleanNet blocks separated by ``--- name`` lines."""
    blocks: list[tuple[str, list[str]]] = []
    current: Optional[tuple[str, list[str]]] = None
    for line in text.splitlines():
        if line.startswith("---"):
            current = (line[3:].strip() or f"model{len(blocks)}", [])
            blocks.append(current)
        else:
            if current is None:
                if not line.split("#", 1)[0].strip():
                    continue
                current = ("model0", [])
                blocks.append(current)
            current[1].append(line)
    return [(name, parse_booleannet("\n".join(lines))) for name, lines in blocks]


def load_domain(path: Union[str, os.PathLike], exact: Optional[bool] = None,
                max_clauses: Optional[int] = None) -> Domain:
    """Load an ensemble from a directory of ``.bnet`` files, a multi-model
    ``.bnet`` file, or an influence-graph edge list.

    Edge lists may have a JSON sidecar (same path, ``.json`` suffix) with keys
    ``exact`` and ``max_clauses``; explicit arguments take precedence.
    """
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.bnet"))
        if not files:
            raise ValueError(f"no .bnet file in {path}")
        return ExplicitDomain(parse_booleannet(p.read_text()) for p in files)
    text = path.read_text()
    if path.suffix == ".bnet":
        return ExplicitDomain(f for _, f in parse_multimodel(text))
    config = {}
    sidecar = path.with_suffix(".json")
    if sidecar.exists() and sidecar != path:
        config = json.loads(sidecar.read_text())
    if exact is None:
        exact = bool(config.get("exact", False))
    if max_clauses is None:
        max_clauses = config.get("max_clauses")
    if max_clauses is not None and max_clauses < 1:
        raise BooleanNetSyntaxError("max_clauses must be positive")
    return GraphDomain(InfluenceGraph.parse_edgelist(text), exact, max_clauses)
