"""Marker reprogramming by permanent perturbations.

A perturbation ``P`` (dict component -> 0/1) turns the local functions of its
components into constants.  Four problems are solved, all returning the
submap-minimal perturbations of size at most ``k``:

``P1``
    all fixed points of f/P match the marker (and one exists, by default);
``P2``
    same, restricted to fixed points reachable from a source configuration;
``P3``
    all MP attractors (minimal trap spaces) of f/P match the marker;
``P4``
    same, restricted to attractors reachable from a source configuration.

Candidates are enumerated by increasing size, so an accepted solution prunes
all its supersets and results stream out already sorted.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .bn import BooleanNetwork, CompiledNetwork
from .errors import TooLargeError
from .mp import (
    LIMITS,
    Limits,
    in_attractor_int,
    iter_fixed_points,
    iter_minimal_trap_spaces,
    require_unate,
    ts,
    vertices,
)

__all__ = [
    "PROBLEMS", "matches", "attractor_matches", "candidate_perturbations",
    "minimal_filter", "solution_key", "Reprogramming", "make_predicate",
    "is_p1_solution", "is_p2_solution", "is_p3_solution", "is_p4_solution",
    "bad_perturbation_p3", "bad_perturbation_p4",
    "solve_p1", "solve_p2", "solve_p3", "solve_p4", "iter_solutions",
]

PROBLEMS = ("P1", "P2", "P3", "P4")

Items = tuple  # sorted tuple of (component, value) pairs


def matches(x: Mapping[str, int], M: Mapping[str, int]) -> bool:
    return all(x[k] == v for k, v in M.items())


def attractor_matches(m: Mapping[str, object], M: Mapping[str, int]) -> bool:
    """All vertices of the sub-hypercube ``m`` match ``M`` (free never matches)."""
    return all(m[k] != "*" and m[k] == v for k, v in M.items())


def solution_key(P: Mapping[str, int]):
    return len(P), tuple(sorted(P.items()))


def _candidate_items(names: Sequence[str], k: int) -> Iterator[tuple[Items, int, int]]:
    """(items, mask, values) for each map of size 0..k over ``names`` (sorted).

    Bits of mask/values index ``names``.  Order: by size, then lexicographic
    on the item tuples.
    """
    m = len(names)

    def rec(start, size):
        if size == 0:
            yield (), 0, 0
            return
        for idx in range(start, m - size + 1):
            bit = 1 << idx
            for v in (0, 1):
                for rest, rmask, rval in rec(idx + 1, size - 1):
                    yield ((names[idx], v),) + rest, rmask | bit, rval | (bit if v else 0)

    for size in range(min(k, m) + 1):
        yield from rec(0, size)


def candidate_perturbations(components: Iterable[str], k: int,
                            exclude: Iterable[str] = ()) -> Iterator[dict]:
    """Every perturbation of size 0..k over the non-excluded components."""
    if k < 0:
        raise ValueError("k must be non-negative")
    excluded = set(exclude)
    names = sorted(c for c in components if c not in excluded)
    for items, _, _ in _candidate_items(names, k):
        yield dict(items)


def minimal_filter(raw: Iterable[Mapping[str, int]]) -> list[dict]:
    """Keep the maps having no strict submap in ``raw``; sorted."""
    sets = {frozenset(P.items()) for P in raw}
    kept = [s for s in sets if not any(q < s for q in sets)]
    return sorted((dict(s) for s in kept), key=solution_key)


def enumerate_minimal(names: Sequence[str], k: int,
                      predicate: Callable[[Items], bool]) -> Iterator[dict]:
    """Stream the submap-minimal candidates satisfying ``predicate``."""
    accepted: list[tuple[int, int]] = []
    for items, mask, val in _candidate_items(names, k):
        if any(am & ~mask == 0 and (av ^ val) & am == 0 for am, av in accepted):
            continue
        if predicate(items):
            accepted.append((mask, val))
            yield dict(items)


# ---------------------------------------------------------------------------
# per-network predicates (int level)

def _mismatch(x: int, mmask: int, mval: int) -> bool:
    return (x ^ mval) & mmask != 0


def _cube_matches(h, mmask, mval) -> bool:
    m, v = h
    return mmask & ~m == 0 and (v ^ mval) & mmask == 0


def _fixpoints_good(c, within, mmask, mval, ensure_exists):
    mask, val = within if within is not None else (0, 0)
    exists = False
    for x in iter_fixed_points(c, mask, val):
        if _mismatch(x, mmask, mval):
            return False
        exists = True
    return exists or not ensure_exists


def _attractors_good(c, within, mmask, mval, limit):
    for h in iter_minimal_trap_spaces(c, within, limit):
        if not _cube_matches(h, mmask, mval):
            return False
    return True


def _attractors_bad(c, within, mmask, mval):
    """Some configuration violating the marker lies in an attractor."""
    mask, val = within if within is not None else (0, 0)
    for x in vertices(mask, val, c.n):
        if _mismatch(x, mmask, mval) and in_attractor_int(c, x):
            return True
    return False


def _completions(f: BooleanNetwork, z: Mapping[str, int], limit: int) -> list[int]:
    free = [i for i, name in enumerate(f.components) if name not in z]
    if len(free) > limit:
        raise TooLargeError(f"partial source leaves {len(free)} components free "
                            f"(bound {limit})")
    base = f.encode(z)
    out = []
    for bits in product((0, 1), repeat=len(free)):
        x = base
        for i, b in zip(free, bits):
            if b:
                x |= 1 << i
        out.append(x)
    return out


def make_predicate(f: BooleanNetwork, problem: str, marker: Mapping[str, int],
                   source: Optional[Mapping[str, int]] = None,
                   ensure_exists: bool = True, framing: str = "direct",
                   limits: Limits = None) -> Callable[[Items], bool]:
    """Return ``good(items)`` deciding whether a perturbation solves ``problem`` on ``f``.

    With ``framing="complement"`` attractor problems are decided through the
    existence of an attractor configuration violating the marker.
    """
    limits = limits or LIMITS
    if problem not in PROBLEMS:
        raise ValueError(f"unknown problem {problem!r}")
    if framing not in ("direct", "complement"):
        raise ValueError(f"unknown framing {framing!r}")
    c = f.compiled
    require_unate(c)
    mmask, mval = f.encode_partial(marker)
    sourced = problem in ("P2", "P4")
    if sourced:
        if source is None:
            raise ValueError(f"{problem} requires a source configuration")
        f.check_assignment(source)
        starts = _completions(f, source, limits.completions)
    index = f.index

    def perturbed(items) -> CompiledNetwork:
        pmask = pval = 0
        for name, v in items:
            bit = 1 << index[name]
            pmask |= bit
            if v:
                pval |= bit
        return c.perturbed(pmask, pval)

    def single(cp, within):
        if problem in ("P1", "P2"):
            return _fixpoints_good(cp, within, mmask, mval, ensure_exists)
        if framing == "direct":
            return _attractors_good(cp, within, mmask, mval, limits.configurations)
        return not _attractors_bad(cp, within, mmask, mval)

    if not sourced:
        if problem == "P3" and framing == "complement" and c.n > limits.configurations:
            raise TooLargeError(f"{c.n} components exceed the bound {limits.configurations}")
        return lambda items: single(perturbed(items), None)

    def good(items):
        cp = perturbed(items)
        # partial source: some completion must satisfy the property
        return any(single(cp, ts(cp, z)) for z in starts)
    return good


# ---------------------------------------------------------------------------
# public API

class Reprogramming:
    """A reprogramming query on one network.

    >>> f = BooleanNetwork({"A": "B", "B": "!A", "C": "!A&B"})
    >>> Reprogramming(f, {"C": 1}, 2, problem="P1").solve()[0]
    {'A': 0}
    """

    def __init__(self, f: BooleanNetwork, marker: Mapping[str, int], k: int,
                 problem: str = "P3", source: Optional[Mapping[str, int]] = None,
                 ensure_exists: bool = True, exclude: Iterable[str] = (),
                 framing: str = "direct", limits: Limits = None):
        if not isinstance(k, int) or k < 0:
            raise ValueError("k must be a non-negative integer")
        exclude = list(exclude)
        f.check_components(exclude)
        self.f = f
        self.marker = dict(marker)
        self.k = k
        self.problem = problem
        self.source = dict(source) if source is not None else None
        self.exclude = set(exclude)
        self.good = make_predicate(f, problem, self.marker, self.source,
                                   ensure_exists, framing, limits)
        self.names = sorted(c for c in f.components if c not in self.exclude)

    def is_solution(self, P: Mapping[str, int]) -> bool:
        self.f.check_assignment(P)
        return self.good(tuple(sorted(P.items())))

    def __iter__(self) -> Iterator[dict]:
        return enumerate_minimal(self.names, self.k, self.good)

    def solve(self) -> list[dict]:
        return list(self)


def iter_solutions(f, marker, k, problem="P3", **kwargs) -> Iterator[dict]:
    """Stream minimal solutions in (size, lexicographic) order."""
    return iter(Reprogramming(f, marker, k, problem=problem, **kwargs))


def _check(f, problem, M, P, **kwargs):
    f.check_assignment(P)
    good = make_predicate(f, problem, M, **kwargs)
    return good(tuple(sorted(P.items())))


def is_p1_solution(f, M, P, ensure_exists=True, limits=None) -> bool:
    return _check(f, "P1", M, P, ensure_exists=ensure_exists, limits=limits)


def is_p2_solution(f, z, M, P, ensure_exists=True, limits=None) -> bool:
    return _check(f, "P2", M, P, source=z, ensure_exists=ensure_exists, limits=limits)


def is_p3_solution(f, M, P, limits=None) -> bool:
    return _check(f, "P3", M, P, limits=limits)


def is_p4_solution(f, z, M, P, limits=None) -> bool:
    return _check(f, "P4", M, P, source=z, limits=limits)


def bad_perturbation_p3(f, M, P, limits=None) -> bool:
    """Some configuration of some attractor of f/P does not match ``M``."""
    return not _check(f, "P3", M, P, framing="complement", limits=limits)


def bad_perturbation_p4(f, z, M, P, limits=None) -> bool:
    return not _check(f, "P4", M, P, source=z, framing="complement", limits=limits)


def solve_p1(f, M, k, ensure_exists=True, exclude=(), limits=None) -> list[dict]:
    return Reprogramming(f, M, k, "P1", ensure_exists=ensure_exists,
                         exclude=exclude, limits=limits).solve()


def solve_p2(f, z, M, k, ensure_exists=True, exclude=(), limits=None) -> list[dict]:
    return Reprogramming(f, M, k, "P2", source=z, ensure_exists=ensure_exists,
                         exclude=exclude, limits=limits).solve()


def solve_p3(f, M, k, exclude=(), framing="direct", limits=None) -> list[dict]:
    return Reprogramming(f, M, k, "P3", exclude=exclude, framing=framing,
                         limits=limits).solve()


def solve_p4(f, z, M, k, exclude=(), framing="direct", limits=None) -> list[dict]:
    return Reprogramming(f, M, k, "P4", source=z, exclude=exclude, framing=framing,
                         limits=limits).solve()
