"""Most Permissive dynamics of locally-monotone networks.

MP attractors are the minimal trap spaces of ``f``; an attractor is
MP-reachable from ``x`` iff it lies within the smallest trap space containing
``x``.  Both reduce to a polynomial escape test: in a unate local function,
the extreme values over a sub-hypercube are reached at a single vertex.

Sub-hypercubes are dicts mapping components to ``0``, ``1`` or ``"*"``.
Internally they are ``(mask, values)`` int pairs, bit ``i`` standing for
component ``i`` (``mask`` marks fixed components).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

from .bn import BooleanNetwork, CompiledNetwork
from .errors import NotUnateError, TooLargeError

__all__ = [
    "Limits", "LIMITS",
    "subhypercube_leq", "escape_exists", "is_trap_space", "smallest_trap_space",
    "fixed_points", "minimal_trap_spaces", "in_attractor", "attractor_reachable",
    "async_stg", "stg_to_dot",
]


@dataclass
class Limits:
    """Brute-force bounds, as numbers of components."""
    configurations: int = 24
    oracle: int = 12
    stg: int = 16
    completions: int = 12


LIMITS = Limits()


# ---------------------------------------------------------------------------
# int-level kernels

def require_unate(c: CompiledNetwork) -> None:
    if not c.unate:
        raise NotUnateError("network is not locally monotone")


def escape(c: CompiledNetwork, i: int, mask: int, val: int, b: int) -> bool:
    """Whether some vertex y of (mask, val) has f_i(y) = b."""
    # free positive regulators pushed to b, free negative ones to 1-b
    push = c.pos[i] if b else c.neg[i]
    y = val | (push & ~mask)
    r = 0
    for k, j in enumerate(c.sup[i]):
        r |= ((y >> j) & 1) << k
    return (c.tt[i] >> r) & 1 == b


def escape_brute(c: CompiledNetwork, i: int, mask: int, val: int, b: int) -> bool:
    free = [j for j in c.sup[i] if not mask >> j & 1]
    for bits in range(1 << len(free)):
        y = val
        for k, j in enumerate(free):
            if bits >> k & 1:
                y |= 1 << j
        if c.value(i, y) == b:
            return True
    return False


def closure(c: CompiledNetwork, mask: int, val: int) -> tuple[int, int]:
    """Smallest trap space containing the sub-hypercube (mask, val)."""
    queue = deque(i for i in range(c.n) if mask >> i & 1)
    queued = mask
    while queue:
        i = queue.popleft()
        queued &= ~(1 << i)
        if not mask >> i & 1:
            continue
        if escape(c, i, mask, val, 1 - ((val >> i) & 1)):
            mask &= ~(1 << i)
            val &= ~(1 << i)
            for t in c.targets[i]:
                if mask >> t & 1 and not queued >> t & 1:
                    queue.append(t)
                    queued |= 1 << t
    return mask, val


def closure_passes(c: CompiledNetwork, x: int) -> tuple[int, int]:
    """Freeing in repeated declaration-order passes, kept as a cross-check."""
    mask = (1 << c.n) - 1
    val = x
    changed = True
    while changed:
        changed = False
        for i in range(c.n):
            if mask >> i & 1 and escape(c, i, mask, val, 1 - ((x >> i) & 1)):
                mask &= ~(1 << i)
                val &= ~(1 << i)
                changed = True
    return mask, val


def ts(c: CompiledNetwork, x: int) -> tuple[int, int]:
    return closure(c, (1 << c.n) - 1, x)


def is_closed(c: CompiledNetwork, mask: int, val: int) -> bool:
    for i in range(c.n):
        if mask >> i & 1 and escape(c, i, mask, val, 1 - ((val >> i) & 1)):
            return False
    return True


def vertices(mask: int, val: int, n: int) -> Iterator[int]:
    free = ((1 << n) - 1) & ~mask
    sub = free
    while True:
        yield val | sub
        if not sub:
            return
        sub = (sub - 1) & free


def leq(h: tuple[int, int], h2: tuple[int, int]) -> bool:
    m, v = h
    m2, v2 = h2
    return m2 & ~m == 0 and (v ^ v2) & m2 == 0


def _propagate(c, mask, val, work):
    """Fix every component whose local function is constant on the cube.

    Returns the new (mask, val), or None if some fixed component cannot be a
    fixed point coordinate.
    """
    queue = deque(work)
    queued = 0
    for i in work:
        queued |= 1 << i
    while queue:
        i = queue.popleft()
        queued &= ~(1 << i)
        up = escape(c, i, mask, val, 1)
        down = escape(c, i, mask, val, 0)
        if up and down:
            continue
        d = 1 if up else 0
        if mask >> i & 1:
            if (val >> i) & 1 != d:
                return None
            continue
        mask |= 1 << i
        val |= d << i
        for t in c.targets[i]:
            if not queued >> t & 1:
                queue.append(t)
                queued |= 1 << t
    return mask, val


def _branch_order(c: CompiledNetwork) -> list[int]:
    return sorted(range(c.n), key=lambda i: -len(c.targets[i]))


def iter_fixed_points(c: CompiledNetwork, mask: int = 0, val: int = 0) -> Iterator[int]:
    """Fixed points within (mask, val), by backtracking with propagation."""
    require_unate(c)
    full = (1 << c.n) - 1
    order = _branch_order(c)
    stack = [(mask, val, range(c.n))]
    while stack:
        mask, val, work = stack.pop()
        r = _propagate(c, mask, val, work)
        if r is None:
            continue
        mask, val = r
        if mask == full:
            yield val
            continue
        j = next(i for i in order if not mask >> i & 1)
        bit = 1 << j
        work = c.targets[j]
        stack.append((mask | bit, val | bit, work))
        stack.append((mask | bit, val, work))


def iter_fixed_points_exhaustive(c: CompiledNetwork, limit: int) -> Iterator[int]:
    if c.n > limit:
        raise TooLargeError(f"{c.n} components exceed the exhaustive bound {limit}")
    for x in range(1 << c.n):
        if c.apply(x) == x:
            yield x


def iter_minimal_trap_spaces(c: CompiledNetwork, within: Optional[tuple[int, int]] = None,
                             limit: int = 24) -> Iterator[tuple[int, int]]:
    """Minimal trap spaces included in the trap space ``within`` (default: all).

    Scans the vertices y of ``within``; each TS(y) is proven minimal when all
    of its own vertices share the same smallest trap space.  Vertices of
    proven attractors are skipped since distinct minimal trap spaces are
    disjoint.
    """
    require_unate(c)
    full = (1 << c.n) - 1
    mask0, val0 = within if within is not None else (0, 0)
    dim = c.n - bin(mask0 & full).count("1")
    if dim > limit:
        raise TooLargeError(f"{dim} free components exceed the bound {limit}")
    memo: dict[int, tuple[int, int]] = {}
    checked: dict[tuple[int, int], bool] = {}
    found: list[tuple[int, int]] = []

    def ts_of(y):
        h = memo.get(y)
        if h is None:
            h = memo[y] = ts(c, y)
        return h

    for x in iter_fixed_points(c, mask0, val0):
        h = (full, x)
        checked[h] = True
        found.append(h)
        yield h
    for y in vertices(mask0, val0, c.n):
        if any((y ^ v) & m == 0 for m, v in found):
            continue
        h = ts_of(y)
        if h in checked:
            continue
        minimal = all(ts_of(z) == h for z in vertices(*h, c.n))
        checked[h] = minimal
        if minimal:
            found.append(h)
            yield h


def in_attractor_int(c: CompiledNetwork, x: int) -> bool:
    h = ts(c, x)
    return all(ts(c, y) == h for y in vertices(*h, c.n))


def cube_key(h: Mapping[str, object], order) -> tuple:
    rank = {0: 0, 1: 1, "*": 2}
    return tuple(rank[h[name]] for name in order)


# ---------------------------------------------------------------------------
# public dict-level API

def _unate(f: BooleanNetwork) -> CompiledNetwork:
    c = f.compiled
    require_unate(c)
    return c


def _config(f: BooleanNetwork, x: Mapping[str, int]) -> int:
    f.check_assignment(x, total=True)
    return f.encode(x)


def subhypercube_leq(h: Mapping[str, object], h2: Mapping[str, object]) -> bool:
    """``h ⪯ h2``: every component fixed in ``h2`` has the same value in ``h``."""
    if set(h) != set(h2):
        raise ValueError("sub-hypercubes over different components")
    return all(h2[k] == "*" or h[k] == h2[k] for k in h2)


def escape_exists(f: BooleanNetwork, h: Mapping[str, object], name: str, b: int,
                  method: str = "unate") -> bool:
    """Whether the local function of ``name`` takes value ``b`` somewhere in ``h``."""
    c = f.compiled
    mask, val = f.encode_cube(h)
    i = f.index[name]
    if method == "brute":
        return escape_brute(c, i, mask, val, b)
    if c.sign[i] is None:
        raise NotUnateError(f"local function of {name} is not unate")
    return escape(c, i, mask, val, b)


def is_trap_space(f: BooleanNetwork, h: Mapping[str, object]) -> bool:
    return is_closed(_unate(f), *f.encode_cube(h))


def smallest_trap_space(f: BooleanNetwork, x: Mapping[str, int]) -> dict:
    """TS(x): the smallest trap space containing configuration ``x``."""
    c = _unate(f)
    return f.decode_cube(*ts(c, _config(f, x)))


def fixed_points(f: BooleanNetwork, strategy: str = "backtrack",
                 limits: Limits = None) -> list[dict]:
    """All configurations x with f(x) = x, sorted."""
    limits = limits or LIMITS
    c = f.compiled
    if strategy == "exhaustive":
        xs = iter_fixed_points_exhaustive(c, limits.configurations)
    elif strategy == "backtrack":
        xs = iter_fixed_points(c) if c.unate else \
            iter_fixed_points_exhaustive(c, limits.configurations)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return sorted((f.decode(x) for x in xs), key=lambda x: cube_key(x, f.components))


def minimal_trap_spaces(f: BooleanNetwork, reachable_from: Mapping[str, int] = None,
                        limits: Limits = None) -> list[dict]:
    """MP attractors of ``f``, optionally only those reachable from a configuration."""
    limits = limits or LIMITS
    c = _unate(f)
    within = ts(c, _config(f, reachable_from)) if reachable_from is not None else None
    found = iter_minimal_trap_spaces(c, within, limits.configurations)
    return sorted((f.decode_cube(*h) for h in found),
                  key=lambda h: cube_key(h, f.components))


def in_attractor(f: BooleanNetwork, x: Mapping[str, int]) -> bool:
    return in_attractor_int(_unate(f), _config(f, x))


def attractor_reachable(f: BooleanNetwork, x: Mapping[str, int],
                        A: Mapping[str, object]) -> bool:
    return subhypercube_leq(A, smallest_trap_space(f, x))


def async_stg(f: BooleanNetwork, init: Mapping[str, int] = None, limits: Limits = None):
    """Fully-asynchronous state transition graph as a ``networkx.DiGraph``.

    Nodes are bit strings in declaration order (e.g. ``"1100"``) carrying the
    configuration dict as attribute ``config``; with ``init`` only the
    configurations reachable from it are included.
    """
    import networkx as nx

    limits = limits or LIMITS
    c = f.compiled
    n = c.n
    if init is None and n > limits.stg:
        raise TooLargeError(f"{n} components exceed the STG bound {limits.stg}")

    def label(x):
        return "".join(str((x >> i) & 1) for i in range(n))

    g = nx.DiGraph()
    todo = [_config(f, init)] if init is not None else list(range(1 << n))
    seen = set(todo)
    while todo:
        x = todo.pop()
        g.add_node(label(x), config=f.decode(x))
        for i in range(n):
            if c.value(i, x) != (x >> i) & 1:
                y = x ^ (1 << i)
                g.add_edge(label(x), label(y), component=f.components[i])
                if y not in seen:
                    if len(seen) >= 1 << limits.stg:
                        raise TooLargeError("reachable state space exceeds the STG bound")
                    seen.add(y)
                    todo.append(y)
    return g


def stg_to_dot(g, name="stg") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f'  "{v}";' for v in sorted(g.nodes)]
    lines += [f'  "{u}" -> "{v}";' for u, v in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
