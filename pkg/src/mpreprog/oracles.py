"""Brute-force oracles over the full configuration space.

These never use unateness: trap spaces are checked vertex by vertex on the
tabulated global map, so they serve as independent references for the
polynomial routines of :mod:`mpreprog.mp`.
"""

from __future__ import annotations

import numpy as np

from .bn import BooleanNetwork, evaluate
from .errors import TooLargeError
from .mp import LIMITS, Limits


def global_map(f: BooleanNetwork) -> np.ndarray:
    """``F[x] = f(x)`` for every int-encoded configuration, by expression evaluation."""
    n = len(f)
    out = np.zeros(1 << n, dtype=np.int64)
    for x in range(1 << n):
        cfg = f.decode(x)
        y = 0
        for i, name in enumerate(f.components):
            y |= evaluate(f[name], cfg) << i
        out[x] = y
    return out


def closed_subhypercubes(f: BooleanNetwork, limits: Limits = None) -> list[tuple[int, int]]:
    """All (mask, values) sub-hypercubes closed under ``f``."""
    limits = limits or LIMITS
    n = len(f)
    if n > limits.oracle:
        raise TooLargeError(f"{n} components exceed the oracle bound {limits.oracle}")
    F = global_map(f)
    xs = np.arange(1 << n, dtype=np.int64)
    closed = []
    for mask in range(1 << n):
        a = xs & mask
        bad = set(np.unique(a[(F & mask) != a]).tolist())
        # every values-pattern on mask
        sub = mask
        while True:
            if sub not in bad:
                closed.append((mask, sub))
            if not sub:
                break
            sub = (sub - 1) & mask
    return closed


def _popcount(v):
    return bin(v).count("1")


def trap_space_oracle(f: BooleanNetwork, limits: Limits = None) -> set[tuple[int, int]]:
    """Minimal closed sub-hypercubes, from the 3^n enumeration."""
    closed = sorted(closed_subhypercubes(f, limits), key=lambda h: -_popcount(h[0]))
    minimal: list[tuple[int, int]] = []
    for m, v in closed:
        # processed by increasing dimension: any smaller closed cube was seen
        if not any(m & ~mm == 0 and (v ^ vv) & m == 0 for mm, vv in minimal):
            minimal.append((m, v))
    return set(minimal)


def smallest_closed_containing(f: BooleanNetwork, limits: Limits = None) -> dict[int, tuple[int, int]]:
    """For each configuration x, the ⪯-minimum closed sub-hypercube containing x.

    Raises AssertionError if the closed cubes containing x have no minimum.
    """
    n = len(f)
    closed = closed_subhypercubes(f, limits)
    M = np.array([m for m, _ in closed], dtype=np.int64)
    V = np.array([v for _, v in closed], dtype=np.int64)
    fixed = np.array([_popcount(m) for m in M.tolist()])
    out = {}
    for x in range(1 << n):
        idx = np.nonzero(((x ^ V) & M) == 0)[0]
        best = idx[np.argmax(fixed[idx])]
        bm, bv = int(M[best]), int(V[best])
        # minimum: every other containing cube fixes a subset of best's coordinates
        others = M[idx]
        assert np.all((others & ~bm) == 0), "no minimum closed sub-hypercube"
        out[x] = (bm, bv)
    return out


def escape_oracle(f: BooleanNetwork, name: str, mask: int, val: int, b: int) -> bool:
    """Whether f_name(y) = b for some vertex y of (mask, val), by full enumeration."""
    n = len(f)
    free = ((1 << n) - 1) & ~mask
    sub = free
    while True:
        if evaluate(f[name], f.decode(val | sub)) == b:
            return True
        if not sub:
            return False
        sub = (sub - 1) & free


def fixed_points_oracle(f: BooleanNetwork) -> set[int]:
    F = global_map(f)
    return {int(x) for x in np.nonzero(F == np.arange(len(F)))[0]}
