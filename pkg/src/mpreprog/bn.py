"""Boolean networks: expressions, BooleanNet I/O, unateness and influence graphs.

Networks are immutable values.  A network maps each component name (in
declaration order) to an :class:`Expression`; configurations and partial
assignments are plain ``dict`` objects mapping component names to ``0``/``1``.

>>> f = parse_booleannet("A, B\\nB, !A\\nC, !A&B")
>>> f.apply({"A": 0, "B": 0, "C": 0})
{'A': 1, 'B': 1, 'C': 0}
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from types import MappingProxyType
from typing import Iterator, Mapping, Union

from .errors import (
    BooleanNetSyntaxError,
    DuplicateComponentError,
    TooLargeError,
    UndeclaredComponentError,
    UnknownComponentError,
)

__all__ = [
    "Const", "Var", "Not", "And", "Or", "Expression",
    "BooleanNetwork", "InfluenceGraph", "CompiledNetwork",
    "parse_expression", "parse_booleannet", "serialize_booleannet",
    "load_bnet", "evaluate_local", "apply", "unateness_certificate",
    "is_locally_monotone", "influence_graph", "apply_perturbation",
]

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# syntactic in-degree above which truth tables are refused
MAX_SUPPORT = 20


# ---------------------------------------------------------------------------
# expressions

@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not:
    child: "Expression"

    def __str__(self):
        if isinstance(self.child, (Const, Var, Not)):
            return f"!{self.child}"
        return f"!({self.child})"


@dataclass(frozen=True)
class And:
    children: tuple

    def __str__(self):
        return "&".join(f"({c})" if isinstance(c, Or) else str(c)
                        for c in self.children)


@dataclass(frozen=True)
class Or:
    children: tuple

    def __str__(self):
        return "|".join(str(c) for c in self.children)


Expression = Union[Const, Var, Not, And, Or]


def variables(e: Expression) -> list[str]:
    """Variables of ``e`` in order of first occurrence."""
    seen: dict[str, None] = {}

    def walk(e):
        if isinstance(e, Var):
            seen.setdefault(e.name)
        elif isinstance(e, Not):
            walk(e.child)
        elif isinstance(e, (And, Or)):
            for c in e.children:
                walk(c)
    walk(e)
    return list(seen)


def evaluate(e: Expression, x: Mapping[str, int]) -> int:
    if isinstance(e, Var):
        return 1 if x[e.name] else 0
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Not):
        return 1 - evaluate(e.child, x)
    if isinstance(e, And):
        return int(all(evaluate(c, x) for c in e.children))
    return int(any(evaluate(c, x) for c in e.children))


def _var_table(k: int, d: int) -> int:
    """Truth table (as int bitmask over 2**d rows) of the k-th of d variables."""
    width = 1 << k
    t = ((1 << width) - 1) << width
    length = 2 * width
    full = 1 << d
    while length < full:
        t |= t << length
        length *= 2
    return t


def truth_table(e: Expression, names: list[str]) -> int:
    """Bit-parallel truth table: bit ``r`` is ``e`` evaluated at row ``r``,
    where bit ``k`` of ``r`` gives the value of ``names[k]``."""
    d = len(names)
    full = (1 << (1 << d)) - 1
    pos = {name: k for k, name in enumerate(names)}

    def walk(e):
        if isinstance(e, Var):
            return _var_table(pos[e.name], d)
        if isinstance(e, Const):
            return full if e.value else 0
        if isinstance(e, Not):
            return full ^ walk(e.child)
        if isinstance(e, And):
            t = full
            for c in e.children:
                t &= walk(c)
            return t
        t = 0
        for c in e.children:
            t |= walk(c)
        return t
    return walk(e)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|([0-9][A-Za-z0-9_]*)|([!&|()]))")


def _tokenize(text: str, lineno=None) -> list[str]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise BooleanNetSyntaxError(
                f"unexpected character {text[pos:].strip()[:1]!r}", lineno)
        ident, number, op = m.groups()
        if number is not None and number not in ("0", "1"):
            raise BooleanNetSyntaxError(f"invalid token {number!r}", lineno)
        tokens.append(ident or number or op)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, lineno):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise BooleanNetSyntaxError("unexpected end of expression", self.lineno)
        self.pos += 1
        return tok

    def parse(self):
        e = self.disjunction()
        if self.peek() is not None:
            raise BooleanNetSyntaxError(f"unexpected token {self.peek()!r}", self.lineno)
        return e

    def disjunction(self):
        terms = [self.conjunction()]
        while self.peek() == "|":
            self.pos += 1
            terms.append(self.conjunction())
        return _flatten(Or, terms)

    def conjunction(self):
        terms = [self.unary()]
        while self.peek() == "&":
            self.pos += 1
            terms.append(self.unary())
        return _flatten(And, terms)

    def unary(self):
        tok = self.next()
        if tok == "!":
            return Not(self.unary())
        if tok == "(":
            e = self.disjunction()
            if self.next() != ")":
                raise BooleanNetSyntaxError("expected ')'", self.lineno)
            return e
        if tok in ("0", "1"):
            return Const(int(tok))
        if IDENT_RE.match(tok):
            return Var(tok)
        raise BooleanNetSyntaxError(f"unexpected token {tok!r}", self.lineno)


def _flatten(cls, terms):
    if len(terms) == 1:
        return terms[0]
    children = []
    for t in terms:
        children.extend(t.children if isinstance(t, cls) else (t,))
    return cls(tuple(children))


def parse_expression(text: str, lineno=None) -> Expression:
    """Parse a BooleanNet expression (``!``, ``&``, ``|``, parentheses, ``0``/``1``)."""
    tokens = _tokenize(text, lineno)
    if not tokens:
        raise BooleanNetSyntaxError("empty expression", lineno)
    return _Parser(tokens, lineno).parse()


def parse_booleannet(text: str) -> "BooleanNetwork":
    """Parse BooleanNet text into a :class:`BooleanNetwork`.

    Blank lines, ``#`` comments and a ``targets, factors`` header are ignored.
    Every variable must be declared by its own line.
    """
    rules: dict[str, Expression] = {}
    lines: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "," not in line:
            raise BooleanNetSyntaxError("expected 'target, expression'", lineno)
        target, expr = (s.strip() for s in line.split(",", 1))
        if target.lower() == "targets" and expr.lower() == "factors":
            continue
        if not IDENT_RE.match(target):
            raise BooleanNetSyntaxError(f"invalid component name {target!r}", lineno)
        if target in rules:
            raise DuplicateComponentError(
                f"component {target!r} already declared on line {lines[target]}", lineno)
        rules[target] = parse_expression(expr, lineno)
        lines[target] = lineno
    for target, e in rules.items():
        missing = [v for v in variables(e) if v not in rules]
        if missing:
            raise UndeclaredComponentError(
                f"undeclared component(s) {', '.join(missing)} in rule of {target}",
                lines[target])
    return BooleanNetwork(rules)


def serialize_booleannet(f: "BooleanNetwork") -> str:
    return "".join(f"{name}, {e}\n" for name, e in f.rules.items())


def load_bnet(path) -> "BooleanNetwork":
    with open(path) as fp:
        return parse_booleannet(fp.read())


# ---------------------------------------------------------------------------
# networks

class BooleanNetwork:
    """Immutable Boolean network over named components.

    ``rules`` maps each component to an :class:`Expression`; string values are
    parsed, and ints/bools become constants.  Iteration follows declaration
    order.
    """

    def __init__(self, rules: Mapping[str, Union[Expression, str, int, bool]] = ()):
        parsed: dict[str, Expression] = {}
        for name, e in dict(rules).items():
            if not isinstance(name, str) or not IDENT_RE.match(name):
                raise BooleanNetSyntaxError(f"invalid component name {name!r}")
            if isinstance(e, str):
                e = parse_expression(e)
            elif isinstance(e, (bool, int)):
                e = Const(int(bool(e)))
            parsed[name] = e
        for name, e in parsed.items():
            missing = [v for v in variables(e) if v not in parsed]
            if missing:
                raise UndeclaredComponentError(
                    f"undeclared component(s) {', '.join(missing)} in rule of {name}")
        self._rules = parsed
        self.components = tuple(parsed)
        self.index = {name: i for i, name in enumerate(self.components)}

    @classmethod
    def load(cls, path) -> "BooleanNetwork":
        return load_bnet(path)

    @property
    def rules(self) -> Mapping[str, Expression]:
        return MappingProxyType(self._rules)

    def __len__(self):
        return len(self.components)

    def __iter__(self) -> Iterator[str]:
        return iter(self.components)

    def __contains__(self, name):
        return name in self._rules

    def __getitem__(self, name) -> Expression:
        try:
            return self._rules[name]
        except KeyError:
            raise UnknownComponentError(f"unknown component {name!r}") from None

    def __eq__(self, other):
        if not isinstance(other, BooleanNetwork):
            return NotImplemented
        return list(self._rules.items()) == list(other._rules.items())

    def __hash__(self):
        return hash(tuple(self._rules.items()))

    def __repr__(self):
        body = ", ".join(f"{k!r}: {str(e)!r}" for k, e in self._rules.items())
        return f"BooleanNetwork({{{body}}})"

    def __str__(self):
        return serialize_booleannet(self)

    def source(self) -> str:
        return serialize_booleannet(self)

    def equivalent(self, other: "BooleanNetwork") -> bool:
        """Semantic equality: same components, logically equivalent rules."""
        if set(self.components) != set(other.components):
            return False
        for name in self.components:
            names = list(dict.fromkeys(variables(self[name]) + variables(other[name])))
            if len(names) > MAX_SUPPORT:
                raise TooLargeError(f"rule of {name} has too many variables")
            if truth_table(self[name], names) != truth_table(other[name], names):
                return False
        return True

    def check_components(self, names) -> None:
        for name in names:
            if name not in self._rules:
                raise UnknownComponentError(f"unknown component {name!r}")

    def check_assignment(self, x: Mapping[str, int], total=False) -> None:
        self.check_components(x)
        for name, v in x.items():
            if v not in (0, 1):
                raise ValueError(f"value of {name} must be 0 or 1, got {v!r}")
        if total and len(x) != len(self.components):
            missing = [n for n in self.components if n not in x]
            raise ValueError(f"configuration misses {', '.join(missing)}")

    def encode(self, x: Mapping[str, int]) -> int:
        """Pack an assignment into an int; bit ``i`` is component ``i``."""
        v = 0
        for name, b in x.items():
            if b:
                v |= 1 << self.index[name]
        return v

    def encode_partial(self, x: Mapping[str, int]) -> tuple[int, int]:
        """``(mask, values)`` bitmasks of a partial assignment."""
        self.check_assignment(x)
        mask = 0
        for name in x:
            mask |= 1 << self.index[name]
        return mask, self.encode(x)

    def decode(self, v: int) -> dict[str, int]:
        return {name: (v >> i) & 1 for i, name in enumerate(self.components)}

    def decode_partial(self, mask: int, v: int) -> dict[str, int]:
        return {name: (v >> i) & 1 for i, name in enumerate(self.components)
                if mask >> i & 1}

    def decode_cube(self, mask: int, v: int) -> dict:
        return {name: ((v >> i) & 1 if mask >> i & 1 else "*")
                for i, name in enumerate(self.components)}

    def encode_cube(self, h: Mapping[str, object]) -> tuple[int, int]:
        self.check_components(h)
        mask = v = 0
        for name, b in h.items():
            i = self.index[name]
            if b == "*":
                continue
            if b not in (0, 1):
                raise ValueError(f"value of {name} must be 0, 1 or '*', got {b!r}")
            mask |= 1 << i
            v |= b << i
        # components omitted from h are free
        return mask, v

    @cached_property
    def compiled(self) -> "CompiledNetwork":
        return CompiledNetwork.from_network(self)

    def evaluate_local(self, name: str, x: Mapping[str, int]) -> int:
        return evaluate(self[name], x)

    def apply(self, x: Mapping[str, int]) -> dict[str, int]:
        self.check_assignment(x, total=True)
        return self.decode(self.compiled.apply(self.encode(x)))

    def perturb(self, P: Mapping[str, int]) -> "BooleanNetwork":
        return apply_perturbation(self, P)

    def unateness_certificate(self, name: str):
        return unateness_certificate(self, name)

    def is_locally_monotone(self) -> bool:
        return self.compiled.unate

    def influence_graph(self) -> "InfluenceGraph":
        return influence_graph(self)


class CompiledNetwork:
    """Truth-table form of a network over int-encoded configurations.

    For each component ``i``: ``sup[i]`` lists the indices the local function
    really depends on, ``tt[i]`` is its truth table over ``sup[i]``,
    ``sign[i]`` gives ``+1``/``-1`` per regulator (``None`` if not unate),
    and ``pos[i]``/``neg[i]`` are bitmasks of positive/negative regulators.
    """

    __slots__ = ("n", "sup", "tt", "sign", "pos", "neg", "targets", "unate")

    def __init__(self, sup, tt, sign):
        self.n = len(sup)
        self.sup = sup
        self.tt = tt
        self.sign = sign
        self.unate = all(s is not None for s in sign)
        self.pos = []
        self.neg = []
        for sp, sg in zip(sup, sign):
            p = q = 0
            for j, s in zip(sp, sg or ()):
                if s > 0:
                    p |= 1 << j
                else:
                    q |= 1 << j
            self.pos.append(p)
            self.neg.append(q)
        targets = [[] for _ in range(self.n)]
        for i, sp in enumerate(sup):
            for j in sp:
                targets[j].append(i)
        self.targets = [tuple(t) for t in targets]

    @classmethod
    def from_network(cls, f: BooleanNetwork) -> "CompiledNetwork":
        sup, tts, signs = [], [], []
        for name, e in f.rules.items():
            names = sorted(variables(e), key=f.index.__getitem__)
            if len(names) > MAX_SUPPORT:
                raise TooLargeError(f"rule of {name} has {len(names)} variables")
            t = truth_table(e, names)
            s, t, sg = _reduce_support([f.index[v] for v in names], t)
            sup.append(s)
            tts.append(t)
            signs.append(sg)
        return cls(sup, tts, signs)

    def value(self, i: int, x: int) -> int:
        r = 0
        for k, j in enumerate(self.sup[i]):
            r |= ((x >> j) & 1) << k
        return (self.tt[i] >> r) & 1

    def apply(self, x: int) -> int:
        y = 0
        for i in range(self.n):
            r = 0
            for k, j in enumerate(self.sup[i]):
                r |= ((x >> j) & 1) << k
            y |= ((self.tt[i] >> r) & 1) << i
        return y

    def perturbed(self, mask: int, v: int) -> "CompiledNetwork":
        """Network where components in ``mask`` are constants from ``v``."""
        if not mask:
            return self
        sup, tt, sign = list(self.sup), list(self.tt), list(self.sign)
        for i in range(self.n):
            if mask >> i & 1:
                sup[i] = ()
                tt[i] = (v >> i) & 1
                sign[i] = ()
        return CompiledNetwork(sup, tt, sign)


def _reduce_support(indices: list[int], t: int):
    """Drop variables ``t`` does not depend on; return (support, table, signs)."""
    d = len(indices)
    rows = 1 << d
    full = (1 << rows) - 1
    keep, signs = [], []
    unate = True
    for k in range(d):
        clear = full ^ _var_table(k, d)
        lo = t & clear
        hi = (t >> (1 << k)) & clear
        inc = (~lo & hi & clear) != 0
        dec = (lo & ~hi & clear) != 0
        if inc or dec:
            keep.append(k)
            if inc and dec:
                unate = False
            signs.append(1 if inc else -1)
    if len(keep) < d:
        nt = 0
        for r in range(1 << len(keep)):
            old = 0
            for kk, k in enumerate(keep):
                if r >> kk & 1:
                    old |= 1 << k
            nt |= ((t >> old) & 1) << r
        t = nt
    return tuple(indices[k] for k in keep), t, (tuple(signs) if unate else None)


# ---------------------------------------------------------------------------
# module-level operations

def evaluate_local(f: BooleanNetwork, name: str, x: Mapping[str, int]) -> int:
    return evaluate(f[name], x)


def apply(f: BooleanNetwork, x: Mapping[str, int]) -> dict[str, int]:
    return f.apply(x)


def unateness_certificate(f: BooleanNetwork, name: str):
    """Sign of each component in the local function of ``name``.

    Returns a dict mapping every component to ``1``, ``-1`` or ``0`` (unused),
    or ``None`` when the function is not unate.
    """
    i = f.index.get(name)
    if i is None:
        raise UnknownComponentError(f"unknown component {name!r}")
    c = f.compiled
    if c.sign[i] is None:
        return None
    signs = dict.fromkeys(f.components, 0)
    for j, s in zip(c.sup[i], c.sign[i]):
        signs[f.components[j]] = s
    return signs


def is_locally_monotone(f: BooleanNetwork) -> bool:
    return f.compiled.unate


def apply_perturbation(f: BooleanNetwork, P: Mapping[str, int]) -> BooleanNetwork:
    """The perturbed network f/P: components of ``P`` become constants."""
    f.check_assignment(P)
    return BooleanNetwork({name: Const(int(P[name])) if name in P else e
                           for name, e in f.rules.items()})


def influence_graph(f: BooleanNetwork) -> "InfluenceGraph":
    """Signed influence graph, by brute force over each rule's variables."""
    edges = set()
    for target, e in f.rules.items():
        names = variables(e)
        if len(names) > MAX_SUPPORT:
            raise TooLargeError(f"rule of {target} has {len(names)} variables")
        for src in names:
            others = [v for v in names if v != src]
            found = set()
            for bits in product((0, 1), repeat=len(others)):
                x = dict(zip(others, bits))
                x[src] = 1
                up = evaluate(e, x)
                x[src] = 0
                delta = up - evaluate(e, x)
                if delta:
                    found.add(delta)
                    if len(found) == 2:
                        break
            edges.update((src, s, target) for s in found)
    return InfluenceGraph(f.components, edges)


class InfluenceGraph:
    """Signed digraph: edges are ``(source, sign, target)`` with sign ``±1``."""

    def __init__(self, nodes=(), edges=()):
        nodes = list(dict.fromkeys(nodes))
        edge_set = set()
        for src, s, tgt in edges:
            s = _parse_sign(s)
            for v in (src, tgt):
                if v not in nodes:
                    nodes.append(v)
            edge_set.add((src, s, tgt))
        self.nodes = tuple(nodes)
        self.edges = frozenset(edge_set)

    def __eq__(self, other):
        if not isinstance(other, InfluenceGraph):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and self.edges == other.edges

    def __repr__(self):
        return f"InfluenceGraph(nodes={self.nodes!r}, edges={sorted(self.edges)!r})"

    def issubgraph(self, other: "InfluenceGraph") -> bool:
        return self.edges <= other.edges

    def in_edges(self, target: str) -> list[tuple[str, int]]:
        order = {v: i for i, v in enumerate(self.nodes)}
        return sorted(((src, s) for src, s, tgt in self.edges if tgt == target),
                      key=lambda e: (order[e[0]], -e[1]))

    def sorted_edges(self):
        order = {v: i for i, v in enumerate(self.nodes)}
        return sorted(self.edges, key=lambda e: (order[e[0]], order[e[2]], -e[1]))

    @classmethod
    def parse_edgelist(cls, text: str) -> "InfluenceGraph":
        """Read ``source sign target`` lines; a lone name declares a node."""
        nodes, edges = [], []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.replace(",", " ").split()
            if len(parts) == 1 and IDENT_RE.match(parts[0]):
                nodes.append(parts[0])
                continue
            if len(parts) != 3:
                raise BooleanNetSyntaxError("expected 'source sign target'", lineno)
            src, sign, tgt = parts
            for v in (src, tgt):
                if not IDENT_RE.match(v):
                    raise BooleanNetSyntaxError(f"invalid node name {v!r}", lineno)
            try:
                sign = _parse_sign(sign)
            except ValueError as exc:
                raise BooleanNetSyntaxError(str(exc), lineno) from None
            nodes.extend((src, tgt))
            edges.append((src, sign, tgt))
        return cls(nodes, edges)

    def to_edgelist(self) -> str:
        return "".join(f"{s} {'+' if sign > 0 else '-'} {t}\n"
                       for s, sign, t in self.sorted_edges())

    def to_dot(self, name="influence_graph") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f'  "{v}";' for v in self.nodes]
        for src, s, tgt in self.sorted_edges():
            head = "normal" if s > 0 else "tee"
            lines.append(f'  "{src}" -> "{tgt}" [sign={s}, arrowhead={head}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _parse_sign(s) -> int:
    if s in (1, "+", "+1", "1"):
        return 1
    if s in (-1, "-", "-1"):
        return -1
    raise ValueError(f"invalid sign {s!r}")
