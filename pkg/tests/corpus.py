"""Random locally-monotone networks and small reference networks."""

import random

from hypothesis import strategies as st

from mpreprog.bn import And, BooleanNetwork, Const, InfluenceGraph, Not, Or, Var

EXAMPLE1 = {"A": "B", "B": "!A", "C": "!A & B"}
EXAMPLE2 = {"A": "B", "B": "A", "C": "!D & (A|B)", "D": "!C"}
EXAMPLE3 = {"A": "!B", "B": "!A", "C": "A & !B & !D", "D": "C | E", "E": "!C & !E"}
NETWORK_G = {"A": "!B", "B": "A", "C": "A & B", "D": "C"}
SIGNED_EDGES = "C + B\nA + C\nB - C\nC + D\n"


def signed_graph():
    return InfluenceGraph.parse_edgelist(SIGNED_EDGES)


def _names(n):
    return [chr(ord("A") + i) for i in range(n)]


def _rule(regs, signs, clauses):
    if not regs:
        return Const(clauses)
    terms = []
    for clause in clauses:
        lits = [Var(r) if signs[r] > 0 else Not(Var(r)) for r in clause]
        terms.append(lits[0] if len(lits) == 1 else And(tuple(lits)))
    return terms[0] if len(terms) == 1 else Or(tuple(terms))


def random_unate_network(rng: random.Random, n: int, max_indegree: int = 3) -> BooleanNetwork:
    names = _names(n)
    rules = {}
    for name in names:
        d = rng.randint(0, min(max_indegree, n))
        regs = rng.sample(names, d)
        signs = {r: rng.choice((1, -1)) for r in regs}
        if not regs:
            rules[name] = _rule([], signs, rng.randint(0, 1))
            continue
        clauses = [rng.sample(regs, rng.randint(1, d)) for _ in range(rng.randint(1, 3))]
        rules[name] = _rule(regs, signs, clauses)
    return BooleanNetwork(rules)


def corpus(count: int, n_min: int, n_max: int, seed: int = 0, max_indegree: int = 3):
    rng = random.Random(seed)
    return [random_unate_network(rng, rng.randint(n_min, n_max), max_indegree)
            for _ in range(count)]


@st.composite
def unate_networks(draw, n_min=1, n_max=6, max_indegree=3):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    n = draw(st.integers(n_min, n_max))
    return random_unate_network(random.Random(seed), n, max_indegree)


@st.composite
def networks_with_config(draw, n_min=1, n_max=6):
    f = draw(unate_networks(n_min, n_max))
    x = {name: draw(st.integers(0, 1)) for name in f.components}
    return f, x
