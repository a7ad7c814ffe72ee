import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mpreprog import (
    BooleanNetwork,
    NotUnateError,
    Reprogramming,
    TooLargeError,
    UnknownComponentError,
    fixed_points,
    iter_solutions,
    solve_p1,
    solve_p2,
    solve_p3,
    solve_p4,
)
from mpreprog.mp import Limits, minimal_trap_spaces
from mpreprog.reprogramming import (
    attractor_matches,
    bad_perturbation_p3,
    bad_perturbation_p4,
    candidate_perturbations,
    is_p1_solution,
    is_p2_solution,
    is_p3_solution,
    is_p4_solution,
    matches,
    minimal_filter,
    solution_key,
)

from corpus import corpus, unate_networks
from replay import oracle_good, replay


def as_set(solutions):
    return {frozenset(P.items()) for P in solutions}


def zero_with(f, **ones):
    return {name: ones.get(name, 0) for name in f.components}


# -- small helpers -------------------------------------------------------------

def test_matches():
    assert matches({"A": 1, "B": 0}, {"A": 1})
    assert not matches({"A": 1, "B": 0}, {"B": 1})
    assert matches({"A": 1}, {})


def test_attractor_matches():
    assert attractor_matches({"A": 1, "B": "*"}, {"A": 1})
    assert not attractor_matches({"A": 1, "B": "*"}, {"B": 1})
    assert not attractor_matches({"A": 1, "B": "*"}, {"B": 0})


def test_candidate_counts():
    assert len(list(candidate_perturbations("ABC", 1))) == 7
    # 1 + 3*2 + 3*4
    assert len(list(candidate_perturbations("ABCD", 2, exclude=["D"]))) == 19
    assert list(candidate_perturbations("ABC", 0)) == [{}]
    with pytest.raises(ValueError):
        list(candidate_perturbations("A", -1))


def test_candidate_order():
    cands = list(candidate_perturbations("BA", 2))
    assert cands == sorted(cands, key=solution_key)
    assert cands[:3] == [{}, {"A": 0}, {"A": 1}]


def test_minimal_filter():
    raw = [{"A": 0}, {"A": 0, "C": 1}, {"C": 1, "B": 0}, {"A": 1, "C": 1}, {"C": 1, "B": 0}]
    assert minimal_filter(raw) == [{"A": 0}, {"A": 1, "C": 1}, {"B": 0, "C": 1}]
    assert minimal_filter([{}, {"A": 1}]) == [{}]
    assert minimal_filter([]) == []


# -- fixed points --------------------------------------------------------------

def test_p1_example1(ex1):
    sols = solve_p1(ex1, {"C": 1}, 2)
    assert as_set(sols) == as_set([{"A": 0}, {"C": 1, "B": 0}, {"A": 1, "C": 1},
                                   {"B": 1, "C": 1}])
    assert sols == sorted(sols, key=solution_key)


def test_p1_without_existence(ex1):
    assert solve_p1(ex1, {"C": 1}, 2, ensure_exists=False) == [{}]


def test_p1_predicate(ex1):
    assert is_p1_solution(ex1, {"C": 1}, {"A": 0})
    assert not is_p1_solution(ex1, {"C": 1}, {"C": 1})
    assert is_p1_solution(ex1, {"C": 1}, {}, ensure_exists=False)


def test_p1_p2_example2(ex2):
    assert as_set(solve_p1(ex2, {"C": 1}, 2)) == as_set(
        [{"A": 1, "D": 0}, {"B": 1, "D": 0}, {"C": 1}])
    z = {"A": 1, "B": 1, "C": 0, "D": 0}
    assert as_set(solve_p2(ex2, z, {"C": 1}, 2)) == as_set([{"D": 0}, {"C": 1}])
    assert is_p2_solution(ex2, z, {"C": 1}, {"D": 0})
    assert not is_p1_solution(ex2, {"C": 1}, {"D": 0})


def test_p1_example3(ex3):
    assert as_set(solve_p1(ex3, {"C": 1}, 3)) == as_set([{"D": 0}, {"C": 1}])


def test_p1_network_g(net_g):
    assert as_set(solve_p1(net_g, {"D": 1}, 2)) == as_set([
        {"A": 1}, {"D": 1, "A": 0}, {"D": 1, "B": 0}, {"B": 1, "D": 1},
        {"C": 1, "A": 0}, {"C": 1, "B": 0}, {"B": 1, "C": 1}])


# -- attractors ----------------------------------------------------------------

def test_p3_example3(ex3):
    sols = solve_p3(ex3, {"C": 1}, 3)
    assert as_set(sols) == as_set([{"C": 1}, {"D": 0, "B": 0}, {"D": 0, "A": 1}])
    assert solve_p3(ex3, {"C": 1}, 3, framing="complement") == sols
    assert not is_p3_solution(ex3, {"C": 1}, {"D": 0})
    assert bad_perturbation_p3(ex3, {"C": 1}, {"D": 0})
    assert not bad_perturbation_p3(ex3, {"C": 1}, {"D": 0, "A": 1})


def test_p3_network_g(net_g):
    assert as_set(solve_p3(net_g, {"D": 1}, 2)) == as_set([{"A": 1}, {"C": 1}, {"D": 1}])


def test_p4_example3(ex3):
    z = zero_with(ex3, A=1)
    sols = solve_p4(ex3, z, {"C": 1}, 3)
    assert as_set(sols) == as_set([{"D": 0}, {"C": 1}])
    assert solve_p4(ex3, z, {"C": 1}, 3, framing="complement") == sols
    assert is_p4_solution(ex3, z, {"C": 1}, {"D": 0})
    assert not bad_perturbation_p4(ex3, z, {"C": 1}, {"D": 0})
    # the reachable fixed points give the same answer here
    assert as_set(solve_p2(ex3, z, {"C": 1}, 3)) == as_set(sols)


def test_p4_partial_source(ex3):
    # E left free: some completion must work
    z = {"A": 1, "B": 0, "C": 0, "D": 0}
    assert as_set(solve_p4(ex3, z, {"C": 1}, 3)) == as_set([{"D": 0}, {"C": 1}])
    assert solve_p4(ex3, z, {"C": 1}, 3) == replay(ex3, "P4", {"C": 1}, 3, source=z)


def test_partial_source_bound(ex3):
    with pytest.raises(TooLargeError):
        solve_p4(ex3, {}, {"C": 1}, 1, limits=Limits(completions=2))


def test_sourced_problem_needs_source(ex3):
    with pytest.raises(ValueError):
        Reprogramming(ex3, {"C": 1}, 1, problem="P4")


def test_bad_arguments(ex3):
    with pytest.raises(ValueError):
        Reprogramming(ex3, {"C": 1}, -1)
    with pytest.raises(ValueError):
        Reprogramming(ex3, {"C": 1}, 1, problem="P5")
    with pytest.raises(ValueError):
        Reprogramming(ex3, {"C": 1}, 1, framing="other")
    with pytest.raises(UnknownComponentError):
        Reprogramming(ex3, {"Z": 1}, 1)
    with pytest.raises(UnknownComponentError):
        Reprogramming(ex3, {"C": 1}, 1, exclude=["Z"])


def test_not_unate():
    f = BooleanNetwork({"A": "(A & !B) | (!A & B)", "B": "B"})
    with pytest.raises(NotUnateError):
        solve_p3(f, {"A": 1}, 1)


def test_exclude(ex3):
    sols = solve_p3(ex3, {"C": 1}, 3, exclude=["C"])
    assert as_set(sols) == as_set([{"D": 0, "B": 0}, {"D": 0, "A": 1}])
    assert all("C" not in P for P in sols)


def test_streaming(ex3):
    it = iter_solutions(ex3, {"C": 1}, 3)
    assert next(it) == {"C": 1}


def test_is_solution_method(ex3):
    q = Reprogramming(ex3, {"C": 1}, 3)
    assert q.is_solution({"C": 1})
    assert not q.is_solution({"D": 0})


# -- properties ----------------------------------------------------------------

@pytest.mark.parametrize("problem", ["P1", "P2", "P3", "P4"])
def test_solutions_match_replay(problem):
    for i, f in enumerate(corpus(12, 1, 5, seed=200)):
        names = f.components
        marker = {names[-1]: i % 2}
        source = zero_with(f) if problem in ("P2", "P4") else None
        got = Reprogramming(f, marker, 2, problem=problem, source=source).solve()
        assert got == replay(f, problem, marker, 2, source=source)


@settings(max_examples=60, deadline=None)
@given(unate_networks(1, 5), st.data())
def test_dual_framing(f, data):
    name = data.draw(st.sampled_from(f.components))
    marker = {name: data.draw(st.integers(0, 1))}
    assert solve_p3(f, marker, 2) == solve_p3(f, marker, 2, framing="complement")
    z = {c: data.draw(st.integers(0, 1)) for c in f.components}
    assert solve_p4(f, z, marker, 2) == solve_p4(f, z, marker, 2, framing="complement")


@settings(max_examples=60, deadline=None)
@given(unate_networks(1, 5), st.data())
def test_solution_set_properties(f, data):
    name = data.draw(st.sampled_from(f.components))
    marker = {name: data.draw(st.integers(0, 1))}
    k = data.draw(st.integers(0, 2))
    sols = solve_p3(f, marker, k)
    assert all(len(P) <= k for P in sols)
    assert minimal_filter(sols) == sols
    # perturbing the marker itself always works
    if k >= 1:
        assert any(P.items() <= marker.items() for P in sols)
    for P in sols:
        assert all(attractor_matches(a, marker) for a in minimal_trap_spaces(f.perturb(P)))
    # fixed points of attractor solutions also match
    for P in sols:
        assert is_p1_solution(f, marker, P, ensure_exists=False)
    # P3 solution  =>  P4 solution from every source
    z = {c: data.draw(st.integers(0, 1)) for c in f.components}
    for P in sols:
        assert is_p4_solution(f, z, marker, P)


@settings(max_examples=40, deadline=None)
@given(unate_networks(1, 5), st.data())
def test_p1_solutions_are_p2_solutions_somewhere(f, data):
    # the fixed point of a P1 solution is a source from which P2 holds
    name = data.draw(st.sampled_from(f.components))
    marker = {name: data.draw(st.integers(0, 1))}
    for P in solve_p1(f, marker, 1):
        fp = f.perturb(P)
        x = fixed_points(fp)[0]
        assert is_p2_solution(f, x, marker, P)
        assert oracle_good(f, "P2", marker, P, source=x)
