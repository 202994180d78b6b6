import json
import random

import pytest

from uag import zoo
from uag.algebra import GROUP, MONOID, center, direct_power
from uag.constructions import group_system, random_system, semilattice_system
from uag.solver import (BudgetExceeded, SolutionSet, counterexample, descent_profile, entails,
                        equivalent, eval_term, minimal_equivalent_prefix, solve)
from uag.terms import App, EqSystem, Equation, Var, parse_equation, parse_system, parse_term

from oracle import naive_eval, naive_solve, tables_as_lists, tuple_encoder

S3_12, S3_13 = 1, 2


def test_eval_inverse(s3):
    assert eval_term(parse_term("x * x^-1", GROUP), {"x": S3_12}, s3) == s3.neutral


def test_eval_commutator(s3):
    val = eval_term(parse_term("[x, y]", GROUP), {"x": S3_12, "y": S3_13}, s3)
    # by hand from the Cayley table: (12)^-1 (13)^-1 (12) (13)
    t = tables_as_lists(s3)["*"]
    hand = t[t[t[S3_12][S3_13]][S3_12]][S3_13]
    assert val == hand
    assert val != s3.neutral
    assert s3.element_name(val) in ("(123)", "(132)")


def test_eval_tuple_constant(l2):
    p = direct_power(l2, 2)
    val = eval_term(parse_term("x * c(0,1)", MONOID), {"x": p.encode((1, 1))}, p)
    assert p.decode(val) == (0, 1)


def test_eval_errors(s3):
    with pytest.raises(ValueError, match="unbound"):
        eval_term(Var("x"), {}, s3)
    with pytest.raises(ValueError, match="signature"):
        eval_term(App("+", (Var("x"), Var("x"))), {"x": 0}, s3)


def test_x_block_over_s3_cube(s3):
    p = direct_power(s3, 3)
    s = group_system(s3, 3).restricted_to(["x"])
    assert len(s) == 6 * 3
    assert [p.decode(r[0]) for r in solve(s, p)] == [(0, 0, 0)]
    assert sorted(center(s3).elements) == [0]


def test_empty_system(z2):
    sols = solve(EqSystem((), ("x",)), z2)
    assert sols.rows == ((0,), (1,))


def test_two_l2_equations_over_l2_4(l2):
    p = direct_power(l2, 4)
    s = semilattice_system(4).prefix(2)
    oracle = naive_solve(s, p)
    assert len(oracle) == 8
    # coordinate 1 forced to 0, the others free
    assert {p.decode(r[0])[0] for r in oracle} == {0}
    assert solve(s, p).as_set() == oracle


def test_entails_commutator(s3):
    p = direct_power(s3, 3)
    target = parse_equation("[x, y] = e", GROUP)
    assert entails(group_system(s3, 3), target, p)
    bad = counterexample(group_system(s3, 3, depth=2), target, p)
    assert bad is not None
    g, h = p.decode(bad["x"]), p.decode(bad["y"])
    # the counterexample can only live in the last coordinate
    assert g[:2] == (0, 0) and h[:2] == (0, 0)


def test_abelian_identity(z2, s3):
    comm = parse_equation("x * y = y * x", GROUP)
    empty = EqSystem((), ("x", "y"))
    assert entails(empty, comm, z2)
    assert not entails(empty, comm, s3)


@pytest.mark.parametrize("name", zoo.NAMES)
def test_identity_check_matches_center(name):
    a = zoo.load(name)
    comm = Equation(App("*", (Var("x"), Var("y"))), App("*", (Var("y"), Var("x"))))
    assert entails(EqSystem((), ("x", "y")), comm, a) == (len(center(a)) == a.size)


def test_equivalent(s3, l2):
    s = group_system(s3, 2)
    triv = Equation(App("e"), App("e"))
    p = direct_power(s3, 2)
    assert equivalent(s, s.extended(triv), p)
    doubled = EqSystem(s.equations + s.equations, s.variables)
    assert equivalent(s, doubled, p)
    q = direct_power(l2, 4)
    full = semilattice_system(4)
    assert not equivalent(full.prefix(2), full, q)
    assert len(solve(full.prefix(2), q)) == 8 and len(solve(full, q)) == 2
    with pytest.raises(ValueError):
        equivalent(s, EqSystem((), ("x",)), p)


def test_minimal_prefix_l2(l2):
    p = direct_power(l2, 4)
    s = semilattice_system(4)
    profile = [len(naive_solve(s.prefix(k), p)) for k in range(5)]
    assert profile == [16, 16, 8, 4, 2]
    assert minimal_equivalent_prefix(s, p) == (4, profile)


def test_minimal_prefix_small_cases(s3):
    one = parse_system("vars x; x * x = e;", GROUP, s3)
    assert minimal_equivalent_prefix(one, s3)[0] == 1
    dup = one.extended(*one.equations)
    k, profile = minimal_equivalent_prefix(dup, s3)
    assert k == 1 and profile[1] == profile[2]


def test_budget(s3):
    s = EqSystem((), ("x", "y", "z"))
    with pytest.raises(BudgetExceeded):
        solve(s, s3, budget=100)
    assert len(solve(s, s3, budget=216)) == 216


def test_budget_env(s3, monkeypatch):
    monkeypatch.setenv("UAG_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        solve(EqSystem((), ("x", "y")), s3)


def test_solution_json(l2):
    p = direct_power(l2, 2)
    sols = solve(semilattice_system(2), p)
    text = sols.to_json()
    assert json.loads(text) == {"variables": ["x"], "algebra": "L2^2", "solutions": [[0], [1]]}
    assert SolutionSet.from_json(text) == sols


def _zoo_pairs(seed, count):
    rng = random.Random(seed)
    algebras = [zoo.load(n) for n in zoo.NAMES]
    algebras += [direct_power(zoo.load("l2"), 3), direct_power(zoo.load("s3"), 2),
                 direct_power(zoo.load("z2ring"), 3)]
    for _ in range(count):
        a = rng.choice(algebras)
        s = random_system(rng, a, max_equations=3, max_variables=3, depth=3)
        if a.size ** len(s.variables) <= 10 ** 5:
            yield a, s


@pytest.mark.parametrize("seed", range(4))
def test_solve_agrees_with_oracle(seed):
    for a, s in _zoo_pairs(seed, 25):
        assert solve(s, a).as_set() == naive_solve(s, a)


@pytest.mark.parametrize("seed", range(3))
def test_soundness_by_independent_evaluation(seed):
    for a, s in _zoo_pairs(100 + seed, 20):
        tables, enc = tables_as_lists(a), tuple_encoder(a)
        for asg in solve(s, a).assignments():
            for e in s.equations:
                assert naive_eval(e.lhs, asg, tables, enc) == naive_eval(e.rhs, asg, tables, enc)


@pytest.mark.parametrize("seed", range(3))
def test_monotone_and_entailment_law(seed):
    rng = random.Random(seed)
    for a, s in _zoo_pairs(200 + seed, 20):
        extra = random_system(rng, a, max_equations=1, max_variables=len(s.variables), depth=2)
        e = extra.equations[0]
        bigger = s.extended(e)
        assert solve(bigger, a).as_set() <= solve(s, a).as_set()
        assert entails(s, e, a) == (solve(s, a) == solve(bigger, a))
        profile = descent_profile(bigger, a)
        assert all(p >= q for p, q in zip(profile, profile[1:]))


def test_worker_count_does_not_change_results(s3, monkeypatch):
    import uag.solver
    monkeypatch.setattr(uag.solver, "CHUNK", 1000)
    p = direct_power(s3, 3)
    s = group_system(s3, 3, depth=1)
    one = solve(s, p, workers=1)
    four = solve(s, p, workers=4)
    assert one.rows == four.rows
    assert descent_profile(s, p, workers=1) == descent_profile(s, p, workers=4)
