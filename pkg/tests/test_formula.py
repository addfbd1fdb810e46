"""Parser, evaluation, substitution and counting for formula trees."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zhcalc.formula import (
    And,
    CompareInstance,
    Const,
    Iff,
    Implies,
    Not,
    Or,
    ParseError,
    SatCompareInstance,
    TooManyVariables,
    UnassignedVariable,
    Var,
    assignments,
    compare_sharp_sat,
    count_sat,
    eval_formula,
    format_formula,
    formula_vars,
    parse_formula,
    rename_vars,
    satisfying_assignments,
    substitute,
)

x1, x2, x3 = Var("x1"), Var("x2"), Var("x3")
y1, y2, y3 = Var("y1"), Var("y2"), Var("y3")


def test_eval_basic():
    # (F | T) is satisfied by the empty assignment
    assert eval_formula(Or(Const(False), Const(True)), {}) is True
    phi = And(And(x1, x2), And(x1, Not(x3)))
    assert eval_formula(phi, {"x1": True, "x2": True, "x3": False}) is True
    assert eval_formula(phi, {"x1": True, "x2": True, "x3": True}) is False


def test_eval_missing_variable():
    with pytest.raises(UnassignedVariable):
        eval_formula(x1, {})


def test_count_examples():
    phi = And(And(x1, x2), And(x1, Not(x3)))
    assert count_sat(phi, ("x1", "x2", "x3")) == 1
    assert count_sat(Or(Or(y1, y2), y3), ("y1", "y2", "y3")) == 7
    assert count_sat(Const(True), ("y1", "y2")) == 4
    assert count_sat(Const(False), ("y1", "y2")) == 0


def test_count_over_superset_doubles():
    assert count_sat(x1, ("x1",)) == 1
    assert count_sat(x1, ("x1", "x2")) == 2


def test_count_guards():
    with pytest.raises(TooManyVariables):
        count_sat(x1, [f"v{i}" for i in range(30)])
    with pytest.raises(UnassignedVariable):
        count_sat(x1, ("x2",))


def test_satisfying_assignments_order():
    assert satisfying_assignments(Or(x1, x2), ("x1", "x2")) == ["01", "10", "11"]


def test_substitute_folds():
    phi = Or(x1, x2)
    assert substitute(phi, {"x2": True}) == Const(True)
    assert substitute(phi, {"x2": False}) == x1
    assert substitute(And(x1, x2), {"x1": True}) == x2
    assert substitute(And(x1, x2), {"x1": False}) == Const(False)
    assert substitute(Not(x1), {"x1": True}) == Const(False)
    assert substitute(Implies(x1, x2), {"x1": False}) == Const(True)
    assert substitute(Implies(x1, x2), {"x2": False}) == Not(x1)
    assert substitute(Iff(x1, x2), {"x1": True}) == x2
    assert substitute(Iff(x1, x2), {"x1": False}) == Not(x2)


def test_substitute_worked_case():
    # rho = ~(z1 & (z2 | x1)) at x1=False becomes ~(z1 & z2)
    rho = Not(And(Var("z1"), Or(Var("z2"), x1)))
    assert substitute(rho, {"x1": False}) == Not(And(Var("z1"), Var("z2")))
    assert count_sat(substitute(rho, {"x1": False}), ("z1", "z2")) == 3
    assert count_sat(substitute(rho, {"x1": True}), ("z1", "z2")) == 2


def test_parse_precedence_and_assoc():
    assert parse_formula("~x1 & x2 | x3") == Or(And(Not(x1), x2), x3)
    assert parse_formula("x1 -> x2 -> x3") == Implies(x1, Implies(x2, x3))
    assert parse_formula("x1 <-> x2 -> x3") == Iff(x1, Implies(x2, x3))
    assert parse_formula("x1 | x2 | x3") == Or(Or(x1, x2), x3)
    assert parse_formula("T & ~F") == And(Const(True), Not(Const(False)))
    assert parse_formula("(x1 | y1) & ~y2") == And(Or(x1, y1), Not(y2))


def test_parse_errors():
    for bad in ("", "x1 &", "& x1", "(x1", "x1 x2", "x1 ? x2"):
        with pytest.raises(ParseError):
            parse_formula(bad)


def test_format_round_trip_examples():
    cases = [
        Or(And(Not(x1), x2), x3),
        Implies(x1, Implies(x2, x3)),
        Not(And(x1, Or(x2, x3))),
        And(x1, And(x2, x3)),
        Iff(Iff(x1, x2), x3),
        Not(Not(x1)),
    ]
    for phi in cases:
        assert parse_formula(format_formula(phi)) == phi


def _random_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.15:
            return Const(rng.random() < 0.5)
        return Var(rng.choice(names))
    op = rng.choice(("not", "and", "or", "implies", "iff"))
    if op == "not":
        return Not(_random_formula(rng, names, depth - 1))
    l = _random_formula(rng, names, depth - 1)
    r = _random_formula(rng, names, depth - 1)
    return {"and": And, "or": Or, "implies": Implies, "iff": Iff}[op](l, r)


def test_format_round_trip_random():
    rng = random.Random(7)
    names = ["x1", "x2", "y1", "_u3"]
    for _ in range(300):
        phi = _random_formula(rng, names, 4)
        assert parse_formula(format_formula(phi)) == phi


def test_substitution_coherence_random():
    # eval(phi, v ∪ w) == eval(substitute(phi, v), w) on total assignments
    rng = random.Random(11)
    names = ("x1", "x2", "x3")
    for _ in range(300):
        phi = _random_formula(rng, list(names), 3)
        split = rng.randint(0, 3)
        for full in assignments(names):
            v = {k: full[k] for k in names[:split]}
            w = {k: full[k] for k in names[split:]}
            sub = substitute(phi, v)
            assert eval_formula(sub, full) == eval_formula(phi, full)
            assert set(formula_vars(sub)) <= set(names[split:])
            assert eval_formula(sub, w) == eval_formula(phi, full)


@given(st.integers(0, 255))
@settings(max_examples=60)
def test_count_matches_truth_table(mask):
    # build a formula from an arbitrary 3-variable truth table via minterms
    names = ("x1", "x2", "x3")
    phi = Const(False)
    for i in range(8):
        if mask >> i & 1:
            bits = [(i >> (2 - j)) & 1 for j in range(3)]
            term = Const(True)
            for name, bit in zip(names, bits):
                lit = Var(name) if bit else Not(Var(name))
                term = And(term, lit)
            phi = Or(phi, term)
    assert count_sat(phi, names) == bin(mask).count("1")


def test_rename_vars():
    phi = And(x1, Or(y1, x1))
    assert rename_vars(phi, {"x1": "w9"}) == And(Var("w9"), Or(y1, Var("w9")))


def test_compare_instance():
    inst = CompareInstance(Or(x1, x2), ("x1", "x2"), And(y1, y2), ("y1", "y2"))
    assert compare_sharp_sat(inst) is False
    inst2 = CompareInstance(x1, ("x1", "x2"), Not(y1), ("y1", "y2"))
    assert compare_sharp_sat(inst2) is True
    with pytest.raises(ValueError):
        CompareInstance(x1, ("x1",), y1, ("y1", "y2"))


def test_sat_compare_instance_json():
    inst = SatCompareInstance(
        n=1,
        m=2,
        psi=Or(Or(x1, y1), Not(y2)),
        rho=Not(And(Var("z1"), Or(Var("z2"), x1))),
    )
    obj = inst.to_json()
    assert obj["n"] == 1 and obj["m"] == 2
    assert SatCompareInstance.from_json(obj) == inst
    with pytest.raises(ValueError):
        SatCompareInstance(n=1, m=1, psi=Var("q7"), rho=Var("z1"))
