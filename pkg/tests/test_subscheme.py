"""Hasse-Schmidt subschemes: operator equations, towers, checks and separability."""
import pytest

from hasse_jets.exactalg import QQ, Ideal, ParseError, PrimeField, RationalFunctionField
from hasse_jets.hsring import DividedPowers, HSField, ZeroOperators
from hasse_jets.hssystem import builtin
from hasse_jets.prolong import AffineVariety, Prolongation
from hasse_jets.subscheme import (
    HSSubscheme,
    check_subscheme,
    compile_equation,
    dominance,
    full_tower,
    make_hasse,
    membership,
    nabla_push,
    separability,
)

F5t = RationalFunctionField(PrimeField(5), ["t"])
Qt = RationalFunctionField(QQ, ["t"])


@pytest.fixture(scope="module")
def char5():
    hs = HSField(F5t, builtin("HSD", 4), DividedPowers("t"))
    return Prolongation(AffineVariety.from_strings(F5t, ["x"], []), hs)


def _levels(Z):
    return [Z.level_gens(n) for n in range(Z.cap + 1)]


def test_fifth_power_tower_at_cap_one(char5):
    level, eq = compile_equation(char5, "D1(x)^5 = x")
    assert level == 1 and eq.render() == "x1_a^5 + 4*x"
    Z = make_hasse(char5, {level: [eq]}, cap=1)
    assert _levels(Z) == [[], ["x1_a^5 + 4*x"]]
    assert check_subscheme(Z) and dominance(Z)
    assert Z.flag("dominant") == {"value": True, "provenance": "verified"}
    v = separability(Z)
    assert not v and v.kind == "inseparable" and v.detail["witness"] == "level 1"


def test_fifth_power_tower_collapses_beyond_level_one(char5):
    level, eq = compile_equation(char5, "D1(x)^5 = x")
    Z = make_hasse(char5, {level: [eq]}, cap=3)
    assert _levels(Z) == [["x"], ["x", "x1_a"], ["x", "x1_a", "x2_a"], ["x", "x1_a", "x2_a", "x3_a"]]
    assert check_subscheme(Z)


def test_fixed_point_equation_under_zero_operators():
    hs = HSField(QQ, builtin("HSD", 3), ZeroOperators())
    P = Prolongation(AffineVariety.from_strings(QQ, ["x"], []), hs)
    level, eq = compile_equation(P, "D1(x) = x")
    Z = make_hasse(P, {level: [eq]}, cap=2)
    assert Z.level_gens(0) == []
    assert Z.level_gens(1) == ["-x1_a + x"]
    assert Z.level_gens(2) == ["-2*x2_a + x", "-2*x2_a + x1_a"]
    assert membership([0], Z)
    assert not membership([1], Z)


def test_full_tower_of_smooth_curve():
    hs = HSField(F5t, builtin("HSD", 4), DividedPowers("t"))
    P = Prolongation(AffineVariety.from_strings(F5t, ["x", "y"], ["y - x^2"]), hs)
    Z = full_tower(P, cap=2)
    assert check_subscheme(Z) and dominance(Z) and separability(Z)
    Y = nabla_push(Z, 1)
    assert check_subscheme(Y)


def test_hand_built_incompatible_tower_is_rejected():
    hs = HSField(QQ, builtin("HSD", 2), ZeroOperators())
    P = Prolongation(AffineVariety.from_strings(QQ, ["x"], []), hs)
    R0, R1 = P.ring(0), P.ring(1)
    Z = HSSubscheme(P, [Ideal(R0, [R0.parse("x")]), Ideal(R1, [])])
    v = check_subscheme(Z)
    assert not v and v.kind == "pi-compatibility"


def test_constants_tower_in_char_0():
    hs = HSField(Qt, builtin("HSD", 3), DividedPowers("t"))
    P = Prolongation(AffineVariety.from_strings(Qt, ["x"], []), hs)
    level, eq = compile_equation(P, "D1(x) = 0")
    Z = make_hasse(P, {level: [eq]}, cap=3)
    assert _levels(Z) == [[], ["x1_a"], ["x1_a", "x2_a"], ["x1_a", "x2_a", "x3_a"]]
    t = Qt.gen("t")
    assert membership([Qt(3)], Z)
    assert not membership([t], Z)


def test_operator_syntax_forms(char5):
    hs = HSField(F5t, builtin("HSD", 4), DividedPowers("t"))
    P = Prolongation(AffineVariety.from_strings(F5t, ["x", "y"], []), hs)
    level, eq = compile_equation(P, "D{1,2}(x*y) + D1(x)")
    assert level == 2
    assert eq.render() == "x*x2_b + y*x2_a + x1_a*x1_b + x1_a"
    assert compile_equation(P, "D{2}(x)")[1] == compile_equation(P, "D2(x)")[1]


def test_dangling_equation_reports_column(char5):
    with pytest.raises(ParseError) as err:
        compile_equation(char5, "D1(x) = ")
    assert err.value.col == 9
    assert "empty" in err.value.msg


def test_unknown_provenance_is_rejected(char5):
    Z = full_tower(char5, cap=1)
    with pytest.raises(ValueError):
        Z.set_flag("dominant", True, "guessed")
