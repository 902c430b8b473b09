"""Prolongation spaces, the nabla map and the structure maps between levels."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hasse_jets.exactalg import QQ, ExtensionField, Ideal, PolyRing, RationalFunctionField
from hasse_jets.hsring import Derivations, DividedPowers, Frobenius, HSField, ZeroOperators
from hasse_jets.hssystem import builtin
from hasse_jets.prolong import (
    AffineVariety,
    PointError,
    Prolongation,
    delta_hat,
    dominance_prolongation,
    fibre_check,
    nabla,
    pi_hat,
    prolongation,
)

Qt = RationalFunctionField(QQ, ["t"])
HS0 = HSField(QQ, builtin("HSD", 3), ZeroOperators())
CUSP = AffineVariety.from_strings(QQ, ["x", "y"], ["y^2 - x^3"])
PARABOLA = AffineVariety.from_strings(QQ, ["x", "y"], ["y - x^2"])


def _arc_ideal(X, n, P):
    """Coefficients of s^k in f(x + x1 s + ... + xn s^n), by direct expansion."""
    names = P.names(n)
    big = PolyRing(QQ, names + ("s",))
    s = big.var("s")
    subs = {}
    for j, name in enumerate(X.names):
        subs[name] = sum((big.var(P.var_name(j, k)) * s**k for k in range(n + 1)), big.zero)
    R = P.ring(n)
    gens = []
    for f in X.gens:
        g = f.substitute(subs, big)
        for k in range(n + 1):
            part = {e[:-1]: c for e, c in g.terms.items() if e[-1] == k}
            gens.append(R.from_terms(part))
    return Ideal(R, gens)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_zero_operators_give_arc_spaces(n):
    P = Prolongation(CUSP, HS0)
    I = P.ideal(n)
    J = _arc_ideal(CUSP, n, P)
    assert I.contains_all(J.gens) and J.contains_all(I.gens)


def test_cusp_first_prolongation_strings():
    lvl = prolongation(CUSP, HS0, 1)
    assert [g.render() for g in lvl.ideal.gens] == ["y^2 - x^3", "2*y*x1_b - 3*x^2*x1_a"]


def test_prefix_avoids_collisions():
    X = AffineVariety.from_strings(QQ, ["x1_a", "y"], [])
    P = Prolongation(X, HS0)
    assert P.var_name(0, 1) == "w1_a"


def test_nabla_divided_powers():
    t = Qt.gen("t")
    hs = HSField(Qt, builtin("HSD", 3), Derivations({"t": 1}))
    A1 = AffineVariety.from_strings(Qt, ["x"], [])
    assert nabla([t**2], A1, hs, 2) == (t**2, 2 * t, Qt.one)


def test_frobenius_prolongation():
    F25 = ExtensionField(5, 2)
    g = F25.gen()
    hs = HSField(F25, builtin("End", 2), Frobenius())
    X = AffineVariety.from_strings(F25, ["x"], ["x^2 - g"])
    gens = [p.render() for p in Prolongation(X, hs).ideal(1).gens]
    assert gens == ["x^2 + (4*g)", "x1_a^2 + g"]
    assert nabla([g], AffineVariety.from_strings(F25, ["x"], []), hs, 1) == (g, F25(4) * g)


def test_nabla_rejects_points_off_the_variety():
    with pytest.raises(PointError):
        nabla([1, 2], CUSP, HS0, 1)


values = st.tuples(st.integers(-5, 5), st.integers(1, 5), st.integers(-5, 5))


@given(values, values)
def test_section_and_iteration_laws(u, v):
    t = Qt.gen("t")
    hs = HSField(Qt, builtin("HSD", 3), DividedPowers("t"))
    P = Prolongation(AffineVariety.from_strings(Qt, ["x", "y"], []), hs)
    p = [Qt(u[0]) * t**2 + Qt(u[2]), Qt(1) / (Qt(v[1]) * t + Qt(v[0]) + Qt(7))]
    for m in range(4):
        assert pi_hat(P, P.nabla(p, m), m, 0) == tuple(p)
        for n in range(4 - m):
            lhs = delta_hat(P, P.nabla(p, m + n), m, n)
            rhs = P.inner(m).nabla(P.nabla(p, m), n, check=False)
            assert lhs == rhs


def test_delta_hat_level_one_matrix():
    hs = HSField(QQ, builtin("HSD", 2), ZeroOperators())
    P = Prolongation(AffineVariety.from_strings(QQ, ["x"], []), hs)
    assert delta_hat(P, (3, 5, 7), 1, 1) == (3, 5, 5, 14)


def test_fibre_check():
    assert fibre_check(PARABOLA, HS0, ["y"], [1], 2)
    assert fibre_check(AffineVariety.from_strings(QQ, ["x", "y"], ["x*y"]), HS0, ["x"], [1], 1)


def test_dominance_smooth_and_cusp():
    assert dominance_prolongation(PARABOLA, HS0, 2, 1)
    v = dominance_prolongation(CUSP, HS0, 2, 1)
    assert not v and v.kind == "not-dominant"
