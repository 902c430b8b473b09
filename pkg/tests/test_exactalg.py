"""Fields, polynomials, Groebner bases and exact linear algebra."""
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hasse_jets.exactalg import (
    QQ,
    ExtensionField,
    Ideal,
    ParseError,
    PolyRing,
    PrimeField,
    RationalFunctionField,
    eliminate,
    groebner_basis,
    kernel_basis,
    rank,
    rref,
    solve,
)

F7 = PrimeField(7)
F25 = ExtensionField(5, 2)
Qt = RationalFunctionField(QQ, ["t"])

small = st.integers(-20, 20)


# ---------------------------------------------------------------- fields

@given(small, small, small)
def test_prime_field_axioms(a, b, c):
    x, y, z = F7(a), F7(b), F7(c)
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if y:
        assert (x / y) * y == x


def test_extension_field_generator_relation():
    g = F25.gen()
    assert g**5 == F25(4) * g
    assert len(F25.elements()) == 25
    assert all(x**25 == x for x in F25.elements())


@given(st.integers(0, 24), st.integers(1, 24))
def test_extension_field_inverse(i, j):
    els = F25.elements()
    x, y = els[i], els[j]
    if y:
        assert (x / y) * y == x


@given(st.lists(small, min_size=3, max_size=3), st.lists(small, min_size=3, max_size=3))
def test_rational_function_field_arithmetic(u, v):
    t = Qt.gen("t")
    f = Qt(u[0]) + Qt(u[1]) * t + Qt(u[2]) * t * t
    g = Qt(v[0]) * t + Qt(v[1]) + Qt(v[2]) * t**3
    if g:
        assert (f / g) * g == f
    assert f * g - g * f == Qt.zero


def test_rational_field_render():
    assert QQ.render(Fraction(-2, 3)) == "-2/3"
    assert F7.render(F7(-1)) == "6"


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(4)


# ---------------------------------------------------------------- polynomials

R = PolyRing(QQ, ["x", "y", "z"])


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), st.integers(-9, 9), max_size=6))
def test_parse_render_round_trip(terms):
    p = R.from_terms(terms)
    assert R.parse(p.render()) == p


def test_display_order_last_variable_most_significant():
    S = PolyRing(QQ, ["x", "y"])
    assert S.parse("x^3 + y^2").render() == "y^2 + x^3"


def test_parse_error_position():
    with pytest.raises(ParseError) as err:
        R.parse("x + * y")
    assert err.value.col == 5


@given(st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4))
def test_polynomial_ring_laws(a, b):
    x, y = R.var("x"), R.var("y")
    f = a[0] * x * x + a[1] * y + a[2] * x * y + a[3]
    g = b[0] * y * y + b[1] * x + b[2] + b[3] * x * y * y
    assert f * g == g * f
    assert (f + g) * (f - g) == f * f - g * g
    assert (f * g).diff("x") == f.diff("x") * g + f * g.diff("x")


def test_substitute_and_evaluate():
    f = R.parse("x^2*y - 3*z")
    shifted = f.substitute({"x": R.parse("x + 1"), "y": R.var("y"), "z": R.var("z")})
    assert shifted.evaluate([0, 2, 1]) == f.evaluate([1, 2, 1])


# ---------------------------------------------------------------- Groebner vs brute-force linear algebra

def _monos(nvars, d):
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _macaulay_dim(ring, gens, d):
    """dim of the degree-d part of a homogeneous ideal, by spanning all m*g."""
    cols = {e: i for i, e in enumerate(_monos(ring.nvars, d))}
    rows = []
    for g in gens:
        dg = g.total_degree()
        if dg > d:
            continue
        for m in _monos(ring.nvars, d - dg):
            h = g.mul_term(m, ring.field.one)
            row = [ring.field.zero] * len(cols)
            for e, c in h.terms.items():
                row[cols[e]] = c
            rows.append(row)
    return rank(rows, ring.field, len(cols)) if rows else 0, rows, cols


def _gb_dim(ring, basis, d):
    lms = [g.lm() for g in basis]
    return sum(1 for e in _monos(ring.nvars, d) if any(all(a <= b for a, b in zip(lm, e)) for lm in lms))


def _random_homogeneous(rng, ring, deg):
    f = ring.zero
    for e in _monos(ring.nvars, deg):
        if rng.random() < 0.5:
            f = f + ring.monomial(e, rng.randint(-3, 3))
    return f


@pytest.mark.parametrize("seed", range(50))
def test_groebner_matches_macaulay_linear_algebra(seed):
    rng = random.Random(seed)
    nvars = rng.randint(1, 3)
    field = QQ if seed % 2 == 0 else PrimeField(7)
    ring = PolyRing(field, ["x", "y", "z"][:nvars])
    gens = [g for g in (_random_homogeneous(rng, ring, rng.randint(1, 4)) for _ in range(rng.randint(1, 3))) if g]
    if not gens:
        gens = [ring.var(0)]
    I = Ideal(ring, gens)
    basis = I.groebner()
    for d in range(1, 6):
        dim_la, rows, cols = _macaulay_dim(ring, gens, d)
        assert _gb_dim(ring, basis, d) == dim_la
        # membership of a random degree-d form agrees with solvability
        f = _random_homogeneous(rng, ring, d)
        target = [field.zero] * len(cols)
        for e, c in f.terms.items():
            target[cols[e]] = c
        in_span = bool(rows) and rank(rows + [target], field, len(cols)) == rank(rows, field, len(cols))
        assert I.contains(f) == (in_span or not f)


@pytest.mark.parametrize("seed", range(10))
def test_groebner_contains_constructed_members(seed):
    rng = random.Random(100 + seed)
    ring = PolyRing(QQ, ["x", "y", "z"])
    gens = [ring.from_terms({tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(1, 4) for _ in range(3)}) for _ in range(2)]
    f = sum((g * ring.from_terms({tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(-3, 3) for _ in range(2)}) for g in gens), ring.zero)
    assert Ideal(ring, gens).contains(f)


def test_reduced_basis_of_twisted_cubic():
    ring = PolyRing(QQ, ["x", "y", "z"])
    gb = groebner_basis([ring.parse("y - x^2"), ring.parse("z - x^3")], ring)
    I = Ideal(ring, gb)
    assert I.contains(ring.parse("x*z - y^2"))
    assert not I.contains(ring.parse("x"))


def test_elimination_of_parametrisation():
    ring = PolyRing(QQ, ["x", "y", "s"])
    I = Ideal(ring, [ring.parse("x - s^2"), ring.parse("y - s^3")])
    J = eliminate(I, ["s"])
    S = J.ring
    assert J.contains(S.parse("y^2 - x^3"))
    assert not J.contains(S.parse("y - x"))


# ---------------------------------------------------------------- linear algebra

@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=4))
def test_kernel_and_rank(rows):
    M = [[QQ(v) for v in r] for r in rows]
    K = kernel_basis(M, QQ, 4)
    assert len(K) + rank(M, QQ, 4) == 4
    for v in K:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in M)


@given(st.lists(st.lists(st.integers(0, 6), min_size=3, max_size=3), min_size=1, max_size=3), st.lists(st.integers(0, 6), min_size=3, max_size=3))
def test_solve_mod_p(rows, x):
    A = [[F7(v) for v in r] for r in rows]
    xs = [F7(v) for v in x]
    b = [sum((a * c for a, c in zip(r, xs)), F7.zero) for r in A]
    sol = solve(A, b, F7, 3)
    assert sol is not None
    assert [sum((a * c for a, c in zip(r, sol)), F7.zero) for r in A] == b


def test_rref_pivots():
    R_, piv = rref([[QQ(0), QQ(2), QQ(4)], [QQ(1), QQ(1), QQ(1)]], QQ, 3)
    assert piv == [0, 1]
    assert R_[1] == [0, 1, 2]
