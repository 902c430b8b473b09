"""Built-in Hasse-Schmidt systems, iteration matrices and the P_l identities."""
import random
from math import comb, factorial

import pytest

from hasse_jets.hssystem import (
    HSSystem,
    beta_basis_change,
    builtin,
    check_iterativity,
    check_p_identities,
    operator_index,
    p_polynomial,
)


@pytest.mark.parametrize(
    "kind,cap,kw",
    [
        ("Trivial", 3, {}),
        ("HSD", 4, {}),
        ("HSD", 3, {"e": 2}),
        ("End", 3, {}),
        ("End", 2, {"e": 2}),
        ("End", 2, {"auto": True}),
        ("DiffDiff", 3, {}),
        ("HigherD", 3, {}),
        ("HigherD", 2, {"e": 2}),
    ],
)
def test_builtins_are_iterative(kind, cap, kw):
    assert check_iterativity(builtin(kind, cap, **kw))


def test_ranks():
    assert builtin("HSD", 3).ranks() == [1, 2, 3, 4]
    assert builtin("HSD", 3, e=2).ranks() == [1, 3, 6, 10]
    assert builtin("End", 2).ranks() == [1, 2, 3]
    assert builtin("DiffDiff", 2).ranks() == [1, 3, 6]
    assert builtin("Trivial", 3).ranks() == [1, 1, 1, 1]


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)])
def test_hsd_delta_is_binomial_coproduct(m, n):
    # eta^k goes to (eta (x) 1 + 1 (x) eta)^k, truncated to D_m (x) D_n
    s = builtin("HSD", 4)
    M = s.delta(m, n).matrix
    for k in range(m + n + 1):
        for i in range(m + 1):
            for j in range(n + 1):
                want = comb(k, i) if i + j == k else 0
                assert M[i * (n + 1) + j][k] == s.A.const(want)


def test_hsd_matrix_identity_level_one():
    M = builtin("HSD", 2).delta(1, 1).matrix
    assert [[str(c) for c in row] for row in M] == [["1", "0", "0"], ["0", "1", "0"], ["0", "1", "0"], ["0", "0", "2"]]


def test_corrupted_delta_gives_witness():
    s = builtin("HSD", 2)
    M = [list(r) for r in s.delta(1, 1).matrix]
    M[3][2] = s.A.one
    v = check_iterativity(s.with_delta(1, 1, M))
    assert not v
    assert v.kind == "multiplicativity"
    assert v.detail["pair"] == ["eta", "eta"]


def _falling(x, w, m):
    out = 1
    for i in range(m):
        out *= x - i * w
    return out


def test_p_identities_hold():
    assert check_p_identities(8)


@pytest.mark.parametrize("seed", range(20))
def test_p_identities_numerically(seed):
    rng = random.Random(seed)
    x, y, w = (rng.randint(-30, 30) for _ in range(3))
    for l in range(9):
        assert _falling(x + y, w, l) == sum(comb(l, m) * _falling(x, w, m) * _falling(y, w, l - m) for m in range(l + 1))
    for n in range(6):
        for m in range(6):
            rhs = sum(_falling(x, w, m + n - i) * w**i * factorial(i) * comb(n, i) * comb(m, i) for i in range(min(m, n) + 1))
            assert _falling(x, w, n) * _falling(x, w, m) == rhs


def test_p_polynomial_small():
    assert p_polynomial(0).render() == "1"
    assert p_polynomial(2).evaluate([5, 0, 1]) == 20


def test_beta_basis_unitriangular_inverse_pair():
    h = builtin("HigherD", 2)
    B = beta_basis_change(h)
    C = beta_basis_change(h, direction="monomial_to_beta")
    n = len(B)
    for i in range(n):
        for j in range(n):
            s = sum((B[i][k] * C[k][j] for k in range(n)), h.A.zero)
            assert s == (h.A.one if i == j else h.A.zero)
        assert B[i][i] == h.A.one


def test_dump_load_round_trip():
    s = builtin("HSD", 3, e=2)
    t = HSSystem.load(s.dumps())
    assert t.dumps() == s.dumps()
    assert check_iterativity(t)


def test_operator_index():
    assert operator_index(builtin("HSD", 3), 1, 2) == (2, 2)
    assert operator_index(builtin("DiffDiff", 3), 1, 2)[0] == 2
    with pytest.raises(ValueError):
        operator_index(builtin("Trivial", 2), 1, 1)


def test_invalid_builtin():
    with pytest.raises(ValueError):
        builtin("Nope", 2)
    with pytest.raises(ValueError):
        builtin("HSD", 0)
