"""Finite free algebras over the parameter ring."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hasse_jets.exactalg import QQ, PrimeField
from hasse_jets.ffalg import (
    AxiomViolation,
    FFAlgebraMorphism,
    FFAlgebraScheme,
    compose_schemes,
    invert_element,
    morphism_check,
    truncated_quotient_scheme,
)


def dual_numbers():
    return truncated_quotient_scheme(["eta"], [[0, 0, 1]])


def test_truncated_quotient_basis_and_table():
    D = truncated_quotient_scheme(["eta"], [[0, 0, 0, 1]])
    assert D.labels == ["1", "eta", "eta^2"]
    assert D.mul_vec(D.basis_vec(1), D.basis_vec(1)) == D.basis_vec(2)
    assert D.mul_vec(D.basis_vec(1), D.basis_vec(2)) == [D.A.zero] * 3


def test_two_variable_truncation_by_total_degree():
    D = truncated_quotient_scheme(["a", "b"], [[0, 0, 1], [0, 0, 1]], cap=1)
    assert D.rank == 3


def test_non_associative_table_is_rejected():
    # e1 * e1 = e1 + e2 but e2 behaves inconsistently
    table = [
        [{0: 1}, {1: 1}, {2: 1}],
        [{1: 1}, {1: 1, 2: 1}, {0: 1}],
        [{2: 1}, {0: 1}, {2: 1}],
    ]
    with pytest.raises(AxiomViolation):
        FFAlgebraScheme(3, table)


def test_non_commutative_table_is_rejected():
    table = [[{0: 1}, {1: 1}], [{1: 1}, {0: 1}]]
    table[0][1] = {1: 1}
    table[1][0] = {0: 1}
    with pytest.raises(AxiomViolation) as err:
        FFAlgebraScheme(2, table)
    assert err.value.axiom == "commutativity"


@given(st.integers(1, 20), st.integers(-20, 20))
def test_dual_number_inverse(a0, a1):
    alg = dual_numbers().over(QQ)
    x = alg.element((QQ(a0), QQ(a1)))
    y = invert_element(x)
    assert (x * y).is_one()


def test_split_algebra_inverse_needs_all_coordinates():
    D = FFAlgebraScheme(2, [[{0: 1}, {}], [{}, {1: 1}]], unit=[1, 1], meta={"kind": "split"})
    alg = D.over(PrimeField(5))
    with pytest.raises(ZeroDivisionError):
        invert_element(alg.element((PrimeField(5)(1), PrimeField(5)(0))))


def test_projection_morphism_checks():
    D2 = truncated_quotient_scheme(["eta"], [[0, 0, 0, 1]])
    D1 = dual_numbers()
    pi = FFAlgebraMorphism(D2, D1, [[1, 0, 0], [0, 1, 0]], "pi")
    assert morphism_check(pi, surjective=True)
    bad = FFAlgebraMorphism(D2, D1, [[1, 0, 0], [0, 1, 1]], "bad")
    assert not morphism_check(bad)


def test_tensor_product_rank():
    D1 = dual_numbers()
    T = compose_schemes(D1, D1)
    assert T.rank == 4
    assert T.mul_vec(T.basis_vec(1), T.basis_vec(2)) == T.basis_vec(3)
