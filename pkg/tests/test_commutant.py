import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbchart.commutant import (
    ScalarMatrixTuple,
    algebra_orbit,
    algebra_span,
    check_multiplication_form,
    commutant_basis,
    companion_scalar,
    nullspace,
)
from hilbchart.errors import PreconditionError
from hilbchart.ring import GF, QQ


@pytest.mark.parametrize("n", [2, 3, 4])
def test_companion_commutant(n):
    t = ScalarMatrixTuple.from_lists([companion_scalar(list(range(1, n + 1)))])
    assert len(algebra_orbit(t)) == n
    assert len(commutant_basis(t)) == n
    assert check_multiplication_form(t)


def test_identity_is_not_cyclic():
    t = ScalarMatrixTuple.from_lists([[[1, 0], [0, 1]]])
    with pytest.raises(PreconditionError):
        check_multiplication_form(t)


def test_diagonal_commutant():
    t = ScalarMatrixTuple.from_lists([[[1, 0], [0, 2]]])
    assert len(commutant_basis(t)) == 2
    # e1 is an eigenvector, so not cyclic
    assert len(algebra_orbit(t)) == 1


def test_two_commuting_matrices():
    A = companion_scalar([0, 0, 0])  # nilpotent shift
    A2 = tuple(tuple(sum(A[i][k] * A[k][j] for k in range(3)) for j in range(3)) for i in range(3))
    t = ScalarMatrixTuple.from_lists([A, A2])
    assert check_multiplication_form(t)
    assert len(algebra_span(t)) == 3


def test_non_cyclic_pair_in_dimension_three():
    # x^2 = y^2 = xy = 0 acting on span(1, x, y): e1 is cyclic for the pair
    X = ((0, 0, 0), (1, 0, 0), (0, 0, 0))
    Ym = ((0, 0, 0), (0, 0, 0), (1, 0, 0))
    t = ScalarMatrixTuple.from_lists([X, Ym])
    assert len(algebra_orbit(t)) == 3
    assert check_multiplication_form(t)
    assert len(algebra_orbit(ScalarMatrixTuple.from_lists([X]))) == 2


def test_nullspace_over_fp():
    F = GF(3)
    basis = nullspace(F, [[1, 1, 1]], 3)
    assert len(basis) == 2
    for v in basis:
        assert sum(v) % 3 == 0


coeffs = st.lists(st.integers(-4, 4), min_size=2, max_size=4)


@given(coeffs)
def test_companion_commutes_with_its_commutant(cs):
    for field in (QQ, GF(5)):
        t = ScalarMatrixTuple.from_lists([companion_scalar(cs, field)], field)
        C = t.matrices()[0]
        n = t.n
        comm = commutant_basis(t)
        assert len(comm) == n
        for V in comm:
            for i in range(n):
                for j in range(n):
                    lhs = sum(field.mul(V[i][k], C[k][j]) for k in range(n))
                    rhs = sum(field.mul(C[i][k], V[k][j]) for k in range(n))
                    assert field.convert(lhs) == field.convert(rhs)
        assert check_multiplication_form(t)
