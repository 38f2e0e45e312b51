import pytest

from hilbchart.errors import PreconditionError
from hilbchart.groebner import groebner_basis, solved_form
from hilbchart.line import (
    MultiplicativeSetSpec,
    X,
    line_chart,
    localized_presentation,
    norm_at_companion,
    product_over_roots,
    representing_ring_description,
    spectral_factorization_check,
    x_ring,
)
from hilbchart.matrixalg import determinant, evaluate_poly_at_matrices
from hilbchart.ring import AUX, QQ, PolyRing, U, Y
from hilbchart.verify import generic_polynomial


def test_presentation():
    pres = localized_presentation(MultiplicativeSetSpec.from_strings(["X", "X - 1"]))
    assert [str(r) for r in pres.relations] == ["Y1*Y2 - 1", "Y1*Y3 - Y3 - 1"]
    assert localized_presentation(MultiplicativeSetSpec.from_strings(["1"])).relations == ()


def test_spec_validation():
    with pytest.raises(PreconditionError):
        MultiplicativeSetSpec.from_strings(["0"])
    with pytest.raises(PreconditionError):
        MultiplicativeSetSpec.from_strings(["X", "X"])
    ring = PolyRing([X, Y(1)])
    with pytest.raises(PreconditionError):
        MultiplicativeSetSpec((ring.parse("Y1"),))


def test_norm_examples():
    x = x_ring()
    assert str(norm_at_companion(x.parse("X"), 2)) == "-U[1][1][2]"
    xa = PolyRing([X, AUX("a")])
    assert norm_at_companion(xa.parse("X - a"), 2) == norm_at_companion(xa.parse("X - a"), 2).ring.parse(
        "a^2 - a*U[1][2][2] - U[1][1][2]"
    )


@pytest.mark.parametrize("d", [0, 1, 2, 3])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_spectral_factorization(d, n):
    assert spectral_factorization_check(generic_polynomial(d), n)


def test_spectral_cap():
    with pytest.raises(PreconditionError):
        spectral_factorization_check(x_ring().parse("X"), 5)


def test_representing_ring():
    d = representing_ring_description(MultiplicativeSetSpec.from_strings(["X"]), 2)
    assert d.to_document()["inverted"] == ["c2"]
    d = representing_ring_description(MultiplicativeSetSpec.from_strings(["X - 1"]), 2)
    assert d.to_document()["inverted"] == ["-c1 + c2 + 1"]
    d = representing_ring_description(MultiplicativeSetSpec.from_strings([]), 3)
    assert d.to_document() == {"n": 3, "free_variables": ["c1", "c2", "c3"], "inverted": []}


def test_product_over_roots_of_x_plus_one():
    # prod (Z_i + 1) over 3 roots = 1 + e1 + e2 + e3 with c_i = e_i
    p = product_over_roots(x_ring().parse("X + 1"), 3)
    assert p == p.ring.parse("c1 + c2 + c3 + 1")


def test_punctured_line_chart_reduces_to_localized_companion():
    chart = line_chart(MultiplicativeSetSpec.from_strings(["X"]), 2)
    keep = [U(1, 1, 2), U(1, 2, 2), U(2, 2, 1)]
    sf = solved_form(chart.generators(), keep, ring=chart.ring)
    assert not sf.unsolved
    assert [str(r) for r in sf.residual] == ["U[1][1][2]*U[2][2][1] - 1"]


def test_inverted_determinant_is_a_unit_on_the_chart():
    spec = MultiplicativeSetSpec.from_strings(["X"])
    chart = line_chart(spec, 2)
    gb = groebner_basis(chart.generators(), ring=chart.ring)
    mats = chart.matrices_by_var()
    s = chart.presentation.ring.parse("Y1")
    d1 = determinant(evaluate_poly_at_matrices(s, mats))
    d2 = determinant(mats[Y(2)])
    assert gb.reduce(d1 * d2 - 1).is_zero()
