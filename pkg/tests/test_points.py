import itertools

import pytest

from hilbchart import _kernels
from hilbchart.charts import AlgebraPresentation, ChartSpec, build_chart
from hilbchart.commutant import ScalarMatrixTuple, algebra_orbit
from hilbchart.errors import PreconditionError, ResourceError
from hilbchart.line import MultiplicativeSetSpec, line_chart
from hilbchart.points import compare, enumerate_semantic, enumerate_symbolic, point_matrices
from hilbchart.ring import GF, substitute
from hilbchart.verify import mutation_fixture, oracle_charts

BACKENDS = sorted(_kernels.BACKENDS)


def direct_points(chart, p):
    """Pure-Python reference: evaluate the generators at every assignment."""
    gens = [g.to_ring(chart.ring.with_field(GF(p))) for g in chart.generators()]
    out = []
    for pt in itertools.product(range(p), repeat=chart.ring.ngens):
        env = dict(zip(chart.ring.gens, pt))
        if all(substitute(g, env).is_zero() for g in gens):
            out.append(pt)
    return tuple(out)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("case", range(5))
def test_oracle_matrix(backend, case):
    name, chart, p = oracle_charts()[case]
    c = compare(chart, p, backend=backend)
    assert c.equal, name


@pytest.mark.parametrize("case", [0, 1, 3])
def test_symbolic_matches_reference(case):
    _, chart, p = oracle_charts()[case]
    assert enumerate_symbolic(chart, p).points == direct_points(chart, p)


def test_backends_agree_on_mutations():
    chart, p = mutation_fixture()
    for stage in ("commuting", "relations", "section"):
        mut = chart.without(stage)
        sets = {b: enumerate_symbolic(mut, p, backend=b).points for b in BACKENDS}
        assert len(set(sets.values())) == 1
    sems = {b: enumerate_semantic(chart, p, backend=b).points for b in BACKENDS}
    assert len(set(sems.values())) == 1


def test_counts():
    poly = AlgebraPresentation.polynomial_ring
    assert len(enumerate_symbolic(build_chart(poly(1), 2), 3)) == 9
    assert len(enumerate_symbolic(build_chart(poly(2), 2), 2)) == 16
    idem = build_chart(AlgebraPresentation.from_strings(["Y1"], ["Y1^2 - Y1"]), 1)
    assert enumerate_semantic(idem, 2).points == ((0,), (1,))
    zero = build_chart(AlgebraPresentation.from_strings(["Y1"], ["Y1"]), 2)
    assert len(enumerate_semantic(zero, 2)) == 0 and compare(zero, 2).equal


def test_punctured_line_count():
    chart = line_chart(MultiplicativeSetSpec.from_strings(["X"]), 2)
    assert len(enumerate_symbolic(chart, 3)) == 6


def test_points_are_lex_sorted():
    pts = enumerate_symbolic(build_chart(AlgebraPresentation.polynomial_ring(2), 2), 2).points
    assert list(pts) == sorted(pts)


def test_semantic_points_are_cyclic():
    for name, chart, p in oracle_charts():
        for pt in enumerate_semantic(chart, p):
            t = ScalarMatrixTuple.from_lists(point_matrices(chart, pt), GF(p))
            assert len(algebra_orbit(t)) == chart.n, name


def test_mutation_is_detected():
    chart, p = mutation_fixture()
    assert not compare(chart.without("commuting"), p).equal


def test_budget():
    chart = build_chart(AlgebraPresentation.polynomial_ring(2), 2)
    with pytest.raises(ResourceError):
        enumerate_symbolic(chart, 3, budget=100)
    with pytest.raises(ResourceError):
        enumerate_semantic(chart, 3, budget=100)


def test_field_mismatch(fixture_path):
    chart = ChartSpec.from_json(open(fixture_path("mutation-n2.json")).read()).build()
    with pytest.raises(PreconditionError):
        enumerate_symbolic(chart, 3)


def test_rational_coefficients_reduced_mod_p():
    pres = AlgebraPresentation.from_strings(["Y1"], ["Y1 - 1/2"])
    chart = build_chart(pres, 1)
    # 1/2 = 2 mod 3
    assert enumerate_semantic(chart, 3).points == ((2,),) == enumerate_symbolic(chart, 3).points


def test_numpy_fallback_flag(monkeypatch):
    monkeypatch.setenv("HILBCHART_DISABLE_NUMBA", "1")
    assert _kernels.resolve_backend() == "numpy"
    with pytest.raises(ValueError):
        _kernels.resolve_backend("cuda")
