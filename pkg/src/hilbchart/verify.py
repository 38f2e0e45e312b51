"""Named verification suites, shared by the ``verify`` subcommand and the acceptance tests.

Each suite returns a list of ``Check`` items; a suite passes when all of
its items do.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable

from .charts import (
    STAGES,
    AlgebraPresentation,
    adjoin_variable_chart,
    build_chart,
    check_adjunction,
    generic_chart_normal_form,
    generic_free_vars,
    kernel_membership,
)
from .commutant import ScalarMatrixTuple, algebra_orbit, check_multiplication_form, commutant_basis, companion_scalar
from .errors import PreconditionError
from .groebner import groebner_basis, is_free_on
from .iarrobino import (
    DegenerateFamilyParams,
    bound_at_degree,
    check_colength,
    degenerate_ideal,
    degree_and_slack,
    distinctness_check,
)
from .line import MultiplicativeSetSpec, X, line_chart, spectral_factorization_check
from .points import compare, enumerate_semantic, enumerate_symbolic, point_matrices
from .ring import AUX, GF, QQ, PolyRing, U


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_document(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


GENERIC_CASES = ((1, 2), (1, 3), (2, 2), (3, 2))


def expected_family_strings(m: int, n: int) -> list[str]:
    """The family generators written out by hand from their index pattern."""
    head = [f"Y1^{n}"] + [f"U[1][{k}][{n}]*Y1^{k - 1}" for k in range(1, n + 1)]
    out = [" - ".join(head)]
    for s in range(2, m + 1):
        out.append(" - ".join([f"Y{s}"] + [f"U[{s}][{k}][1]*Y1^{k - 1}" for k in range(1, n + 1)]))
    return out


def suite_generic_shape() -> list[Check]:
    out = []
    for m, n in GENERIC_CASES:
        chart = build_chart(AlgebraPresentation.polynomial_ring(m), n)
        free = generic_free_vars(m, n)
        ok_free = is_free_on(chart.generators(), free, ring=chart.ring) and len(free) == m * n
        nf = generic_chart_normal_form(chart)
        fam = nf.family_ring
        expected = [fam.parse(t) for t in expected_family_strings(m, n)]
        ok_pattern = list(nf.family_generators) == expected
        ok_kernel = all(kernel_membership(chart, g).in_kernel for g in nf.family_generators)
        detail = f"free on {', '.join(map(str, free))}; family: {'; '.join(map(str, nf.family_generators))}"
        out.append(Check(f"generic chart m={m} n={n}", ok_free and ok_pattern and ok_kernel, detail))
    return out


def oracle_charts() -> list[tuple[str, object, int]]:
    poly = AlgebraPresentation.polynomial_ring
    return [
        ("m=1 n=2 p=2", build_chart(poly(1), 2), 2),
        ("m=1 n=2 p=3", build_chart(poly(1), 2), 3),
        ("m=2 n=2 p=2", build_chart(poly(2), 2), 2),
        ("Y^2-Y n=1 p=2", build_chart(AlgebraPresentation.from_strings(["Y1"], ["Y1^2 - Y1"]), 1), 2),
        ("S={X} n=2 p=3", line_chart(MultiplicativeSetSpec.from_strings(["X"]), 2), 3),
    ]


def suite_oracle() -> list[Check]:
    out = []
    for name, chart, p in oracle_charts():
        c = compare(chart, p)
        out.append(Check(f"oracle {name}", c.equal, f"symbolic {c.symbolic_count}, semantic {c.semantic_count}"))
    return out


def monic_quadratics_nonzero_constant(p: int) -> int:
    """Direct count of ``T^2 + b T + c`` over F_p with ``c != 0``."""
    return sum(1 for b in range(p) for c in range(p) if c % p)


def suite_counts() -> list[Check]:
    poly = AlgebraPresentation.polynomial_ring
    out = []
    for m, n, p in ((1, 2, 3), (2, 2, 2)):
        k = len(enumerate_symbolic(build_chart(poly(m), n), p))
        out.append(Check(f"count m={m} n={n} p={p}", k == p ** (m * n), f"{k} points, expected {p ** (m * n)}"))
    k = len(enumerate_symbolic(line_chart(MultiplicativeSetSpec.from_strings(["X"]), 2), 3))
    direct = monic_quadratics_nonzero_constant(3)
    out.append(Check("count S={X} n=2 p=3", k == 6 == direct, f"{k} points, direct count {direct}"))
    return out


def suite_commutant() -> list[Check]:
    out = []
    for n in (2, 3, 4):
        t = ScalarMatrixTuple.from_lists([companion_scalar(list(range(1, n + 1)))], QQ)
        dim = len(commutant_basis(t))
        ok = dim == n and check_multiplication_form(t)
        out.append(Check(f"commutant companion n={n}", ok, f"dimension {dim}"))
    ident = ScalarMatrixTuple.from_lists([[[1, 0], [0, 1]]], QQ)
    try:
        check_multiplication_form(ident)
        out.append(Check("commutant identity rejected", False, "no precondition error"))
    except PreconditionError as e:
        out.append(Check("commutant identity rejected", True, str(e)))
    return out


def generic_polynomial(d: int, field=QQ):
    coeffs = [AUX(f"b{k}") for k in range(d + 1)]
    ring = PolyRing([X] + coeffs, field)
    x = ring.var(X)
    return sum((ring.var(b) * x ** k for k, b in enumerate(coeffs)), ring.zero())


def suite_spectral() -> list[Check]:
    out = []
    for d in range(4):
        s = generic_polynomial(d)
        for n in (1, 2, 3):
            out.append(Check(f"spectral deg={d} n={n}", spectral_factorization_check(s, n), str(s)))
    return out


def suite_adjunction() -> list[Check]:
    chart = build_chart(AlgebraPresentation.polynomial_ring(1), 2)
    keep = [U(1, 1, 2), U(1, 2, 2)]
    new = adjoin_variable_chart(chart)
    free4 = keep + [U(2, 1, 1), U(2, 2, 1)]
    ok_free = is_free_on(new.generators(), free4, ring=new.ring)
    ok_same = check_adjunction(chart, keep)
    return [Check("adjunction m=1->2 n=2", ok_free and ok_same, f"free on {', '.join(map(str, free4))}")]


def suite_i1_in_i3() -> list[Check]:
    chart = build_chart(AlgebraPresentation.polynomial_ring(2), 2)
    gens3 = [g for g in chart.gens_section if g]
    gb = groebner_basis(gens3, ring=chart.ring)
    out = []
    for k, g in enumerate(chart.gens_commuting):
        r = gb.reduce(g)
        out.append(Check(f"I1 in I3 generator {k + 1}", r.is_zero(), f"normal form {r}"))
    return out


IARROBINO_DISTINCT_EXPECTED = 8


def suite_iarrobino() -> list[Check]:
    out = []
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 7):
        for n in range(1, 10 ** 4 + 1):
            d, s = degree_and_slack(n, m)
            # uniqueness: the neighbouring degrees must both violate the inequality
            def holds(dd):
                return dd >= 0 and math.comb(dd + m - 1, m) < n <= math.comb(dd + m, m)
            if not holds(d) or holds(d - 1) or holds(d + 1) or s != math.comb(d + m, m) - n:
                bad.append((n, m))
    out.append(Check("degree_and_slack unique n<=10^4 m<=6", not bad, f"{len(bad)} violations"))

    lb = bound_at_degree(4, 3)
    ok = (lb.B, lb.s, lb.n, lb.bound) == (15, 7, 28, 56)
    out.append(Check("m=3 d=4 bound", ok, f"B={lb.B} s={lb.s} n={lb.n} bound={lb.bound}"))

    fails = []
    for field in (GF(2), QQ):
        for m, nmax in ((2, 6), (3, 10)):
            for n in range(1, nmax + 1):
                for params in _fixture_params(n, m, field):
                    if not check_colength(degenerate_ideal(params), n, m):
                        fails.append((n, m, field.name))
    out.append(Check("degenerate families have colength n", not fails, f"{len(fails)} failures"))

    F2 = GF(2)
    params = all_params(5, 2, F2)
    distinct = all(distinctness_check(a, b) for a, b in itertools.combinations(params, 2))
    s, cols = params[0].shape
    out.append(Check(
        "m=2 n=5 over F_2: 8 pairwise distinct ideals",
        distinct and len(params) == IARROBINO_DISTINCT_EXPECTED,
        f"a has shape {s}x{cols}, so there are {len(params)} matrices; pairwise distinct: {distinct}",
    ))
    out.append(Check("iarrobino runtime < 30 s", time.perf_counter() - t0 < 30, f"{time.perf_counter() - t0:.2f} s"))
    return out


def all_params(n: int, m: int, field) -> list[DegenerateFamilyParams]:
    """Every admissible ``a`` over a prime field."""
    d, s = degree_and_slack(n, m)
    cols = DegenerateFamilyParams.zero(n, m, field).shape[1]
    out = []
    for flat in itertools.product(range(field.p), repeat=s * cols):
        out.append(DegenerateFamilyParams(n, m, tuple(tuple(flat[r * cols:(r + 1) * cols]) for r in range(s)), field))
    return out


def _fixture_params(n: int, m: int, field) -> list[DegenerateFamilyParams]:
    """Zero matrix plus one fixed pseudo-random matrix (deterministic LCG)."""
    zero = DegenerateFamilyParams.zero(n, m, field)
    s, cols = zero.shape
    state = 12345 + 31 * n + m
    rows = []
    for _ in range(s):
        row = []
        for _ in range(cols):
            state = (1103515245 * state + 12345) % 2 ** 31
            row.append(state % 5 - 2)
        rows.append(tuple(row))
    return [zero, DegenerateFamilyParams(n, m, tuple(rows), field)]


def mutation_fixture():
    """``A[Y1, Y2]/(Y2^2 - Y2)`` at ``n = 2`` over F_2: each generator class cuts points."""
    return build_chart(AlgebraPresentation.from_strings(["Y1", "Y2"], ["Y2^2 - Y2"], GF(2)), 2), 2


def suite_mutation() -> list[Check]:
    chart, p = mutation_fixture()
    full = len(enumerate_symbolic(chart, p))
    out = []
    for stage in STAGES:
        k = len(enumerate_symbolic(chart.without(stage), p))
        out.append(Check(f"mutation drop {stage}", k != full, f"full {full}, without {stage} {k}"))
    c = compare(chart.without("section"), p)
    out.append(Check("mutated chart fails oracle", not c.equal, f"symbolic {c.symbolic_count}, semantic {c.semantic_count}"))
    return out


def suite_cyclic() -> list[Check]:
    out = []
    for name, chart, p in oracle_charts():
        pts = enumerate_semantic(chart, p)
        ok = all(
            len(algebra_orbit(ScalarMatrixTuple.from_lists(point_matrices(chart, pt), GF(p)))) == chart.n
            for pt in pts
        )
        out.append(Check(f"cyclic e1 {name}", ok, f"{len(pts)} points"))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "generic-shape": suite_generic_shape,
    "oracle": suite_oracle,
    "counts": suite_counts,
    "commutant": suite_commutant,
    "spectral": suite_spectral,
    "adjunction": suite_adjunction,
    "i1-in-i3": suite_i1_in_i3,
    "iarrobino": suite_iarrobino,
    "mutation": suite_mutation,
    "cyclic": suite_cyclic,
}


# alternative suite names accepted on the command line
ALIASES = {"prop7-3": "generic-shape"}


def run_suite(name: str) -> list[Check]:
    name = ALIASES.get(name, name)
    if name == "all":
        return [c for key in SUITES for c in SUITES[key]()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(['all', *SUITES])}")
    return SUITES[name]()
