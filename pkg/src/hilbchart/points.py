"""F_p points of a chart, enumerated two independent ways.

``enumerate_symbolic`` evaluates the chart's generator polynomials.
``enumerate_semantic`` fills in matrices and checks the defining conditions
(commutation, relations, section) by matrix arithmetic, without looking at
the generators at all.  Agreement of the two is the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels
from .charts import ChartIdeal
from .errors import PreconditionError, ResourceError
from .ring import GF, PrimeField, Polynomial, RationalField

DEFAULT_BUDGET = 2 ** 20


@dataclass(frozen=True)
class PointSet:
    """Points as value tuples in chart-variable order, sorted lexicographically."""

    variables: tuple
    points: tuple
    p: int

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_set(self) -> frozenset:
        return frozenset(self.points)

    def assignments(self) -> list[dict]:
        return [dict(zip(self.variables, pt)) for pt in self.points]

    def to_strings(self) -> list[str]:
        """One ``var=value, ...`` line per point."""
        return [", ".join(f"{v}={x}" for v, x in zip(self.variables, pt)) for pt in self.points]


@dataclass(frozen=True)
class Comparison:
    equal: bool
    count: int
    symbolic_count: int
    semantic_count: int

    def to_document(self) -> dict:
        return {
            "equal": self.equal,
            "count": self.count,
            "symbolic_count": self.symbolic_count,
            "semantic_count": self.semantic_count,
        }


def _residue(c, p: int) -> int:
    return GF(p).convert(c)


def _check_field(field, p: int):
    if isinstance(field, PrimeField) and field.p != p:
        raise PreconditionError(f"chart is over F_{field.p}, cannot count points over F_{p}")
    if not isinstance(field, (PrimeField, RationalField)):
        raise PreconditionError(f"unsupported field {field!r}")


def compile_polys(polys: Sequence[Polynomial], p: int, nv: int) -> tuple:
    """Pack polynomials into ``(exps, coefs, offsets)`` arrays with coefficients mod ``p``."""
    exps, coefs, offsets = [], [], [0]
    for f in polys:
        for e, c in f.terms():
            r = _residue(c, p)
            if r:
                exps.append(e)
                coefs.append(r)
        offsets.append(len(coefs))
    exps_arr = np.array(exps, dtype=np.int64).reshape(len(exps), nv)
    return exps_arr, np.array(coefs, dtype=np.int64), np.array(offsets, dtype=np.int64)


def _total(p: int, nv: int, budget: int) -> int:
    total = p ** nv
    if total > budget:
        raise ResourceError(f"{p}^{nv} = {total} assignments exceed the budget {budget}")
    return total


def _collect(mask: np.ndarray, p: int, nv: int) -> tuple:
    out = []
    for k in np.nonzero(mask)[0].tolist():
        digs = []
        for _ in range(nv):
            digs.append(k % p)
            k //= p
        out.append(tuple(reversed(digs)))
    return tuple(out)


def _kernel_pair(backend: str | None):
    return _kernels.BACKENDS[_kernels.resolve_backend(backend)]


def enumerate_symbolic(chart: ChartIdeal, p: int, budget: int = DEFAULT_BUDGET, backend: str | None = None) -> PointSet:
    """Assignments of the chart variables where every generator vanishes mod ``p``."""
    GF(p)
    _check_field(chart.ring.field, p)
    nv = chart.ring.ngens
    total = _total(p, nv, budget)
    exps, coefs, offsets = compile_polys(chart.generators(), p, nv)
    max_e = int(exps.max()) if exps.size else 0
    powtab = _kernels.power_table(p, max_e)
    sym, _ = _kernel_pair(backend)
    mask = sym(p, nv, 0, total, exps, coefs, offsets, powtab)
    return PointSet(tuple(chart.ring.gens), _collect(mask, p, nv), p)


def enumerate_semantic(chart: ChartIdeal, p: int, budget: int = DEFAULT_BUDGET, backend: str | None = None) -> PointSet:
    """Assignments whose matrices commute, satisfy every relation, and map ``e_1`` to ``e_k`` under ``f_k``."""
    GF(p)
    pres = chart.presentation
    _check_field(pres.field, p)
    m, n = pres.m, chart.n
    nv = m * n * n
    total = _total(p, nv, budget)
    rel = compile_polys(pres.relations, p, m)
    beta = compile_polys(chart.beta.entries, p, m)
    _, sem = _kernel_pair(backend)
    mask = sem(p, m, n, 0, total, *rel, *beta)
    return PointSet(tuple(chart.ring.gens), _collect(mask, p, nv), p)


def compare(chart: ChartIdeal, p: int, budget: int = DEFAULT_BUDGET, backend: str | None = None) -> Comparison:
    sym = enumerate_symbolic(chart, p, budget, backend)
    sem = enumerate_semantic(chart, p, budget, backend)
    equal = sym.points == sem.points
    return Comparison(equal, len(sym), len(sym), len(sem))


def point_matrices(chart: ChartIdeal, point: Sequence[int]) -> dict:
    """Scalar matrices ``{s: rows}`` at a point (chart-variable order)."""
    n = chart.n
    out = {}
    for s in range(1, chart.m + 1):
        base = (s - 1) * n * n
        out[s] = tuple(tuple(point[base + i * n + j] for j in range(n)) for i in range(n))
    return out
