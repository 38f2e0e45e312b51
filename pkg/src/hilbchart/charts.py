"""Affine charts of the Hilbert scheme of points as ideals in matrix entries.

For ``R = A[Y_s]/(relations)``, a point count ``n`` and a section
``beta = (f_1 = 1, f_2, ..., f_n)``, the chart ring is ``A[U]`` modulo

* the entries of all commutators ``[M_s, M_t]`` of the generic matrices,
* the entries of ``f(M)`` for each relation ``f``,
* the first-column conditions ``f_k(M) e_1 = e_k``.

Generators are kept in three stages (commuting, relations, section); the
partial quotients correspond to commuting matrices, to module structures on
``A^n`` over ``R``, and to the ``beta``-chart itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, ResourceError
from .groebner import DEFAULT_DEGREE_CAP, groebner_basis, is_free_on, solved_form
from .matrixalg import PolyMatrix, commutator, evaluate_poly_at_matrices, generic_matrix
from .ring import QQ, Polynomial, PolyRing, U, Var, Y, as_var, field_from_tag

STAGES = ("commuting", "relations", "section")


@dataclass(frozen=True)
class AlgebraPresentation:
    """``A[Y_s : s in S] / (relations)``; ``ring.gens`` is the ordered index set, first one distinguished."""

    ring: PolyRing
    relations: tuple = ()

    def __post_init__(self):
        rels = tuple(self.ring(r) if isinstance(r, str) else r for r in self.relations)
        for r in rels:
            if r.ring != self.ring:
                raise PreconditionError(f"relation {r} uses variables outside the presentation")
        object.__setattr__(self, "relations", rels)

    @classmethod
    def polynomial_ring(cls, m: int, field=QQ) -> "AlgebraPresentation":
        return cls(PolyRing([Y(s) for s in range(1, m + 1)], field))

    @classmethod
    def from_strings(cls, variables: Sequence[str], relations: Sequence[str] = (), field=QQ) -> "AlgebraPresentation":
        ring = PolyRing(variables, field)
        return cls(ring, tuple(ring.parse(r) for r in relations))

    @property
    def variables(self) -> tuple:
        return self.ring.gens

    @property
    def m(self) -> int:
        return self.ring.ngens

    @property
    def field(self):
        return self.ring.field


@dataclass(frozen=True)
class SectionBeta:
    """Images ``f_k = beta(T_k)`` of the basis of ``A^n``; ``f_1`` must be 1."""

    entries: tuple

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise PreconditionError("beta needs at least one entry")
        if entries[0] != entries[0].ring.one():
            raise PreconditionError("beta must send the distinguished basis vector to 1")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        return len(self.entries)

    @classmethod
    def powers(cls, ring: PolyRing, n: int, var=None) -> "SectionBeta":
        """``T_i -> var^(i-1)`` (the first ring variable by default)."""
        y = ring.var(var if var is not None else ring.gens[0])
        return cls(tuple(y ** i for i in range(n)))

    @classmethod
    def from_strings(cls, ring: PolyRing, entries: Sequence[str]) -> "SectionBeta":
        return cls(tuple(ring.parse(e) for e in entries))


def chart_ring(presentation: AlgebraPresentation, n: int, order: str = "grevlex") -> PolyRing:
    m = presentation.m
    gens = [U(s, i, j) for s in range(1, m + 1) for i in range(1, n + 1) for j in range(1, n + 1)]
    return PolyRing(gens, presentation.field, order)


def _mats_by_var(ring: PolyRing, mats: Mapping) -> dict:
    out = {}
    for k, M in mats.items():
        out[ring.gens[k - 1] if isinstance(k, int) else as_var(k)] = M
    return out


def build_commuting_ideal(mats: Mapping[int, PolyMatrix]) -> list[Polynomial]:
    """Entries (row-major) of ``[M_s, M_t]`` for ``s < t``."""
    if not mats:
        raise PreconditionError("need at least one matrix")
    keys = sorted(mats)
    out = []
    for a, s in enumerate(keys):
        for t in keys[a + 1:]:
            out.extend(commutator(mats[s], mats[t]).entries())
    return out


def build_relation_ideal(relations: Sequence[Polynomial], mats: Mapping) -> list[Polynomial]:
    """All ``n^2`` entries of ``f(M)`` for each relation, in relation order."""
    out = []
    for f in relations:
        out.extend(evaluate_poly_at_matrices(f, _mats_by_var(f.ring, mats)).entries())
    return out


def build_section_ideal(beta: SectionBeta, mats: Mapping) -> list[Polynomial]:
    """For each ``k``: first column of ``f_k(M)`` minus ``e_k``, componentwise."""
    n = next(iter(mats.values())).n
    if beta.n != n:
        raise PreconditionError(f"beta has {beta.n} entries but matrices are {n}x{n}")
    out = []
    for k, f in enumerate(beta.entries):
        col = evaluate_poly_at_matrices(f, _mats_by_var(f.ring, mats)).first_column()
        for i, x in enumerate(col):
            out.append(x - 1 if i == k else x)
    return out


@dataclass(frozen=True)
class ChartIdeal:
    n: int
    presentation: AlgebraPresentation
    beta: SectionBeta
    ring: PolyRing
    universal_matrices: dict
    gens_commuting: tuple
    gens_relations: tuple
    gens_section: tuple
    dropped: tuple = field(default=(), compare=False)

    @property
    def m(self) -> int:
        return self.presentation.m

    @property
    def variables(self) -> tuple:
        return self.ring.gens

    def stage(self, name: str) -> tuple:
        return {"commuting": self.gens_commuting, "relations": self.gens_relations, "section": self.gens_section}[name]

    def generators(self, stages: Iterable[str] = STAGES, nonzero: bool = True) -> list[Polynomial]:
        out = []
        for s in stages:
            out.extend(g for g in self.stage(s) if g or not nonzero)
        return out

    def matrices_by_var(self) -> dict:
        return {self.presentation.variables[s - 1]: M for s, M in self.universal_matrices.items()}

    def without(self, stage: str) -> "ChartIdeal":
        """Copy with one generator stage removed (harness mutation)."""
        attr = {"commuting": "gens_commuting", "relations": "gens_relations", "section": "gens_section"}[stage]
        return replace(self, **{attr: ()}, dropped=self.dropped + (stage,))

    def basis(self, order: str = "grevlex", degree_cap: int = DEFAULT_DEGREE_CAP, extra: Sequence[Polynomial] = ()):
        ring = self.ring.with_order(order)
        return groebner_basis(list(self.generators()) + list(extra), ring=ring, degree_cap=degree_cap)

    def to_document(self) -> dict:
        return chart_document(self)


def build_chart(presentation: AlgebraPresentation, n: int, beta: SectionBeta | None = None, order: str = "grevlex") -> ChartIdeal:
    """Universal matrices plus the three generator stages (pairs ``s<t``, relation order, ``k`` order)."""
    if n < 1:
        raise PreconditionError("n must be at least 1")
    if beta is None:
        beta = SectionBeta.powers(presentation.ring, n)
    if beta.n != n:
        raise PreconditionError(f"beta has {beta.n} entries, expected {n}")
    for f in beta.entries:
        if f.ring != presentation.ring:
            raise PreconditionError("beta entries must live in the presentation ring")
    ring = chart_ring(presentation, n, order)
    mats = {s: generic_matrix(ring, s, n) for s in range(1, presentation.m + 1)}
    return ChartIdeal(
        n=n,
        presentation=presentation,
        beta=beta,
        ring=ring,
        universal_matrices=mats,
        gens_commuting=tuple(build_commuting_ideal(mats)),
        gens_relations=tuple(build_relation_ideal(presentation.relations, mats)),
        gens_section=tuple(build_section_ideal(beta, mats)),
    )


def _fresh_variable(ring: PolyRing) -> Var:
    k = ring.ngens + 1
    while Y(k) in ring.index:
        k += 1
    return Y(k)


def adjoin_variable_chart(chart: ChartIdeal) -> ChartIdeal:
    """Chart of ``R[Z]`` with the same ``beta``; ``Z`` becomes the next unused ``Y`` variable."""
    pres = chart.presentation
    z = _fresh_variable(pres.ring)
    ring = pres.ring.extend([z])
    new_pres = AlgebraPresentation(ring, tuple(r.to_ring(ring) for r in pres.relations))
    beta = SectionBeta(tuple(f.to_ring(ring) for f in chart.beta.entries))
    return build_chart(new_pres, chart.n, beta, chart.ring.order)


def adjoined_coordinates(chart: ChartIdeal) -> list[Var]:
    """First-column entries of the newest matrix: the coordinates of ``Z(e)``."""
    s = chart.m
    return [U(s, k, 1) for k in range(1, chart.n + 1)]


def check_adjunction(chart: ChartIdeal, keep_vars: Sequence, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """Reduced presentation of the adjoined chart = old one plus ``n`` free coordinates."""
    new = adjoin_variable_chart(chart)
    keep = [as_var(v) for v in keep_vars]
    extra = adjoined_coordinates(new)
    old_sf = solved_form(chart.generators(), keep, degree_cap, ring=chart.ring)
    new_sf = solved_form(new.generators(), keep + extra, degree_cap, ring=new.ring)
    if old_sf.partial or new_sf.partial:
        raise ResourceError("degree cap reached while reducing charts")
    if old_sf.unsolved or new_sf.unsolved:
        return False
    common = PolyRing(keep + extra, chart.ring.field, "lex")
    old_res = sorted(str(r.to_ring(common)) for r in old_sf.residual)
    new_res = sorted(str(r.to_ring(common)) for r in new_sf.residual)
    return old_res == new_res


# --------------------------------------------------------------------------
# the generic chart of affine space


def is_power_section(chart: ChartIdeal) -> bool:
    y = chart.presentation.ring.var(chart.presentation.variables[0])
    return all(f == y ** i for i, f in enumerate(chart.beta.entries))


@dataclass(frozen=True)
class NormalForm:
    companion_vars: tuple
    first_column_vars: dict
    family_generators: tuple
    family_ring: PolyRing
    rewrite: dict

    @property
    def free_vars(self) -> list:
        out = list(self.companion_vars)
        for s in sorted(self.first_column_vars):
            out.extend(self.first_column_vars[s])
        return out


def generic_free_vars(m: int, n: int) -> list[Var]:
    """``U[1][k][n]`` for the companion column, ``U[s][k][1]`` for ``s > 1``."""
    out = [U(1, k, n) for k in range(1, n + 1)]
    for s in range(2, m + 1):
        out.extend(U(s, k, 1) for k in range(1, n + 1))
    return out


def generic_chart_normal_form(chart: ChartIdeal, degree_cap: int = DEFAULT_DEGREE_CAP) -> NormalForm:
    """Normal form of the power-section chart of a polynomial ring.

    The companion last column of the first matrix and the first columns of
    the other matrices are free coordinates; every other entry is rewritten
    in terms of them.  Raises ``ChartShapeError`` if the Groebner reduction
    does not confirm this.
    """
    pres = chart.presentation
    if pres.relations:
        raise PreconditionError("generic normal form needs a presentation without relations")
    if not is_power_section(chart):
        raise PreconditionError("generic normal form needs beta(T_i) = Y1^(i-1)")
    m, n = pres.m, chart.n
    free = generic_free_vars(m, n)
    sf = solved_form(chart.generators(), free, degree_cap, ring=chart.ring)
    if sf.partial:
        raise ResourceError("degree cap reached while reducing the chart")
    if not sf.is_free:
        raise ChartShapeError("chart is not free on the companion/first-column coordinates")
    fam_ring = PolyRing(list(pres.variables) + list(chart.ring.gens), pres.field, "grevlex")
    ys = [fam_ring.var(v) for v in pres.variables]
    y1 = ys[0]
    gens = [y1 ** n - sum((fam_ring.var(U(1, k, n)) * y1 ** (k - 1) for k in range(1, n + 1)), fam_ring.zero())]
    for s in range(2, m + 1):
        gens.append(ys[s - 1] - sum((fam_ring.var(U(s, k, 1)) * y1 ** (k - 1) for k in range(1, n + 1)), fam_ring.zero()))
    return NormalForm(
        companion_vars=tuple(free[:n]),
        first_column_vars={s: tuple(U(s, k, 1) for k in range(1, n + 1)) for s in range(2, m + 1)},
        family_generators=tuple(gens),
        family_ring=fam_ring,
        rewrite=sf.solved,
    )


class ChartShapeError(AssertionError):
    pass


@dataclass(frozen=True)
class KernelResult:
    in_kernel: bool
    defect: tuple


def kernel_membership(
    chart: ChartIdeal,
    f: Polynomial,
    point: Mapping | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> KernelResult:
    """Does ``f`` die in the universal quotient over the chart?

    ``f`` may carry chart variables as coefficients.  The first column of
    ``f(M)`` is reduced modulo the chart ideal (plus ``v - value`` for each
    entry of ``point``, to test at a specialization).
    """
    extra = []
    for v, val in (point or {}).items():
        extra.append(chart.ring.var(v) - val)
    gb = chart.basis("grevlex", degree_cap, extra)
    if gb.partial:
        raise ResourceError("degree cap reached; kernel membership undecided")
    col = evaluate_poly_at_matrices(f, chart.matrices_by_var()).first_column()
    defect = tuple(gb.reduce(x) for x in col)
    return KernelResult(all(d.is_zero() for d in defect), defect)


# --------------------------------------------------------------------------
# documents


@dataclass(frozen=True)
class ChartSpec:
    """Parsed chart-spec document."""

    field_tag: str
    n: int
    variables: tuple
    relations: tuple
    beta: tuple
    options: dict = field(default_factory=dict)

    @classmethod
    def from_document(cls, doc: Mapping) -> "ChartSpec":
        missing = [k for k in ("field", "n", "variables") if k not in doc]
        if missing:
            raise ValueError(f"chart spec missing fields: {', '.join(missing)}")
        n = doc["n"]
        if not isinstance(n, int) or n < 1:
            raise ValueError("chart spec field 'n' must be a positive integer")
        spec = cls(
            field_tag=str(doc["field"]),
            n=n,
            variables=tuple(doc["variables"]),
            relations=tuple(doc.get("relations", [])),
            beta=tuple(doc.get("beta", [])),
            options=dict(doc.get("options", {})),
        )
        spec.presentation()  # validate eagerly
        return spec

    @classmethod
    def from_json(cls, text: str) -> "ChartSpec":
        return cls.from_document(json.loads(text))

    def presentation(self) -> AlgebraPresentation:
        return AlgebraPresentation.from_strings(self.variables, self.relations, field_from_tag(self.field_tag))

    def section(self, presentation: AlgebraPresentation | None = None) -> SectionBeta:
        pres = presentation or self.presentation()
        if not self.beta:
            return SectionBeta.powers(pres.ring, self.n)
        return SectionBeta.from_strings(pres.ring, self.beta)

    def build(self) -> ChartIdeal:
        pres = self.presentation()
        return build_chart(pres, self.n, self.section(pres), self.options.get("order", "grevlex"))

    def to_document(self) -> dict:
        pres = self.presentation()
        doc = {
            "field": self.field_tag,
            "n": self.n,
            "variables": list(self.variables),
            "relations": [str(r) for r in pres.relations],
            "beta": [str(b) for b in self.section(pres).entries],
        }
        if self.options:
            doc["options"] = dict(sorted(self.options.items()))
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_document(), indent=2) + "\n"


def chart_document(chart: ChartIdeal) -> dict:
    pres = chart.presentation
    return {
        "field": pres.field.name,
        "n": chart.n,
        "variables": [str(v) for v in pres.variables],
        "relations": [str(r) for r in pres.relations],
        "beta": [str(b) for b in chart.beta.entries],
        "universal_matrices": {str(s): M.to_strings() for s, M in sorted(chart.universal_matrices.items())},
        "gens_commuting": [str(g) for g in chart.gens_commuting],
        "gens_relations": [str(g) for g in chart.gens_relations],
        "gens_section": [str(g) for g in chart.gens_section],
    }
