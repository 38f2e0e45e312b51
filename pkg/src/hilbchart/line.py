"""Hilbert scheme of ``n`` points on a localized line ``S^-1 A[X]``.

The localization is presented with one inverse variable per generator of
``S`` (relation ``s(X) Y_s - 1``).  Modulo the section ideal the first
matrix becomes the companion matrix ``C_U`` of ``T^n - U_nn T^(n-1) - ... - U_1n``,
and the inverted elements are the determinants ``det s(C_U)``, which the
resultant rewrites in the elementary symmetric functions ``c_i`` of its roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .charts import AlgebraPresentation, ChartIdeal, SectionBeta, build_chart
from .errors import PreconditionError
from .matrixalg import char_poly, companion_matrix, determinant, evaluate_poly_at_matrices, sylvester_resultant
from .ring import AUX, QQ, C, Polynomial, PolyRing, T, U, Var, Y, Z, as_var, substitute

X = AUX("X")
SYMBOLIC_CAP = 4


@dataclass(frozen=True)
class MultiplicativeSetSpec:
    """Finite list of generators ``s(X)``; the unit 1 is implicit."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if g.is_zero():
                raise PreconditionError("the zero polynomial cannot be inverted")
            if any(v != X for v in g.variables()):
                raise PreconditionError(f"generator {g} is not a polynomial in X")
        if len(set(gens)) != len(gens):
            raise PreconditionError("generators must be pairwise distinct")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_strings(cls, gens: Sequence[str], field=QQ) -> "MultiplicativeSetSpec":
        ring = x_ring(field)
        return cls(tuple(ring.parse(g) for g in gens))

    @property
    def field(self):
        return self.generators[0].field if self.generators else QQ

    def nontrivial(self) -> list[Polynomial]:
        return [g for g in self.generators if g != g.ring.one()]


def x_ring(field=QQ, extra: Sequence = ()) -> PolyRing:
    return PolyRing([X, *extra], field)


def localized_presentation(spec: MultiplicativeSetSpec, field=None) -> AlgebraPresentation:
    """Variables ``Y1 = X`` and ``Y2, Y3, ...`` (one per generator), relations ``s(Y1) Y_k - 1``."""
    field = field or spec.field
    gens = spec.nontrivial()
    ring = PolyRing([Y(k) for k in range(1, len(gens) + 2)], field)
    rels = []
    for k, s in enumerate(gens, start=2):
        rels.append(_in_y1(s, ring).to_ring(ring) * ring.var(Y(k)) - 1)
    return AlgebraPresentation(ring, tuple(rels))


def _in_y1(s: Polynomial, ring: PolyRing) -> Polynomial:
    return substitute(s, {X: ring.var(Y(1))}, ring)


def line_chart(spec: MultiplicativeSetSpec, n: int, field=None) -> ChartIdeal:
    """The single chart ``beta(T_i) = X^(i-1)`` that covers the whole Hilbert scheme."""
    pres = localized_presentation(spec, field)
    return build_chart(pres, n, SectionBeta.powers(pres.ring, n))


def companion_ring(n: int, field=QQ, extra: Sequence = ()) -> PolyRing:
    return PolyRing([U(1, k, n) for k in range(1, n + 1)] + list(extra), field)


def companion_of_chart(ring: PolyRing, n: int):
    return companion_matrix([ring.var(U(1, k, n)) for k in range(1, n + 1)])


def _coefficient_vars(s: Polynomial) -> list[Var]:
    return [v for v in s.ring.gens if v != X]


def norm_at_companion(s: Polynomial, n: int, ring: PolyRing | None = None) -> Polynomial:
    """``det s(C_U)`` as a polynomial in ``U[1][1][n], ..., U[1][n][n]``.

    Non-``X`` variables of ``s`` are treated as symbolic coefficients.
    """
    if n < 1:
        raise PreconditionError("n must be at least 1")
    ring = ring or companion_ring(n, s.field, _coefficient_vars(s))
    Cm = companion_of_chart(ring, n)
    s_r = s.to_ring(PolyRing([X] + list(ring.gens), s.field))
    return determinant(evaluate_poly_at_matrices(s_r, {X: Cm}))


def generic_monic(n: int, ring: PolyRing, var: Var = T(1)) -> Polynomial:
    """``T^n - c_1 T^(n-1) + c_2 T^(n-2) - ... + (-1)^n c_n``."""
    t = ring.var(var)
    acc = t ** n
    for i in range(1, n + 1):
        term = ring.var(C(i)) * t ** (n - i)
        acc = acc - term if i % 2 else acc + term
    return acc


def symmetric_substitution(n: int, ring: PolyRing) -> dict:
    """``U[1][n-i+1][n] -> (-1)^(i+1) e_i(Z_1..Z_n)``."""
    zs = [ring.var(Z(i)) for i in range(1, n + 1)]
    out = {}
    for i in range(1, n + 1):
        e = ring.zero()
        for combo in combinations(zs, i):
            prod = ring.one()
            for z in combo:
                prod = prod * z
            e = e + prod
        out[U(1, n - i + 1, n)] = e if i % 2 else -e
    return out


def spectral_factorization_check(s: Polynomial, n: int, cap: int = SYMBOLIC_CAP) -> bool:
    """Check ``det s(C_U) = Res_T(p_{C_U}, s) = prod_i s(Z_i)`` as polynomial identities."""
    if n > cap:
        raise PreconditionError(f"n = {n} exceeds the symbolic cap {cap}")
    coeff_vars = _coefficient_vars(s)
    base = companion_ring(n, s.field, coeff_vars)
    d = norm_at_companion(s, n, base)

    tv = T(1)
    full = PolyRing(list(base.gens) + [tv] + [Z(i) for i in range(1, n + 1)], s.field)
    Cm = companion_of_chart(base, n)
    p = char_poly(Cm, tv).to_ring(full)
    s_t = substitute(s, {X: full.var(tv)}, full)
    res = sylvester_resultant(p, s_t, tv)
    if d.to_ring(full) != res:
        return False

    lhs = substitute(d.to_ring(full), symmetric_substitution(n, full), full)
    rhs = full.one()
    for i in range(1, n + 1):
        rhs = rhs * substitute(s, {X: full.var(Z(i))}, full)
    return lhs == rhs


def product_over_roots(s: Polynomial, n: int, ring: PolyRing | None = None) -> Polynomial:
    """``prod_i s(Z_i)`` in the elementary symmetric coordinates ``c_1..c_n``, via the resultant."""
    tv = T(1)
    cs = [C(i) for i in range(1, n + 1)]
    ring = ring or PolyRing(cs + _coefficient_vars(s), s.field)
    work = PolyRing([tv] + list(ring.gens), s.field)
    p = generic_monic(n, work, tv)
    s_t = substitute(s, {X: work.var(tv)}, work)
    return sylvester_resultant(p, s_t, tv).to_ring(ring)


@dataclass(frozen=True)
class RingDescription:
    n: int
    free_variables: tuple
    inverted: tuple

    def to_document(self) -> dict:
        return {
            "n": self.n,
            "free_variables": [str(v) for v in self.free_variables],
            "inverted": [str(p) for p in self.inverted],
        }


def representing_ring_description(spec: MultiplicativeSetSpec, n: int) -> RingDescription:
    """``A[c_1..c_n]`` localized at ``prod_i s(Z_i)`` for each generator ``s``."""
    cs = tuple(C(i) for i in range(1, n + 1))
    ring = PolyRing(cs, spec.field)
    inverted = tuple(product_over_roots(s, n, ring) for s in spec.nontrivial())
    return RingDescription(n, cs, inverted)
