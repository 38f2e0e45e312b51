"""Degenerate families of length-``n`` ideals supported at the origin.

With ``d`` the degree of the ``n``-th monomial and slack
``s = binom(d+m, m) - n``, each ``s x (B - s)`` matrix ``a`` (``B`` = number of
degree-``d`` monomials) gives the ideal generated by all monomials of degree
``d+1`` and by ``m_i - sum_j a_ij m_j`` for the ``s`` degree-``d`` monomials
``m_i`` left out of the quotient basis.  The family has dimension at least
``s(B - s)``, which exceeds ``m n`` for ``m >= 3`` and large ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .errors import InconclusiveError, PreconditionError
from .groebner import DEFAULT_DEGREE_CAP, groebner_basis
from .ring import QQ, Polynomial, PolyRing, Y, monomial_by_index


def degree_and_slack(n: int, m: int) -> tuple[int, int]:
    """The unique ``d`` with ``binom(d+m-1, m) < n <= binom(d+m, m)``, and the slack."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    hi = 1
    while math.comb(hi + m, m) < n:
        hi *= 2
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if math.comb(mid + m, m) >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo, math.comb(lo + m, m) - n


def degree_d_count(d: int, m: int) -> int:
    """Number of monomials of degree ``d`` in ``m`` variables."""
    return math.comb(d + m - 1, m - 1)


@dataclass(frozen=True)
class DegenerateFamilyParams:
    n: int
    m: int
    a: tuple = ()
    field: object = QQ
    d: int = dc_field(init=False)
    s: int = dc_field(init=False)

    def __post_init__(self):
        d, s = degree_and_slack(self.n, self.m)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "s", s)
        cols = degree_d_count(d, self.m) - s
        a = tuple(tuple(self.field.convert(x) for x in row) for row in self.a)
        if len(a) != s or any(len(r) != cols for r in a):
            raise PreconditionError(f"matrix a must be {s} x {cols} for n={self.n}, m={self.m}")
        object.__setattr__(self, "a", a)

    @property
    def shape(self) -> tuple[int, int]:
        return self.s, degree_d_count(self.d, self.m) - self.s

    @classmethod
    def zero(cls, n: int, m: int, field=QQ) -> "DegenerateFamilyParams":
        d, s = degree_and_slack(n, m)
        cols = degree_d_count(d, m) - s
        return cls(n, m, tuple((0,) * cols for _ in range(s)), field)


def variable_ring(m: int, field=QQ, order: str = "grevlex") -> PolyRing:
    return PolyRing([Y(k) for k in range(1, m + 1)], field, order)


def degenerate_ideal(params: DegenerateFamilyParams, ring: PolyRing | None = None) -> list[Polynomial]:
    """Degree-``(d+1)`` monomials, then ``m_i - sum_j a_ij m_j`` for ``i = n+1 .. binom(d+m, m)``."""
    n, m, d = params.n, params.m, params.d
    ring = ring or variable_ring(m, params.field)
    out = []
    for combo in combinations_with_replacement(range(m), d + 1):
        e = [0] * m
        for k in combo:
            e[k] += 1
        out.append(ring.monomial(tuple(e) + (0,) * (ring.ngens - m)))
    first_j = math.comb(d + m - 1, m) + 1
    top = math.comb(d + m, m)
    mono = lambda k: ring.monomial(monomial_by_index(m, k) + (0,) * (ring.ngens - m))
    for r, i in enumerate(range(n + 1, top + 1)):
        g = mono(i)
        for c, j in enumerate(range(first_j, n + 1)):
            coef = params.a[r][c]
            if coef != 0:
                g = g - mono(j).scale(coef)
        out.append(g)
    return out


def staircase(gb) -> list[tuple] | None:
    """Standard monomials of a Groebner basis, or None if there are infinitely many."""
    ring = gb.ring
    lms = gb.leading_monomials
    k = ring.ngens
    if any(all(x == 0 for x in lm) for lm in lms):
        return []
    bounds = []
    for v in range(k):
        pure = [lm[v] for lm in lms if lm[v] and all(x == 0 for t, x in enumerate(lm) if t != v)]
        if not pure:
            return None
        bounds.append(min(pure))
    out = []

    def walk(prefix):
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        v = len(prefix)
        for e in range(bounds[v]):
            cand = prefix + [e] + [0] * (k - v - 1)
            # divisibility is monotone, so a divisible partial monomial prunes the branch
            if any(all(a <= b for a, b in zip(lm, cand)) for lm in lms):
                break
            walk(prefix + [e])

    walk([])
    return out


def colength(gens: Sequence[Polynomial], degree_cap: int = DEFAULT_DEGREE_CAP) -> int | None:
    gb = groebner_basis(gens, order="grevlex", degree_cap=degree_cap)
    if gb.partial:
        raise InconclusiveError("degree cap reached; colength undecided")
    st = staircase(gb)
    return None if st is None else len(st)


def check_colength(gens: Sequence[Polynomial], n: int, m: int | None = None, degree_cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """True iff the quotient has a staircase of exactly ``n`` monomials."""
    if m is not None and gens and gens[0].ring.ngens != m:
        raise PreconditionError(f"expected {m} variables, ring has {gens[0].ring.ngens}")
    return colength(gens, degree_cap) == n


def reduced_basis(params: DegenerateFamilyParams, degree_cap: int = DEFAULT_DEGREE_CAP) -> tuple:
    gb = groebner_basis(degenerate_ideal(params), order="grevlex", degree_cap=degree_cap)
    return tuple(gb.generators)


def distinctness_check(p1: DegenerateFamilyParams, p2: DegenerateFamilyParams) -> bool:
    """True iff the two ideals (same ``n``, ``m``) have different reduced bases."""
    if (p1.n, p1.m) != (p2.n, p2.m):
        raise PreconditionError("parameters must share n and m")
    return reduced_basis(p1) != reduced_basis(p2)


@dataclass(frozen=True)
class LowerBound:
    m: int
    d: int
    s: int
    n: int
    B: int
    bound: int
    asymptotic_mth_power: Fraction | None

    @property
    def mn(self) -> int:
        return self.m * self.n

    @property
    def signal(self) -> bool:
        return self.bound > self.mn

    def exceeds_asymptotic(self) -> bool | None:
        """``bound >= n^(2-2/m) (m!/2)^(-2/m) m^2/16``, compared after raising both to the ``m``-th power."""
        if self.asymptotic_mth_power is None:
            return None
        return Fraction(self.bound) ** self.m >= self.asymptotic_mth_power

    def row(self) -> dict:
        return {
            "d": self.d, "s": self.s, "n": self.n, "B": self.B,
            "bound": self.bound, "mn": self.mn, "signal": self.signal,
        }


def asymptotic_mth_power(n: int, m: int) -> Fraction:
    """m-th power of ``n^(2-2/m) (m!/2)^(-2/m) (m^2/16)``: exact even when the base is irrational."""
    return Fraction(n ** (2 * m - 2)) * Fraction(m * m, 16) ** m / Fraction(math.factorial(m), 2) ** 2


def bound_at_degree(d: int, m: int, s: int | None = None) -> LowerBound:
    B = degree_d_count(d, m)
    if s is None:
        s = B // 2
    if not 0 <= s < B and not (s == 0 and B == 1):
        raise PreconditionError(f"slack {s} out of range for B = {B}")
    n = math.comb(d + m, m) - s
    return LowerBound(m, d, s, n, B, s * (B - s), asymptotic_mth_power(n, m) if d >= 2 * m * m else None)


def dimension_lower_bound(n: int, m: int, s_choice: int | None = None) -> LowerBound:
    """``s(B - s)`` at the degree of ``n``; ``s`` is ``s_choice`` or the optimum ``floor(B/2)`` (``n`` adjusted)."""
    d, _ = degree_and_slack(n, m)
    return bound_at_degree(d, m, s_choice)


def reducibility_signal(n: int, m: int) -> bool:
    """Family dimension at ``n`` (its own slack) exceeds the generic dimension ``m n``."""
    d, s = degree_and_slack(n, m)
    lb = bound_at_degree(d, m, s)
    return lb.bound > m * n


def scan(m: int, max_d: int) -> list[LowerBound]:
    return [bound_at_degree(d, m) for d in range(max_d + 1)]


def first_signal(m: int, max_d: int) -> LowerBound | None:
    return next((lb for lb in scan(m, max_d) if lb.signal), None)
