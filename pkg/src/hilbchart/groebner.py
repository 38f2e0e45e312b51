"""Buchberger's algorithm over Q and F_p.

Pairs are processed by the normal strategy (smallest lcm first) with the
Gebauer-Moeller installation of Buchberger's coprime and chain criteria.
S-polynomials whose lcm exceeds ``degree_cap`` are skipped and the result
is flagged ``partial``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InconclusiveError
from .ring import Polynomial, PolyRing, as_var

DEFAULT_DEGREE_CAP = 12


def _neg(k):
    return tuple(-x for x in k)


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _reduce(ring: PolyRing, terms: dict, basis: Sequence[tuple]) -> dict:
    """Full reduction of ``terms`` by monic ``(lm, terms)`` pairs."""
    if not terms or not basis:
        return dict(terms)
    F, key = ring.field, ring.key
    work = dict(terms)
    heap = [(_neg(key(e)), e) for e in work]
    heapq.heapify(heap)
    rem: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        for lm, g in basis:
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                for e, x in g.items():
                    if e == lm:
                        continue
                    t = tuple(a + b for a, b in zip(e, shift))
                    old = work.get(t)
                    v = F.neg(F.mul(c, x)) if old is None else F.sub(old, F.mul(c, x))
                    if v == 0:
                        work.pop(t, None)
                    else:
                        if old is None:
                            heapq.heappush(heap, (_neg(key(t)), t))
                        work[t] = v
                break
        else:
            rem[m] = c
    return rem


def _monic(ring: PolyRing, terms: dict) -> tuple:
    F = ring.field
    lm = max(terms, key=ring.key)
    inv = F.inv(terms[lm])
    return lm, {e: F.mul(c, inv) for e, c in terms.items()}


def _spoly(ring: PolyRing, f: tuple, g: tuple) -> dict:
    F = ring.field
    (lf, tf), (lg, tg) = f, g
    L = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(L, lf))
    sg = tuple(a - b for a, b in zip(L, lg))
    out = {}
    for e, c in tf.items():
        if e != lf:
            out[tuple(a + b for a, b in zip(e, sf))] = c
    for e, c in tg.items():
        if e == lg:
            continue
        t = tuple(a + b for a, b in zip(e, sg))
        v = F.sub(out.get(t, 0), c)
        if v == 0:
            out.pop(t, None)
        else:
            out[t] = v
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    ring: PolyRing
    degree_cap: int = DEFAULT_DEGREE_CAP
    partial: bool = False
    _pairs: tuple = field(default=(), repr=False, compare=False)

    @property
    def order(self) -> str:
        return self.ring.order

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.LM for g in self.generators]

    def _basis(self):
        if not self._pairs:
            object.__setattr__(self, "_pairs", tuple((g.LM, g._terms) for g in self.generators))
        return self._pairs

    def reduce(self, p: Polynomial) -> Polynomial:
        p = p.to_ring(self.ring)
        return Polynomial(self.ring, _reduce(self.ring, p._terms, self._basis()))

    def contains(self, p: Polynomial) -> bool:
        """Ideal membership; a non-zero remainder is inconclusive on partial bases."""
        r = self.reduce(p)
        if r.is_zero():
            return True
        if self.partial:
            raise InconclusiveError("partial basis: non-zero normal form does not decide membership")
        return False

    def is_unit_ideal(self) -> bool:
        return any(g.is_constant() for g in self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def to_strings(self) -> list[str]:
        return [str(g) for g in self.generators]


def groebner_basis(
    gens: Iterable[Polynomial],
    order: str | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    ring: PolyRing | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``ring`` (a ring with the desired variable precedence and order) or
    ``order`` (re-using the generators' ring) selects the monomial order.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("need a ring when no generators are given")
        ring = gens[0].ring
        if order is not None:
            ring = ring.with_order(order)
    elif order is not None and order != ring.order:
        ring = ring.with_order(order)
    key = ring.key

    polys: list[tuple] = []
    active: list[int] = []
    pairs: dict[tuple, tuple] = {}
    partial = False

    def pair_key(i, j):
        L = _lcm(polys[i][0], polys[j][0])
        return (sum(L), key(L))

    def update(h: int):
        lh = polys[h][0]
        cands = [(g, _lcm(lh, polys[g][0])) for g in active]
        keep = []
        for idx, (g, L) in enumerate(cands):
            coprime = all(a == 0 or b == 0 for a, b in zip(lh, polys[g][0]))
            if coprime:
                keep.append((g, L, True))
                continue
            shadowed = any(_divides(L2, L) and (L2 != L or k < idx) for k, (_, L2) in enumerate(cands) if k != idx)
            if not shadowed:
                keep.append((g, L, False))
        for (a, b) in list(pairs):
            L = _lcm(polys[a][0], polys[b][0])
            if (
                _divides(lh, L)
                and _lcm(polys[a][0], lh) != L
                and _lcm(polys[b][0], lh) != L
            ):
                del pairs[(a, b)]
        for g, L, coprime in keep:
            if not coprime:
                pairs[(g, h)] = None
        active[:] = [g for g in active if not _divides(lh, polys[g][0])] + [h]

    def add(terms: dict):
        polys.append(_monic(ring, terms))
        update(len(polys) - 1)

    for f in gens:
        f = f.to_ring(ring)
        r = _reduce(ring, f._terms, [polys[g] for g in active])
        if r:
            add(r)

    while pairs:
        best = min(pairs, key=lambda ij: (pair_key(*ij), ij))
        del pairs[best]
        i, j = best
        L = _lcm(polys[i][0], polys[j][0])
        if sum(L) > degree_cap:
            partial = True
            continue
        s = _spoly(ring, polys[i], polys[j])
        r = _reduce(ring, s, [polys[g] for g in active])
        if r:
            add(r)

    # interreduce the minimal basis
    basis = [polys[g] for g in active]
    reduced = []
    for k, (lm, terms) in enumerate(basis):
        others = [b for t, b in enumerate(basis) if t != k]
        tail = {e: c for e, c in terms.items() if e != lm}
        tail = _reduce(ring, tail, others)
        tail[lm] = ring.field.convert(1)
        reduced.append(Polynomial(ring, tail))
    reduced.sort(key=lambda g: key(g.LM), reverse=True)
    return GroebnerBasis(tuple(reduced), ring, degree_cap, partial)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(p)


def elimination_ring(ring: PolyRing, keep_vars: Iterable) -> PolyRing:
    """Lex ring with the discarded variables first (greatest)."""
    keep = [as_var(v) for v in keep_vars]
    drop = [v for v in ring.gens if v not in keep]
    keep = [v for v in ring.gens if v in keep] + [v for v in keep if v not in ring.index]
    return PolyRing(drop + keep, ring.field, "lex")


def eliminate(gens: Sequence[Polynomial], keep_vars: Iterable, degree_cap: int = DEFAULT_DEGREE_CAP) -> GroebnerBasis:
    """Groebner basis (lex, over ``keep_vars``) of the ideal intersected with the subring."""
    gens = list(gens)
    keep = [as_var(v) for v in keep_vars]
    ring = gens[0].ring
    er = elimination_ring(ring, keep)
    gb = groebner_basis(gens, ring=er, degree_cap=degree_cap)
    sub = PolyRing([v for v in er.gens if v in keep], ring.field, "lex")
    drop_idx = [k for k, v in enumerate(er.gens) if v not in keep]
    kept = [g.to_ring(sub) for g in gb.generators if all(all(e[k] == 0 for k in drop_idx) for e in g._terms)]
    return GroebnerBasis(tuple(kept), sub, degree_cap, gb.partial)


@dataclass(frozen=True)
class SolvedForm:
    """Reduced presentation: ``solved[v]`` rewrites a variable in terms of the kept ones."""

    solved: dict
    residual: tuple
    unsolved: tuple
    partial: bool
    basis: GroebnerBasis

    @property
    def is_free(self) -> bool:
        return not self.residual and not self.unsolved


def solved_form(gens: Sequence[Polynomial], free_vars: Iterable, degree_cap: int = DEFAULT_DEGREE_CAP, ring: PolyRing | None = None) -> SolvedForm:
    """Split the lex basis eliminating the non-free variables into ``v - r_v`` rewrites and the rest."""
    gens = [g for g in gens]
    if ring is None:
        if not gens:
            raise ValueError("need a ring when no generators are given")
        ring = gens[0].ring
    free = [as_var(v) for v in free_vars]
    missing = [v for v in free if v not in ring.index]
    if missing:
        raise KeyError(f"free variables not in ring: {', '.join(map(str, missing))}")
    er = elimination_ring(ring, free)
    gb = groebner_basis(gens, ring=er, degree_cap=degree_cap)
    free_idx = {er.index[v] for v in free}
    solved, residual = {}, []
    for g in gb.generators:
        lm = g.LM
        lead = [k for k, e in enumerate(lm) if e]
        tail_ok = all(all(e[k] == 0 or k in free_idx for k in range(er.ngens)) for e in g._terms if e != lm)
        if len(lead) == 1 and lm[lead[0]] == 1 and lead[0] not in free_idx and tail_ok:
            v = er.gens[lead[0]]
            solved[v] = (er.var(v) - g).to_ring(ring)
        else:
            residual.append(g.to_ring(ring))
    unsolved = tuple(v for v in er.gens if er.index[v] not in free_idx and v not in solved)
    return SolvedForm(solved, tuple(residual), unsolved, gb.partial, gb)


def is_free_on(gens: Sequence[Polynomial], free_vars: Iterable, degree_cap: int = DEFAULT_DEGREE_CAP, ring: PolyRing | None = None) -> bool:
    """True iff the quotient is the polynomial ring on ``free_vars`` via a solved-form basis."""
    sf = solved_form(gens, free_vars, degree_cap, ring)
    if sf.partial:
        raise InconclusiveError("degree cap reached; solved-form check is inconclusive")
    return sf.is_free
