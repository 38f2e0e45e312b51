"""Cyclic vectors and commutants of matrix tuples over a field.

When the first basis vector ``e`` is cyclic for a commuting tuple, the
endomorphisms commuting with the tuple are exactly the multiplication
operators of the induced algebra structure on ``F = field^n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import PreconditionError
from .ring import QQ


class _Echelon:
    """Incrementally maintained reduced row-echelon basis."""

    def __init__(self, F, width: int):
        self.F = F
        self.width = width
        self.rows: list[list] = []
        self.pivots: list[int] = []

    def reduce(self, v) -> list:
        F = self.F
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != 0:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return v

    def add(self, v) -> bool:
        """Insert ``v``; False if it was already in the span."""
        F = self.F
        v = self.reduce(v)
        p = next((k for k, x in enumerate(v) if x != 0), None)
        if p is None:
            return False
        inv = F.inv(v[p])
        v = [F.mul(x, inv) for x in v]
        for k, row in enumerate(self.rows):
            c = row[p]
            if c != 0:
                self.rows[k] = [F.sub(a, F.mul(c, b)) for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def nullspace(F, rows: Sequence[Sequence], width: int) -> list[list]:
    ech = _Echelon(F, width)
    for r in rows:
        ech.add(r)
    free = [k for k in range(width) if k not in ech.pivots]
    basis = []
    for f in free:
        v = [F.convert(0)] * width
        v[f] = F.convert(1)
        for row, p in zip(ech.rows, ech.pivots):
            v[p] = F.neg(row[f])
        basis.append(v)
    return basis


def solve(F, columns: Sequence[Sequence], target: Sequence):
    """Coefficients ``c`` with ``sum c_k columns[k] = target``, or None."""
    width = len(columns)
    n = len(target)
    aug = [[columns[k][i] for k in range(width)] + [F.neg(target[i])] for i in range(n)]
    for v in nullspace(F, aug, width + 1):
        if v[width] != 0:
            inv = F.inv(v[width])
            return [F.mul(x, inv) for x in v[:width]]
    return None


def _matmul(F, A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = F.convert(0)
            for k in range(n):
                if A[i][k] != 0 and B[k][j] != 0:
                    acc = F.add(acc, F.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _matvec(F, A, v):
    out = []
    for row in A:
        acc = F.convert(0)
        for a, x in zip(row, v):
            if a != 0 and x != 0:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


@dataclass(frozen=True)
class ScalarMatrixTuple:
    n: int
    mats: dict
    field: object = QQ

    @classmethod
    def from_lists(cls, mats, field=QQ) -> "ScalarMatrixTuple":
        if not isinstance(mats, Mapping):
            mats = {s + 1: M for s, M in enumerate(mats)}
        conv = {}
        n = None
        for s, M in mats.items():
            rows = tuple(tuple(field.convert(x) for x in r) for r in M)
            if n is None:
                n = len(rows)
            if len(rows) != n or any(len(r) != n for r in rows):
                raise ValueError("all matrices must be square of the same size")
            conv[s] = rows
        if n is None:
            raise ValueError("need at least one matrix")
        return cls(n, conv, field)

    def matrices(self) -> list:
        return [self.mats[s] for s in sorted(self.mats)]

    def unit(self) -> list:
        F = self.field
        return [F.convert(1)] + [F.convert(0)] * (self.n - 1)


def algebra_orbit(t: ScalarMatrixTuple) -> list[list]:
    """Echelon basis of the smallest invariant subspace containing ``e``.

    Breadth-first over words, stopping when a layer adds nothing (at most
    ``n`` layers).
    """
    F = t.field
    ech = _Echelon(F, t.n)
    start = t.unit()
    ech.add(start)
    layer = [start]
    depth = 0
    while layer and depth < t.n:
        nxt = []
        for v in layer:
            for M in t.matrices():
                w = _matvec(F, M, v)
                if ech.add(w):
                    nxt.append(w)
        layer = nxt
        depth += 1
    return [list(r) for r in ech.rows]


def algebra_span(t: ScalarMatrixTuple) -> list:
    """Basis (as matrices) of the span of all words in the tuple, identity included."""
    F = t.field
    n = t.n
    ident = tuple(tuple(F.convert(1 if i == j else 0) for j in range(n)) for i in range(n))
    ech = _Echelon(F, n * n)
    basis = [ident]
    ech.add([x for r in ident for x in r])
    layer = [ident]
    while layer:
        nxt = []
        for W in layer:
            for M in t.matrices():
                P = _matmul(F, M, W)
                if ech.add([x for r in P for x in r]):
                    nxt.append(P)
                    basis.append(P)
        layer = nxt
    return basis


def commutant_basis(t: ScalarMatrixTuple) -> list:
    """Basis of ``{V : V M_s = M_s V for all s}`` (as matrices)."""
    F = t.field
    n = t.n
    rows = []
    for M in t.matrices():
        for i in range(n):
            for j in range(n):
                row = [F.convert(0)] * (n * n)
                for k in range(n):
                    # (V M)[i][j] = sum_k V[i][k] M[k][j]
                    row[i * n + k] = F.add(row[i * n + k], M[k][j])
                    # (M V)[i][j] = sum_k M[i][k] V[k][j]
                    row[k * n + j] = F.sub(row[k * n + j], M[i][k])
                rows.append(row)
    vecs = nullspace(F, rows, n * n)
    return [tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n)) for v in vecs]


def check_multiplication_form(t: ScalarMatrixTuple) -> bool:
    """Every commuting endomorphism ``v`` is multiplication by ``v(e)``.

    Requires ``e`` to be cyclic.  Multiplication by ``y`` is the unique
    element ``W`` of the algebra spanned by the tuple with ``W e = y``.
    """
    F = t.field
    n = t.n
    if len(algebra_orbit(t)) < n:
        raise PreconditionError("e is not a cyclic vector for the tuple")
    comm = commutant_basis(t)
    if len(comm) != n:
        return False
    alg = algebra_span(t)
    images = [[W[i][0] for i in range(n)] for W in alg]
    for V in comm:
        y = [V[i][0] for i in range(n)]
        c = solve(F, images, y)
        if c is None:
            return False
        W = [[F.convert(0)] * n for _ in range(n)]
        for ck, A in zip(c, alg):
            if ck == 0:
                continue
            for i in range(n):
                for j in range(n):
                    W[i][j] = F.add(W[i][j], F.mul(ck, A[i][j]))
        if any(W[i][j] != V[i][j] for i in range(n) for j in range(n)):
            return False
    return True


def companion_scalar(coeffs: Sequence, field=QQ) -> tuple:
    """Scalar companion matrix with last column ``coeffs``."""
    n = len(coeffs)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == n - 1:
                row.append(field.convert(coeffs[i]))
            else:
                row.append(field.convert(1 if i == j + 1 else 0))
        rows.append(tuple(row))
    return tuple(rows)
