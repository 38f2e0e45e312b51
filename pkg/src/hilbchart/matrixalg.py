"""Square matrices with polynomial entries."""

from __future__ import annotations

from itertools import permutations
from typing import Mapping, Sequence

from .ring import Polynomial, PolyRing, Var, U, as_var


class DimensionError(ValueError):
    pass


class PolyMatrix:
    """Immutable ``n x n`` matrix over a :class:`PolyRing`."""

    __slots__ = ("ring", "n", "rows")

    def __init__(self, ring: PolyRing, rows: Sequence[Sequence]):
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square and non-empty")
        self.ring = ring
        self.n = n
        self.rows = tuple(tuple(ring(x) if not isinstance(x, Polynomial) else x for x in r) for r in rows)
        for r in self.rows:
            for x in r:
                if x.ring != ring:
                    raise DimensionError("all entries must share one ring")

    @classmethod
    def identity(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: PolyRing, n: int) -> "PolyMatrix":
        zero = ring.zero()
        return cls(ring, [[zero] * n for _ in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self) -> list[Polynomial]:
        """Row-major list of entries."""
        return [x for r in self.rows for x in r]

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries())

    def _same(self, other: "PolyMatrix"):
        if not isinstance(other, PolyMatrix):
            raise TypeError("expected a PolyMatrix")
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        self._same(other)
        return PolyMatrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._same(other)
        return PolyMatrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return PolyMatrix(self.ring, [[-a for a in r] for r in self.rows])

    def scale(self, c) -> "PolyMatrix":
        c = c if isinstance(c, Polynomial) else self.ring(c)
        return PolyMatrix(self.ring, [[a * c for a in r] for r in self.rows])

    def __matmul__(self, other):
        self._same(other)
        n = self.n
        cols = list(zip(*other.rows))
        zero = self.ring.zero()
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = zero
                for a, b in zip(r, col):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out)

    def __pow__(self, k: int):
        result = PolyMatrix.identity(self.ring, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def map(self, fn) -> "PolyMatrix":
        rows = [[fn(x) for x in r] for r in self.rows]
        ring = rows[0][0].ring
        return PolyMatrix(ring, rows)

    def to_ring(self, ring: PolyRing) -> "PolyMatrix":
        return PolyMatrix(ring, [[x.to_ring(ring) for x in r] for r in self.rows])

    def first_column(self) -> list[Polynomial]:
        return [r[0] for r in self.rows]

    def column(self, j: int) -> list[Polynomial]:
        return [r[j] for r in self.rows]

    def minor(self, i: int, j: int) -> "PolyMatrix":
        return PolyMatrix(
            self.ring,
            [[x for c, x in enumerate(r) if c != j] for rr, r in enumerate(self.rows) if rr != i],
        )

    def det(self) -> Polynomial:
        return determinant(self)

    def adjugate(self) -> "PolyMatrix":
        return adjugate(self)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __repr__(self):
        return f"PolyMatrix({self.to_strings()})"


# --------------------------------------------------------------------------


def generic_matrix(ring_or_field, s: int, n: int) -> PolyMatrix:
    """The matrix whose ``(i, j)`` entry is the variable ``U[s][i][j]``.

    ``ring_or_field`` is either a ring containing those variables or a field,
    in which case a ring over exactly these ``n^2`` variables is made.
    """
    vars_ = [U(s, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    if isinstance(ring_or_field, PolyRing):
        ring = ring_or_field
    else:
        ring = PolyRing(vars_, ring_or_field)
    return PolyMatrix(ring, [[ring.var(U(s, i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)])


def evaluate_poly_at_matrices(f: Polynomial, mats: Mapping) -> PolyMatrix:
    """Substitute matrices for variables of ``f``.

    Keys of ``mats`` are variables (or their names).  Variables of ``f``
    without a matrix must belong to the matrices' ring and act as scalars.
    Each monomial is multiplied out left to right in ``f.ring`` variable order.
    """
    mats = {as_var(k): v for k, v in mats.items()}
    if not mats:
        raise ValueError("need at least one matrix")
    first = next(iter(mats.values()))
    n, ring = first.n, first.ring
    for M in mats.values():
        if M.n != n:
            raise DimensionError("all matrices must have the same dimension")
        if M.ring != ring:
            raise DimensionError("all matrices must share one ring")
    gens = f.ring.gens
    scalar_idx = [k for k, v in enumerate(gens) if v not in mats]
    for k in scalar_idx:
        if any(e[k] for e in f._terms) and gens[k] not in ring.index:
            raise KeyError(f"no matrix supplied for {gens[k]}")
    powers: dict = {}

    def power(v, e):
        if (v, e) not in powers:
            powers[(v, e)] = mats[v] ** e
        return powers[(v, e)]

    zero = ring.zero()
    acc = [[zero] * n for _ in range(n)]
    F = ring.field
    for exps, c in f.terms():
        scalar = ring(F.convert(c))
        mat = None
        for k, e in enumerate(exps):
            if not e:
                continue
            v = gens[k]
            if v in mats:
                P = power(v, e)
                mat = P if mat is None else mat @ P
            else:
                scalar = scalar * ring.var(v) ** e
        for i in range(n):
            for j in range(n):
                if mat is None:
                    if i == j:
                        acc[i][j] = acc[i][j] + scalar
                else:
                    x = mat.rows[i][j]
                    if x:
                        acc[i][j] = acc[i][j] + scalar * x
    return PolyMatrix(ring, acc)


def companion_matrix(coeffs: Sequence[Polynomial]) -> PolyMatrix:
    """Subdiagonal ones and last column ``a_1..a_n``; ``C^n = a_1 I + a_2 C + ... + a_n C^(n-1)``."""
    n = len(coeffs)
    if n < 1:
        raise ValueError("need at least one coefficient")
    ring = coeffs[0].ring
    one, zero = ring.one(), ring.zero()
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == n - 1:
                row.append(coeffs[i])
            elif i == j + 1:
                row.append(one)
            else:
                row.append(zero)
        rows.append(row)
    return PolyMatrix(ring, rows)


def first_column(M: PolyMatrix) -> list[Polynomial]:
    return M.first_column()


def _det_cofactor(rows) -> Polynomial:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        sub = [[x for c, x in enumerate(r) if c != j] for r in rows[1:]]
        t = a * _det_cofactor(sub)
        if j % 2:
            t = -t
        acc = t if acc is None else acc + t
    return acc if acc is not None else rows[0][0].ring.zero()


def _det_bareiss(rows) -> Polynomial:
    n = len(rows)
    ring = rows[0][0].ring
    M = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = piv * M[i][j] - M[i][k] * M[k][j]
                M[i][j] = num.exquo(prev) if not prev.is_constant() else num.scale(ring.field.inv(prev.constant_value()))
            M[i][k] = ring.zero()
        prev = piv
    return M[n - 1][n - 1] if sign > 0 else -M[n - 1][n - 1]


def determinant(M: PolyMatrix) -> Polynomial:
    """Cofactor expansion for ``n <= 3``, fraction-free Bareiss elimination above."""
    if M.n <= 3:
        return _det_cofactor(M.rows)
    return _det_bareiss(M.rows)


def determinant_leibniz(M: PolyMatrix) -> Polynomial:
    """Permutation-sum determinant; slow, used as an independent check."""
    n = M.n
    acc = M.ring.zero()
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        t = M.ring.one()
        for i, j in enumerate(perm):
            t = t * M.rows[i][j]
            if t.is_zero():
                break
        acc = acc - t if inv % 2 else acc + t
    return acc


def adjugate(M: PolyMatrix) -> PolyMatrix:
    n = M.n
    if n == 1:
        return PolyMatrix.identity(M.ring, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = determinant(M.minor(j, i))
            out[i][j] = -c if (i + j) % 2 else c
    return PolyMatrix(M.ring, out)


def char_poly(M: PolyMatrix, var: Var | str = "T1") -> Polynomial:
    """``det(var*I - M)``, in ``M.ring`` extended by the fresh variable ``var``."""
    var = as_var(var)
    if var in M.ring.index:
        raise ValueError(f"{var} already occurs in the matrix ring")
    ring = M.ring.extend([var])
    t = ring.var(var)
    Me = M.to_ring(ring)
    return determinant(PolyMatrix.identity(ring, M.n).scale(t) - Me)


def commutator(M: PolyMatrix, N: PolyMatrix) -> PolyMatrix:
    return M @ N - N @ M


def sylvester_matrix(p: Polynomial, q: Polynomial, var) -> PolyMatrix | None:
    var = as_var(var)
    pc = p.coeffs_in(var)[::-1]
    qc = q.coeffs_in(var)[::-1]
    a, b = len(pc) - 1, len(qc) - 1
    size = a + b
    if size == 0:
        return None
    ring = p.ring
    zero = ring.zero()
    rows = []
    for i in range(b):
        rows.append([zero] * i + pc + [zero] * (size - a - 1 - i))
    for i in range(a):
        rows.append([zero] * i + qc + [zero] * (size - b - 1 - i))
    return PolyMatrix(ring, rows)


def sylvester_resultant(p: Polynomial, q: Polynomial, var) -> Polynomial:
    """``Res_var(p, q)`` for monic ``p``; equals the product of ``q`` over the roots of ``p``.

    ``p``'s coefficients fill the first ``deg q`` rows of the Sylvester matrix.
    """
    var = as_var(var)
    if p.ring != q.ring:
        raise DimensionError("p and q must share one ring")
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    lead = p.coeffs_in(var)[-1]
    if lead != p.ring.one():
        raise ValueError(f"p must be monic in {var}")
    S = sylvester_matrix(p, q, var)
    if S is None or p.degree_in(var) == 0:
        return p.ring.one()
    if q.degree_in(var) == 0:
        return q ** p.degree_in(var)
    if S.n <= 3:
        return _det_cofactor(S.rows)
    return _det_bareiss(S.rows)
