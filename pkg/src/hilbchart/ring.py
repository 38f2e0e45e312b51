"""Exact sparse multivariate polynomials over Q and small prime fields.

A :class:`PolyRing` fixes the coefficient field, the ordered list of
variables (first = greatest) and a monomial order.  A monomial is an
exponent tuple aligned with the ring's variables; :meth:`Polynomial.monomials`
exposes the sparse ``{Var: exponent}`` view.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

ORDERS = ("lex", "grlex", "grevlex")


class IncompatibleFieldError(ValueError):
    """Operands live over different coefficient fields or rings."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        loc = f" at column {pos + 1}" if text else ""
        detail = f"\n  {text}\n  {' ' * pos}^" if text else ""
        super().__init__(f"{message}{loc}{detail}")


# --------------------------------------------------------------------------
# coefficient fields


class RationalField:
    name = "Q"
    characteristic = 0

    def convert(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot convert {x!r} to a rational")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def to_str(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int):
        if p < 2 or p >= 2**16 or any(p % q == 0 for q in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"expected a prime below 2^16, got {p}")
        self.p = p
        self.characteristic = p
        self.name = f"Fp:{p}"

    def convert(self, x) -> int:
        p = self.p
        if isinstance(x, int):
            return x % p
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        raise TypeError(f"cannot convert {x!r} to F_{p}")

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_tag(tag: str):
    """``"Q"`` or ``"Fp:<p>"``."""
    if tag == "Q":
        return QQ
    m = re.fullmatch(r"Fp:(\d+)", tag)
    if not m:
        raise ValueError(f"unknown field tag {tag!r}")
    return PrimeField(int(m.group(1)))


# --------------------------------------------------------------------------
# variables

_VAR_RE = re.compile(
    r"U\[(\d+)\]\[(\d+)\]\[(\d+)\]|([YTZc])(\d+)|([A-Za-z_][A-Za-z0-9_]*)"
)
_KIND_OF_PREFIX = {"Y": "Y", "T": "T", "Z": "Z", "c": "C"}
_PREFIX_OF_KIND = {"Y": "Y", "T": "T", "Z": "Z", "C": "c"}


@dataclass(frozen=True)
class Var:
    """A named indeterminate: ``Y1``, ``U[s][i][j]``, ``T3``, ``Z2``, ``c1`` or a bare name."""

    kind: str
    idx: tuple = ()
    name: str = ""

    def __str__(self):
        if self.kind == "U":
            s, i, j = self.idx
            return f"U[{s}][{i}][{j}]"
        if self.kind == "AUX":
            return self.name
        return f"{_PREFIX_OF_KIND[self.kind]}{self.idx[0]}"

    def __repr__(self):
        return f"Var({self})"

    @classmethod
    def parse(cls, text: str) -> "Var":
        m = _VAR_RE.fullmatch(text)
        if not m:
            raise ParseError(f"invalid variable name {text!r}")
        return cls._from_match(m)

    @classmethod
    def _from_match(cls, m) -> "Var":
        if m.group(1) is not None:
            idx = (int(m.group(1)), int(m.group(2)), int(m.group(3)))
            if min(idx) < 1:
                raise ParseError(f"U indices are 1-based: {m.group(0)!r}")
            return cls("U", idx)
        if m.group(4) is not None:
            k = int(m.group(5))
            if k < 1:
                raise ParseError(f"variable indices are 1-based: {m.group(0)!r}")
            return cls(_KIND_OF_PREFIX[m.group(4)], (k,))
        return cls("AUX", (), m.group(6))


def Y(s: int) -> Var:
    return Var("Y", (s,))


def U(s: int, i: int, j: int) -> Var:
    return Var("U", (s, i, j))


def T(k: int) -> Var:
    return Var("T", (k,))


def Z(i: int) -> Var:
    return Var("Z", (i,))


def C(i: int) -> Var:
    return Var("C", (i,))


def AUX(name: str) -> Var:
    return Var("AUX", (), name)


def as_var(v) -> Var:
    return v if isinstance(v, Var) else Var.parse(str(v))


# --------------------------------------------------------------------------
# rings


def _lex_key(e):
    return e


def _grlex_key(e):
    return (sum(e),) + e


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


_ORDER_KEYS = {"lex": _lex_key, "grlex": _grlex_key, "grevlex": _grevlex_key}


class PolyRing:
    """Polynomial ring ``field[gens]`` with a monomial order.

    ``gens`` is the variable precedence: the first variable is the
    greatest for every order.
    """

    def __init__(self, gens: Iterable, field=QQ, order: str = "grevlex"):
        gens = tuple(as_var(v) for v in gens)
        if len(set(gens)) != len(gens):
            raise ValueError("duplicate variables in ring")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.gens = gens
        self.field = field
        self.order = order
        self.ngens = len(gens)
        self.index = {v: k for k, v in enumerate(gens)}
        self.key = _ORDER_KEYS[order]
        self.zero_exp = (0,) * self.ngens
        self._hash = hash((gens, field, order))

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.gens == other.gens
            and self.field == other.field
            and self.order == other.order
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        names = ", ".join(map(str, self.gens))
        return f"PolyRing([{names}], {self.field!r}, {self.order!r})"

    # construction helpers

    def with_order(self, order: str | None = None, gens: Iterable | None = None) -> "PolyRing":
        return PolyRing(self.gens if gens is None else gens, self.field, order or self.order)

    def with_field(self, field) -> "PolyRing":
        return PolyRing(self.gens, field, self.order)

    def extend(self, new_gens: Iterable) -> "PolyRing":
        """Append variables (with lowest precedence); existing ones are kept."""
        extra = [as_var(v) for v in new_gens]
        extra = [v for v in extra if v not in self.index]
        return PolyRing(self.gens + tuple(extra), self.field, self.order)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x.to_ring(self)
        if isinstance(x, str):
            return self.parse(x)
        c = self.field.convert(x)
        return Polynomial(self, {self.zero_exp: c} if c != 0 else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self(1)

    def var(self, v) -> "Polynomial":
        v = as_var(v)
        if v not in self.index:
            raise KeyError(f"{v} is not a variable of {self!r}")
        e = [0] * self.ngens
        e[self.index[v]] = 1
        return Polynomial(self, {tuple(e): self.field.convert(1)})

    def gen_polys(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.gens]

    def monomial(self, exps: Mapping | Sequence) -> "Polynomial":
        """Monic monomial from an exponent tuple or a ``{var: exp}`` map."""
        if isinstance(exps, Mapping):
            e = [0] * self.ngens
            for v, k in exps.items():
                e[self.index[as_var(v)]] = k
            exps = tuple(e)
        return Polynomial(self, {tuple(exps): self.field.convert(1)})

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


def ring_for(texts: Iterable[str], field=QQ, order: str = "grevlex", first: Iterable = ()) -> PolyRing:
    """Ring over every variable mentioned in ``texts`` (``first`` leads, the rest sorted)."""
    found = []
    for t in texts:
        for v in variables_in_text(t):
            if v not in found:
                found.append(v)
    first = [as_var(v) for v in first]
    rest = sorted((v for v in found if v not in first), key=_var_sort_key)
    return PolyRing(first + rest, field, order)


def _var_sort_key(v: Var):
    rank = {"Y": 0, "U": 1, "T": 2, "Z": 3, "C": 4, "AUX": 5}[v.kind]
    return (rank, v.idx, v.name)


def variables_in_text(text: str) -> list[Var]:
    out = []
    for m in _VAR_RE.finditer(text):
        v = Var._from_match(m)
        if v not in out:
            out.append(v)
    return out


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable polynomial: a map from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "_terms", "_lm", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._lm = None
        self._hash = None

    # views

    @property
    def field(self):
        return self.ring.field

    def terms(self) -> list[tuple[tuple, object]]:
        """(exponents, coefficient) pairs in strictly decreasing monomial order."""
        key = self.ring.key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def term_dict(self) -> dict:
        return dict(self._terms)

    def monomials(self) -> list[dict]:
        gens = self.ring.gens
        return [{gens[k]: e for k, e in enumerate(exps) if e} for exps, _ in self.terms()]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring.zero_exp in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get(self.ring.zero_exp, self.field.convert(0))

    def coefficient(self, exps) -> object:
        if isinstance(exps, Mapping):
            e = [0] * self.ring.ngens
            for v, k in exps.items():
                e[self.ring.index[as_var(v)]] = k
            exps = tuple(e)
        return self._terms.get(tuple(exps), self.field.convert(0))

    @property
    def LM(self) -> tuple:
        if self._lm is None:
            if not self._terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self._terms, key=self.ring.key)
        return self._lm

    @property
    def LC(self):
        return self._terms[self.LM]

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, v) -> int:
        k = self.ring.index[as_var(v)]
        return max((e[k] for e in self._terms), default=-1)

    def variables(self) -> list[Var]:
        used = set()
        for e in self._terms:
            used.update(k for k, x in enumerate(e) if x)
        return [self.ring.gens[k] for k in sorted(used)]

    def coeffs_in(self, v) -> list["Polynomial"]:
        """Coefficients of powers of ``v`` (index = power); they do not involve ``v``."""
        k = self.ring.index[as_var(v)]
        out: dict[int, dict] = {}
        for e, c in self._terms.items():
            d = e[k]
            out.setdefault(d, {})[e[:k] + (0,) + e[k + 1:]] = c
        top = max(out, default=-1)
        return [Polynomial(self.ring, out.get(d, {})) for d in range(top + 1)]

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.field.inv(self.LC))

    # arithmetic

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.field != self.ring.field:
                    raise IncompatibleFieldError(
                        f"mixed coefficient fields {self.field!r} and {other.field!r}"
                    )
                raise IncompatibleFieldError("polynomials belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            if e in out:
                s = F.add(out[e], c)
                if s == 0:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial(self.ring, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.field
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                if e in out:
                    s = F.add(out[e], c)
                    if s == 0:
                        del out[e]
                    else:
                        out[e] = s
                elif c != 0:
                    out[e] = c
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        F = self.field
        c = F.convert(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: F.mul(x, c) for e, x in self._terms.items()})

    def mul_term(self, exps: tuple, c) -> "Polynomial":
        F = self.field
        if c == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): F.mul(x, c) for e, x in self._terms.items()},
        )

    def exquo(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        key = self.ring.key
        lm, inv = other.LM, F.inv(other.LC)
        rem = dict(self._terms)
        q: dict = {}
        while rem:
            m = max(rem, key=key)
            if any(a < b for a, b in zip(m, lm)):
                raise ArithmeticError(f"{other} does not divide {self}")
            shift = tuple(a - b for a, b in zip(m, lm))
            c = F.mul(rem[m], inv)
            q[shift] = c
            for e, x in other._terms.items():
                t = tuple(a + b for a, b in zip(e, shift))
                v = F.sub(rem.get(t, 0), F.mul(c, x))
                if v == 0:
                    rem.pop(t, None)
                else:
                    rem[t] = v
        return Polynomial(self.ring, q)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # conversion

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-home into ``ring`` matching variables by identity (field may change)."""
        if ring == self.ring:
            return self
        src = self.ring.gens
        idx = []
        for k, v in enumerate(src):
            if v in ring.index:
                idx.append(ring.index[v])
            else:
                idx.append(None)
        F = ring.field
        out: dict = {}
        for e, c in self._terms.items():
            t = [0] * ring.ngens
            for k, x in enumerate(e):
                if x:
                    if idx[k] is None:
                        raise KeyError(f"variable {src[k]} missing from target ring")
                    t[idx[k]] = x
            c = F.convert(c)
            if c == 0:
                continue
            t = tuple(t)
            if t in out:
                s = F.add(out[t], c)
                if s == 0:
                    del out[t]
                else:
                    out[t] = s
            else:
                out[t] = c
        return Polynomial(ring, out)

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"Polynomial({serialize(self)!r})"


# --------------------------------------------------------------------------
# operations named in the module contract


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def substitute(p: Polynomial, assignment: Mapping, ring: PolyRing | None = None) -> Polynomial:
    """Ring homomorphism sending each assigned variable to a polynomial or scalar.

    Unassigned variables are left fixed.  The target ring defaults to the
    common ring of the polynomial-valued images (or ``p.ring`` if all images
    are scalars).
    """
    assignment = {as_var(k): v for k, v in assignment.items()}
    if ring is None:
        rings = {v.ring for v in assignment.values() if isinstance(v, Polynomial)}
        if len(rings) > 1:
            raise IncompatibleFieldError("assignment values live in different rings")
        ring = rings.pop() if rings else p.ring
    images = []
    for v in p.ring.gens:
        if v in assignment:
            val = assignment[v]
            images.append(val.to_ring(ring) if isinstance(val, Polynomial) else ring(val))
        else:
            images.append(ring.var(v) if v in ring.index else None)
    powers: dict = {}

    def power(k, e):
        if (k, e) not in powers:
            if images[k] is None:
                raise KeyError(f"variable {p.ring.gens[k]} has no image in target ring")
            powers[(k, e)] = images[k] ** e
        return powers[(k, e)]

    result = ring.zero()
    F = ring.field
    for exps, c in p._terms.items():
        term = ring(F.convert(c))
        for k, e in enumerate(exps):
            if e:
                term = term * power(k, e)
        result = result + term
    return result


def monomial_by_index(m: int, k: int) -> tuple:
    """Exponent tuple of the ``k``-th monomial (1-based) in ``m`` variables.

    Monomials are listed by increasing degree and, inside one degree,
    lexicographically with ``Y1 > Y2 > ... > Ym``: ``1, Y1, Y2, Y1^2, Y1*Y2, ...``.
    """
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    d = 0
    while math.comb(d + m, m) < k:
        d += 1
    r = k - math.comb(d - 1 + m, m) - 1 if d else 0
    exps = []
    remaining = d
    for slot in range(m - 1):
        left = m - slot - 1
        for e in range(remaining, -1, -1):
            block = math.comb(remaining - e + left - 1, left - 1)
            if r < block:
                exps.append(e)
                remaining -= e
                break
            r -= block
    exps.append(remaining)
    return tuple(exps)


def monomial_index(exps: Sequence[int]) -> int:
    """Inverse of :func:`monomial_by_index`."""
    m = len(exps)
    d = sum(exps)
    r = 0
    remaining = d
    for slot in range(m - 1):
        left = m - slot - 1
        for e in range(remaining, exps[slot], -1):
            r += math.comb(remaining - e + left - 1, left - 1)
        remaining -= exps[slot]
    return (math.comb(d - 1 + m, m) if d else 0) + r + 1


# --------------------------------------------------------------------------
# text grammar


def _mono_str(ring: PolyRing, exps: tuple) -> str:
    parts = []
    for v, e in zip(ring.gens, exps):
        if e == 1:
            parts.append(str(v))
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def serialize(p: Polynomial) -> str:
    """Canonical text: terms in decreasing order, joined by `` + `` / `` - ``."""
    if p.is_zero():
        return "0"
    F = p.field
    rational = isinstance(F, RationalField)
    out = []
    for n, (exps, c) in enumerate(p.terms()):
        neg = rational and c < 0
        a = -c if neg else c
        mono = _mono_str(p.ring, exps)
        if not mono:
            body = F.to_str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{F.to_str(a)}*{mono}"
        if n == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>U\[\d+\]\[\d+\]\[\d+\]|[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


class _Parser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ParseError("unexpected character", text, pos)
            start = m.start(m.lastgroup)
            kind = m.lastgroup
            val = m.group(kind)
            if val == "**":
                val = "^"
            self.tokens.append((kind, val, start))
            pos = m.end()
        self.k = 0

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def fail(self, msg, pos=None):
        if pos is None:
            pos = self.peek()[2]
        raise ParseError(msg, self.text, pos)

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.fail("empty polynomial")
        p = self.expr()
        if self.k != len(self.tokens):
            self.fail("unexpected token")
        return p

    def expr(self):
        sign = 1
        kind, val, _ = self.peek()
        if val in ("+", "-"):
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.power()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.fail("can only divide by a nonzero constant", pos)
                acc = acc.scale(self.ring.field.inv(rhs.constant_value()))
        return acc

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                self.fail("expected a non-negative integer exponent", pos)
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return self.ring(int(val))
        if kind == "var":
            try:
                v = Var.parse(val)
            except ParseError as exc:
                self.fail(str(exc).split("\n")[0], pos)
            if v not in self.ring.index:
                self.fail(f"unknown variable {val!r}", pos)
            return self.ring.var(v)
        if val == "(":
            e = self.expr()
            if self.take()[1] != ")":
                self.fail("expected ')'")
            return e
        if val == "-":
            return -self.power()
        self.fail("expected a number, variable or '('", pos)
