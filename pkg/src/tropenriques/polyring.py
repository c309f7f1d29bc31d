"""Multivariate polynomials over a prime field or Q.

A polynomial is a map from exponent tuples to nonzero coefficients.  Prime
field coefficients are ints in ``range(p)``; rational coefficients are
Fractions.  Monomial orders are turned into integer sort keys so comparisons
stay cheap inside Buchberger.

Text format: integer (or ``p/q``) coefficients, ``*`` for products, ``^`` for
powers, e.g. ``z10^2-z9*z11`` or ``2*z2+z6+5*z7+8*z11``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from operator import add
from typing import Iterable, Mapping, Sequence

from .exact_arith import DEFAULT_MODULUS, QQ, PrimeField, RationalField

Monomial = tuple  # exponent vector

_KEY_BASE = 1 << 16  # exponents stay far below this


class MonomialOrder:
    """Graded reverse lex, lex, or a two-block elimination order.

    ``block(k)`` compares the first ``k`` variables by grevlex first; ties are
    broken by grevlex on the remaining variables.  Monomials involving any of
    the first ``k`` variables therefore dominate those that do not.
    """

    KINDS = ("grevlex", "lex", "block")

    def __init__(self, kind: str = "grevlex", block_size: int | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and (block_size is None or block_size < 0):
            raise ValueError("block order needs a nonnegative first-block size")
        self.kind = kind
        self.block_size = block_size if kind == "block" else None
        self._cache: dict[tuple, int] = {}

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def block(cls, first_block_size: int):
        return cls("block", first_block_size)

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {self.block_size})"
        return f"MonomialOrder({self.kind!r})"

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.block_size) == (other.kind, other.block_size)

    def __hash__(self):
        return hash((self.kind, self.block_size))

    @staticmethod
    def _grevlex_key(e: Sequence[int]) -> int:
        # digits are the partial sums e[0]+...+e[n-1-r] for r = 0..n-1
        key = 0
        s = sum(e)
        for r in range(len(e)):
            key = key * _KEY_BASE + s
            s -= e[len(e) - 1 - r]
        return key

    def key(self, e: Monomial) -> int:
        """Integer that sorts monomials in this order (larger = bigger monomial).

        The key is linear in the exponents, so key(a*b) == key(a) + key(b).
        """
        k = self._cache.get(e)
        if k is not None:
            return k
        if self.kind == "grevlex":
            k = self._grevlex_key(e)
        elif self.kind == "lex":
            k = 0
            for x in e:
                k = k * _KEY_BASE + x
        else:
            b = self.block_size
            tail = len(e) - b
            k = self._grevlex_key(e[:b]) * _KEY_BASE ** tail + self._grevlex_key(e[b:])
        self._cache[e] = k
        return k


GREVLEX = MonomialOrder.grevlex()


class PolynomialRing:
    """Polynomial ring context: variable names plus coefficient field."""

    def __init__(self, names: Sequence[str] | str, field=None, order: MonomialOrder | None = None):
        if isinstance(names, str):
            names = names.replace(",", " ").split()
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        self.field = field if field is not None else PrimeField(DEFAULT_MODULUS)
        self.order = order if order is not None else GREVLEX
        self.n = len(self.names)
        self._index = {v: i for i, v in enumerate(self.names)}

    def __repr__(self):
        return f"PolynomialRing({list(self.names)}, {self.field!r})"

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and self.names == other.names and self.field == other.field

    def __hash__(self):
        return hash((self.names, self.field))

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.names, self.field, order)

    @property
    def p(self):
        return self.field.p

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: c})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.n
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def var(self, name: str) -> "Polynomial":
        return self.gen(self.index(name))

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def from_terms(self, terms: Mapping[Monomial, object] | Iterable) -> "Polynomial":
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()


class Polynomial:
    """Immutable polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        field = ring.field
        out: dict[Monomial, object] = {}
        for e, c in items:
            e = tuple(e)
            if len(e) != ring.n:
                raise ValueError("monomial length does not match the ring")
            c = field.convert(c)
            s = out.get(e, 0) + c
            if field.p is not None:
                s %= field.p
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        self.terms = out

    # -- structure -------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError("polynomials live in different rings")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, object]]:
        key = (order or self.ring.order).key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=(order or self.ring.order).key)

    def leading_coefficient(self, order: MonomialOrder | None = None):
        return self.terms[self.leading_monomial(order)]

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coefficient(order))
        return self.scale(inv)

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.convert(c)
        if not c:
            return self.ring.zero()
        if f.p is None:
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()}, True)
        p = f.p
        return Polynomial(self.ring, {e: v * c % p for e, v in self.terms.items()}, True)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        p = self.ring.field.p
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if p is not None:
                s %= p
            if s:
                out[e] = s
            else:
                del out[e]
        return Polynomial(self.ring, out, True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p is None:
            return Polynomial(self.ring, {e: -c for e, c in self.terms.items()}, True)
        return Polynomial(self.ring, {e: (-c) % p for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        p = self.ring.field.p
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        if p is None:
            out = {e: c for e, c in out.items() if c}
        else:
            out = {e: c % p for e, c in out.items() if c % p}
        return Polynomial(self.ring, out, True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def derivative(self, i: int) -> "Polynomial":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return Polynomial(self.ring, out)

    def substitute_monomials(self, target: PolynomialRing, images: Sequence[Monomial]) -> "Polynomial":
        """Replace source variable i by the target monomial images[i]."""
        nt = target.n
        out: dict = {}
        for e, c in self.terms.items():
            m = [0] * nt
            for i, k in enumerate(e):
                if k:
                    img = images[i]
                    for j in range(nt):
                        m[j] += k * img[j]
            m = tuple(m)
            out[m] = out.get(m, 0) + c
        return Polynomial(target, out)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        field = self.ring.field
        parts = []
        for e, c in self.sorted_terms():
            ct = field.to_text(c)
            neg = ct.startswith("-")
            mag = ct[1:] if neg else ct
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            if factors:
                body = "*".join(factors) if mag == "1" else mag + "*" + "*".join(factors)
            else:
                body = mag
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("-" if neg else "+") + body)
        return "".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class _Parser:
    def __init__(self, ring: PolynomialRing, text: str):
        self.ring = ring
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", num))
            elif name is not None:
                self.tokens.append(("var", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ValueError("empty polynomial text")
        f = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("op", "+"):
            self.take()
        f = self.term() * sign
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            f = f + t if op == "+" else f - t
        return f

    def term(self) -> Polynomial:
        f = self.power()
        while self.peek() == ("op", "*"):
            self.take()
            f = f * self.power()
        return f

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or "/" in val:
                raise ValueError("exponent must be a nonnegative integer")
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            return self.ring.constant(Fraction(val))
        if kind == "var":
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            f = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return f
        if (kind, val) == ("op", "-"):
            return -self.atom()
        raise ValueError(f"unexpected token {val!r}")


class RingMap:
    """Ring map sending each source variable to a coefficient-1 monomial of the target."""

    def __init__(self, source: PolynomialRing, target: PolynomialRing, images: Sequence):
        if len(images) != source.n:
            raise ValueError(f"need {source.n} images, got {len(images)}")
        if source.field != target.field:
            raise ValueError("source and target fields differ")
        exps = []
        for img in images:
            if isinstance(img, str):
                img = target.parse(img)
            if isinstance(img, Polynomial):
                if img.ring != target or len(img.terms) != 1:
                    raise ValueError("ring map images must be single target monomials")
                (e, c), = img.terms.items()
                if c != target.field.convert(1):
                    raise ValueError("ring map images must have coefficient 1")
                img = e
            img = tuple(img)
            if len(img) != target.n:
                raise ValueError("image monomial has the wrong length")
            exps.append(img)
        self.source = source
        self.target = target
        self.images = tuple(exps)

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_ring_map(f, self)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise ValueError("polynomials live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def apply_ring_map(f: Polynomial, m: RingMap) -> Polynomial:
    if f.ring != m.source:
        raise ValueError("polynomial is not in the source ring of the map")
    return f.substitute_monomials(m.target, m.images)


def jacobian(gens: Sequence[Polynomial]) -> list[list[Polynomial]]:
    if not gens:
        return []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    return [[g.derivative(j) for j in range(ring.n)] for g in gens]


def determinant_poly(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Laplace expansion along the first row."""
    n = len(m)
    if n == 1:
        return m[0][0]
    ring = m[0][0].ring
    total = ring.zero()
    for j in range(n):
        if not m[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * determinant_poly(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def minors(m: Sequence[Sequence[Polynomial]], size: int) -> list[Polynomial]:
    """All size x size minors, rows and columns in lexicographic subset order."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if size < 1 or size > min(rows, cols):
        raise ValueError(f"minor size {size} exceeds matrix shape {rows}x{cols}")
    out = []
    for I in combinations(range(rows), size):
        for J in combinations(range(cols), size):
            out.append(determinant_poly([[m[i][j] for j in J] for i in I]))
    return out


def field_from_modulus(p: int | None):
    """PrimeField(p) for a modulus, RationalField for ``None`` or 0."""
    if not p:
        return QQ
    return PrimeField(p)


__all__ = [
    "MonomialOrder", "GREVLEX", "PolynomialRing", "Polynomial", "RingMap",
    "poly_arith", "apply_ring_map", "jacobian", "minors", "determinant_poly",
    "field_from_modulus", "RationalField", "PrimeField",
]
