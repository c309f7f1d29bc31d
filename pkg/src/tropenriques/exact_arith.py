"""Exact rational and prime-field arithmetic, and dense exact linear algebra.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator).  Matrices are handed around either as :class:`RationalMatrix`
or as plain sequences of rows; every routine here accepts both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

DEFAULT_MODULUS = 1009


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, an integer, or a Fraction into a reduced rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise TypeError("floating-point weights are not exact; pass 'p/q' strings")
    try:
        return Fraction(str(text).strip())
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class PrimeField:
    """The field Z/p.  Elements are plain ints in ``range(p)``."""

    def __init__(self, p: int = DEFAULT_MODULUS):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    characteristic = property(lambda self: self.p)

    def convert(self, c) -> int:
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def inv(self, c: int) -> int:
        if c % self.p == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return pow(c, -1, self.p)

    def to_text(self, c: int) -> str:
        # symmetric representative reads better and round-trips
        return str(c - self.p if c > self.p // 2 else c)


class RationalField:
    """The field Q with Fraction elements."""

    p = None
    characteristic = 0

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def convert(self, c) -> Fraction:
        return parse_rational(c)

    def inv(self, c: Fraction) -> Fraction:
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(c)

    def to_text(self, c: Fraction) -> str:
        return format_rational(Fraction(c))


QQ = RationalField()


@dataclass(frozen=True)
class PrimeFieldElement:
    residue: int
    modulus: int = DEFAULT_MODULUS

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.residue
        return int(other)

    def __add__(self, other):
        return PrimeFieldElement(self.residue + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElement(self.residue - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return PrimeFieldElement(self._coerce(other) - self.residue, self.modulus)

    def __mul__(self, other):
        return PrimeFieldElement(self.residue * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.modulus)

    def inverse(self) -> "PrimeFieldElement":
        if self.residue == 0:
            raise ZeroDivisionError("inverse of zero in prime field")
        return PrimeFieldElement(pow(self.residue, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * PrimeFieldElement(self._coerce(other), self.modulus).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElement(pow(self.residue, k, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, int):
            return self.residue == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __int__(self):
        return self.residue


class RationalMatrix:
    """Dense immutable rows x cols matrix of rationals."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        flat = tuple(Fraction(e) for e in entries)
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        self.rows = rows
        self.cols = cols
        self.entries = flat

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return RationalMatrix.from_rows(mat_mul(self.to_rows(), other.to_rows(), other.cols), other.cols)

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"


def _as_rows(m) -> tuple[list[list], int]:
    if isinstance(m, RationalMatrix):
        return m.to_rows(), m.cols
    rows = [list(r) for r in m]
    return rows, (len(rows[0]) if rows else 0)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence], b_cols: int | None = None) -> list[list]:
    if b_cols is None:
        b_cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * b_cols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def integer_row(row: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    den = 1
    for x in row:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def rank_exact(m) -> int:
    """Rank over Q by fraction-free integer elimination.

    Rows are cleared of denominators, kept sparse, and made primitive after
    every elimination step; a row is only touched when it has a nonzero entry
    in the pivot column.
    """
    rows, _ = _as_rows(m)
    pivots: dict[int, dict[int, int]] = {}
    for r in rows:
        vec = {j: v for j, v in enumerate(integer_row(r)) if v}
        while vec:
            c = min(vec)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = _primitive(vec)
                break
            a, b = piv[c], vec[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {j: a * v for j, v in vec.items()}
            for j, v in piv.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            vec = _primitive(new)
    return len(pivots)


def kernel_dim(m) -> int:
    """Dimension of the right kernel: cols - rank."""
    _, cols = _as_rows(m)
    return cols - rank_exact(m)


def bareiss_determinant(m) -> Fraction:
    """Determinant of a square matrix by Bareiss fraction-free elimination."""
    rows, n = _as_rows(m)
    if len(rows) != n:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    # clear denominators row by row and undo the scaling at the end
    den = 1
    a = []
    for r in rows:
        scale = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                scale = lcm(scale, x.denominator)
        den *= scale
        a.append([int(x * scale) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (akk * row_i[j] - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1]) / den


def bareiss_rank(m) -> int:
    """Rank by dense Bareiss elimination; slower reference for rank_exact."""
    rows, cols = _as_rows(m)
    a = [integer_row(r) for r in rows]
    nrows = len(a)
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, cols):
                row_i[j] = (p * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    rows, cols = _as_rows(m)
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def row_space_basis(vectors: Sequence[Sequence]) -> list[tuple[Fraction, ...]]:
    basis, _ = rref(vectors)
    return [tuple(b) for b in basis]


def nullspace(m, cols: int | None = None) -> list[tuple[Fraction, ...]]:
    """Canonical basis of the right kernel {x : m x = 0}."""
    rows, c = _as_rows(m)
    if cols is not None:
        c = cols
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(c)) for i in range(c)]
    red, pivots = rref(rows)
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * c
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def coordinates_in_rref(vec: Sequence, basis: Sequence[Sequence], pivots: Sequence[int]) -> list[Fraction]:
    """Coordinates of ``vec`` in an RREF basis (read off the pivot columns).

    Raises ValueError if ``vec`` is not in the span.
    """
    coords = [Fraction(vec[p]) for p in pivots]
    for j in range(len(vec)):
        s = sum((c * b[j] for c, b in zip(coords, basis)), Fraction(0))
        if s != vec[j]:
            raise ValueError("vector is not in the span of the basis")
    return coords


def solve_coordinates(vectors: Sequence[Sequence], basis: Sequence[Sequence]) -> list[list[Fraction]]:
    """Express each of ``vectors`` in terms of a linearly independent ``basis``."""
    k = len(basis)
    if k == 0:
        for v in vectors:
            if any(v):
                raise ValueError("vector is not in the span of the basis")
        return [[] for _ in vectors]
    d = len(basis[0])
    # augmented system basis^T c = v
    out = []
    cols = [[Fraction(basis[i][j]) for i in range(k)] for j in range(d)]
    for v in vectors:
        aug = [cols[j] + [Fraction(v[j])] for j in range(d)]
        red, piv = rref(aug)
        if k in piv:
            raise ValueError("vector is not in the span of the basis")
        c = [Fraction(0)] * k
        for row, p in zip(red, piv):
            c[p] = row[k]
        out.append(c)
    return out


def determinant(m) -> Fraction:
    return bareiss_determinant(m)


def wedge_basis(d: int, p: int) -> list[tuple[int, ...]]:
    """Index subsets of the lexicographic basis e_I of the p-th exterior power of R^d."""
    return list(combinations(range(d), p))


def wedge_coordinates(vectors: Sequence[Sequence], p: int, d: int | None = None) -> tuple[Fraction, ...]:
    """Coordinates of v_1 ^ ... ^ v_p in the lexicographic basis of the p-th exterior power.

    The coordinate on e_I is the p x p minor of the vectors on columns I.
    """
    if len(vectors) != p:
        raise ValueError(f"expected {p} vectors, got {len(vectors)}")
    if d is None:
        if p == 0:
            raise ValueError("ambient dimension required when p = 0")
        d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise ValueError("vector length does not match ambient dimension")
    if p == 0:
        return (Fraction(1),)
    return tuple(
        _small_det([[vectors[r][c] for c in idx] for r in range(p)])
        for idx in combinations(range(d), p)
    )


def compound_matrix(a: Sequence[Sequence], p: int) -> list[list[Fraction]]:
    """Matrix of the p-th exterior power of the linear map with matrix ``a``.

    Entry (I, J) is the minor of ``a`` on rows I and columns J.
    """
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    row_sets = list(combinations(range(n_rows), p))
    col_sets = list(combinations(range(n_cols), p))
    return [
        [_small_det([[a[i][j] for j in J] for i in I]) if p else Fraction(1) for J in col_sets]
        for I in row_sets
    ]


def _small_det(a: Sequence[Sequence]) -> Fraction:
    n = len(a)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(a[0][0])
    if n == 2:
        return Fraction(a[0][0] * a[1][1] - a[0][1] * a[1][0])
    if n == 3:
        return Fraction(
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    return bareiss_determinant(a)
