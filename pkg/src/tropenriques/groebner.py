"""Buchberger's algorithm and the ideal queries built on it.

Inside the engine a polynomial is a dict from integer order keys to
coefficients.  Order keys are linear in the exponent vector, so multiplying
by a monomial is adding its key, and the leading term of a working
polynomial is the largest key on a heap.  Exponent tuples are decoded only
when a divisibility test is needed.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .polyring import GREVLEX, MonomialOrder, Polynomial, PolynomialRing, _KEY_BASE


class Ideal:
    def __init__(self, ring: PolynomialRing, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if isinstance(g, str):
                g = ring.parse(g)
            if g.ring != ring:
                raise ValueError("generator lives in a different ring")
            gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)

    def __add__(self, other: "Ideal") -> "Ideal":
        if isinstance(other, Ideal):
            if other.ring != self.ring:
                raise ValueError("ideals live in different rings")
            return Ideal(self.ring, self.generators + other.generators)
        return Ideal(self.ring, self.generators + tuple(other))

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({[g.to_text() for g in self.generators]})"

    def groebner(self, order: MonomialOrder | None = None) -> "GroebnerBasis":
        return buchberger(self, order)

    def contains(self, f: Polynomial, order: MonomialOrder | None = None) -> bool:
        return normal_form(f, self.groebner(order)).is_zero()

    def is_subset_of(self, other: "Ideal") -> bool:
        gb = other.groebner()
        return all(normal_form(g, gb).is_zero() for g in self.generators)

    def equals(self, other: "Ideal") -> bool:
        """Ideal equality by two-way membership of generators."""
        return self.is_subset_of(other) and other.is_subset_of(self)


# -- key <-> exponent helpers ---------------------------------------------

def _decoder(order: MonomialOrder, n: int):
    B = _KEY_BASE
    if order.kind == "lex":
        def dec(k):
            e = [0] * n
            for i in range(n - 1, -1, -1):
                k, e[i] = divmod(k, B)
            return tuple(e)
        return dec

    def grevlex_digits(k, m):
        # digits (most significant first) are s_0..s_{m-1}; s_r = e_0+...+e_{m-1-r}
        s = [0] * m
        for r in range(m - 1, -1, -1):
            k, s[r] = divmod(k, B)
        e = [0] * m
        for r in range(m):
            nxt = s[r + 1] if r + 1 < m else 0
            e[m - 1 - r] = s[r] - nxt
        return k, e

    if order.kind == "grevlex":
        def dec(k):
            return tuple(grevlex_digits(k, n)[1])
        return dec

    b = order.block_size

    def dec(k):
        k, tail = grevlex_digits(k, n - b)
        _, head = grevlex_digits(k, b)
        return tuple(head + tail)
    return dec


class _Elt:
    """A monic basis element inside the engine."""

    __slots__ = ("lm", "lkey", "mask", "tail", "deg")

    def __init__(self, lm, lkey, tail, deg):
        self.lm = lm
        self.lkey = lkey
        self.mask = _mask(lm)
        self.tail = tail  # list of (key, coeff), leading term excluded
        self.deg = deg


def _mask(e) -> int:
    m = 0
    for i, x in enumerate(e):
        if x:
            m |= 1 << i
    return m


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


class _Engine:
    def __init__(self, ring: PolynomialRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.p = ring.field.p
        self.key = order.key
        self.decode = _decoder(order, ring.n)
        self.inv = ring.field.inv

    def to_dict(self, f: Polynomial) -> dict:
        key = self.key
        return {key(e): c for e, c in f.terms.items()}

    def to_poly(self, d: dict) -> Polynomial:
        dec = self.decode
        return Polynomial(self.ring, {dec(k): c for k, c in d.items()}, True)

    def make_elt(self, d: dict) -> _Elt:
        """Normalize a nonzero key-dict to a monic element."""
        lk = max(d)
        c = d[lk]
        p = self.p
        if p is None:
            inv = 1 / c
            tail = [(k, v * inv) for k, v in d.items() if k != lk]
        else:
            inv = pow(c, -1, p)
            tail = [(k, v * inv % p) for k, v in d.items() if k != lk]
        tail.sort(reverse=True)
        lm = self.decode(lk)
        return _Elt(lm, lk, tail, sum(lm))

    def elt_dict(self, g: _Elt) -> dict:
        d = dict(g.tail)
        d[g.lkey] = 1
        return d

    def find_divisor(self, e, emask, basis: Sequence[_Elt]):
        for g in basis:
            if g.mask & ~emask == 0 and _divides(g.lm, e):
                return g
        return None

    def reduce(self, f: dict, basis: Sequence[_Elt], full: bool = True) -> dict:
        """Normal form of f (consumed) with respect to ``basis``.

        With ``full=False`` stop at the first irreducible leading term.
        """
        p = self.p
        dec = self.decode
        heap = [-k for k in f]
        heapq.heapify(heap)
        rem = {}
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            k = -pop(heap)
            c = f.pop(k, None)
            if c is None:
                continue
            e = dec(k)
            g = self.find_divisor(e, _mask(e), basis)
            if g is None:
                rem[k] = c
                if not full:
                    for k2, c2 in f.items():
                        rem[k2] = c2
                    return rem
                continue
            shift = k - g.lkey
            if p is None:
                for k2, c2 in g.tail:
                    kk = shift + k2
                    old = f.get(kk)
                    if old is None:
                        f[kk] = -c * c2
                        push(heap, -kk)
                    else:
                        new = old - c * c2
                        if new:
                            f[kk] = new
                        else:
                            del f[kk]
            else:
                for k2, c2 in g.tail:
                    kk = shift + k2
                    old = f.get(kk)
                    if old is None:
                        f[kk] = (-c * c2) % p
                        push(heap, -kk)
                    else:
                        new = (old - c * c2) % p
                        if new:
                            f[kk] = new
                        else:
                            del f[kk]
        return rem

    def spoly(self, a: _Elt, b: _Elt) -> dict:
        lcm = tuple(max(x, y) for x, y in zip(a.lm, b.lm))
        lk = self.key(lcm)
        sa, sb = lk - a.lkey, lk - b.lkey
        p = self.p
        d = {}
        for k, c in a.tail:
            d[sa + k] = c
        for k, c in b.tail:
            kk = sb + k
            v = d.get(kk, 0) - c
            if p is not None:
                v %= p
            if v:
                d[kk] = v
            else:
                d.pop(kk, None)
        return d


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced, monic Groebner basis, sorted by decreasing leading monomial."""

    ring: PolynomialRing
    order: MonomialOrder
    elements: tuple
    _leading: tuple = field(repr=False, compare=False, default=())

    @property
    def leading_monomials(self) -> tuple:
        return self._leading

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        return any(sum(e) == 0 for e in self._leading)


def buchberger(ideal: Ideal, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger with Gebauer-Moeller pair pruning.

    Pairs are processed smallest lcm first (degree, then order), ties broken by
    insertion index, so the run is deterministic.
    """
    ring = ideal.ring
    if ring.n == 0:
        raise ValueError("polynomial ring has no variables")
    order = order or ring.order
    eng = _Engine(ring, order)
    polys: list[_Elt] = []
    G: list[int] = []
    pairs: dict[tuple[int, int], tuple] = {}
    heap: list = []

    def lcm_rank(i, j):
        lcm = _lcm(polys[i].lm, polys[j].lm)
        return (sum(lcm), eng.key(lcm), i, j), lcm

    def update(h: int):
        nonlocal G
        hl = polys[h].lm
        C = list(G)
        D = []
        while C:
            g1 = C.pop(0)
            l1 = _lcm(hl, polys[g1].lm)
            if _disjoint(hl, polys[g1].lm):
                D.append(g1)
                continue
            if any(_divides(_lcm(hl, polys[g2].lm), l1) for g2 in C) or \
                    any(_divides(_lcm(hl, polys[g2].lm), l1) for g2 in D):
                continue
            D.append(g1)
        E = [g for g in D if not _disjoint(hl, polys[g].lm)]
        for (a, b), (rank, lcm) in list(pairs.items()):
            if _divides(hl, lcm) and _lcm(polys[a].lm, hl) != lcm and _lcm(hl, polys[b].lm) != lcm:
                del pairs[(a, b)]
        for g in E:
            a, b = (g, h)
            rank, lcm = lcm_rank(a, b)
            pairs[(a, b)] = (rank, lcm)
            heapq.heappush(heap, (rank, (a, b)))
        G = [g for g in G if not _divides(hl, polys[g].lm)] + [h]

    def basis_elts():
        return [polys[g] for g in G]

    # seed with reduced generators in increasing leading term order
    seeds = []
    for f in ideal.generators:
        if f.ring != ring:
            raise ValueError("generator lives in a different ring")
        if f:
            seeds.append(eng.to_dict(f))
    seeds.sort(key=lambda d: max(d))
    for d in seeds:
        r = eng.reduce(d, basis_elts())
        if r:
            polys.append(eng.make_elt(r))
            update(len(polys) - 1)
            if polys[-1].deg == 0:
                break

    while heap and not any(polys[g].deg == 0 for g in G):
        rank, ab = heapq.heappop(heap)
        if ab not in pairs:
            continue
        del pairs[ab]
        a, b = ab
        s = eng.spoly(polys[a], polys[b])
        if not s:
            continue
        r = eng.reduce(s, basis_elts())
        if r:
            polys.append(eng.make_elt(r))
            update(len(polys) - 1)

    return _finalize(eng, basis_elts())


def _finalize(eng: _Engine, elts: list[_Elt]) -> GroebnerBasis:
    if any(g.deg == 0 for g in elts):
        one = eng.ring.one()
        return GroebnerBasis(eng.ring, eng.order, (one,), ((0,) * eng.ring.n,))
    # drop elements with redundant leading monomials, then inter-reduce tails
    elts = sorted(elts, key=lambda g: g.lkey)
    minimal = []
    for g in elts:
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = eng.reduce(dict(g.tail), others)
        d = dict(tail)
        d[g.lkey] = 1
        reduced.append(eng.make_elt(d))
    reduced.sort(key=lambda g: g.lkey, reverse=True)
    polys = tuple(eng.to_poly(eng.elt_dict(g)) for g in reduced)
    return GroebnerBasis(eng.ring, eng.order, polys, tuple(g.lm for g in reduced))


def _engine_for(gb: GroebnerBasis):
    eng = _Engine(gb.ring, gb.order)
    elts = [eng.make_elt(eng.to_dict(g)) for g in gb.elements]
    return eng, elts


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Remainder of f on division by the basis; zero iff f lies in the ideal."""
    if f.ring != gb.ring:
        raise ValueError("polynomial and basis live in different rings")
    eng, elts = _engine_for(gb)
    return eng.to_poly(eng.reduce(eng.to_dict(f), elts))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    order = order or f.ring.order
    eng = _Engine(f.ring, order)
    a = eng.make_elt(eng.to_dict(f))
    b = eng.make_elt(eng.to_dict(g))
    return eng.to_poly(eng.spoly(a, b))


def satisfies_buchberger_criterion(gb: GroebnerBasis) -> bool:
    """Every S-polynomial of the basis reduces to zero."""
    eng, elts = _engine_for(gb)
    for a, b in combinations(elts, 2):
        if eng.reduce(eng.spoly(a, b), elts):
            return False
    return True


def eliminate(ideal: Ideal, drop: Iterable) -> Ideal:
    """Generators of the elimination ideal, living in the ring without ``drop``.

    Variables may be given by index or name.  The ring is reordered with the
    dropped variables first, a block-order basis is computed, and the elements
    free of dropped variables are kept.
    """
    ring = ideal.ring
    drop_idx = sorted({ring.index(v) if isinstance(v, str) else int(v) for v in drop})
    if any(i < 0 or i >= ring.n for i in drop_idx):
        raise ValueError("variable to drop is not in the ring")
    keep_idx = [i for i in range(ring.n) if i not in drop_idx]
    perm = drop_idx + keep_idx
    work = PolynomialRing([ring.names[i] for i in perm], ring.field)
    sub = PolynomialRing([ring.names[i] for i in keep_idx], ring.field, ring.order)

    def permute(f: Polynomial) -> Polynomial:
        return Polynomial(work, {tuple(e[i] for i in perm): c for e, c in f.terms.items()}, True)

    gb = buchberger(Ideal(work, [permute(g) for g in ideal.generators]),
                    MonomialOrder.block(len(drop_idx)))
    k = len(drop_idx)
    out = []
    for g in gb.elements:
        if all(not any(e[:k]) for e in g.terms):
            out.append(Polynomial(sub, {e[k:]: c for e, c in g.terms.items()}, True))
    return Ideal(sub, out)


def _minimal_monomials(mons: Iterable[tuple]) -> list[tuple]:
    mons = sorted(set(mons), key=sum)
    out = []
    for m in mons:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def monomial_ideal_dimension(gens: Sequence[tuple], n: int) -> int:
    """Krull dimension of k[x]/(gens): largest variable set containing no generator's support."""
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = {frozenset(i for i, x in enumerate(g) if x) for g in gens}
    supports = [s for s in supports if not any(t < s for t in supports)]
    if not supports:
        return n
    for k in range(0, n + 1):
        for hit in combinations(range(n), k):
            hs = set(hit)
            if all(s & hs for s in supports):
                return n - k
    return 0


def cone_dimension(gb: GroebnerBasis) -> int:
    """Dimension of the affine cone; -1 for the unit ideal."""
    return monomial_ideal_dimension(gb.leading_monomials, gb.ring.n)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def hilbert_numerator(gens: Sequence[tuple], n: int) -> list[int]:
    """K-polynomial N(t) with HS(k[x]/I) = N(t) / (1-t)^n, for a monomial ideal I.

    Recursion on the generator list: N(I + m) = N(I) - t^deg(m) N(I : m).
    """
    @lru_cache(maxsize=None)
    def rec(gs: tuple) -> tuple:
        if not gs:
            return (1,)
        # pure powers of distinct variables form a regular sequence
        if all(sum(1 for x in g if x) == 1 for g in gs):
            num = [1]
            for g in gs:
                num = _poly_mul(num, [1] + [0] * (sum(g) - 1) + [-1])
            return tuple(num)
        *rest, m = gs
        rest = tuple(_minimal_monomials(rest))
        colon = tuple(_minimal_monomials(
            tuple(max(x - y, 0) for x, y in zip(g, m)) for g in rest))
        a = list(rec(rest))
        b = [0] * sum(m) + list(rec(colon))
        return tuple(_poly_sub(a, b))

    gs = tuple(_minimal_monomials(gens))
    # deterministic: sort by degree then exponent vector
    gs = tuple(sorted(gs, key=lambda g: (sum(g), g)))
    num = list(rec(gs))
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def hilbert_function(gb: GroebnerBasis, degree: int) -> int:
    """dim_k (k[x]/I)_degree read off the leading monomials."""
    num = hilbert_numerator(gb.leading_monomials, gb.ring.n)
    n = gb.ring.n
    # coefficient of t^degree in N(t) / (1-t)^n
    from math import comb
    total = 0
    for i, c in enumerate(num):
        if i <= degree and c:
            total += c * comb(degree - i + n - 1, n - 1)
    return total


def degree_projective(gb: GroebnerBasis) -> int:
    """Degree of the projective variety, from the Hilbert series numerator."""
    lms = gb.leading_monomials
    if gb.is_unit():
        raise ValueError("degree of the unit ideal is undefined")
    num = hilbert_numerator(lms, gb.ring.n)
    codim = 0
    while sum(num) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in num[:-1]:
            acc += c
            q.append(acc)
        num = q
        codim += 1
    if gb.ring.n - codim < 1:
        raise ValueError("ideal defines the empty projective variety")
    return sum(num)


def is_cone_trivial(gb: GroebnerBasis) -> bool:
    """True iff the ideal's zero set in affine space is {0} (projectively empty).

    Checked by requiring a pure power of every variable among the leading
    monomials.
    """
    n = gb.ring.n
    seen = set()
    for e in gb.leading_monomials:
        support = [i for i, x in enumerate(e) if x]
        if not support:
            return True
        if len(support) == 1:
            seen.add(support[0])
    return len(seen) == n


__all__ = [
    "Ideal", "GroebnerBasis", "buchberger", "normal_form", "eliminate", "cone_dimension",
    "degree_projective", "is_cone_trivial", "hilbert_numerator", "hilbert_function",
    "s_polynomial", "satisfies_buchberger_criterion", "monomial_ideal_dimension", "GREVLEX",
]
