"""Tropical hypersurfaces from valuation liftings, compactified in the toric variety of the Newton polytope.

Conventions (min-plus): the hypersurface of a lifting ``w`` is the set of
``v`` where ``min_m w(m) + <m, v>`` is attained at least twice.  A lattice
point of the Newton polytope whose coordinate ``m_i`` is 0 survives when
``v_i -> +inf``; that end of the i-th P^1 is the divisor ``x_i = 0``.

Strata of the compactification are indexed by faces G of the Newton
polytope (G = whole polytope is the mobile part).  Tangent vectors of
stratum G live in R^n / span(normal cone of G), represented here by the
orthogonal projection onto lin(G - G).  A face of the tropical complex is a
pair (G, tau), tau a cell of the regular subdivision contained in G with
dim tau >= 1; it has dimension dim G - dim tau.  Closure order:
(G', tau') <= (G, tau) iff G' is a face of G and tau is a face of tau'.

Sedentarity labels: on a box, ``-i`` is the facet ``m_i = 0`` (divisor
``x_i = 0``) and ``+i`` the facet ``m_i = d_i``; on the simplex ``d*Delta``
the far facet ``sum m = d`` is labelled 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import factorial, gcd
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .exact_arith import (bareiss_determinant, format_rational, mat_mul, nullspace,
                          parse_rational, rank_exact, rref, solve_coordinates)


class PreconditionError(ValueError):
    """Input violates an operation's precondition."""


# -- liftings ---------------------------------------------------------------

@dataclass(frozen=True)
class Lifting:
    """Rational weights nu(a_m) on every lattice point of a box or a dilated simplex."""

    n: int
    weights: Mapping[tuple, Fraction]
    box: tuple | None = None
    simplex: int | None = None
    meta: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if (self.box is None) == (self.simplex is None):
            raise ValueError("a lifting needs exactly one of box or simplex")
        if self.box is not None:
            box = tuple(int(d) for d in self.box)
            if len(box) != self.n or any(d < 1 for d in box):
                raise ValueError(f"box {self.box} does not match n={self.n}")
            object.__setattr__(self, "box", box)
        elif self.simplex < 1:
            raise ValueError("simplex degree must be positive")
        pts = set(self.lattice_points())
        w = {}
        for m, v in self.weights.items():
            m = tuple(int(x) for x in m)
            if m not in pts:
                raise ValueError(f"weight given at {m}, outside the Newton polytope")
            if v is None or (isinstance(v, str) and v.strip().lower() in ("inf", "+inf", "infinity")):
                raise ValueError(f"infinite weight at {m}: liftings must have full support")
            w[m] = parse_rational(v)
        missing = [m for m in self.lattice_points() if m not in w]
        if missing:
            raise ValueError(f"weights missing at {len(missing)} lattice points, e.g. {missing[0]}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def on_box(cls, box: Sequence[int], weights: Mapping, **meta) -> "Lifting":
        return cls(len(box), dict(weights), box=tuple(box), meta=meta)

    @classmethod
    def on_simplex(cls, n: int, degree: int, weights: Mapping, **meta) -> "Lifting":
        return cls(n, dict(weights), simplex=degree, meta=meta)

    def lattice_points(self) -> list[tuple]:
        if self.box is not None:
            return [tuple(m) for m in product(*(range(d + 1) for d in self.box))]
        d = self.simplex
        return [m for m in product(range(d + 1), repeat=self.n) if sum(m) <= d]

    @property
    def corner(self) -> tuple:
        """The vector d with m -> d - m the central symmetry of the box."""
        if self.box is None:
            raise PreconditionError("central symmetry is only defined for boxes")
        return self.box

    def is_symmetric(self) -> bool:
        if self.box is None:
            return False
        d = self.box
        return all(self.weights[tuple(di - mi for di, mi in zip(d, m))] == v
                   for m, v in self.weights.items())

    def to_json(self) -> dict:
        out = {"n": self.n}
        if self.box is not None:
            out["box"] = list(self.box)
        else:
            out["simplex"] = self.simplex
        out["weights"] = [{"m": list(m), "v": format_rational(self.weights[m])}
                          for m in self.lattice_points()]
        if self.meta:
            out["meta"] = dict(self.meta)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "Lifting":
        if "n" not in data or "weights" not in data:
            raise ValueError("lifting JSON needs 'n' and 'weights'")
        weights = {}
        for entry in data["weights"]:
            m = tuple(entry["m"])
            if m in weights:
                raise ValueError(f"duplicate weight at {m}")
            weights[m] = entry["v"]
        meta = dict(data.get("meta", {}))
        if "box" in data:
            return cls(int(data["n"]), weights, box=tuple(data["box"]), meta=meta)
        if "simplex" in data:
            return cls(int(data["n"]), weights, simplex=int(data["simplex"]), meta=meta)
        raise ValueError("lifting JSON needs 'box' or 'simplex'")

    @classmethod
    def load(cls, path) -> "Lifting":
        return cls.from_json(json.loads(Path(path).read_text()))


# -- point configurations ------------------------------------------------------

def _affine_dim(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank_exact([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def _direction_basis(points: Sequence[Sequence[int]]) -> list[tuple]:
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    if not diffs:
        return []
    red, _ = rref(diffs)
    return [tuple(r) for r in red]


class _Config:
    """Face enumeration for finite lattice point sets (exact, by supporting functionals)."""

    def __init__(self, coords: Sequence[tuple]):
        self.coords = coords
        self._dims: dict[frozenset, int] = {}

    def dim(self, s: frozenset) -> int:
        d = self._dims.get(s)
        if d is None:
            d = _affine_dim([self.coords[i] for i in sorted(s)])
            self._dims[s] = d
        return d

    def facets(self, s: frozenset) -> list[frozenset]:
        k = self.dim(s)
        if k <= 0:
            return []
        idx = sorted(s)
        if len(idx) == k + 1:
            return [s - {i} for i in idx]
        pts = {i: self.coords[i] for i in idx}
        basis = _direction_basis([pts[i] for i in idx])
        out = set()
        for sub in combinations(idx, k):
            base = pts[sub[0]]
            diffs = [[a - b for a, b in zip(pts[i], base)] for i in sub[1:]]
            # functional f = sum c_j basis_j with <f, diff> = 0 for all diffs
            rows = [[sum(Fraction(x) * y for x, y in zip(d, b)) for b in basis] for d in diffs]
            ker = nullspace(rows, cols=k) if rows else nullspace([], cols=k)
            if len(ker) != 1:
                continue
            c = ker[0]
            f = [sum(cj * b[t] for cj, b in zip(c, basis)) for t in range(len(base))]
            vals = {i: sum(a * b for a, b in zip(f, pts[i])) for i in idx}
            v0 = vals[sub[0]]
            lo = all(v >= v0 for v in vals.values())
            hi = all(v <= v0 for v in vals.values())
            if lo or hi:
                out.add(frozenset(i for i in idx if vals[i] == v0))
        return sorted(out, key=lambda f: sorted(f))

    def all_faces(self, s: frozenset) -> set[frozenset]:
        """All nonempty faces of conv(s), including s itself."""
        out = {s}
        stack = [s]
        while stack:
            f = stack.pop()
            for g in self.facets(f):
                if g not in out:
                    out.add(g)
                    stack.append(g)
        return out

    def simplices_of(self, s: frozenset) -> list[tuple]:
        """A pulling triangulation of conv(s) into simplices (tuples of point indices)."""
        k = self.dim(s)
        idx = sorted(s)
        if k <= 0:
            return [(idx[0],)]
        if len(idx) == k + 1:
            return [tuple(idx)]
        apex = idx[0]
        out = []
        for f in self.facets(s):
            if apex in f:
                continue
            for simplex in self.simplices_of(f):
                out.append((apex,) + simplex)
        return out


def _det_vec(m):
    """Determinants of a stack of k x k matrices, exact for int64 or object arrays."""
    k = m.shape[-1]
    if k == 1:
        return m[..., 0, 0]
    if k == 2:
        return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    total = None
    for j in range(k):
        minor = np.delete(np.delete(m, 0, axis=-2), j, axis=-1)
        term = m[..., 0, j] * _det_vec(minor)
        if total is None:
            total = term
        elif j % 2:
            total = total - term
        else:
            total = total + term
    return total


# -- regular subdivisions -------------------------------------------------------

@dataclass(frozen=True)
class Subdivision:
    points: tuple           # lattice points, index = position
    cells: tuple            # frozensets of point indices, full-dimensional

    @cached_property
    def _config(self) -> _Config:
        return _Config(self.points)

    @cached_property
    def faces(self) -> dict:
        """All faces of all cells, mapped to their dimension."""
        out = {}
        for c in self.cells:
            for f in self._config.all_faces(c):
                out[f] = self._config.dim(f)
        return out

    def cell_points(self, cell) -> list[tuple]:
        return [self.points[i] for i in sorted(cell)]

    def face_counts(self) -> list[int]:
        n = len(self.points[0])
        counts = [0] * (n + 1)
        for d in self.faces.values():
            counts[d] += 1
        return counts

    def normalized_volumes(self) -> list[int]:
        """Normalized volume of each cell (sum over a triangulation of |det|)."""
        out = []
        for c in self.cells:
            total = 0
            for s in self._config.simplices_of(c):
                base = self.points[s[0]]
                total += abs(bareiss_determinant([[a - b for a, b in zip(self.points[i], base)]
                                                   for i in s[1:]]))
            out.append(int(total))
        return out

    def to_json(self) -> dict:
        return {
            "points": [list(p) for p in self.points],
            "cells": [sorted(c) for c in self.cells],
            "cell_vertices": [[list(self.points[i]) for i in sorted(c)] for c in self.cells],
            "face_counts": self.face_counts(),
            "unimodular_triangulation": is_unimodular_triangulation(self),
        }


def regular_subdivision(l: Lifting) -> Subdivision:
    """Project the lower convex hull of the lifted points {(m, nu(a_m))}.

    Every (n+1)-subset of points with affinely independent projection spans a
    non-vertical hyperplane; it is a lower supporting hyperplane when no lifted
    point lies strictly below it.  The cell is the set of lifted points on it.
    """
    pts = l.lattice_points()
    n = l.n
    scale = 1
    for v in l.weights.values():
        scale = scale * v.denominator // gcd(scale, v.denominator)
    W = [int(l.weights[m] * scale) for m in pts]
    lifted = [list(m) + [w, 1] for m, w in zip(pts, W)]
    bound = max(max(abs(x) for x in row) for row in lifted)
    big = (n + 2) * factorial(n + 1) * bound ** (n + 2) >= 2 ** 62
    dtype = object if big else np.int64
    L = np.array(lifted, dtype=dtype)
    cells = set()
    all_subsets = combinations(range(len(pts)), n + 1)
    chunk = 20000
    while True:
        batch = list(_take(all_subsets, chunk))
        if not batch:
            break
        idx = np.array(batch, dtype=np.int64)
        M = L[idx]  # S x (n+1) x (n+2)
        N = np.empty((len(batch), n + 2), dtype=dtype)
        for k in range(n + 2):
            sub = np.delete(M, k, axis=-1)
            d = _det_vec(sub)
            N[:, k] = d if k % 2 == 0 else -d
        nw = N[:, n]
        ok = nw != 0
        if not ok.any():
            continue
        N = N[ok]
        sgn = np.where(N[:, n] > 0, 1, -1).astype(dtype)
        N = N * sgn[:, None]
        V = L @ N.T  # points x S
        lower = (V >= 0).all(axis=0)
        for col in np.nonzero(lower)[0]:
            cells.add(frozenset(int(i) for i in np.nonzero(V[:, col] == 0)[0]))
    cells = tuple(sorted(cells, key=lambda c: sorted(c)))
    return Subdivision(tuple(pts), cells)


def _take(it, k):
    for _ in range(k):
        try:
            yield next(it)
        except StopIteration:
            return


def is_unimodular_triangulation(s: Subdivision) -> bool:
    """Every cell is a lattice simplex of normalized volume 1."""
    n = len(s.points[0])
    for c in s.cells:
        if len(c) != n + 1:
            return False
        pts = s.cell_points(c)
        base = pts[0]
        if abs(bareiss_determinant([[a - b for a, b in zip(p, base)] for p in pts[1:]])) != 1:
            return False
    return True


# -- Newton polytope and strata -------------------------------------------------------

@dataclass(frozen=True)
class Stratum:
    """A face G of the Newton polytope and the orbit of the toric variety it indexes."""

    index: int
    points: frozenset        # lattice point indices lying in G
    labels: frozenset        # facet labels containing G (the sedentarity)
    dim: int
    projection: tuple        # orthogonal projection R^n -> lin(G - G), as rows

    @property
    def codim(self) -> int:
        return len(self.projection) - self.dim


class NewtonPolytope:
    def __init__(self, l: Lifting):
        self.n = l.n
        self.points = l.lattice_points()
        n = self.n
        # facets as (label, inner normal a, offset b): a.m >= b on the polytope
        if l.box is not None:
            facets = []
            for i, d in enumerate(l.box):
                e = tuple(int(j == i) for j in range(n))
                facets.append((-(i + 1), e, 0))
                facets.append((i + 1, tuple(-x for x in e), -d))
        else:
            facets = [(-(i + 1), tuple(int(j == i) for j in range(n)), 0) for i in range(n)]
            facets.append((0, tuple([-1] * n), -l.simplex))
        self.facets = facets
        on = {lab: frozenset(k for k, m in enumerate(self.points)
                             if sum(a * x for a, x in zip(normal, m)) == b)
              for lab, normal, b in facets}
        self.facet_points = on
        self.facet_normals = {lab: normal for lab, normal, _ in facets}
        found: dict[frozenset, frozenset] = {}
        labels = [f[0] for f in facets]
        for r in range(len(labels) + 1):
            for sub in combinations(labels, r):
                pts = frozenset(range(len(self.points)))
                for lab in sub:
                    pts &= on[lab]
                if pts and pts not in found:
                    found[pts] = frozenset(lab for lab in labels if pts <= on[lab])
        strata = []
        for k, (pts, labs) in enumerate(sorted(found.items(), key=lambda kv: (len(kv[1]), sorted(kv[1])))):
            coords = [self.points[i] for i in sorted(pts)]
            basis = _direction_basis(coords)
            strata.append(Stratum(k, pts, labs, len(basis), _projection(basis, n)))
        self.strata = strata
        self.mobile = strata[0]
        assert self.mobile.labels == frozenset()

    def smallest_stratum_containing(self, cell: frozenset) -> Stratum:
        best = None
        for s in self.strata:
            if cell <= s.points and (best is None or s.dim < best.dim):
                best = s
        return best

    def facet_normal_toward(self, g: Stratum, k: Stratum) -> tuple:
        """Inner normal of the facet k of g, inside lin(g - g): the direction toward stratum k."""
        new = sorted(k.labels - g.labels)
        a = self.facet_normals[new[0]]
        return tuple(_apply(g.projection, a))


def _projection(basis: Sequence[Sequence], n: int) -> tuple:
    if not basis:
        return tuple(tuple(Fraction(0) for _ in range(n)) for _ in range(n))
    D = [[Fraction(x) for x in b] for b in basis]
    gram = mat_mul(D, [list(col) for col in zip(*D)])
    inv = _inverse(gram)
    # P = D^T gram^{-1} D
    tmp = mat_mul(inv, D)
    DT = [list(col) for col in zip(*D)]
    P = mat_mul(DT, tmp)
    return tuple(tuple(Fraction(x) for x in row) for row in P)


def _inverse(a):
    k = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv[:k] != list(range(k)):
        raise ValueError("singular matrix")
    return [row[k:] for row in red]


def _apply(mat, v):
    return [sum(Fraction(a) * b for a, b in zip(row, v)) for row in mat]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# -- tropical faces and complexes ---------------------------------------------------

@dataclass
class TropicalFace:
    id: int
    dim: int
    stratum: Stratum
    dual_cell: frozenset          # point indices of tau
    tangent: tuple                # RREF basis of the tangent space, doubles as orientation
    point: tuple                  # interior point, representative in lin(G - G)
    rays: tuple                   # recession generators
    boundary: dict = field(default_factory=dict)   # facet id -> incidence sign
    coboundary: list = field(default_factory=list)

    @property
    def sedentarity(self) -> frozenset:
        return self.stratum.labels

    @property
    def sedentarity_size(self) -> int:
        return self.stratum.codim


class TropicalComplex:
    def __init__(self, lifting: Lifting, polytope: NewtonPolytope, subdivision: Subdivision,
                 faces: list[TropicalFace]):
        self.lifting = lifting
        self.polytope = polytope
        self.subdivision = subdivision
        self.faces = faces
        self.n = lifting.n
        self.dim = self.n - 1
        self._by_key = {(f.stratum.index, f.dual_cell): f for f in faces}

    def faces_of_dim(self, q: int) -> list[TropicalFace]:
        return [f for f in self.faces if f.dim == q]

    def face(self, stratum_index: int, cell: frozenset) -> TropicalFace:
        return self._by_key[(stratum_index, cell)]

    def closure(self, face_id: int) -> set[int]:
        out = {face_id}
        stack = [face_id]
        while stack:
            for g in self.faces[stack.pop()].boundary:
                if g not in out:
                    out.add(g)
                    stack.append(g)
        return out

    def star(self, face_id: int) -> set[int]:
        out = {face_id}
        stack = [face_id]
        while stack:
            for g in self.faces[stack.pop()].coboundary:
                if g not in out:
                    out.add(g)
                    stack.append(g)
        return out

    def face_json(self, f: TropicalFace) -> dict:
        pts = self.subdivision.points
        return {
            "id": f.id,
            "dim": f.dim,
            "sedentarity": sorted(f.sedentarity),
            "dual_cell": [list(pts[i]) for i in sorted(f.dual_cell)],
            "point": _display_point(self, f),
            "rays": [[format_rational(x) for x in r] for r in f.rays],
            "tangent_basis": [[format_rational(x) for x in t] for t in f.tangent],
            "boundary": [[g, s] for g, s in sorted(f.boundary.items())],
            "coboundary": sorted(f.coboundary),
        }

    def to_json(self) -> dict:
        return {"n": self.n, "faces": [self.face_json(f) for f in self.faces],
                "census": census_table(strata_census(self), self.n)}


def _display_point(c: TropicalComplex, f: TropicalFace) -> list[str]:
    out = [format_rational(x) for x in f.point]
    if c.lifting.box is not None:
        for lab in f.sedentarity:
            i = abs(lab) - 1
            out[i] = "inf" if lab < 0 else "-inf"
    return out


def _tangent_basis(stratum: Stratum, cell_pts: Sequence[tuple], n: int) -> tuple:
    rows = [[Fraction(a - b) for a, b in zip(p, cell_pts[0])] for p in cell_pts[1:]]
    # the kernel of the projection is lin(G - G)^perp
    normal_space = nullspace([list(r) for r in stratum.projection], cols=n)
    rows += [list(v) for v in normal_space]
    basis = nullspace(rows, cols=n) if rows else nullspace([], cols=n)
    return tuple(tuple(b) for b in basis)


def _dual_vertex(l: Lifting, stratum: Stratum, cell_pts: Sequence[tuple], n: int) -> list[Fraction]:
    """Point of lin(G - G) where all monomials of a maximal cell of G take the same value."""
    basis = _direction_basis(cell_pts)  # spans lin(G - G) since the cell is full in G
    k = len(basis)
    # unknowns c_1..c_k (v = sum c_j b_j) and lambda: w(m) + <m, v> - lambda = 0
    rows = []
    rhs = []
    for m in cell_pts[:k + 1]:
        rows.append([_dot(m, b) for b in basis] + [Fraction(-1)])
        rhs.append(-l.weights[m])
    aug = [r + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug)
    if piv != list(range(k + 1)):
        raise AssertionError("dual vertex system is singular")
    c = [row[-1] for row in red][:k]
    return [sum((cj * b[t] for cj, b in zip(c, basis)), Fraction(0)) for t in range(n)]


def trop_value_argmin(l: Lifting, v: Sequence, points: Sequence[tuple] | None = None) -> tuple[Fraction, list[tuple]]:
    pts = points if points is not None else l.lattice_points()
    vals = [(l.weights[m] + _dot(m, v), m) for m in pts]
    best = min(x for x, _ in vals)
    return best, [m for x, m in vals if x == best]


def trop_membership(l: Lifting, v: Sequence) -> bool:
    """True iff min_m nu(a_m) + <m, v> is attained at least twice."""
    if len(v) != l.n:
        raise ValueError(f"point has {len(v)} coordinates, lifting lives in dimension {l.n}")
    v = [parse_rational(x) if not isinstance(x, (int, Fraction)) else Fraction(x) for x in v]
    _, arg = trop_value_argmin(l, v)
    return len(arg) >= 2


def _orientation_sign(vectors: Sequence[Sequence], basis: Sequence[Sequence]) -> int:
    if not basis:
        return 1
    coords = solve_coordinates(vectors, basis)
    # rows of coords are the vectors in basis coordinates
    d = bareiss_determinant(coords)
    if d == 0:
        raise AssertionError("degenerate orientation data")
    return 1 if d > 0 else -1


def dual_complex(l: Lifting) -> TropicalComplex:
    """Compactified tropical hypersurface dual to a unimodular regular triangulation."""
    sub = regular_subdivision(l)
    if not is_unimodular_triangulation(sub):
        raise PreconditionError("the lifting does not induce a unimodular triangulation")
    poly = NewtonPolytope(l)
    n = l.n
    pts = sub.points
    faces: list[TropicalFace] = []
    key_to_id: dict[tuple, int] = {}
    sub_faces = sub.faces

    for stratum in poly.strata:
        if stratum.dim < 1:
            continue
        cells_in = [t for t, d in sub_faces.items() if d >= 1 and t <= stratum.points]
        maximal = [t for t in cells_in if sub_faces[t] == stratum.dim]
        for tau in sorted(cells_in, key=lambda t: (-sub_faces[t], sorted(t))):
            tau_pts = [pts[i] for i in sorted(tau)]
            tangent = _tangent_basis(stratum, tau_pts, n)
            q = stratum.dim - sub_faces[tau]
            if len(tangent) != q:
                raise AssertionError("tangent space has the wrong dimension")
            verts = [_dual_vertex(l, stratum, [pts[i] for i in sorted(c)], n)
                     for c in maximal if tau <= c]
            hull = poly.smallest_stratum_containing(tau)
            rays = []
            for k in poly.strata:
                if k.dim == stratum.dim - 1 and k.labels > stratum.labels and hull.points <= k.points:
                    rays.append(tuple(poly.facet_normal_toward(stratum, k)))
            point = [sum((v[t] for v in verts), Fraction(0)) / len(verts) for t in range(n)]
            for r in rays:
                point = [a + b for a, b in zip(point, r)]
            _, arg = trop_value_argmin(l, point, [pts[i] for i in sorted(stratum.points)])
            if set(arg) != set(tau_pts):
                raise AssertionError(f"interior point of face dual to {tau_pts} is misplaced")
            f = TropicalFace(len(faces), q, stratum, tau, tangent, tuple(point), tuple(rays))
            key_to_id[(stratum.index, tau)] = f.id
            faces.append(f)

    # incidences between a face and its codimension-one faces
    for f in faces:
        if f.dim == 0:
            continue
        g = f.stratum
        tau = f.dual_cell
        tau_pts = [pts[i] for i in sorted(tau)]
        # same stratum: tau' = tau plus one point
        for t2, d2 in sub_faces.items():
            if d2 == sub_faces[tau] + 1 and tau < t2 and t2 <= g.points:
                h = faces[key_to_id[(g.index, t2)]]
                extra = pts[next(iter(t2 - tau))]
                delta = [a - b for a, b in zip(extra, tau_pts[0])]
                u_in = None
                for b in f.tangent:
                    s = _dot(delta, b)
                    if s:
                        u_in = tuple(x if s > 0 else -x for x in b)
                        break
                u_out = tuple(-x for x in u_in)
                sign = _orientation_sign([u_out] + list(h.tangent), f.tangent)
                f.boundary[h.id] = sign
                h.coboundary.append(f.id)
        # stratum change: same tau inside a facet k of g
        for k in poly.strata:
            if k.dim == g.dim - 1 and k.labels > g.labels and tau <= k.points:
                h = faces[key_to_id[(k.index, tau)]]
                u_out = poly.facet_normal_toward(g, k)
                sign = _orientation_sign([u_out] + list(h.tangent), f.tangent)
                f.boundary[h.id] = sign
                h.coboundary.append(f.id)
    for f in faces:
        f.coboundary.sort()
    return TropicalComplex(l, poly, sub, faces)


def strata_census(c: TropicalComplex) -> dict:
    """Counts of faces by (dimension, |sedentarity|)."""
    out: dict[tuple[int, int], int] = {}
    for f in c.faces:
        key = (f.dim, f.sedentarity_size)
        out[key] = out.get(key, 0) + 1
    return out


def census_table(census: Mapping, n: int) -> list[list[int]]:
    """Rows by face dimension 0..n-1, columns by |sedentarity| 0..n-1-dim."""
    return [[census.get((q, s), 0) for s in range(n - q)] for q in range(n)]


@dataclass(frozen=True)
class AffineMap:
    """v -> offset + matrix v, exact over Q."""

    matrix: tuple
    offset: tuple

    def __call__(self, v: Sequence) -> tuple:
        return tuple(o + sum(Fraction(a) * x for a, x in zip(row, v))
                     for row, o in zip(self.matrix, self.offset))


def tropicalize_monomial_map(exponents: Sequence[Sequence[int]], valuations: Sequence) -> AffineMap:
    """Tropicalization of t -> (b_i t^{a_i})_i: the affine map v -> nu(b_i) + a_i . v."""
    if len(exponents) != len(valuations):
        raise ValueError("one valuation per exponent row")
    return AffineMap(tuple(tuple(Fraction(x) for x in row) for row in exponents),
                     tuple(parse_rational(b) if not isinstance(b, (int, Fraction)) else Fraction(b)
                           for b in valuations))


def involution_pairing(c: TropicalComplex) -> tuple[dict[int, int], bool]:
    """Face permutation induced by v -> -v, and whether the origin avoids the hypersurface."""
    l = c.lifting
    if not l.is_symmetric():
        raise PreconditionError("lifting is not centrally symmetric")
    d = l.corner
    pts = c.subdivision.points
    index = {m: i for i, m in enumerate(pts)}

    def reflect(s: frozenset) -> frozenset:
        return frozenset(index[tuple(di - x for di, x in zip(d, pts[i]))] for i in s)

    by_points = {s.points: s for s in c.polytope.strata}
    perm = {}
    for f in c.faces:
        g = by_points[reflect(f.stratum.points)]
        perm[f.id] = c.face(g.index, reflect(f.dual_cell)).id
    fixed_point_free = not trop_membership(l, [0] * l.n)
    return perm, fixed_point_free


def load_complex(path) -> TropicalComplex:
    return dual_complex(Lifting.load(path))
