"""Tropical (p, q)-homology of compactified tropical hypersurfaces over Q.

C_{p,q} is the direct sum over q-faces D of the multitangent spaces F_p(D).
The differential of a q-face D to a facet D' is the incidence sign times the
map F_p(D) -> F_p(D') induced by the projection onto the tangent directions
of the stratum of D' (the identity when both lie in the same stratum).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact_arith import (RationalMatrix, bareiss_determinant, compound_matrix, coordinates_in_rref,
                          mat_mul, nullspace, rank_exact, rref, solve_coordinates, wedge_coordinates)
from .tropical_complex import TropicalComplex, involution_pairing


class ComplexError(ArithmeticError):
    """The assembled chain data is inconsistent (d o d != 0, bad action, ...)."""


@dataclass(frozen=True)
class MultitangentSpace:
    face_id: int
    p: int
    basis: tuple            # RREF rows in the lexicographic basis of the p-th exterior power of R^n
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, vec) -> list[Fraction]:
        return coordinates_in_rref(vec, self.basis, self.pivots)


def _wedges(tangent, p: int, n: int) -> list[tuple]:
    return [wedge_coordinates([tangent[i] for i in idx], p, n) for idx in combinations(range(len(tangent)), p)]


def multitangent(c: TropicalComplex, face_id: int, p: int) -> MultitangentSpace:
    """F_p of a face: span of the p-fold wedges of tangent spaces of the faces around it.

    Only faces of the same stratum contribute; a face of a larger stratum projects onto
    a tangent space that already belongs to a same-stratum face of the star.
    """
    if not 0 <= face_id < len(c.faces):
        raise ValueError(f"no face with id {face_id}")
    if p < 0 or p > c.dim:
        raise ValueError(f"p must lie in 0..{c.dim}")
    cache = c.__dict__.setdefault("_multitangent_cache", {})
    key = (face_id, p)
    if key in cache:
        return cache[key]
    if p == 0:
        space = MultitangentSpace(face_id, 0, ((Fraction(1),),), (0,))
    else:
        face = c.faces[face_id]
        gens = []
        for e in c.star(face_id):
            other = c.faces[e]
            if other.stratum.index == face.stratum.index and len(other.tangent) >= p:
                gens.extend(_wedges(other.tangent, p, c.n))
        if gens:
            red, piv = rref(gens)
            space = MultitangentSpace(face_id, p, tuple(tuple(r) for r in red), tuple(piv))
        else:
            space = MultitangentSpace(face_id, p, (), ())
    cache[key] = space
    return space


@dataclass
class PQChainComplex:
    p: int
    groups: list                  # per q: list of MultitangentSpace
    offsets: list                 # per q: face id -> first column of its block
    differentials: dict           # q -> dense rows of d_q : C_q -> C_{q-1}
    action: dict | None = None    # q -> dense square matrix
    pairing: dict | None = None
    _ranks: dict = field(default_factory=dict)

    @property
    def top(self) -> int:
        return len(self.groups) - 1

    def dims(self) -> list[int]:
        return [sum(s.dim for s in g) for g in self.groups]

    def matrix(self, q: int) -> RationalMatrix:
        rows = self.differentials.get(q)
        if rows is None:
            return RationalMatrix.zeros(self.dims()[q - 1] if q >= 1 else 0, self.dims()[q] if q <= self.top else 0)
        return RationalMatrix.from_rows(rows, cols=self.dims()[q])

    def rank(self, q: int) -> int:
        if q not in self._ranks:
            rows = self.differentials.get(q)
            self._ranks[q] = rank_exact(rows) if rows else 0
        return self._ranks[q]


def build_complex(c: TropicalComplex, p: int) -> PQChainComplex:
    if p < 0 or p > c.dim:
        raise ValueError(f"p must lie in 0..{c.dim}")
    groups, offsets = [], []
    for q in range(c.dim + 1):
        spaces, off, pos = [], {}, 0
        for f in c.faces_of_dim(q):
            s = multitangent(c, f.id, p)
            if s.dim:
                spaces.append(s)
                off[f.id] = pos
                pos += s.dim
        groups.append(spaces)
        offsets.append(off)
    dims = [sum(s.dim for s in g) for g in groups]
    compounds = {}
    diffs = {}
    for q in range(1, c.dim + 1):
        rows = [[0] * dims[q] for _ in range(dims[q - 1])]
        for s in groups[q]:
            f = c.faces[s.face_id]
            col0 = offsets[q][f.id]
            for g_id, sign in f.boundary.items():
                if g_id not in offsets[q - 1]:
                    continue
                target = multitangent(c, g_id, p)
                row0 = offsets[q - 1][g_id]
                g = c.faces[g_id]
                if g.stratum.index != f.stratum.index:
                    key = g.stratum.index
                    if key not in compounds:
                        compounds[key] = compound_matrix(g.stratum.projection, p)
                    lam = compounds[key]
                    images = [[sum(a * b for a, b in zip(r, vec)) for r in lam] for vec in s.basis]
                else:
                    images = list(s.basis)
                for j, img in enumerate(images):
                    try:
                        coords = target.coordinates(img)
                    except ValueError as exc:
                        raise ComplexError(f"image of F_{p} of face {f.id} leaves F_{p} of face {g_id}") from exc
                    for k, x in enumerate(coords):
                        if x:
                            rows[row0 + k][col0 + j] += sign * x
        diffs[q] = rows
    cc = PQChainComplex(p, groups, offsets, diffs)
    for q in range(2, c.dim + 1):
        prod = mat_mul(diffs[q - 1], diffs[q], dims[q])
        if any(x for row in prod for x in row):
            raise ComplexError(f"d_{q - 1} o d_{q} is not zero for p = {p}")
    return cc


def homology_dims(cc: PQChainComplex) -> list[int]:
    dims = cc.dims()
    out = []
    for q in range(cc.top + 1):
        out.append(dims[q] - (cc.rank(q) if q >= 1 else 0) - (cc.rank(q + 1) if q < cc.top else 0))
    return out


def euler_characteristic(cc: PQChainComplex) -> int:
    return sum((-1) ** q * d for q, d in enumerate(cc.dims()))


def _orientation_flip(c: TropicalComplex, face_id: int, image_id: int) -> int:
    """Sign of v -> -v from the chosen orientation of a face to that of its image."""
    src, dst = c.faces[face_id].tangent, c.faces[image_id].tangent
    if not src:
        return 1
    coords = solve_coordinates([[-x for x in v] for v in src], dst)
    d = bareiss_determinant(coords)
    return 1 if d > 0 else -1


def involution_action(c: TropicalComplex, cc: PQChainComplex, pairing: dict | None = None) -> PQChainComplex:
    """Attach the chain map of v -> -v: permuted blocks times (-1)^p times the orientation flip."""
    if pairing is None:
        pairing, _ = involution_pairing(c)
    p = cc.p
    dims = cc.dims()
    action = {}
    for q in range(cc.top + 1):
        a = [[0] * dims[q] for _ in range(dims[q])]
        for s in cc.groups[q]:
            src = s.face_id
            dst = pairing[src]
            if dst == src:
                raise ComplexError(f"face {src} is fixed by the involution")
            if dst not in cc.offsets[q]:
                raise ComplexError(f"pairing sends face {src} outside the chain group")
            target = multitangent(c, dst, p)
            sign = _orientation_flip(c, src, dst) * (-1) ** p
            col0, row0 = cc.offsets[q][src], cc.offsets[q][dst]
            for j, vec in enumerate(s.basis):
                try:
                    coords = target.coordinates(vec)
                except ValueError as exc:
                    raise ComplexError("pairing does not preserve multitangent spaces") from exc
                for k, x in enumerate(coords):
                    if x:
                        a[row0 + k][col0 + j] = sign * x
        square = mat_mul(a, a, dims[q])
        if any(square[i][j] != int(i == j) for i in range(dims[q]) for j in range(dims[q])):
            raise ComplexError(f"action does not square to the identity in degree {q}")
        action[q] = a
    for q in range(1, cc.top + 1):
        d = cc.differentials[q]
        left = mat_mul(d, action[q], dims[q])
        right = mat_mul(action[q - 1], d, dims[q])
        if left != right:
            raise ComplexError(f"action does not commute with d_{q}")
    out = PQChainComplex(cc.p, cc.groups, cc.offsets, cc.differentials, action, dict(pairing))
    out._ranks = cc._ranks
    return out


def _invariant_columns(cc: PQChainComplex, q: int) -> list[dict]:
    """Basis of the +1 eigenspace: x + A x for x running over the blocks of one face per orbit."""
    a = cc.action[q]
    cols = []
    for s in cc.groups[q]:
        if cc.pairing[s.face_id] < s.face_id:
            continue
        col0 = cc.offsets[q][s.face_id]
        for j in range(s.dim):
            v = {col0 + j: 1}
            for i, row in enumerate(a):
                x = row[col0 + j]
                if x:
                    v[i] = v.get(i, 0) + x
            cols.append({i: x for i, x in v.items() if x})
    return cols


def invariant_chain_dims(cc: PQChainComplex) -> list[int]:
    if cc.action is None:
        raise ValueError("complex has no involution action")
    dims = cc.dims()
    out = []
    for q in range(cc.top + 1):
        k = len(_invariant_columns(cc, q))
        a = cc.action[q]
        minus = [[x - int(i == j) for j, x in enumerate(row)] for i, row in enumerate(a)]
        eig = dims[q] - (rank_exact(minus) if minus else 0)
        if 2 * k != dims[q] or eig != k:
            raise ComplexError(f"eigenspace dimension mismatch in degree {q}: {eig} vs {dims[q]}/2")
        out.append(k)
    return out


def invariant_homology(cc: PQChainComplex) -> list[int]:
    """Homology of the subcomplex of action-invariant chains."""
    vdims = invariant_chain_dims(cc)
    ranks = {}
    for q in range(1, cc.top + 1):
        d = cc.differentials[q]
        dcols = {}
        for i, row in enumerate(d):
            for j, x in enumerate(row):
                if x:
                    dcols.setdefault(j, {})[i] = x
        images = []
        width = len(d)
        for v in _invariant_columns(cc, q):
            acc = [0] * width
            for j, x in v.items():
                for i, y in dcols.get(j, {}).items():
                    acc[i] += x * y
            images.append(acc)
        ranks[q] = rank_exact(images) if images and width else 0
    return [vdims[q] - ranks.get(q, 0) - ranks.get(q + 1, 0) for q in range(cc.top + 1)]


def top_class_action_sign(c: TropicalComplex) -> int:
    """Eigenvalue of the involution on a generator of the one-dimensional H_{0,top}."""
    cc = involution_action(c, build_complex(c, 0))
    top = cc.top
    d = cc.differentials.get(top)
    kernel = nullspace(d, cols=cc.dims()[top]) if d else nullspace([], cols=cc.dims()[top])
    if len(kernel) != 1:
        raise ComplexError(f"H_{{0,{top}}} has dimension {len(kernel)}, expected 1")
    w = kernel[0]
    aw = [sum(x * y for x, y in zip(row, w)) for row in cc.action[top]]
    j = next(i for i, x in enumerate(w) if x)
    lam = aw[j] / w[j]
    if any(x != lam * y for x, y in zip(aw, w)):
        raise ComplexError("the generator is not an eigenvector of the action")
    return int(lam)


@dataclass(frozen=True)
class HodgeTable:
    dims: list            # dims[p][q]
    euler: list           # euler[p]
    chain_dims: list      # chain_dims[p][q]
    invariant_dims: list | None = None
    invariant_chain_dims: list | None = None

    def to_dict(self) -> dict:
        out = {"dims": self.dims, "euler": self.euler, "chain_dims": self.chain_dims}
        if self.invariant_dims is not None:
            out["invariant_dims"] = self.invariant_dims
            out["invariant_chain_dims"] = self.invariant_chain_dims
        return out


def hodge_table(c: TropicalComplex, invariant: bool = False) -> HodgeTable:
    dims, euler, chains = [], [], []
    inv, inv_chains = ([], []) if invariant else (None, None)
    pairing = involution_pairing(c)[0] if invariant else None
    for p in range(c.dim + 1):
        cc = build_complex(c, p)
        h = homology_dims(cc)
        chi = euler_characteristic(cc)
        if chi != sum((-1) ** q * x for q, x in enumerate(h)):
            raise ComplexError("Euler characteristic of chains and homology disagree")
        dims.append(h)
        euler.append(chi)
        chains.append(cc.dims())
        if invariant:
            ca = involution_action(c, cc, pairing)
            inv.append(invariant_homology(ca))
            inv_chains.append(invariant_chain_dims(ca))
    return HodgeTable(dims, euler, chains, inv, inv_chains)
