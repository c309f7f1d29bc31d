"""Reference computations that share no code with the package's own algorithms."""

from __future__ import annotations

import random
from itertools import combinations, product

import numpy as np

ORACLE_PRIME = 1_000_003


def rank_mod_p(rows, p: int = ORACLE_PRIME) -> int:
    """Dense Gaussian elimination over F_p with numpy int64 arithmetic."""
    a = np.array(rows, dtype=np.int64) % p if len(rows) else np.zeros((0, 0), dtype=np.int64)
    if a.size == 0:
        return 0
    r = 0
    n_rows, n_cols = a.shape
    for c in range(n_cols):
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        mask = np.nonzero(col)[0]
        if mask.size:
            a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
        r += 1
        if r == n_rows:
            break
    return r


def order_complex_betti(faces, closure) -> list[int]:
    """Betti numbers of the order complex (barycentric subdivision) of a face poset.

    ``faces`` maps face id -> dimension; ``closure(i)`` is the set of faces in the closure of i.
    Chains are ordered by decreasing dimension; boundary matrices are assembled from scratch.
    """
    below = {i: set(closure(i)) - {i} for i in faces}
    chains = [[(i,) for i in faces]]
    while True:
        nxt = []
        for ch in chains[-1]:
            for j in below[ch[-1]]:
                nxt.append(ch + (j,))
        if not nxt:
            break
        chains.append(nxt)
    index = [{ch: k for k, ch in enumerate(level)} for level in chains]
    ranks = [0]
    for k in range(1, len(chains)):
        rows = [[0] * len(chains[k]) for _ in chains[k - 1]]
        for col, ch in enumerate(chains[k]):
            for drop in range(len(ch)):
                face = ch[:drop] + ch[drop + 1:]
                rows[index[k - 1][face]][col] += (-1) ** drop
        ranks.append(rank_mod_p(rows))
    ranks.append(0)
    return [len(chains[k]) - ranks[k] - ranks[k + 1] for k in range(len(chains))]


def lower_hull_cells_bruteforce(points, weights):
    """Cells of a regular subdivision of a planar configuration via sympy-free rational planes."""
    from fractions import Fraction
    cells = set()
    for tri in combinations(range(len(points)), 3):
        (x0, y0), (x1, y1), (x2, y2) = (points[i] for i in tri)
        det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
        if det == 0:
            continue
        w0, w1, w2 = (Fraction(weights[i]) for i in tri)
        a = ((w1 - w0) * (y2 - y0) - (w2 - w0) * (y1 - y0)) / det
        b = ((x1 - x0) * (w2 - w0) - (x2 - x0) * (w1 - w0)) / det
        h = [w0 + a * (x - x0) + b * (y - y0) for x, y in points]
        gaps = [Fraction(weights[i]) - h[i] for i in range(len(points))]
        if all(g >= 0 for g in gaps):
            cells.add(frozenset(i for i, g in enumerate(gaps) if g == 0))
    return cells


def random_unimodular_square_liftings(count: int, seed: int = 2024, side: int = 2):
    """Generic random liftings of [0,side]^2 whose subdivision is a unimodular triangulation."""
    from tropenriques.tropical_complex import Lifting, is_unimodular_triangulation, regular_subdivision
    rng = random.Random(seed)
    pts = list(product(range(side + 1), repeat=2))
    out = []
    while len(out) < count:
        w = {m: rng.randint(0, 30) + (m[0] - 1) ** 2 + (m[1] - 1) ** 2 for m in pts}
        l = Lifting.on_box((side, side), w)
        if is_unimodular_triangulation(regular_subdivision(l)):
            out.append(l)
    return out
