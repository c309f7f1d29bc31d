"""Enriques surfaces as codimension-3 linear sections of the Veronese join in P^11.

The quotient of P^5 by the sign involution y -> -y is embedded in P^11 by
the twelve quadratic monomials x_i x_j, y_i y_j.  Three linear forms on P^11
pull back to three sigma-invariant quadrics Q_i = F_i(x) + G_i(y) on P^5; the
section is an Enriques surface when those quadrics are enriquogeneous.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .exact_arith import DEFAULT_MODULUS, PrimeField
from .groebner import (Ideal, buchberger, cone_dimension, degree_projective, eliminate,
                       is_cone_trivial)
from .polyring import Polynomial, PolynomialRing, RingMap, apply_ring_map, jacobian, minors

Z_NAMES = tuple(f"z{i}" for i in range(12))
P5_NAMES = ("x0", "x1", "x2", "y0", "y1", "y2")

PII_IMAGES = (
    "x0^2", "x0*x1", "x0*x2", "x1^2",
    "x1*x2", "x2^2", "y0^2", "y0*y1",
    "y0*y2", "y1^2", "y1*y2", "y2^2",
)

JOIN_GENERATORS = (
    "z10^2-z9*z11", "z8*z10-z7*z11", "z8*z9-z7*z10",
    "z8^2-z6*z11", "z7*z8-z6*z10", "z7^2-z6*z9",
    "z4^2-z3*z5", "z2*z4-z1*z5", "z2*z3-z1*z4",
    "z2^2-z0*z5", "z1*z2-z0*z4", "z1^2-z0*z3",
)

EXAMPLE_FORMS = (
    "2*z2+z6+5*z7+8*z11",
    "2*z0+8*z4+z9",
    "5*z1+4*z3+4*z5+6*z8",
)

SIGMA_SIGNS = (1, 1, 1, -1, -1, -1)


class VeroneseJoinData:
    """Rings, the quotient map pii: P^5 -> P^11, and the 12 binomial quadrics."""

    def __init__(self, field=None):
        self.field = field if field is not None else PrimeField(DEFAULT_MODULUS)
        self.p11 = PolynomialRing(Z_NAMES, self.field)
        self.p5 = PolynomialRing(P5_NAMES, self.field)
        self.pii = RingMap(self.p11, self.p5, [self.p5.parse(s) for s in PII_IMAGES])
        self.generators = tuple(self.p11.parse(s) for s in JOIN_GENERATORS)
        for g in self.generators:
            if apply_ring_map(g, self.pii):
                raise AssertionError(f"{g} is not in the kernel of pii")

    def ideal(self) -> Ideal:
        return Ideal(self.p11, self.generators)


def veronese_join_generators(field=None) -> list[Polynomial]:
    return list(VeroneseJoinData(field).generators)


@dataclass(frozen=True)
class LinearSection:
    forms: tuple
    provenance: str = "explicit"
    seed: int | None = None

    def __post_init__(self):
        if len(self.forms) != 3:
            raise ValueError("a linear section needs exactly three forms")
        ring = self.forms[0].ring
        for f in self.forms:
            if f.ring != ring:
                raise ValueError("forms live in different rings")
            if any(sum(e) != 1 for e in f.terms):
                raise ValueError(f"form {f} is not homogeneous linear")

    @property
    def ring(self) -> PolynomialRing:
        return self.forms[0].ring

    def to_text(self) -> list[str]:
        return [f.to_text() for f in self.forms]


def section_from_text(lines, field=None) -> LinearSection:
    data = VeroneseJoinData(field)
    forms = tuple(data.p11.parse(s) for s in lines)
    return LinearSection(forms, "explicit")


def example_section(field=None) -> LinearSection:
    return section_from_text(EXAMPLE_FORMS, field)


def random_linear_section(seed: int, field=None) -> LinearSection:
    """Three linear forms with coefficients uniform in the field, from a seeded generator."""
    if not 0 <= seed < 2 ** 64:
        raise ValueError("seed must be a 64-bit nonnegative integer")
    data = VeroneseJoinData(field)
    p = data.field.p
    if p is None:
        raise ValueError("random sections need a prime field")
    rng = random.Random(seed)
    forms = []
    for _ in range(3):
        coeffs = [rng.randrange(p) for _ in range(12)]
        forms.append(Polynomial(data.p11, {
            tuple(int(i == j) for j in range(12)): c for i, c in enumerate(coeffs) if c
        }))
    return LinearSection(tuple(forms), "random", seed)


def pullback_quadrics(s: LinearSection, data: VeroneseJoinData | None = None) -> list[Polynomial]:
    data = data or VeroneseJoinData(s.ring.field)
    return [apply_ring_map(f, data.pii) for f in s.forms]


def apply_sigma(f: Polynomial) -> Polynomial:
    """The sign involution x -> x, y -> -y on a polynomial in x0..x2, y0..y2."""
    out = {}
    for e, c in f.terms.items():
        sign = (-1) ** sum(e[3:])
        out[e] = c if sign == 1 else -c
    return Polynomial(f.ring, out)


@dataclass(frozen=True)
class EnriquogeneousReport:
    complete_intersection: bool
    smooth: bool
    fixed_point_free: bool
    cone_dim: int
    verdict: bool

    def to_dict(self) -> dict:
        return asdict(self)


def check_enriquogeneous(q) -> EnriquogeneousReport:
    """Run the complete-intersection, smoothness and fixed-locus checks on three quadrics."""
    q = list(q)
    if len(q) != 3:
        raise ValueError("need exactly three quadrics")
    ring = q[0].ring
    if ring.n != 6:
        raise ValueError(f"quadrics must live in 6 variables, got {ring.n}")
    for f in q:
        if f.ring != ring:
            raise ValueError("quadrics live in different rings")
        if apply_sigma(f) != f:
            raise ValueError(f"{f} is not invariant under the sign involution")
    k3 = Ideal(ring, q)
    dim = cone_dimension(buchberger(k3))
    complete_intersection = dim == 3
    sing = k3 + minors(jacobian(q), 3)
    smooth = is_cone_trivial(buchberger(sing))
    xs, ys = ring.gens()[:3], ring.gens()[3:]
    fixed_point_free = (is_cone_trivial(buchberger(k3 + ys))
                        and is_cone_trivial(buchberger(k3 + xs)))
    verdict = complete_intersection and smooth and fixed_point_free
    return EnriquogeneousReport(complete_intersection, smooth, fixed_point_free, dim, verdict)


@dataclass(frozen=True)
class EnriquesResult:
    section: LinearSection
    ideal: Ideal
    report: EnriquogeneousReport
    degree: int | None
    cone_dim: int

    def to_dict(self) -> dict:
        out = {
            "field": self.ideal.ring.field.p,
            "provenance": self.section.provenance,
            "seed": self.section.seed,
            "linear_forms": self.section.to_text(),
        }
        out.update(self.report.to_dict())
        out["ideal_cone_dim"] = self.cone_dim
        out["degree"] = self.degree
        out["generators"] = [g.to_text() for g in self.ideal.generators]
        return out


def build_enriques_ideal(s: LinearSection) -> EnriquesResult:
    """Veronese-join binomials plus the three linear forms, with the section's report."""
    data = VeroneseJoinData(s.ring.field)
    ideal = data.ideal() + list(s.forms)
    report = check_enriquogeneous(pullback_quadrics(s, data))
    gb = buchberger(ideal)
    dim = cone_dimension(gb)
    try:
        deg = degree_projective(gb)
    except ValueError:
        deg = None
    return EnriquesResult(s, ideal, report, deg, dim)


def kernel_by_elimination(field=None) -> Ideal:
    """Kernel of pii from the graph ideal (z_i - pii(z_i)) by eliminating x, y.  Slow."""
    data = VeroneseJoinData(field)
    big = PolynomialRing(P5_NAMES + Z_NAMES, data.field)
    graph = []
    for i, img in enumerate(data.pii.images):
        z = [0] * 12
        z[i] = 1
        graph.append(Polynomial(big, {(0,) * 6 + tuple(z): 1, tuple(img) + (0,) * 12: -1}))
    return eliminate(Ideal(big, graph), P5_NAMES)


def seed_sweep(seeds, field=None) -> list[tuple[int, EnriquogeneousReport]]:
    data = VeroneseJoinData(field)
    out = []
    for seed in seeds:
        s = random_linear_section(seed, data.field)
        out.append((seed, check_enriquogeneous(pullback_quadrics(s, data))))
    return out
