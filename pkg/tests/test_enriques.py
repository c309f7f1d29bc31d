import pytest

from tropenriques.enriques import (EXAMPLE_FORMS, JOIN_GENERATORS, VeroneseJoinData, apply_sigma,
                                   build_enriques_ideal, check_enriquogeneous, example_section,
                                   kernel_by_elimination, pullback_quadrics, random_linear_section,
                                   section_from_text, seed_sweep)
from tropenriques.exact_arith import PrimeField
from tropenriques.groebner import buchberger, cone_dimension, degree_projective
from tropenriques.polyring import apply_ring_map


@pytest.fixture(scope="module")
def data():
    return VeroneseJoinData()


def test_binomials_vanish_under_pii(data):
    assert len(data.generators) == 12
    for g in data.generators:
        assert apply_ring_map(g, data.pii).is_zero()


def test_join_degree_and_dimension(data):
    gb = buchberger(data.ideal())
    assert degree_projective(gb) == 16
    assert cone_dimension(gb) == 6


def test_kernel_by_elimination_equals_binomials(data):
    assert kernel_by_elimination().equals(data.ideal())


def test_pii_images_are_sigma_invariant(data):
    for img in data.pii.images:
        mono = data.p5.monomial(img)
        assert apply_sigma(mono) == mono


def test_example_section_is_enriques():
    result = build_enriques_ideal(example_section())
    assert result.report.verdict
    assert result.report.complete_intersection and result.report.smooth and result.report.fixed_point_free
    assert result.cone_dim == 3
    assert result.degree == 16
    d = result.to_dict()
    assert d["linear_forms"] == [VeroneseJoinData().p11.parse(f).to_text() for f in EXAMPLE_FORMS]
    assert d["generators"][:12] == list(JOIN_GENERATORS)


def test_random_sections_are_deterministic():
    a = random_linear_section(7)
    b = random_linear_section(7)
    assert a.to_text() == b.to_text()
    assert random_linear_section(8).to_text() != a.to_text()
    with pytest.raises(ValueError):
        random_linear_section(-1)


def test_small_seed_sweep_passes():
    results = seed_sweep(range(5))
    assert all(rep.verdict for _, rep in results)


def test_coordinate_section_is_not_enriques(data):
    s = section_from_text(["z0", "z1", "z2"])
    rep = check_enriquogeneous(pullback_quadrics(s, data))
    assert not rep.verdict
    assert not rep.fixed_point_free


def test_singular_intersection_detected(data):
    # -1 is a square mod 1009, so each quadric splits into two planes
    q = [data.p5.parse(t) for t in ("x0^2 + y0^2", "x1^2 + y1^2", "x2^2 + y2^2")]
    rep = check_enriquogeneous(q)
    assert rep.complete_intersection and rep.fixed_point_free
    assert not rep.smooth and not rep.verdict


def test_fixed_locus_detected(data):
    bad = [data.p5.parse(t) for t in ("x0^2", "x1^2", "x2^2")]
    rep = check_enriquogeneous(bad)
    assert not rep.fixed_point_free and not rep.smooth


def test_repeated_form_is_not_complete_intersection():
    s = section_from_text([EXAMPLE_FORMS[0], EXAMPLE_FORMS[0], EXAMPLE_FORMS[1]])
    rep = check_enriquogeneous(pullback_quadrics(s))
    assert not rep.complete_intersection
    assert not rep.verdict


def test_input_validation(data):
    with pytest.raises(ValueError):
        check_enriquogeneous([data.p5.parse("x0*y0"), data.p5.parse("x1^2"), data.p5.parse("x2^2")])
    with pytest.raises(ValueError):
        section_from_text(["z0", "z1"])
    with pytest.raises(ValueError):
        section_from_text(["z0", "z1", "z2^2"])


def test_other_field():
    s = example_section(PrimeField(32003))
    assert build_enriques_ideal(s).report.verdict
