from fractions import Fraction

import pytest

from oracles import order_complex_betti, random_unimodular_square_liftings
from tropenriques.trop_homology import (build_complex, euler_characteristic, hodge_table, homology_dims,
                                        invariant_chain_dims, invariant_homology, involution_action,
                                        multitangent, top_class_action_sign)
from tropenriques.tropical_complex import dual_complex

SURFACES = ("del_pezzo", "k3")
ALL = ("line", "elliptic", "del_pezzo", "k3")


@pytest.fixture(scope="module")
def random_curves():
    return [dual_complex(l) for l in random_unimodular_square_liftings(50)]


def test_line_multitangent(complexes):
    c = complexes["line"]
    (v,) = [f for f in c.faces_of_dim(0) if not f.sedentarity]
    f1 = multitangent(c, v.id, 1)
    assert f1.dim == 2 and set(f1.basis) == {(1, 0), (0, 1)}
    for f in c.faces_of_dim(0):
        if f.sedentarity:
            assert multitangent(c, f.id, 1).dim == 0
    assert multitangent(c, v.id, 0).dim == 1
    with pytest.raises(ValueError):
        multitangent(c, 999, 0)


def test_line_complexes(complexes):
    c = complexes["line"]
    c1 = build_complex(c, 1)
    assert c1.dims() == [2, 3]
    assert c1.dims()[1] - c1.rank(1) == 1
    assert homology_dims(build_complex(c, 0)) == [1, 0]
    assert homology_dims(c1) == [0, 1]


def test_k3_mobile_edges_have_two_dim_f2(k3):
    for f in k3.faces_of_dim(1):
        if not f.sedentarity:
            assert multitangent(k3, f.id, 2).dim == 2


def test_curve_sedentary_points_have_no_f1(complexes):
    c = complexes["elliptic"]
    for f in c.faces_of_dim(0):
        assert multitangent(c, f.id, 1).dim == (0 if f.sedentarity else 2)


def test_elliptic_homology(complexes):
    h = hodge_table(complexes["elliptic"])
    assert h.dims == [[1, 1], [1, 1]]


def test_del_pezzo_homology(complexes):
    c = complexes["del_pezzo"]
    assert build_complex(c, 1).dims() == [42, 84, 38]
    h = hodge_table(c)
    assert h.dims == [[1, 0, 0], [0, 4, 0], [0, 0, 1]]
    assert h.euler[1] == -4


def test_k3_homology(k3):
    c1 = build_complex(k3, 1)
    assert c1.dims() == [240, 456, 196]
    assert euler_characteristic(c1) == -20
    assert hodge_table(k3).dims == [[1, 0, 1], [0, 20, 0], [1, 0, 1]]


def test_k3_invariant_homology(k3):
    h = hodge_table(k3, invariant=True)
    assert h.invariant_dims == [[1, 0, 0], [0, 10, 0], [0, 0, 1]]
    assert h.invariant_chain_dims[1] == [120, 228, 98]
    for p in range(3):
        assert [2 * x for x in h.invariant_chain_dims[p]] == h.chain_dims[p]


def test_k3_top_class_is_anti_invariant(k3):
    assert top_class_action_sign(k3) == -1


@pytest.mark.parametrize("p", [0, 1, 2])
def test_action_is_traceless_involution(k3, p):
    cc = involution_action(k3, build_complex(k3, p))
    for q, a in cc.action.items():
        assert sum(a[i][i] for i in range(len(a))) == 0
    assert invariant_chain_dims(cc) == [d // 2 for d in cc.dims()]


def sparse_product_is_zero(a, b) -> bool:
    cols = {}
    for i, row in enumerate(b):
        for j, x in enumerate(row):
            if x:
                cols.setdefault(j, []).append((i, x))
    for row in a:
        nz = {k: x for k, x in enumerate(row) if x}
        for entries in cols.values():
            if sum((Fraction(nz[i]) * x for i, x in entries if i in nz), Fraction(0)):
                return False
    return True


def check_properties(c):
    d = c.dim
    table = hodge_table(c)
    for p in range(d + 1):
        cc = build_complex(c, p)
        for q in range(2, d + 1):
            assert sparse_product_is_zero(cc.differentials[q - 1], cc.differentials[q])
        assert euler_characteristic(cc) == sum((-1) ** q * h for q, h in enumerate(table.dims[p]))
        for q in range(d + 1):
            assert table.dims[p][q] == table.dims[d - p][d - q]
    betti = order_complex_betti({f.id: f.dim for f in c.faces}, c.closure)
    betti += [0] * (d + 1 - len(betti))
    assert table.dims[0] == betti[:d + 1]
    assert all(b == 0 for b in betti[d + 1:])
    return table


@pytest.mark.parametrize("name", ALL)
def test_fixture_properties(complexes, name):
    check_properties(complexes[name])


def test_random_curve_properties(random_curves):
    for c in random_curves:
        table = check_properties(c)
        # every lattice point of [0,2]^2 is used, so the curve has genus one
        assert table.dims == [[1, 1], [1, 1]]


def test_singular_support_of_k3_is_a_sphere(k3):
    betti = order_complex_betti({f.id: f.dim for f in k3.faces}, k3.closure)
    assert betti == [1, 0, 1]
