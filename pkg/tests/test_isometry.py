"""Isometries, group closure, invariants, weights, wedge squares,
isotypic decomposition."""

import pytest
from fractions import Fraction

from enriqueslab import errors, exact
from enriqueslab.covers import (
    WEDGE_GRAM,
    WEDGE_TO_U3_WITNESS,
    iota_star,
    k3_lattice,
    kummer_model,
    multiplication_part,
    wedge_block_lattice,
)
from enriqueslab.isometry import (
    character,
    character_inner_product,
    close_group,
    conjugacy_classes,
    identity_isometry,
    invariant_sublattice,
    isometry_order,
    isotypic_components,
    make_isometry,
    module_characters,
    wedge_square,
    weight_decomposition,
)
from enriqueslab.lattices import (
    direct_sum,
    invariant_tuple,
    make_lattice,
    restrict_form,
    standard_lattice,
)
from helpers import eigenspace_rank, projector_image_basis, span_equal


def test_identity_isometry():
    u = standard_lattice("U")
    g = make_isometry(u, [[1, 0], [0, 1]])
    assert g.is_identity()


def test_iota_star_valid_order_two():
    iota = iota_star()
    assert isometry_order(iota) == 2
    assert character(iota) == -2  # -2 from the negated block, swaps traceless


def test_non_orthogonal_rejected():
    u = standard_lattice("U")
    # swap with a sign on one coordinate only does not preserve the form
    with pytest.raises(errors.NotOrthogonal):
        make_isometry(u, [[0, -1], [1, 0]])


def test_non_unimodular_rejected():
    # a degenerate form is preserved by any matrix; the determinant check
    # must still fire
    zero = make_lattice([[0, 0], [0, 0]])
    with pytest.raises(errors.NotUnimodular):
        make_isometry(zero, [[2, 0], [0, 1]])


def test_close_group_order_one_and_two():
    u = standard_lattice("U")
    assert close_group([identity_isometry(u)]).order == 1
    assert close_group([iota_star()]).order == 2


def test_close_group_order_three():
    m = kummer_model(3, 2)
    assert m.action.order == 3


def test_close_group_cap():
    u = standard_lattice("U")
    swap = make_isometry(u, [[0, 1], [1, 0]])
    with pytest.raises(errors.OrderCapExceeded):
        close_group([swap], cap=1)


def test_invariant_sublattice_trivial_group():
    u = standard_lattice("U")
    inv = invariant_sublattice(close_group([identity_isometry(u)]))
    assert inv.rank == 2 and inv.primitive


def test_invariant_sublattice_involution():
    group = close_group([iota_star()])
    inv = invariant_sublattice(group)
    assert inv.rank == 10 and inv.primitive
    got = restrict_form(inv)
    ref = direct_sum(standard_lattice("U", 2), standard_lattice("E8", -2))
    assert invariant_tuple(got) == invariant_tuple(ref)
    # explicit witness: the computed basis rows are exactly {(0, x, x, y, y)}
    for row in inv.basis:
        assert all(row[i] == 0 for i in range(2))
        assert row[2:4] == row[4:6] and row[6:14] == row[14:22]


def test_invariant_sublattice_is_stable_and_fixed():
    group = close_group([iota_star()])
    inv = invariant_sublattice(group)
    for g in group.elements:
        for row in inv.basis:
            assert g.apply(row) == row


def test_weight_decomposition_identity():
    u = standard_lattice("U")
    wd = weight_decomposition(identity_isometry(u))
    assert wd.d == 1 and wd.dims == (2,)


def test_weight_decomposition_involution():
    iota = iota_star()
    wd = weight_decomposition(iota)
    assert wd.d == 2
    assert wd.as_dict() == {0: 10, 1: 12}
    # independent oracle: eigenspace ranks over the rationals
    assert eigenspace_rank(iota.matrix, 1) == 10
    assert eigenspace_rank(iota.matrix, -1) == 12


def test_weight_decomposition_symmetry_kummer():
    for d, n in ((3, 2), (4, 3)):
        g = kummer_model(d, n).action.generators[0]
        wd = weight_decomposition(g)
        assert wd.d == d
        assert sum(wd.dims) == 7
        for i in range(d):
            assert wd.dims[i] == wd.dims[(d - i) % d]


def test_weight_decomposition_wrong_claimed_order():
    with pytest.raises(errors.NotFiniteOrder):
        weight_decomposition(iota_star(), d=4)


def test_wedge_square_identity_and_minus_identity():
    ident = exact.identity_matrix(4)
    assert wedge_square(ident) == exact.identity_matrix(6)
    minus = [[-x for x in row] for row in ident]
    assert wedge_square(minus) == exact.identity_matrix(6)


def test_wedge_square_multiplicative():
    import random
    from helpers import random_unimodular
    rng = random.Random(99)
    for _ in range(40):
        a = random_unimodular(rng, 4)
        b = random_unimodular(rng, 4)
        assert exact.mat_eq(wedge_square(exact.mat_mul(a, b)),
                            exact.mat_mul(wedge_square(a), wedge_square(b)))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_wedge_square_preserves_wedge_form(d):
    w = wedge_square(multiplication_part(d))
    g = [list(r) for r in WEDGE_GRAM]
    assert exact.mat_eq(exact.mat_mul(exact.mat_mul(exact.transpose(w), g), w), g)


def test_wedge_block_lattice_is_u3():
    lat = wedge_block_lattice()
    u3 = direct_sum(*[standard_lattice("U")] * 3)
    assert invariant_tuple(lat) == invariant_tuple(u3)
    w = [list(r) for r in WEDGE_TO_U3_WITNESS]
    carried = exact.mat_mul(exact.mat_mul(w, [list(r) for r in WEDGE_GRAM]),
                            exact.transpose(w))
    assert exact.mat_eq(carried, [list(r) for r in u3.gram])


def test_order_four_wedge_action():
    w = wedge_square(multiplication_part(4))
    lat = wedge_block_lattice()
    g = make_isometry(lat, w)
    assert isometry_order(g) == 4


def test_isotypic_trivial_group():
    u = standard_lattice("U")
    comps = isotypic_components(close_group([identity_isometry(u)]))
    assert len(comps) == 1
    assert comps[0].is_trivial and comps[0].dim == 2


def test_isotypic_involution_matches_projectors():
    group = close_group([iota_star()])
    comps = isotypic_components(group)
    assert [c.dim for c in comps] == [10, 12]
    assert comps[0].is_trivial and not comps[1].is_trivial
    assert comps[0].kind == "real" and comps[1].kind == "real"
    # oracle: the classic projector pair (I +- M)/2
    plus = projector_image_basis(iota_star().matrix, 1)
    minus = projector_image_basis(iota_star().matrix, -1)
    assert span_equal(comps[0].basis, plus)
    assert span_equal(comps[1].basis, minus)


def test_isotypic_order_three_cyclotomic_kernel():
    group = kummer_model(3, 2).action
    comps = isotypic_components(group)
    dims = sorted(c.dim for c in comps)
    assert dims == [3, 4]
    rot = next(c for c in comps if c.dim == 4)
    assert rot.kind == "complex"   # zeta_3 eigenvalues come in conjugate pairs
    # oracle: kernel of t^2 + t + 1 evaluated at the generator
    g = group.generators[0]
    m = [list(r) for r in g.matrix]
    poly = exact.mat_add(exact.mat_add(exact.mat_mul(m, m), m),
                         exact.identity_matrix(7))
    ker = exact.left_kernel(exact.transpose(poly))
    assert span_equal(rot.basis, ker)


def test_isotypic_components_orthogonal_and_complete():
    for group in (close_group([iota_star()]), kummer_model(4, 3).action):
        comps = isotypic_components(group)
        lat = group.lattice
        assert sum(c.dim for c in comps) == lat.rank
        for i, a in enumerate(comps):
            for b in comps[i + 1:]:
                for u in a.basis:
                    for v in b.basis:
                        assert exact.dot(u, lat.gram, v) == 0


def test_isotypic_cap():
    with pytest.raises(errors.OrderCapExceeded):
        isotypic_components(close_group([iota_star()]), cap=1)


def test_conjugacy_classes_abelian():
    group = close_group([iota_star()])
    assert [len(c) for c in conjugacy_classes(group)] == [1, 1]


def test_character_inner_product_orthogonality():
    group = close_group([iota_star()])
    comps = isotypic_components(group)
    assert character_inner_product(group, comps[0].characters,
                                   comps[1].characters) == 0
    assert character_inner_product(group, comps[0].characters,
                                   comps[0].characters) > 0


def test_module_characters_of_fixed_row():
    group = close_group([iota_star()])
    inv = invariant_sublattice(group)
    chars = module_characters(group, [list(inv.basis[0])])
    assert chars == [Fraction(1), Fraction(1)]
