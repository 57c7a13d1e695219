"""Acceptance gate: one test per criterion, one printed pass/fail line each.

Run with `pytest -s tests/test_acceptance.py` to see the lines; every check
is exact (integer or rational arithmetic), and the wall-clock limits are
asserted with time.monotonic.
"""

import random
import time
from contextlib import contextmanager

import pytest

from enriqueslab import exact
from enriqueslab.covers import (
    builtin_models,
    descend_form,
    enriques_lattice,
    enriques_model,
    iota_star,
    k3_lattice,
    kummer_model,
    transfer_composite,
)
from enriqueslab.isometry import (
    _restriction,
    close_group,
    identity_isometry,
    invariant_sublattice,
    make_isometry,
)
from enriqueslab.lattices import (
    direct_sum,
    invariant_tuple,
    make_sublattice,
    rank_one,
    restrict_form,
    saturate,
    standard_lattice,
)
from enriqueslab.periods import invariant_line, weight_one_space
from enriqueslab.realization import (
    decide_realization,
    dehn_twist_reflection,
    enriques_realizable,
    find_invariant_positive_3plane,
    lift_group,
    lift_isometry,
    pushforward_matrix,
    ricci_flat_implies_complex_witness,
)
from enriqueslab.shortvec import short_vectors, short_vectors_box

import prop_suites


@contextmanager
def criterion(number, label):
    start = time.monotonic()
    try:
        yield start
    except BaseException:
        print(f"criterion {number} FAIL: {label}")
        raise
    print(f"criterion {number} PASS: {label} "
          f"({time.monotonic() - start:.2f}s)")


def test_criterion_1_enriques_invariant():
    with criterion(1, "involution-fixed sublattice matches U(2)+E8(-2)") as t0:
        group = close_group([iota_star()])
        inv = invariant_sublattice(group)
        got = restrict_form(inv)
        rank, sig, det, even, disc = invariant_tuple(got)
        assert rank == 10
        assert sig == (1, 9, 0)
        assert abs(det) == 2 ** 10
        assert even
        assert disc == (2,) * 10
        ref = direct_sum(standard_lattice("U", 2), standard_lattice("E8", -2))
        assert invariant_tuple(got) == invariant_tuple(ref)
        # basis witness: the identity carries the reference Gram to the
        # computed Gram (the kernel basis is exactly {(0, x, x, y, y)})
        assert got.gram == ref.gram
        for row in inv.basis:
            assert row[0] == row[1] == 0
            assert row[2:4] == row[4:6] and row[6:14] == row[14:22]
        assert time.monotonic() - t0 < 1.0


def test_criterion_2_transfer_scaling():
    with criterion(2, "pullback scales the form by d and transfer is d*id"):
        for model in builtin_models():
            pb = [list(r) for r in model.pullback]
            lhs = exact.mat_mul(exact.mat_mul(
                exact.transpose(pb), [list(r) for r in model.upstairs.gram]), pb)
            rhs = exact.mat_scale([list(r) for r in model.downstairs.gram], model.d)
            assert exact.mat_eq(lhs, rhs)
            rep = transfer_composite(model)
            want = exact.mat_scale(
                exact.identity_matrix(model.downstairs.rank), model.d)
            assert exact.mat_eq([list(r) for r in rep.composite], want)


def test_criterion_3_kummer_table():
    with criterion(3, "wedge-action invariant image U(d); quotient "
                      "U + <-2(n+1)/d>"):
        for d, n in ((2, 1), (2, 3), (3, 2), (4, 3)):
            t0 = time.monotonic()
            model = kummer_model(d, n)
            image = model.pullback_image()
            # the deck-invariant image inside the rank-6 wedge block
            block_rows = [r for r in image.basis if not any(r[6:])]
            block = make_sublattice(model.upstairs, block_rows)
            got = restrict_form(block)
            ref = standard_lattice("U", d)
            assert invariant_tuple(got) == invariant_tuple(ref)
            assert got.gram == ref.gram
            # the image sits inside the full fixed sublattice with index d
            sat = saturate(image)
            assert exact.hnf_nonzero_rows([list(r) for r in sat.basis]) == \
                exact.hnf_nonzero_rows([list(r) for r in model.invariant.basis])
            assert image.index_in_saturation == d
            down = descend_form(image, d)
            ref_down = direct_sum(standard_lattice("U"),
                                  rank_one(-2 * (n + 1) // d))
            assert invariant_tuple(down) == invariant_tuple(ref_down)
            assert time.monotonic() - t0 < 1.0


def test_criterion_4_weight_space_signatures():
    with criterion(4, "Hermitian weight-space signatures (2,10) / (1,q), "
                      "isotropy for d >= 3"):
        w2 = weight_one_space(iota_star())
        assert w2.herm_signature == (2, 10)
        for d, n in ((3, 2), (4, 3)):
            w = weight_one_space(kummer_model(d, n).action.generators[0])
            assert w.herm_signature[0] == 1
            assert sum(w.herm_signature) == len(w.basis)
            assert w.totally_isotropic


def test_criterion_5_enumeration_oracle():
    with criterion(5, "enumeration agrees with the box oracle; 240 roots "
                      "at rank 8") as t0:
        rng = random.Random(52025)
        for _ in range(120):
            from helpers import random_negative_definite
            n = rng.randint(1, 4)
            lat = random_negative_definite(rng, n)
            t = -rng.randint(1, 8)
            assert short_vectors(lat, t).vectors == \
                short_vectors_box(lat, t, prune=False).vectors
        e8m = standard_lattice("E8", -1)
        main = short_vectors(e8m, -2)
        oracle = short_vectors_box(e8m, -2)   # Cholesky-bounded box at rank 8
        assert len(main) == 240 and main.vectors == oracle.vectors
        assert time.monotonic() - t0 < 10.0


def test_criterion_6_lift_homomorphism_suite():
    with criterion(6, "lift of 100 random words is a homomorphism commuting "
                      "with the involution") as t0:
        rng = random.Random(62026)
        en = enriques_lattice()
        e8m = standard_lattice("E8", -1)
        roots = short_vectors(e8m, -2, collapse_antipodes=True).vectors
        gens = [dehn_twist_reflection(en, (0, 0) + tuple(r))
                for r in roots[:24]]
        swap = [[0] * 10 for _ in range(10)]
        swap[0][1] = swap[1][0] = 1
        for i in range(2, 10):
            swap[i][i] = 1
        gens.append(make_isometry(en, swap))
        minus_u = [[-1 if i == j and i < 2 else (1 if i == j else 0)
                    for j in range(10)] for i in range(10)]
        gens.append(make_isometry(en, minus_u))
        iota = iota_star()
        for _ in range(100):
            word = [rng.choice(gens) for _ in range(rng.randint(1, 6))]
            prod = word[0]
            for w in word[1:]:
                prod = prod * w
            lifted_prod = lift_isometry(prod)
            prod_of_lifts = lift_isometry(word[0])
            for w in word[1:]:
                prod_of_lifts = prod_of_lifts * lift_isometry(w)
            assert lifted_prod.matrix == prod_of_lifts.matrix
            assert (lifted_prod * iota).matrix == (iota * lifted_prod).matrix
            assert exact.mat_eq(pushforward_matrix(lifted_prod),
                                [list(r) for r in prod.matrix])
        assert time.monotonic() - t0 < 5.0


def test_criterion_7_realization_verdicts():
    with criterion(7, "realization verdicts: trivial, involution, lifted "
                      "twist, quotient reflection") as t0:
        k3 = k3_lattice()
        en = enriques_lattice()
        triv = decide_realization(close_group([identity_isometry(k3)]))
        assert triv.metric_verdict and triv.complex_verdict

        inv = decide_realization(close_group([iota_star()]))
        assert inv.metric_verdict and inv.l_g.rank == 0

        s1 = tuple([0] * 6 + [1] + [0] * 15)
        s2 = tuple([0] * 14 + [1] + [0] * 7)
        twist = dehn_twist_reflection(k3, s1) * dehn_twist_reflection(k3, s2)
        dehn = decide_realization(close_group([twist]))
        assert not dehn.metric_verdict
        wit = set(dehn.minus_two_ambient)
        assert s1 in wit and s2 in wit

        refl = dehn_twist_reflection(en, (0, 0, 1, 0, 0, 0, 0, 0, 0, 0))
        rep = enriques_realizable(close_group([refl]))
        assert not rep.metric_verdict and not rep.complex_verdict
        assert time.monotonic() - t0 < 5.0


def test_criterion_8_invariant_line_mechanism():
    with criterion(8, "unique involution axis with two unit points; "
                      "shared-line witness for commuting groups"):
        # order-2 elements of SO(P) arising from the involution on fixture planes
        groups = [
            lift_group(close_group([identity_isometry(enriques_lattice())])),
            close_group([iota_star(),
                         dehn_twist_reflection(k3_lattice(),
                                               tuple([0] * 6 + [1] + [0] * 15)) *
                         dehn_twist_reflection(k3_lattice(),
                                               tuple([0] * 14 + [1] + [0] * 7))]),
        ]
        for group in groups:
            plane = find_invariant_positive_3plane(group)
            basis = [list(r) for r in plane.basis]
            g3 = plane.gram(group.lattice)
            r = _restriction([list(row) for row in iota_star().matrix], basis)
            if exact.det_fraction(r) == 1 and not exact.is_identity(r):
                line = invariant_line(r, g3)
                # exactly two unit points on the axis
                assert len(line.unit_points_float) == 2
                assert line.unit_points_exact is None or \
                    len(line.unit_points_exact) == 2
                img = exact.mat_vec(r, line.line)
                assert tuple(img) == tuple(line.line)
            witness = ricci_flat_implies_complex_witness(group, plane)
            assert iota_star().apply(witness.vector) == witness.vector
            for g in group.elements:
                assert g.apply(witness.vector) == witness.vector


def test_criterion_9_property_suite():
    with criterion(9, "randomized property suites, >= 10^4 seeded trials") as t0:
        counts = prop_suites.run_all_suites()
        total = sum(counts.values())
        assert total >= 10_000, f"only {total} trials"
        assert time.monotonic() - t0 < 60.0
