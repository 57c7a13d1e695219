"""Integer/rational linear algebra kernels."""

import random
from fractions import Fraction

import pytest

from enriqueslab import exact
from helpers import random_symmetric, random_unimodular, signature_by_charpoly


def test_hnf_simple():
    h = exact.hnf([[2, 4], [1, 3]])
    assert h == [[1, 1], [0, 2]]


def test_hnf_transform_reconstructs():
    rng = random.Random(7)
    for _ in range(50):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        a = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        h, u = exact.hnf(a, transform=True)
        assert exact.mat_eq(exact.mat_mul(u, a), h)
        assert exact.det_bareiss(u) in (1, -1)


def test_hnf_pivot_reduction():
    # entries above each pivot are reduced into [0, pivot)
    h = exact.hnf([[5, 7, 2], [0, 3, 4], [0, 0, 6]])
    for r, row in enumerate(h):
        piv_col = next((j for j, x in enumerate(row) if x), None)
        if piv_col is None:
            continue
        for above in range(r):
            assert 0 <= h[above][piv_col] < row[piv_col]


def test_left_kernel_saturated():
    a = [[2, 0], [0, 3], [2, 3]]
    ker = exact.left_kernel(a)
    assert len(ker) == 1 and exact.vec_mat(tuple(ker[0]), a) == (0, 0)
    # saturated: content of the kernel vector is 1
    from math import gcd
    g = 0
    for x in ker[0]:
        g = gcd(g, x)
    assert g == 1


def test_snf_diagonal():
    assert exact.snf_diagonal([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == [2, 2, 156]
    assert exact.snf_diagonal([[0, 2], [2, 0]]) == [2, 2]


def test_det_bareiss_matches_fraction_det():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        a = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert exact.det_bareiss(a) == exact.det_fraction(a)


def test_charpoly_berkowitz_2x2():
    assert exact.charpoly_berkowitz([[1, 2], [3, 4]]) == [1, -5, -2]


def test_charpoly_determinant_consistency():
    rng = random.Random(13)
    for _ in range(40):
        n = rng.randint(1, 5)
        a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        coeffs = exact.charpoly_berkowitz(a)
        assert coeffs[0] == 1
        assert coeffs[-1] == (-1) ** n * exact.det_bareiss(a)
        assert -coeffs[1] == sum(a[i][i] for i in range(n))


def test_cyclotomic_polynomials():
    assert exact.cyclotomic(1) == [1, -1]
    assert exact.cyclotomic(2) == [1, 1]
    assert exact.cyclotomic(3) == [1, 1, 1]
    assert exact.cyclotomic(4) == [1, 0, 1]
    assert exact.cyclotomic(6) == [1, -1, 1]
    assert exact.cyclotomic(12) == [1, 0, -1, 0, 1]


def test_signature_examples():
    assert exact.signature_of_symmetric([[0, 1], [1, 0]]) == (1, 1, 0)
    assert exact.signature_of_symmetric([[2]]) == (1, 0, 0)
    assert exact.signature_of_symmetric([[0, 0], [0, 0]]) == (0, 0, 2)
    assert exact.signature_of_symmetric([[1, 1], [1, 1]]) == (1, 0, 1)


def test_signature_agrees_with_charpoly_oracle():
    rng = random.Random(17)
    for _ in range(150):
        n = rng.randint(1, 5)
        g = random_symmetric(rng, n)
        assert exact.signature_of_symmetric(g) == signature_by_charpoly(g)


def test_diagonalize_symmetric():
    rng = random.Random(19)
    for _ in range(60):
        n = rng.randint(1, 5)
        g = random_symmetric(rng, n)
        rows, diag = exact.diagonalize_symmetric(g)
        got = exact.gram_of([list(r) for r in rows], g)
        for i in range(n):
            for j in range(n):
                assert got[i][j] == (diag[i] if i == j else 0)


def test_rat_kernel_and_solve():
    a = [[1, 2, 3], [2, 4, 6]]
    ker = exact.rat_kernel(a)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(Fraction(a[i][j]) * v[j] for j in range(3)) == 0
                   for i in range(2))
    sol = exact.rat_solve([[2, 0], [0, 4]], [6, 8])
    assert sol == (Fraction(3), Fraction(2))
    assert exact.rat_solve([[1, 0], [1, 0]], [0, 1]) is None


def test_rat_solve_many_mixed_consistency():
    sols = exact.rat_solve_many([[1, 0], [1, 0]], [[2, 2], [0, 1]])
    assert sols[0] == (Fraction(2), Fraction(0))
    assert sols[1] is None


def test_clear_denominators_saturates():
    rows = [[Fraction(1, 2), Fraction(1, 2)], [Fraction(0), Fraction(3)]]
    sat = exact.clear_denominators(rows)
    assert sat == [[1, 0], [0, 1]]


def test_row_span_index():
    sub = [[2, 0], [0, 3]]
    sup = [[1, 0], [0, 1]]
    assert exact.row_span_index(sub, sup) == 6


def test_unimodular_generator_is_unimodular():
    rng = random.Random(23)
    for _ in range(40):
        u = random_unimodular(rng, rng.randint(2, 5))
        assert exact.det_bareiss(u) in (1, -1)


def test_floor_sqrt_fraction():
    assert exact.floor_sqrt_fraction(Fraction(0)) == 0
    assert exact.floor_sqrt_fraction(Fraction(5, 2)) == 1
    assert exact.floor_sqrt_fraction(Fraction(9, 4)) == 1
    assert exact.floor_sqrt_fraction(Fraction(4)) == 2
    with pytest.raises(ValueError):
        exact.floor_sqrt_fraction(Fraction(-1))


def test_is_square_fraction():
    assert exact.is_square_fraction(Fraction(9, 4)) == Fraction(3, 2)
    assert exact.is_square_fraction(Fraction(2)) is None
