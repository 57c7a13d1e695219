"""Shared generators and independent oracles for the test suite.

Randomized suites draw from seeded Random instances only; every expected
value asserted anywhere was either computed by one of the independent
oracles here or verified by hand from the defining formulas.
"""

from __future__ import annotations

import random
from fractions import Fraction

from enriqueslab import exact
from enriqueslab.lattices import Lattice, make_lattice


def random_symmetric(rng: random.Random, n: int, bound: int = 4):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(-bound, bound)
    return m


def random_lattice(rng: random.Random, n: int, bound: int = 4) -> Lattice:
    return make_lattice(random_symmetric(rng, n, bound))


def random_negative_definite(rng: random.Random, n: int, bound: int = 2) -> Lattice:
    """-(A^T A + I)-style Gram: exactly negative definite, small entries."""
    a = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
    at_a = exact.mat_mul(exact.transpose(a), a)
    gram = [[-at_a[i][j] - (2 if i == j else 0) for j in range(n)] for i in range(n)]
    return make_lattice(gram)


def random_unimodular(rng: random.Random, n: int, steps: int = 12):
    """Product of elementary row operations: determinant +-1 by construction."""
    m = exact.identity_matrix(n)
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        for k in range(n):
            m[i][k] += c * m[j][k]
    if rng.random() < 0.5:
        i = rng.randrange(n)
        m[i] = [-x for x in m[i]]
    return m


def signature_by_charpoly(gram):
    """Independent signature oracle: Descartes sign variations on the
    characteristic polynomial (all roots real for symmetric matrices)."""
    coeffs = exact.charpoly_berkowitz([list(r) for r in gram])
    # strip zero roots: trailing zero coefficients
    zeros = 0
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        zeros += 1
    n = len(gram)
    pos = exact.descartes_positive_count(coeffs)
    neg = n - zeros - pos
    return pos, neg, zeros


def eigenspace_rank(matrix, eigenvalue: int) -> int:
    """dim ker(M - c I) over the rationals; oracle for weight multiplicities."""
    n = len(matrix)
    delta = [[Fraction(matrix[i][j]) - (eigenvalue if i == j else 0)
              for j in range(n)] for i in range(n)]
    return len(exact.rat_kernel(delta))


def projector_image_basis(matrix, sign: int):
    """Saturated integer basis of the image of (I + sign*M)/2: the classic
    order-2 isotypic projector, used as an oracle for the component split."""
    n = len(matrix)
    rows = [[Fraction((1 if i == j else 0) + sign * matrix[j][i], 2)
             for j in range(n)] for i in range(n)]
    # image of the projector applied to the standard basis (rows span it)
    return exact.clear_denominators(rows)


def span_equal(rows_a, rows_b) -> bool:
    ha = exact.hnf_nonzero_rows(exact.clear_denominators([list(r) for r in rows_a]))
    hb = exact.hnf_nonzero_rows(exact.clear_denominators([list(r) for r in rows_b]))
    return ha == hb
