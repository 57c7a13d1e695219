"""Integral lattices: constructors, invariants, sublattices, complements.

A lattice is a free Z-module of finite rank with an integral symmetric
bilinear form, stored as its Gram matrix.  All values are immutable after
construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import (
    Degenerate,
    NonIntegral,
    NonSymmetric,
    NotASublattice,
    UnknownName,
    ZeroScale,
)


@dataclass(frozen=True)
class Lattice:
    rank: int
    gram: tuple  # rank x rank tuple of tuples of ints

    def pairing(self, u, v):
        """Bilinear pairing (u, v) of two coordinate vectors."""
        return exact.dot(u, self.gram, v)

    def norm(self, v):
        """Self-pairing q(v) = (v, v)."""
        return exact.dot(v, self.gram, v)

    def __repr__(self):
        return f"Lattice(rank={self.rank})"


@dataclass(frozen=True)
class Sublattice:
    """Row-generated sublattice of an ambient lattice.

    basis rows are generators in ambient coordinates; primitive means the
    span equals its saturation (index_in_saturation == 1).
    """

    ambient: Lattice
    basis: tuple  # k x rank tuple of int tuples
    primitive: bool
    index_in_saturation: int

    @property
    def rank(self):
        return len(self.basis)


def make_lattice(gram) -> Lattice:
    rows = [list(r) for r in gram]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise NonSymmetric("gram matrix must be square")
        for x in r:
            if not isinstance(x, int) or isinstance(x, bool):
                raise NonIntegral(f"gram entry {x!r} is not an integer")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise NonSymmetric(f"gram[{i}][{j}] != gram[{j}][{i}]")
    return Lattice(rank=n, gram=exact.mat_freeze(rows))


# E8 Gram in the standard simply-laced root basis (Bourbaki node order:
# the branch node is 4, with 2 hanging off it).
_E8_BONDS = ((1, 3), (2, 4), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8))


def _e8_gram():
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for a, b in _E8_BONDS:
        g[a - 1][b - 1] = -1
        g[b - 1][a - 1] = -1
    return g


def standard_lattice(name: str, scale: int = 1) -> Lattice:
    """Named lattice with every Gram entry multiplied by scale.

    Recognized names: "U" (hyperbolic plane), "E8", "A<n>" (e.g. "A2").
    """
    if scale == 0:
        raise ZeroScale("scale must be nonzero")
    if name == "U":
        gram = [[0, 1], [1, 0]]
    elif name == "E8":
        gram = _e8_gram()
    elif name.startswith("A") and name[1:].isdigit() and int(name[1:]) >= 1:
        n = int(name[1:])
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = 2
            if i + 1 < n:
                gram[i][i + 1] = gram[i + 1][i] = -1
    else:
        raise UnknownName(f"unknown standard lattice {name!r}")
    return make_lattice([[scale * x for x in row] for row in gram])


def rank_one(k: int) -> Lattice:
    """The rank-1 lattice <k>."""
    return make_lattice([[k]])


def rescale(lat: Lattice, m: int) -> Lattice:
    if m == 0:
        raise ZeroScale("rescale by zero")
    return make_lattice([[m * x for x in row] for row in lat.gram])


def direct_sum(*lattices: Lattice) -> Lattice:
    total = sum(l.rank for l in lattices)
    gram = [[0] * total for _ in range(total)]
    off = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                gram[off + i][off + j] = lat.gram[i][j]
        off += lat.rank
    return make_lattice(gram)


def signature(lat: Lattice):
    """(p, q, r): positive, negative, zero inertia counts, exactly."""
    return exact.signature_of_symmetric(lat.gram)


def determinant(lat: Lattice) -> int:
    return exact.det_bareiss(exact.mat_copy(lat.gram))


def is_even(lat: Lattice) -> bool:
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def discriminant_group(lat: Lattice):
    """Elementary divisors > 1 of the Gram matrix (the group L*/L)."""
    if lat.rank == 0:
        return []
    if determinant(lat) == 0:
        raise Degenerate("discriminant group needs a nondegenerate lattice")
    return [d for d in exact.snf_diagonal(exact.mat_copy(lat.gram)) if d != 1]


def invariant_tuple(lat: Lattice):
    """(rank, signature, det, even?, discriminant divisors).

    The agreement of these invariants plus an explicit base-change witness
    is how fixtures certify lattice isomorphisms; no general isometry test
    is attempted.
    """
    return (
        lat.rank,
        signature(lat),
        determinant(lat),
        is_even(lat),
        tuple(discriminant_group(lat)) if lat.rank and determinant(lat) else (),
    )


# ---------------------------------------------------------------------------
# sublattices


def make_sublattice(ambient: Lattice, rows) -> Sublattice:
    basis = [list(r) for r in rows]
    for r in basis:
        if len(r) != ambient.rank:
            raise NotASublattice("basis row length does not match ambient rank")
    if basis and exact.rat_rank(basis) != len(basis):
        raise NotASublattice("basis rows are linearly dependent")
    if not basis:
        return Sublattice(ambient, (), True, 1)
    sat = exact.clear_denominators(basis)
    index = exact.row_span_index(basis, sat)
    return Sublattice(ambient, exact.mat_freeze(basis), index == 1, index)


def full_sublattice(lat: Lattice) -> Sublattice:
    return make_sublattice(lat, exact.identity_matrix(lat.rank))


def saturate(sub: Sublattice) -> Sublattice:
    """Saturation (Q . sub) intersected with the ambient lattice."""
    if not sub.basis:
        return sub
    sat = exact.clear_denominators([list(r) for r in sub.basis])
    return Sublattice(sub.ambient, exact.mat_freeze(sat), True, 1)


def orthogonal_complement(lat: Lattice, sub: Sublattice) -> Sublattice:
    """{x in L : (x, s) = 0 for all s in sub}; always primitive."""
    if not sub.basis:
        return full_sublattice(lat)
    pairing_cols = exact.transpose(
        exact.mat_mul([list(r) for r in sub.basis], exact.mat_copy(lat.gram))
    )
    ker = exact.left_kernel(pairing_cols)
    return Sublattice(lat, exact.mat_freeze(ker), True, 1)


def restrict_form(sub: Sublattice) -> Lattice:
    """The lattice (sub, B G B^T) in the basis given by the sub's rows."""
    return make_lattice(exact.gram_of([list(r) for r in sub.basis],
                                      exact.mat_copy(sub.ambient.gram)))


def sublattice_membership(sub: Sublattice, vec):
    """Integer coordinates of vec in sub's basis, or None."""
    if not sub.basis:
        return () if not any(vec) else None
    sol = exact.rat_solve(exact.transpose([list(r) for r in sub.basis]), list(vec))
    if sol is None or any(c.denominator != 1 for c in sol):
        return None
    return tuple(int(c) for c in sol)
