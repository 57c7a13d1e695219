"""Short-vector enumeration on negative definite lattices.

Two independent routes are kept deliberately separate:

* ``short_vectors`` walks the Fincke-Pohst tree with exact rational LDL^T
  data and adaptive per-level intervals;
* ``short_vectors_box`` is the oracle: a box search whose fixed coordinate
  bounds come from the exact Cholesky diagonal (dual bound), fully naive at
  rank <= 4 and partial-sum pruned above that.

Every candidate from either route is re-verified in integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import EnumerationBudgetExceeded, NotNegativeDefinite
from .lattices import Lattice, signature

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class ShortVectorSet:
    target_norm: int
    vectors: tuple       # sorted tuples of ints
    antipodes_collapsed: bool = False

    def __len__(self):
        return len(self.vectors)


def _ldl_positive(a):
    """Exact LDL^T of a positive definite integer matrix.

    Returns (diag d, unit upper triangular r) with
    q(x) = sum_i d_i (x_i + sum_{j>i} r_ij x_j)^2.
    """
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    for i in range(n):
        for j in range(i):
            m[i][i] -= m[j][j] * m[j][i] * m[j][i]
        if m[i][i] <= 0:
            raise NotNegativeDefinite("form is not definite")
        for k in range(i + 1, n):
            for j in range(i):
                m[i][k] -= m[j][j] * m[j][i] * m[j][k]
            m[i][k] /= m[i][i]
    d = [m[i][i] for i in range(n)]
    r = [[m[i][k] if k > i else Fraction(0) for k in range(n)] for i in range(n)]
    return d, r


def _feasible_range(d, c, rem):
    """Integer x with d * (x + c)^2 <= rem; exact interval endpoints."""
    if rem < 0:
        return 1, 0
    bound2 = rem / d
    s = exact.floor_sqrt_fraction(bound2)  # floor of sqrt(bound2)
    hi = math.floor(s - c)
    while d * (hi + 1 + c) ** 2 <= rem:
        hi += 1
    lo = math.ceil(-s - c)
    while d * (lo - 1 + c) ** 2 <= rem:
        lo -= 1
    return lo, hi


def short_vectors(lat: Lattice, t: int, collapse_antipodes: bool = False,
                  budget: int = DEFAULT_NODE_BUDGET) -> ShortVectorSet:
    """All v with q(v) = t on a negative definite lattice (t < 0).

    Deterministic lexicographically sorted output; full +-pairs unless
    collapse_antipodes keeps only the lexicographically larger one of each.
    """
    if t >= 0:
        raise NotNegativeDefinite("target norm must be negative")
    p, q, r = signature(lat)
    if p or r:
        raise NotNegativeDefinite(f"signature {(p, q, r)} is not (0, rank, 0)")
    n = lat.rank
    target = -t
    a = [[-x for x in row] for row in lat.gram]
    d, rmat = _ldl_positive(a)

    found = []
    nodes = 0
    x = [0] * n

    def descend(i, rem):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise EnumerationBudgetExceeded(f"node budget {budget} exceeded")
        c = sum(rmat[i][j] * x[j] for j in range(i + 1, n))
        lo, hi = _feasible_range(d[i], c, rem)
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = d[i] * (xi + c) ** 2
            if i == 0:
                if rem - used == 0:
                    v = tuple(x)
                    # integer re-verification of the exact norm
                    if exact.dot(v, lat.gram, v) == t:
                        found.append(v)
            else:
                descend(i - 1, rem - used)
        x[i] = 0

    if n > 0:
        descend(n - 1, Fraction(target))
    found = [v for v in found if any(v)]
    if collapse_antipodes:
        found = [v for v in found if v > tuple(-c for c in v)]
    found.sort()
    return ShortVectorSet(t, tuple(found), collapse_antipodes)


def short_vectors_box(lat: Lattice, t: int, collapse_antipodes: bool = False,
                      prune: bool | None = None) -> ShortVectorSet:
    """Independent oracle: box search with exact Cholesky-derived bounds.

    Coordinate i is confined to |x_i| <= floor(sqrt(|t| * (G^-1)_ii)) for the
    positive form G = -gram (the dual bound).  At rank <= 4 the box is swept
    naively; above that, exact partial-sum pruning on the LDL^T completion
    keeps rank 8 under the time budget (prune=None picks this policy).
    """
    if t >= 0:
        raise NotNegativeDefinite("target norm must be negative")
    p, q, r = signature(lat)
    if p or r:
        raise NotNegativeDefinite(f"signature {(p, q, r)} is not (0, rank, 0)")
    n = lat.rank
    target = -t
    a = [[-x for x in row] for row in lat.gram]
    if prune is None:
        prune = n > 4

    inv = exact.rat_mat_inverse(a)
    bounds = [exact.floor_sqrt_fraction(Fraction(target) * inv[i][i]) for i in range(n)]

    found = []
    if not prune:
        def sweep(i, v):
            if i == n:
                vv = tuple(v)
                if any(vv) and exact.dot(vv, lat.gram, vv) == t:
                    found.append(vv)
                return
            for xi in range(-bounds[i], bounds[i] + 1):
                v.append(xi)
                sweep(i + 1, v)
                v.pop()
        if n > 0:
            sweep(0, [])
    else:
        d, rmat = _ldl_positive(a)
        x = [0] * n

        def sweep_pruned(i, rem):
            if rem < 0:
                return
            if i < 0:
                if rem == 0:
                    v = tuple(x)
                    if any(v) and exact.dot(v, lat.gram, v) == t:
                        found.append(v)
                return
            c = sum(rmat[i][j] * x[j] for j in range(i + 1, n))
            for xi in range(-bounds[i], bounds[i] + 1):
                x[i] = xi
                sweep_pruned(i - 1, rem - d[i] * (xi + c) ** 2)
            x[i] = 0
        if n > 0:
            sweep_pruned(n - 1, Fraction(target))

    if collapse_antipodes:
        found = [v for v in found if v > tuple(-c for c in v)]
    found.sort()
    return ShortVectorSet(t, tuple(found), collapse_antipodes)
