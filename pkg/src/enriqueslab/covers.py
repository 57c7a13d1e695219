"""Lattice-level models of index-d universal coverings.

A CoverModel packages the covering lattice with its deck action, the fixed
sublattice, and the pullback embedding of the quotient lattice, so that the
scaling identity  pullback^T . G . pullback = d . G_down  and the transfer
composite  p_! p^* = d  can be verified exactly.

Built-in models:

* ``enriques_model``       -- the rank-22 even unimodular (3,19) lattice with
  the standard involution (x1,...,x5) -> (-x1, x3, x2, x5, x4); quotient
  U + E8(-1).
* ``hilb_model(n)``        -- the same involution extended by the identity on
  an extra <-2(n-1)> summand (n odd >= 3); quotient U + E8(-1) + <-(n-1)>.
* ``kummer_model(d, n)``   -- rank 6 + 1 wedge-square model (d in {2,3,4},
  d | n+1): the deck generator is the induced action of the order-d
  torus automorphism on the wedge square of Z^4, extended by the identity
  on <-2(n+1)>; quotient U + <-2(n+1)/d>.

For the involution models the pullback image *is* the full fixed sublattice.
For the wedge-square models the fixed sublattice of the deck action is
strictly larger: the classes pulled back from the quotient form an index-d
sublattice of it (the quotient has multiple fibers in exactly one ruling,
so one hyperbolic generator pulls back d-fold).  The model records that
index, and the quotient Gram matrix U(d) + <-2(n+1)> attached to the deck
action lives on the pullback image.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import exact
from .errors import BadParameters, NotDivisible, TransferMismatch, UnknownName
from .isometry import (
    ActionGroup,
    Isometry,
    close_group,
    invariant_sublattice,
    make_isometry,
    wedge_square,
)
from .lattices import (
    Lattice,
    Sublattice,
    direct_sum,
    make_lattice,
    make_sublattice,
    rank_one,
    rescale,
    restrict_form,
    saturate,
    standard_lattice,
)

# Intersection form of the wedge square of Z^4 in the basis
# (e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4): pairing into the top wedge.
WEDGE_GRAM = (
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 0, -1, 0),
    (0, 0, 0, 1, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, -1, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0),
)


def wedge_block_lattice() -> Lattice:
    """Rank-6 even unimodular lattice of signature (3,3) on the wedge basis."""
    return make_lattice([list(r) for r in WEDGE_GRAM])


# Explicit base change carrying WEDGE_GRAM to three orthogonal hyperbolic
# blocks: rows (e12, e34), (e13, -e24), (e14, e23).
WEDGE_TO_U3_WITNESS = (
    (1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, 0, 1),
    (0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, -1, 0),
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 1, 0, 0),
)


def multiplication_part(d: int):
    """Integral 4x4 matrix of the order-d torus automorphism on H_1.

    Coordinates (e1, e2) for the first elliptic factor (always fixed: the
    deck generator only translates there, which is homologically trivial)
    and (e3, e4) for the CM factor, where multiplication by -1, zeta_3, i
    acts by the matrix of the lattice endomorphism in the basis (1, tau).
    """
    if d == 2:
        f_block = [[-1, 0], [0, -1]]
    elif d == 3:
        f_block = [[0, -1], [1, -1]]
    elif d == 4:
        f_block = [[0, -1], [1, 0]]
    else:
        raise BadParameters(f"deck index {d} not in {{2, 3, 4}}")
    m = exact.identity_matrix(4)
    m[2][2], m[2][3] = f_block[0]
    m[3][2], m[3][3] = f_block[1]
    return m


def k3_lattice() -> Lattice:
    """U + U + U + E8(-1) + E8(-1), rank 22, signature (3,19)."""
    u = standard_lattice("U")
    e8m = standard_lattice("E8", -1)
    return direct_sum(u, u, u, e8m, e8m)


def enriques_lattice() -> Lattice:
    """U + E8(-1), rank 10, signature (1,9)."""
    return direct_sum(standard_lattice("U"), standard_lattice("E8", -1))


def iota_matrix():
    """The involution (x1, x2, x3, x4, x5) -> (-x1, x3, x2, x5, x4)."""
    m = exact.zero_matrix(22, 22)
    for i in range(2):
        m[i][i] = -1
    for i in range(2):
        m[2 + i][4 + i] = 1
        m[4 + i][2 + i] = 1
    for i in range(8):
        m[6 + i][14 + i] = 1
        m[14 + i][6 + i] = 1
    return m


def iota_star() -> Isometry:
    return make_isometry(k3_lattice(), iota_matrix())


@dataclass(frozen=True)
class CoverModel:
    name: str
    d: int
    upstairs: Lattice
    action: ActionGroup
    invariant: Sublattice       # full fixed sublattice (primitive)
    pullback: tuple             # upstairs_rank x downstairs_rank, columns = images
    downstairs: Lattice
    torsion: tuple              # orders of cyclic torsion summands downstairs
    image_index_in_invariant: int

    def pullback_image(self) -> Sublattice:
        """Sublattice of upstairs classes pulled back from downstairs."""
        rows = exact.transpose([list(r) for r in self.pullback])
        return make_sublattice(self.upstairs, rows)

    def quotient_invariant_lattice(self) -> Lattice:
        """Gram of the pullback image: d times the downstairs form."""
        return restrict_form(self.pullback_image())


def descend_form(inv: Sublattice, d: int) -> Lattice:
    """Divide the restricted Gram of a fixed sublattice by the index d."""
    restricted = restrict_form(inv)
    gram = []
    for row in restricted.gram:
        out = []
        for x in row:
            if x % d:
                raise NotDivisible(
                    f"entry {x} of the restricted Gram is not divisible by {d}")
            out.append(x // d)
        gram.append(out)
    return make_lattice(gram)


@dataclass(frozen=True)
class TransferReport:
    d: int
    composite: tuple   # matrix of p_! p^* in downstairs coordinates
    sum_matrix: tuple  # sum of the deck action matrices upstairs
    ok: bool


def transfer_composite(model: CoverModel) -> TransferReport:
    """Verify p_! p^* = d . id exactly; raises TransferMismatch otherwise."""
    n_up = model.upstairs.rank
    s = exact.zero_matrix(n_up, n_up)
    for g in model.action.elements:
        s = exact.mat_add(s, [list(r) for r in g.matrix])
    pb = [list(r) for r in model.pullback]
    image_cols = exact.mat_mul(s, pb)
    # express each image column in pullback coordinates
    cols = [[image_cols[i][j] for i in range(n_up)] for j in range(len(pb[0]))]
    sols = exact.rat_solve_many(pb, cols)
    k = len(cols)
    composite = []
    for j, sol in enumerate(sols):
        if sol is None or any(c.denominator != 1 for c in sol):
            raise TransferMismatch(
                f"transfer image of downstairs basis vector {j} does not "
                "lie in the pullback image", column=j)
        composite.append([int(c) for c in sol])
    composite = exact.transpose(composite)
    expected = exact.mat_scale(exact.identity_matrix(k), model.d)
    if not exact.mat_eq(composite, expected):
        bad = next(j for j in range(k)
                   if any(composite[i][j] != expected[i][j] for i in range(k)))
        raise TransferMismatch(
            f"transfer composite is not {model.d} x identity at column {bad}",
            column=bad)
    return TransferReport(model.d, exact.mat_freeze(composite),
                          exact.mat_freeze(s), True)


def _validate_model(model: CoverModel) -> CoverModel:
    g_up = [list(r) for r in model.upstairs.gram]
    pb = [list(r) for r in model.pullback]
    lhs = exact.mat_mul(exact.mat_mul(exact.transpose(pb), g_up), pb)
    rhs = exact.mat_scale([list(r) for r in model.downstairs.gram], model.d)
    assert exact.mat_eq(lhs, rhs), "pullback does not scale the form by d"
    # image pointwise fixed by the deck action
    for g in model.action.generators:
        assert exact.mat_eq(exact.mat_mul([list(r) for r in g.matrix], pb), pb), \
            "pullback image is not fixed by the deck action"
    image = model.pullback_image()
    sat = saturate(image)
    inv_h = exact.hnf_nonzero_rows([list(r) for r in model.invariant.basis])
    assert exact.mat_eq(exact.hnf_nonzero_rows([list(r) for r in sat.basis]), inv_h), \
        "saturation of the pullback image differs from the fixed sublattice"
    assert image.index_in_saturation == model.image_index_in_invariant, \
        "declared image index is wrong"
    transfer_composite(model)
    return model


@lru_cache(maxsize=None)
def enriques_model() -> CoverModel:
    lat = k3_lattice()
    action = close_group([iota_star()])
    inv = invariant_sublattice(action)
    pb = exact.zero_matrix(22, 10)
    for j in range(2):          # hyperbolic block: (0, x, x, 0, 0)
        pb[2 + j][j] = 1
        pb[4 + j][j] = 1
    for j in range(8):          # E8 block: (0, 0, 0, y, y)
        pb[6 + j][2 + j] = 1
        pb[14 + j][2 + j] = 1
    down = enriques_lattice()
    return _validate_model(CoverModel(
        name="enriques", d=2, upstairs=lat, action=action, invariant=inv,
        pullback=exact.mat_freeze(pb), downstairs=down, torsion=(2,),
        image_index_in_invariant=1))


@lru_cache(maxsize=None)
def hilb_model(n: int) -> CoverModel:
    if n < 3 or n % 2 == 0:
        raise BadParameters(f"point count n must be odd and >= 3; got {n}")
    lat = direct_sum(k3_lattice(), rank_one(-2 * (n - 1)))
    m = exact.identity_matrix(23)
    im = iota_matrix()
    for i in range(22):
        for j in range(22):
            m[i][j] = im[i][j]
    action = close_group([make_isometry(lat, m)])
    inv = invariant_sublattice(action)
    pb = exact.zero_matrix(23, 11)
    for j in range(2):
        pb[2 + j][j] = 1
        pb[4 + j][j] = 1
    for j in range(8):
        pb[6 + j][2 + j] = 1
        pb[14 + j][2 + j] = 1
    pb[22][10] = 1              # exceptional summand is fixed pointwise
    down = direct_sum(enriques_lattice(), rank_one(-(n - 1)))
    return _validate_model(CoverModel(
        name=f"hilb:{n}", d=2, upstairs=lat, action=action, invariant=inv,
        pullback=exact.mat_freeze(pb), downstairs=down, torsion=(2,),
        image_index_in_invariant=1))


@lru_cache(maxsize=None)
def kummer_model(d: int, n: int) -> CoverModel:
    if d not in (2, 3, 4):
        raise BadParameters(f"deck index {d} not in {{2, 3, 4}}")
    if n < 1 or (n + 1) % d:
        raise BadParameters(f"need d | n + 1; got d={d}, n={n}")
    lat = direct_sum(wedge_block_lattice(), rank_one(-2 * (n + 1)))
    w = wedge_square(multiplication_part(d))
    m = exact.identity_matrix(7)
    for i in range(6):
        for j in range(6):
            m[i][j] = w[i][j]
    action = close_group([make_isometry(lat, m)])
    inv = invariant_sublattice(action)
    # pullback of the quotient basis: the ruling with multiple fibers
    # downstairs pulls back to a primitive class (e3^e4); the other ruling
    # pulls back d-fold (d . e1^e2); the exceptional class descends.
    pb = exact.zero_matrix(7, 3)
    pb[0][0] = d
    pb[5][1] = 1
    pb[6][2] = 1
    down = direct_sum(standard_lattice("U"), rank_one(-2 * (n + 1) // d))
    return _validate_model(CoverModel(
        name=f"kummer:{d}:{n}", d=d, upstairs=lat, action=action, invariant=inv,
        pullback=exact.mat_freeze(pb), downstairs=down, torsion=(d,),
        image_index_in_invariant=d))


def builtin_models():
    """Deterministic list of every built-in cover model."""
    models = [enriques_model(), hilb_model(3), hilb_model(5)]
    for d, n in ((2, 1), (2, 3), (3, 2), (4, 3)):
        models.append(kummer_model(d, n))
    return models


def model_by_name(name: str) -> CoverModel:
    """Resolve registry names: enriques, hilb:<n>, kummer:<d>:<n>."""
    parts = name.split(":")
    try:
        if parts[0] == "enriques" and len(parts) == 1:
            return enriques_model()
        if parts[0] == "hilb" and len(parts) == 2:
            return hilb_model(int(parts[1]))
        if parts[0] == "kummer" and len(parts) == 3:
            return kummer_model(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise UnknownName(f"bad model name {name!r}") from exc
    raise UnknownName(f"unknown model {name!r}")
