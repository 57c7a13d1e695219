"""Finite isometry groups of a lattice.

Isometries act on column coordinate vectors; the group closure, invariant
sublattice, weight decomposition of a cyclic action, induced action on the
wedge square, and the rational isotypic decomposition all live here.

Isotypic components are computed at Q[G]-granularity by splitting the
representation under the center of the group algebra (class-sum operators,
exact primary decomposition).  That granularity is exactly what integral
computations downstream can see: a Galois orbit of R-irreducible types is
inseparable by rational subspaces, and orthogonal complements taken in the
integer lattice agree for every member of the orbit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

from . import exact
from .errors import NotFiniteOrder, NotOrthogonal, NotUnimodular, OrderCapExceeded
from .lattices import Lattice, Sublattice, make_sublattice

DEFAULT_ORDER_CAP = 20160
ISOTYPIC_ORDER_CAP = 1024


@dataclass(frozen=True)
class Isometry:
    lattice: Lattice
    matrix: tuple  # rank x rank tuple of int tuples

    def apply(self, v):
        return exact.mat_vec(self.matrix, v)

    def __mul__(self, other: "Isometry") -> "Isometry":
        if self.lattice != other.lattice:
            raise NotOrthogonal("isometries live on different lattices")
        return Isometry(self.lattice,
                        exact.mat_freeze(exact.mat_mul(self.matrix, other.matrix)))

    def inverse(self) -> "Isometry":
        inv = exact.rat_mat_inverse([list(r) for r in self.matrix])
        return Isometry(self.lattice,
                        exact.mat_freeze([[int(x) for x in row] for row in inv]))

    def is_identity(self) -> bool:
        return exact.is_identity([list(r) for r in self.matrix])


@dataclass(frozen=True)
class ActionGroup:
    lattice: Lattice
    generators: tuple
    elements: tuple  # closed, deterministic order
    order: int

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class WeightDecomposition:
    d: int
    dims: tuple  # dims[i] = complex dimension of the weight-i space

    def as_dict(self):
        return {i: m for i, m in enumerate(self.dims)}


def make_isometry(lat: Lattice, m) -> Isometry:
    rows = [list(r) for r in m]
    if len(rows) != lat.rank or any(len(r) != lat.rank for r in rows):
        raise NotOrthogonal("matrix size does not match lattice rank")
    g = [list(r) for r in lat.gram]
    if not exact.mat_eq(exact.mat_mul(exact.mat_mul(exact.transpose(rows), g), rows), g):
        raise NotOrthogonal("matrix does not preserve the bilinear form")
    det = exact.det_bareiss(rows)
    if det not in (1, -1):
        raise NotUnimodular(f"determinant {det} is not +-1")
    return Isometry(lat, exact.mat_freeze(rows))


def identity_isometry(lat: Lattice) -> Isometry:
    return Isometry(lat, exact.mat_freeze(exact.identity_matrix(lat.rank)))


def isometry_order(g: Isometry, cap: int = DEFAULT_ORDER_CAP) -> int:
    power = g
    for k in range(1, cap + 1):
        if power.is_identity():
            return k
        power = power * g
    raise NotFiniteOrder(f"no order found up to cap {cap}")


def close_group(gens, cap: int = DEFAULT_ORDER_CAP) -> ActionGroup:
    """Breadth-first closure of a generating set under products."""
    gens = list(gens)
    if not gens:
        raise NotOrthogonal("need at least one generator (use the identity)")
    lat = gens[0].lattice
    for g in gens:
        if g.lattice != lat:
            raise NotOrthogonal("generators live on different lattices")
    ident = identity_isometry(lat)
    seen = {ident.matrix: ident}
    frontier = [ident]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                prod = g * h
                if prod.matrix not in seen:
                    seen[prod.matrix] = prod
                    new.append(prod)
                    if len(seen) > cap:
                        raise OrderCapExceeded(f"group order exceeds cap {cap}")
        frontier = new
    elements = tuple(seen[k] for k in sorted(seen))
    return ActionGroup(lat, tuple(gens), elements, len(elements))


def invariant_sublattice(group: ActionGroup) -> Sublattice:
    """Primitive sublattice of vectors fixed by every group element.

    Computed as the saturated integer kernel (HNF route) of the stacked
    matrices g - I over the generators.
    """
    lat = group.lattice
    stacked = []
    for g in group.generators:
        m = exact.mat_sub([list(r) for r in g.matrix], exact.identity_matrix(lat.rank))
        if any(any(row) for row in m):
            stacked.extend(m)
    if not stacked:
        basis = exact.identity_matrix(lat.rank)
    else:
        basis = exact.right_kernel(stacked)
    return make_sublattice(lat, basis)


def fixed_space(group: ActionGroup):
    """Rational basis rows of the fixed subspace (same as the primitive
    invariant sublattice over Q)."""
    return [list(r) for r in invariant_sublattice(group).basis]


def character(g: Isometry) -> int:
    return sum(g.matrix[i][i] for i in range(g.lattice.rank))


def weight_decomposition(g: Isometry, d: int | None = None,
                         cap: int = DEFAULT_ORDER_CAP) -> WeightDecomposition:
    """Multiplicities of the eigenvalues zeta_d^i of a finite-order isometry.

    Exact: the characteristic polynomial (division-free Berkowitz) factors
    into cyclotomic polynomials; the weight-i multiplicity is the
    multiplicity of Phi_e for e = d / gcd(i, d).
    """
    order = isometry_order(g, cap)
    if d is None:
        d = order
    elif d != order:
        raise NotFiniteOrder(f"claimed order {d} but minimal order is {order}")
    poly = exact.charpoly_berkowitz([list(r) for r in g.matrix])
    mult = {}
    for e in sorted(k for k in range(1, d + 1) if d % k == 0):
        mult[e], poly = exact.cyclotomic_multiplicity(poly, e)
    assert len(poly) == 1, "characteristic polynomial must be a product of cyclotomics"
    dims = tuple(mult[d // gcd(i, d)] for i in range(d))
    return WeightDecomposition(d, dims)


_WEDGE_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def wedge_square(m):
    """Matrix of the induced action on the wedge square of Z^4.

    Basis order (e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4); the input acts
    on column vectors and so does the output.
    """
    rows = [list(r) for r in m]
    assert len(rows) == 4 and all(len(r) == 4 for r in rows)
    out = []
    for a, b in _WEDGE_PAIRS:
        out.append([rows[a][c] * rows[b][d] - rows[a][d] * rows[b][c]
                    for c, d in _WEDGE_PAIRS])
    return out


# ---------------------------------------------------------------------------
# isotypic decomposition


@dataclass(frozen=True)
class IsotypicComponent:
    """One Q[G]-isotypic component of the ambient representation."""

    basis: tuple            # saturated integer rows
    characters: tuple       # trace on the component, one per group element
    fs_indicator: Fraction  # >0 real, =0 complex, <0 quaternionic type
    kind: str
    is_trivial: bool

    @property
    def dim(self):
        return len(self.basis)


def conjugacy_classes(group: ActionGroup):
    """Partition of the element list into conjugacy classes (index lists)."""
    elems = list(group.elements)
    index = {g.matrix: i for i, g in enumerate(elems)}
    unassigned = set(range(len(elems)))
    classes = []
    while unassigned:
        i = min(unassigned)
        orbit = set()
        gi = elems[i]
        for h in elems:
            orbit.add(index[(h * gi * h.inverse()).matrix])
        orbit &= unassigned
        unassigned -= orbit
        classes.append(sorted(orbit))
    return classes


def _restriction(op_rows, basis):
    """Matrix of a (row-)invariant operator restricted to a row span.

    op acts on row vectors by v -> v * op^T; returns R with B op^T = R B.
    One elimination serves all rows of the basis.
    """
    if len(basis) == len(basis[0]) and exact.is_identity(basis):
        return exact.transpose(op_rows)
    bt = exact.transpose(basis)
    opt = exact.transpose(op_rows)
    images = [list(exact.vec_mat(tuple(b), opt)) for b in basis]
    sols = exact.rat_solve_many(bt, images)
    if any(s is None for s in sols):
        raise ValueError("subspace is not invariant under the operator")
    return [list(s) for s in sols]


def _poly_eval_matrix(coeffs, m):
    """Evaluate an integer polynomial (highest degree first) at a matrix."""
    n = len(m)
    out = exact.zero_matrix(n, n)
    for c in coeffs:
        out = exact.mat_mul(out, m)
        for i in range(n):
            out[i][i] += c
    return out


def _factor_rational_poly(coeffs):
    """Irreducible monic factors over Q of a Fraction-coefficient polynomial."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                       if isinstance(c, Fraction) else sympy.Integer(c)
                       for c in coeffs], x, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, _mult in factors:
        fc = [Fraction(sympy.Rational(c).p, sympy.Rational(c).q)
              for c in fac.monic().all_coeffs()]
        out.append(fc)
    out.sort(key=lambda f: (len(f), tuple(f)))
    return out


@lru_cache(maxsize=64)
def isotypic_components(group: ActionGroup,
                        cap: int = ISOTYPIC_ORDER_CAP):
    """Q[G]-isotypic components, each tagged with its character data.

    The ambient rational representation is split as far as the center of
    the group algebra can see: every class-sum operator is diagonalized
    into primary kernels of its irreducible minimal-polynomial factors.
    Bases are returned saturated with integer entries.  The real/complex/
    quaternionic tag comes from the Frobenius-Schur sum of traces at g^2.
    """
    if group.order > cap:
        raise OrderCapExceeded(
            f"isotypic decomposition capped at order {cap}; got {group.order}")
    n = group.lattice.rank
    elems = list(group.elements)
    classes = conjugacy_classes(group)

    class_sums = []
    for cls in classes:
        s = exact.zero_matrix(n, n)
        for i in cls:
            s = exact.mat_add(s, [list(r) for r in elems[i].matrix])
        class_sums.append(s)

    components = [[list(r) for r in exact.identity_matrix(n)]]
    for op in class_sums:
        # scalar operators (identity class, central scalars) split nothing
        if all(op[i][j] == (op[0][0] if i == j else 0)
               for i in range(n) for j in range(n)):
            continue
        refined = []
        for basis in components:
            r = _restriction(op, basis)
            poly = exact.charpoly_berkowitz(r)
            factors = _factor_rational_poly([Fraction(c) for c in poly])
            if len(factors) == 1:
                refined.append(basis)
                continue
            for fac in factors:
                fr = _poly_eval_matrix(fac, r)
                ker = exact.rat_kernel(exact.transpose(fr))
                if ker:
                    refined.append([list(exact.vec_mat(tuple(k), basis)) for k in ker])
        components = refined

    out = []
    for basis in components:
        int_basis = exact.clear_denominators(basis)
        chars = []
        for g in elems:
            r = _restriction([list(row) for row in g.matrix], int_basis)
            chars.append(sum(Fraction(r[i][i]) for i in range(len(r))))
        index = {g.matrix: i for i, g in enumerate(elems)}
        fs = sum(chars[index[(g * g).matrix]] for g in elems) / group.order
        trivial = all(chars[i] == len(int_basis) for i in range(len(elems)))
        kind = "real" if fs > 0 else ("complex" if fs == 0 else "quaternionic")
        out.append(IsotypicComponent(
            basis=exact.mat_freeze(int_basis),
            characters=tuple(chars),
            fs_indicator=Fraction(fs),
            kind=kind,
            is_trivial=trivial,
        ))
    out.sort(key=lambda c: (not c.is_trivial, c.basis))
    return tuple(out)


def character_inner_product(group: ActionGroup, chars_a, chars_b) -> Fraction:
    """(1/|G|) sum over g of a(g) * b(g^-1), exact."""
    elems = list(group.elements)
    index = {g.matrix: i for i, g in enumerate(elems)}
    total = Fraction(0)
    for i, g in enumerate(elems):
        total += Fraction(chars_a[i]) * Fraction(chars_b[index[g.inverse().matrix]])
    return total / group.order


def module_span(group: ActionGroup, rows):
    """Rational basis of the G-module generated by the given row vectors."""
    span = []
    for v in rows:
        for g in group.elements:
            image = exact.mat_vec([list(r) for r in g.matrix], tuple(v))
            candidate = span + [list(image)]
            if exact.rat_rank(candidate) > len(span):
                span.append([Fraction(x) for x in image])
    return span


def module_characters(group: ActionGroup, rows):
    """Traces of each group element on the module spanned by the rows."""
    span = module_span(group, rows)
    chars = []
    for g in group.elements:
        r = _restriction([list(row) for row in g.matrix], span)
        chars.append(sum(Fraction(r[i][i]) for i in range(len(r))))
    return chars
