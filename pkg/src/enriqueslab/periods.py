"""Period-domain predicates and twistor-sphere linear algebra.

Weight-one eigenspaces of a finite-order isometry live over a cyclotomic
field; entries are represented exactly as polynomials in a primitive root
of unity (pairs of rational vectors for the quadratic fields, a degree-4
extension only when a Gaussian-rational vector is tested for membership
against a zeta_3-space).  Hermitian signatures come from an exact LDL*
sign sequence; no floating point enters any verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import (
    Degenerate,
    IdentityInput,
    NotFiniteOrder,
    NotInPlane,
    NotRationalPeriod,
    NotUnitNorm,
)
from .isometry import Isometry, isometry_order
from .lattices import Lattice


# ---------------------------------------------------------------------------
# exact cyclotomic arithmetic


class CycloField:
    """Q(zeta_n) as Q[t] / Phi_n(t), with complex conjugation."""

    def __init__(self, n: int):
        self.n = n
        mod = exact.cyclotomic(n)  # highest degree first, monic
        self.degree = len(mod) - 1
        self._mod = [Fraction(c) for c in mod]
        # reduction table: t^k mod Phi_n for k = 0 .. 2 deg - 2, low-first
        table = []
        for k in range(max(2 * self.degree - 1, n + 1)):
            poly = [Fraction(0)] * (k + 1)
            poly[0] = Fraction(1)  # t^k, highest first
            table.append(self._reduce(poly))
        self._powers = table

    def _reduce(self, poly):
        """Reduce a highest-first polynomial mod Phi_n; return low-first coeffs."""
        _, rem = _frac_poly_divmod(poly, self._mod)
        low = list(reversed(rem))
        low += [Fraction(0)] * (self.degree - len(low))
        return tuple(low[: self.degree])

    def element(self, coeffs):
        low = [Fraction(c) for c in coeffs]
        low += [Fraction(0)] * (self.degree - len(low))
        return FieldElement(self, tuple(low[: self.degree]))

    def zero(self):
        return self.element([0])

    def one(self):
        return self.element([1])

    def root_of_unity(self, m: int, power: int = 1):
        """zeta_m^power inside Q(zeta_n); requires m | n."""
        if self.n % m:
            raise ValueError(f"zeta_{m} does not live in Q(zeta_{self.n})")
        k = (self.n // m) * power % self.n
        return FieldElement(self, self._powers[k])

    def mul(self, a, b):
        out = [Fraction(0)] * self.degree
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        for t, cc in enumerate(self._powers[i + j]):
                            if cc:
                                out[t] += ca * cb * cc
        return tuple(out)

    def conj(self, coeffs):
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(coeffs):
            if c:
                for t, cc in enumerate(self._powers[(self.n - k) % self.n]):
                    if cc:
                        out[t] += c * cc
        return tuple(out)

    def inverse(self, coeffs):
        # extended Euclid in Q[t] against the modulus
        a = list(self._mod)
        b = list(reversed(coeffs))
        while len(b) > 1 and b[0] == 0:
            b.pop(0)
        if b == [Fraction(0)] or not b:
            raise ZeroDivisionError("inverse of zero field element")
        s_prev, s_cur = [Fraction(0)], [Fraction(1)]
        r_prev, r_cur = a, b
        while True:
            if len(r_cur) == 1:
                break
            quot, rem = _frac_poly_divmod(r_prev, r_cur)
            while len(rem) > 1 and rem[0] == 0:
                rem.pop(0)
            s_next = _frac_poly_sub(s_prev, _frac_poly_mul(quot, s_cur))
            r_prev, r_cur = r_cur, rem
            s_prev, s_cur = s_cur, s_next
        lead = r_cur[0]
        inv_poly = [c / lead for c in s_cur]
        return self._reduce(inv_poly)


def _frac_poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def _frac_poly_sub(a, b):
    la, lb = len(a), len(b)
    n = max(la, lb)
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[n - la + i] += c
    for i, c in enumerate(b):
        out[n - lb + i] -= c
    while len(out) > 1 and out[0] == 0:
        out.pop(0)
    return out


def _frac_poly_divmod(num, den):
    num = [Fraction(c) for c in num]
    den = [Fraction(c) for c in den]
    while len(den) > 1 and den[0] == 0:
        den.pop(0)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [Fraction(0)], num
    lead = den[0]
    quot = [Fraction(0)] * (len(num) - dn)
    for i in range(len(quot)):
        c = num[i] / lead
        quot[i] = c
        if c:
            for j in range(1, len(den)):
                num[i + j] -= c * den[j]
    rem = num[len(quot):]
    while len(rem) > 1 and rem[0] == 0:
        rem.pop(0)
    return quot, rem if rem else [Fraction(0)]


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def __add__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field,
                            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field,
                            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.coeffs, other.coeffs))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * FieldElement(other.field, other.field.inverse(other.coeffs))

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            return other
        return self.field.element([Fraction(other)])

    def conj(self):
        return FieldElement(self.field, self.field.conj(self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.coeffs == other.coeffs
        return self.is_rational() and self.coeffs[0] == Fraction(other)

    def __repr__(self):
        return f"FieldElement{self.coeffs}"


def _field_kernel(rows, fld):
    """Kernel basis of a FieldElement matrix (right kernel, row output)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [fld.zero()] * ncols
        v[fc] = fld.one()
        for rr, pc in enumerate(pivots):
            v[pc] = -m[rr][fc]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# weight-one spaces


@dataclass(frozen=True)
class WeightOneSpace:
    lattice: Lattice
    d: int
    basis: tuple             # rows of (u, v) pairs: vector = u + zeta_d v, rational
    herm_signature: tuple    # (p, q) of the Hermitian extension of the form
    totally_isotropic: bool


def _herm_signature(h, fld, zeta):
    """Exact sign sequence of a Hermitian FieldElement matrix (LDL*)."""
    k = len(h)
    m = [[x for x in row] for row in h]
    active = list(range(k))
    p = q = 0
    while active:
        piv = None
        for i in active:
            if not m[i][i].is_zero():
                piv = i
                break
        if piv is None:
            hit = None
            for ii, i in enumerate(active):
                for j in active[ii + 1:]:
                    if not m[i][j].is_zero():
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                break  # remaining block is zero: radical
            i, j = hit
            for u in (fld.one(), zeta):
                cand = u * m[j][i] + u.conj() * m[i][j] + (u * u.conj()) * m[j][j]
                if not cand.is_zero():
                    break
            assert not cand.is_zero(), "Hermitian pivot rescue failed"
            # congruence: v_i += u . v_j
            for b in range(k):
                m[i][b] = m[i][b] + u * m[j][b]
            for a in range(k):
                m[a][i] = m[a][i] + u.conj() * m[a][j]
            piv = i
        d = m[piv][piv]
        val = d.rational_value()
        if val > 0:
            p += 1
        else:
            q += 1
        active.remove(piv)
        for a in active:
            f = m[a][piv] / d
            if not f.is_zero():
                for b in range(k):
                    m[a][b] = m[a][b] - f * m[piv][b]
                fc = f.conj()
                for b in range(k):
                    m[b][a] = m[b][a] - fc * m[b][piv]
    return p, q


def weight_one_space(g: Isometry, d: int | None = None) -> WeightOneSpace:
    """Exact basis and Hermitian signature of the zeta_d-eigenspace.

    The basis is returned as pairs of rational vectors with respect to the
    Q-basis (1, zeta_d) of the cyclotomic field (the second vector is zero
    when d <= 2).
    """
    order = isometry_order(g)
    if d is None:
        d = order
    elif d != order:
        raise NotFiniteOrder(f"claimed order {d} but minimal order is {order}")
    if d < 2:
        raise NotFiniteOrder("weight-one space needs order >= 2")
    lat = g.lattice
    n = lat.rank
    fld = CycloField(d)
    zeta = fld.root_of_unity(d)
    mat = [[fld.element([g.matrix[i][j]]) for j in range(n)] for i in range(n)]
    for i in range(n):
        mat[i][i] = mat[i][i] - zeta
    kernel = _field_kernel(mat, fld)

    gram = [[fld.element([lat.gram[i][j]]) for j in range(n)] for i in range(n)]

    def pair(a, b_conj):
        acc = fld.zero()
        for i in range(n):
            if a[i].is_zero():
                continue
            row = gram[i]
            for j in range(n):
                if not b_conj[j].is_zero():
                    acc = acc + a[i] * row[j] * b_conj[j]
        return acc

    herm = [[pair(v, [x.conj() for x in w]) for w in kernel] for v in kernel]
    sig = _herm_signature(herm, fld, zeta)
    bilinear_zero = all(
        pair(v, list(w)).is_zero() for v in kernel for w in kernel)

    deg = fld.degree
    basis_pairs = []
    for v in kernel:
        u_vec = tuple(x.coeffs[0] for x in v)
        z_vec = tuple(x.coeffs[1] if deg > 1 else Fraction(0) for x in v)
        basis_pairs.append((u_vec, z_vec))
    return WeightOneSpace(lat, d, tuple(basis_pairs), sig, bilinear_zero)


# ---------------------------------------------------------------------------
# period vectors


@dataclass(frozen=True)
class PeriodVector:
    re: tuple
    im: tuple
    selfpair: tuple     # ((w, w) real part, imaginary part), both rational
    hermpair: Fraction  # (w, conj w), always real


def make_period_vector(lat: Lattice, re, im) -> PeriodVector:
    x = tuple(Fraction(c) for c in re)
    y = tuple(Fraction(c) for c in im)
    qx = exact.dot(x, lat.gram, x)
    qy = exact.dot(y, lat.gram, y)
    xy = exact.dot(x, lat.gram, y)
    return PeriodVector(x, y, (qx - qy, 2 * xy), qx + qy)


def period_membership(omega: PeriodVector, space: WeightOneSpace) -> bool:
    """Exact membership and positivity test against the period domain.

    omega must lie in the weight-one space; for d = 2 the quadric condition
    (w, w) = 0 is also required, while for d >= 3 the space is totally
    isotropic so only (w, conj w) > 0 is tested.
    """
    d = space.d
    n = len(omega.re)
    fld = CycloField(_lcm(d, 4))
    i_unit = fld.root_of_unity(4)
    zeta = fld.root_of_unity(d)
    target = [fld.element([omega.re[k]]) + i_unit * fld.element([omega.im[k]])
              for k in range(n)]
    columns = []
    for u_vec, z_vec in space.basis:
        columns.append([fld.element([u_vec[k]]) + zeta * fld.element([z_vec[k]])
                        for k in range(n)])
    if not columns:
        return False
    # solve sum_j c_j basis_j = omega over the compositum field
    rows = [[columns[j][k] for j in range(len(columns))] + [target[k]]
            for k in range(n)]
    if not _membership_consistent(rows, fld, len(columns)):
        return False
    if d == 2 and omega.selfpair != (0, 0):
        return False
    return omega.hermpair > 0


def _membership_consistent(aug_rows, fld, ncols):
    """Gaussian elimination on [A | b]; True iff b is in the column span."""
    m = [list(r) for r in aug_rows]
    nrows = len(m)
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if not m[i][ncols].is_zero():
            return False
    return True


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# twistor data


def twistor_data(lat: Lattice, plane_rows, kappa):
    """Split P = <kappa> + Pi and return (Pi basis, period vector x + iy).

    kappa must be a rational vector in P with q(kappa) = 1.  The output pair
    (x, y) spans Pi = kappa-perp inside P with q(x) = q(y) and (x, y) = 0,
    oriented so that (kappa, x, y) is positively oriented against the given
    plane basis.  Raises NotRationalPeriod when the plane determinant
    obstructs an exact Gaussian-rational representative.
    """
    basis = [[Fraction(c) for c in row] for row in plane_rows]
    kap = tuple(Fraction(c) for c in kappa)
    coords = exact.rat_solve(exact.transpose(basis), list(kap))
    if coords is None:
        raise NotInPlane("kappa does not lie in the plane")
    if exact.dot(kap, lat.gram, kap) != 1:
        raise NotUnitNorm(f"q(kappa) = {exact.dot(kap, lat.gram, kap)}, need 1")

    # Pi = kappa-perp in P
    pairings = [[exact.dot(tuple(row), lat.gram, kap)] for row in basis]
    ker = exact.rat_kernel(exact.transpose(pairings))
    pi_rows = [list(exact.vec_mat(tuple(c), basis)) for c in ker]
    assert len(pi_rows) == 2, "kappa-perp in a 3-plane must be 2-dimensional"

    u, w = pi_rows
    qu = exact.dot(tuple(u), lat.gram, tuple(u))
    uw = exact.dot(tuple(u), lat.gram, tuple(w))
    y0 = [wi - Fraction(uw, qu) * ui for wi, ui in zip(w, u)]
    qy0 = exact.dot(tuple(y0), lat.gram, tuple(y0))
    det = Fraction(qu) * qy0
    root = exact.is_square_fraction(det)
    if root is None:
        raise NotRationalPeriod(
            f"plane determinant {det} is not a rational square")
    # scale y0 so q(y) = q(x): y = y0 * qu / sqrt(det)
    scale = Fraction(qu) / root
    x = [Fraction(c) for c in u]
    y = [scale * c for c in y0]

    # orientation: (kappa, x, y) positive against the plane basis
    coord_rows = [list(coords)]
    for vec in (x, y):
        cr = exact.rat_solve(exact.transpose(basis), vec)
        coord_rows.append(list(cr))
    if exact.det_fraction(coord_rows) < 0:
        y = [-c for c in y]

    omega = make_period_vector(lat, x, y)
    assert omega.selfpair == (0, 0) and omega.hermpair > 0
    return tuple(tuple(r) for r in (x, y)), omega


@dataclass(frozen=True)
class InvariantLine:
    line: tuple               # primitive vector in plane coordinates
    norm: Fraction
    unit_points_exact: tuple | None
    unit_points_float: tuple


def invariant_line(rho, plane_gram) -> InvariantLine:
    """Fixed axis of a nontrivial rotation of a positive 3-space.

    rho is a 3x3 rational matrix, special orthogonal for plane_gram; the
    result carries the (+1)-eigenline and the two antipodal unit-norm
    points on it.
    """
    rows = [[Fraction(c) for c in row] for row in rho]
    g3 = [[Fraction(c) for c in row] for row in plane_gram]
    if exact.signature_of_symmetric(g3) != (3, 0, 0):
        raise Degenerate("plane form must be positive definite of rank 3")
    lhs = exact.mat_mul(exact.mat_mul(exact.transpose(rows), g3), rows)
    if not all(lhs[i][j] == g3[i][j] for i in range(3) for j in range(3)):
        raise Degenerate("rho does not preserve the plane form")
    if exact.det_fraction([list(r) for r in rows]) != 1:
        raise Degenerate("rho must be special orthogonal")
    if all(rows[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3)):
        raise IdentityInput("identity rotation has no unique invariant line")

    delta = [[rows[i][j] - (1 if i == j else 0) for j in range(3)] for i in range(3)]
    ker = exact.rat_kernel(delta)
    # a nontrivial special-orthogonal transformation of a definite 3-space
    # always has a 1-dimensional fixed axis
    assert len(ker) == 1, "rotation axis must be one-dimensional"
    prim = exact.clear_denominators([list(ker[0])])[0]
    if prim[next(i for i, x in enumerate(prim) if x)] < 0:
        prim = [-x for x in prim]
    norm = Fraction(exact.dot(tuple(prim), g3, tuple(prim)))
    root = exact.is_square_fraction(norm)
    if root is not None:
        kappa = tuple(Fraction(x) / root for x in prim)
        exact_pts = (kappa, tuple(-c for c in kappa))
    else:
        exact_pts = None
    scale = 1.0 / float(norm) ** 0.5
    fl = tuple(float(x) * scale for x in prim)
    return InvariantLine(tuple(prim), norm, exact_pts, (fl, tuple(-x for x in fl)))
