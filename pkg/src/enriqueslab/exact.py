"""Exact integer and rational linear algebra.

Everything here runs on arbitrary-precision Python ints and Fractions; no
floating point.  Matrices are lists (or tuples) of rows.  Determinism
matters: pivot selection rules are fixed so golden tests can freeze outputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

IntMatrix = list
Row = tuple


# ---------------------------------------------------------------------------
# basic matrix plumbing


def mat_copy(m):
    return [list(row) for row in m]


def mat_freeze(m):
    return tuple(tuple(x for x in row) for row in m)


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []


def mat_mul(a, b):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    bt = list(zip(*b))
    return [[sum(ra[t] * ct[t] for t in range(k)) for ct in bt] for ra in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(m, c):
    return [[c * x for x in row] for row in m]


def mat_eq(a, b):
    return len(a) == len(b) and all(tuple(ra) == tuple(rb) for ra, rb in zip(a, b))


def is_identity(m):
    return all(m[i][j] == (1 if i == j else 0) for i in range(len(m)) for j in range(len(m)))


def mat_vec(m, v):
    """m acting on a column vector given as a tuple; returns a tuple."""
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def vec_mat(v, m):
    """Row vector times matrix."""
    cols = len(m[0]) if m else 0
    return tuple(sum(v[i] * m[i][j] for i in range(len(v))) for j in range(cols))


def dot(u, gram, v):
    """Pairing u . G . v^T of two row vectors."""
    acc = 0
    for i, ui in enumerate(u):
        if ui:
            row = gram[i]
            acc += ui * sum(row[j] * v[j] for j in range(len(v)) if v[j])
    return acc


def gram_of(basis, gram):
    """Restricted Gram matrix B G B^T for basis rows B."""
    return [[dot(u, gram, v) for v in basis] for u in basis]


# ---------------------------------------------------------------------------
# determinants and characteristic polynomials


def det_bareiss(mat):
    """Exact determinant by fraction-free Gaussian elimination."""
    m = mat_copy(mat)
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det_fraction(mat):
    """Exact determinant of a rational matrix (Gaussian elimination)."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    if n == 0:
        return Fraction(1)
    det = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def charpoly_berkowitz(mat):
    """Characteristic polynomial coefficients, highest degree first.

    Division-free (Berkowitz), so the result is exact over the integers.
    Returns [1, c_{n-1}, ..., c_0] with p(t) = t^n + c_{n-1} t^{n-1} + ...
    """
    n = len(mat)
    if n == 0:
        return [1]
    # vectors of polynomial coefficients, lowest degree last
    poly = [1, -mat[0][0]]
    for k in range(1, n):
        # principal k+1 x k+1 block data
        a = mat[k][k]
        row = mat[k][:k]          # R
        col = [mat[i][k] for i in range(k)]  # C
        # toeplitz coefficients: -a, -R C, -R A C, -R A^2 C, ...
        toep = [1, -a]
        vec = col[:]
        for _ in range(k):
            toep.append(-sum(row[i] * vec[i] for i in range(k)))
            vec = [sum(mat[i][j] * vec[j] for j in range(k)) for i in range(k)]
        new = [0] * (k + 2)
        for i, c in enumerate(poly):
            for j in range(len(toep)):
                if i + j <= k + 1:
                    new[i + j] += c * toep[j]
        poly = new
    return poly


# ---------------------------------------------------------------------------
# polynomial helpers over the integers (monic arithmetic only)


def poly_divmod(num, den):
    """Divide integer-coefficient polynomials (lists, highest degree first).

    den must be monic.  Returns (quotient, remainder) with integer entries.
    """
    num = list(num)
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return [0], num
    quot = [0] * (len(num) - dn)
    for i in range(len(quot)):
        c = num[i]
        quot[i] = c
        if c:
            for j in range(1, len(den)):
                num[i + j] -= c * den[j]
    rem = num[len(quot):]
    while len(rem) > 1 and rem[0] == 0:
        rem.pop(0)
    return quot, rem


_CYCLOTOMIC_CACHE = {1: [1, -1]}


def cyclotomic(n):
    """Integer coefficients of the n-th cyclotomic polynomial."""
    if n in _CYCLOTOMIC_CACHE:
        return _CYCLOTOMIC_CACHE[n]
    # (t^n - 1) / prod_{d | n, d < n} Phi_d
    poly = [1] + [0] * (n - 1) + [-1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = poly_divmod(poly, cyclotomic(d))
            assert rem == [0]
    _CYCLOTOMIC_CACHE[n] = poly
    return poly


def cyclotomic_multiplicity(poly, e):
    """Largest k with Phi_e^k dividing poly; also returns the quotient."""
    phi = cyclotomic(e)
    k = 0
    while len(poly) > 1:
        quot, rem = poly_divmod(poly, phi)
        if any(rem):
            break
        poly = quot
        k += 1
    return k, poly


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(mat, transform=False):
    """Row-style Hermite normal form.

    Pivots are positive, entries above a pivot reduced into [0, pivot);
    candidate pivot rows are tried in increasing row index (deterministic).
    With transform=True also returns unimodular U with U * mat = H.
    """
    m = [list(r) for r in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = identity_matrix(rows) if transform else None

    r = 0
    for c in range(cols):
        # clear column c below row r using gcd row ops; smallest row index wins ties
        pivot_row = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
            if transform:
                u[r], u[pivot_row] = u[pivot_row], u[r]
        for i in range(r + 1, rows):
            while m[i][c] != 0:
                if m[r][c] == 0:
                    m[r], m[i] = m[i], m[r]
                    if transform:
                        u[r], u[i] = u[i], u[r]
                    continue
                q = m[i][c] // m[r][c]
                if q:
                    for j in range(cols):
                        m[i][j] -= q * m[r][j]
                    if transform:
                        for j in range(rows):
                            u[i][j] -= q * u[r][j]
                if m[i][c] != 0 and abs(m[i][c]) < abs(m[r][c]):
                    m[r], m[i] = m[i], m[r]
                    if transform:
                        u[r], u[i] = u[i], u[r]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
            if transform:
                u[r] = [-x for x in u[r]]
        # reduce entries above the pivot to [0, pivot)
        p = m[r][c]
        for i in range(r):
            q = m[i][c] // p
            if q:
                for j in range(cols):
                    m[i][j] -= q * m[r][j]
                if transform:
                    for j in range(rows):
                        u[i][j] -= q * u[r][j]
        r += 1
        if r == rows:
            break
    if transform:
        return m, u
    return m


def hnf_nonzero_rows(mat):
    h = hnf(mat)
    return [row for row in h if any(row)]


def left_kernel(mat):
    """Basis (rows) of {x integer row : x * mat = 0}; always saturated."""
    rows = len(mat)
    if rows == 0:
        return []
    h, u = hnf(mat, transform=True)
    ker = [u[i] for i in range(rows) if not any(h[i])]
    return hnf_nonzero_rows(ker) if ker else []


def right_kernel(mat):
    """Basis (rows) of {x : mat * x^T = 0}; saturated."""
    return left_kernel(transpose(mat))


def row_span_index(sub_rows, super_rows):
    """Index [super : sub] of two full-rank row lattices with sub <= super.

    Computed as the ratio of HNF pivot products.
    """
    hs = hnf_nonzero_rows(sub_rows)
    hp = hnf_nonzero_rows(super_rows)
    if len(hs) != len(hp):
        raise ValueError("row spans have different ranks")

    def pivot_product(h):
        prod = 1
        for row in h:
            for x in row:
                if x:
                    prod *= x
                    break
        return prod

    num, den = pivot_product(hs), pivot_product(hp)
    if num % den:
        raise ValueError("sub is not contained in super")
    return num // den


def snf_diagonal(mat):
    """Diagonal of the Smith normal form (nonnegative, divisibility chain)."""
    m = mat_copy(mat)
    rows, cols = len(m), len(m[0]) if m else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        # find a nonzero entry
        found = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j]:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                while m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, cols):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        dirty = True
            # clear row t
            for j in range(t + 1, cols):
                while m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(t, rows):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for i in range(t, rows):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the remaining block
        p = m[t][t]
        stir = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % p:
                    for jj in range(t, cols):
                        m[t][jj] += m[i][jj]
                    stir = True
                    break
            if stir:
                break
        if stir:
            continue
        diag.append(abs(p))
        t += 1
    return diag


# ---------------------------------------------------------------------------
# rational elimination


def rref(mat):
    """Reduced row-echelon form over Fractions: returns (rref rows, pivot cols)."""
    m = [[Fraction(x) for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rat_rank(mat):
    _, pivots = rref(mat)
    return len(pivots)


def rat_kernel(mat):
    """Basis rows of {x rational : mat * x^T = 0}."""
    cols = len(mat[0]) if mat else 0
    red, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(tuple(v))
    return basis


def rat_solve(mat, rhs):
    """Solve mat * x^T = rhs^T; returns tuple of Fractions or None."""
    rows = len(mat)
    aug = [list(mat[i]) + [rhs[i]] for i in range(rows)]
    red, pivots = rref(aug)
    cols = len(mat[0]) if mat else 0
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return tuple(x)


def rat_solve_many(mat, rhs_cols):
    """Solve mat * X = rhs for several right-hand sides at once.

    rhs_cols is a list of column vectors; returns a list of solution tuples
    (or None per column).  One elimination pass serves all columns; pivots
    are restricted to the coefficient block.
    """
    rows = len(mat)
    cols = len(mat[0]) if mat else 0
    k = len(rhs_cols)
    aug = [[Fraction(x) for x in mat[i]] + [Fraction(rhs_cols[j][i]) for j in range(k)]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if aug[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    sols = []
    for j in range(k):
        col = cols + j
        ok = all(aug[i][col] == 0 for i in range(len(pivots), rows))
        if not ok:
            sols.append(None)
            continue
        x = [Fraction(0)] * cols
        for rr, pc in enumerate(pivots):
            x[pc] = aug[rr][col]
        sols.append(tuple(x))
    return sols


def in_row_span(rows, vec):
    """Is vec in the rational row span of rows?"""
    if not rows:
        return all(x == 0 for x in vec)
    sol = rat_solve(transpose(rows), vec)
    return sol is not None


def rat_mat_inverse(mat):
    n = len(mat)
    aug = [[Fraction(x) for x in mat[i]] + [Fraction(1 if j == i else 0) for j in range(n)]
           for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in red]


def clear_denominators(rows):
    """Scale rational rows to a canonical saturated integer basis.

    The rows are scaled to integers, then HNF-reduced; the result spans the
    same rational space and generates its intersection with the integer
    lattice (the ambient-coordinate saturation).
    """
    if not rows:
        return []
    scaled = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        mult = 1
        for f in fracs:
            mult = mult * f.denominator // gcd(mult, f.denominator)
        scaled.append([int(f * mult) for f in fracs])
    # saturate: integer vectors inside the rational span
    ortho = rat_kernel(scaled)
    if not ortho:
        return [list(r) for r in identity_matrix(len(scaled[0]))]
    int_ortho = []
    for row in ortho:
        mult = 1
        for f in row:
            mult = mult * f.denominator // gcd(mult, f.denominator)
        int_ortho.append([int(f * mult) for f in row])
    return left_kernel(transpose(int_ortho))


# ---------------------------------------------------------------------------
# signatures of symmetric rational matrices


def signature_of_symmetric(gram):
    """Exact (p, q, r) sign counts via congruence diagonalization.

    Symmetric pivoting: take the first nonzero diagonal entry; if the
    diagonal is all zero but some off-diagonal entry survives, a row/column
    addition creates a nonzero diagonal first.  Rational arithmetic only.
    """
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    active = list(range(n))
    p = q = r = 0
    while active:
        piv = None
        for i in active:
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            hit = None
            for ii, i in enumerate(active):
                for j in active[ii + 1:]:
                    if m[i][j] != 0:
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                r += len(active)
                break
            i, j = hit
            # congruence: add row/col j into i, making m[i][i] = 2 m[i][j] != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            p += 1
        else:
            q += 1
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f:
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][i] -= f * m[k][piv]
    return p, q, r


def diagonalize_symmetric(gram):
    """Congruence diagonalization: returns (rows C, diagonal values).

    C has rational rows with C G C^T diagonal; same pivoting rule as
    signature_of_symmetric.  Zero diagonal values span the radical.
    """
    n = len(gram)
    m = [[Fraction(x) for x in row] for row in gram]
    c = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    active = list(range(n))
    done = []
    while active:
        piv = None
        for i in active:
            if m[i][i] != 0:
                piv = i
                break
        if piv is None:
            hit = None
            for ii, i in enumerate(active):
                for j in active[ii + 1:]:
                    if m[i][j] != 0:
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                done.extend(active)
                break
            i, j = hit
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            for k in range(n):
                c[i][k] += c[j][k]
            piv = i
        d = m[piv][piv]
        done.append(piv)
        active.remove(piv)
        for i in active:
            f = m[i][piv] / d
            if f:
                for k in range(n):
                    m[i][k] -= f * m[piv][k]
                for k in range(n):
                    m[k][i] -= f * m[k][piv]
                for k in range(n):
                    c[i][k] -= f * c[piv][k]
    rows = [tuple(c[i]) for i in done]
    diag = [m[i][i] for i in done]
    return rows, diag


def descartes_positive_count(coeffs):
    """Number of positive roots of a real-rooted integer polynomial.

    Sign variations in the coefficient sequence; exact for characteristic
    polynomials of symmetric matrices (all roots real), used as an
    independent oracle for the LDL^T signature.
    """
    signs = [c for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


# ---------------------------------------------------------------------------
# integer square roots of rationals (used by enumeration bounds)


def floor_sqrt_fraction(fr):
    """floor(sqrt(a/b)) for a nonnegative Fraction, exactly."""
    if fr < 0:
        raise ValueError("negative radicand")
    a, b = fr.numerator, fr.denominator
    return isqrt(a * b) // b if b != 1 else isqrt(a)


def is_square_fraction(fr):
    """If the Fraction is a perfect square of a rational, return the root."""
    if fr < 0:
        return None
    a, b = fr.numerator, fr.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None
