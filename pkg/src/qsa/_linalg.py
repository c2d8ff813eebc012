"""Exact linear algebra over the rationals for small dense systems.

Matrices are lists of lists of Fraction, vectors are lists of Fraction.
Everything that decides something downstream (ranks, kernels, positivity)
runs on exact arithmetic; sizes stay small (a few dozen rows), so the cubic
algorithms here are fine.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def frac_matrix(rows):
    return [[fr(x) for x in row] for row in rows]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_mul(a, b):
    if not a or not b:
        return []
    n, m, p = len(a), len(b), len(b[0])
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                row = out[i]
                for j in range(p):
                    row[j] += x * bk[j]
    return out


def mat_vec(a, x):
    return [sum((row[j] * x[j] for j in range(len(x))), ZERO) for row in a]


def vec_dot(x, y):
    return sum((x[i] * y[i] for i in range(len(x))), ZERO)


# --- echelon forms ---------------------------------------------------------


def rref(rows):
    """Reduced row echelon form. Returns (nonzero rows, pivot column indices)."""
    mat = [list(map(fr, row)) for row in rows]
    pivots = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = ONE / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows):
    return len(rref(rows)[0])


def reduce_vec(v, basis, pivots):
    """Residue of v after elimination against an rref basis."""
    v = list(map(fr, v))
    for row, c in zip(basis, pivots):
        if v[c]:
            f = v[c]
            v = [x - f * y for x, y in zip(v, row)]
    return v


def in_span(v, basis, pivots):
    return not any(reduce_vec(v, basis, pivots))


def span_equal(rows_a, rows_b):
    ea, pa = rref(rows_a)
    eb, pb = rref(rows_b)
    return pa == pb and ea == eb


def nullspace(a):
    """Basis of {x : a·x = 0}, one vector per free column of a."""
    if not a:
        return []
    ncols = len(a[0])
    basis, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for c in free:
        v = [ZERO] * ncols
        v[c] = ONE
        for row, p in zip(basis, pivots):
            v[p] = -row[c]
        out.append(v)
    return out


def solve(a, b):
    """One solution of a·x = b, or None."""
    if not a:
        return [] if not any(b) else None
    ncols = len(a[0])
    aug = [list(map(fr, row)) + [fr(bi)] for row, bi in zip(a, b)]
    basis, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(basis, pivots):
        x[p] = row[-1]
    return x


def inverse(a):
    n = len(a)
    aug = [list(map(fr, row)) + ident_row for row, ident_row in zip(a, identity(n))]
    basis, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in basis]


# --- symmetric forms -------------------------------------------------------


def charpoly(a):
    """Coefficients [1, c1, ..., cn] of det(t*I - a), by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [ONE]
    m = None
    for k in range(1, n + 1):
        if m is None:
            m = [row[:] for row in frac_matrix(a)]
        else:
            for i in range(n):
                m[i][i] += coeffs[-1]
            m = mat_mul(frac_matrix(a), m)
        c = -sum(m[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def psd_flags(sym):
    """(semidefinite, definite) for a symmetric rational matrix.

    det(t*I - M) = sum_k (-1)^k e_k t^(n-k) with e_k the k-th principal minor
    sum; all eigenvalues are real, so M is PSD iff every e_k >= 0 and PD iff
    every e_k > 0.
    """
    coeffs = charpoly(sym)
    minor_sums = [((-1) ** k) * coeffs[k] for k in range(1, len(coeffs))]
    return all(e >= 0 for e in minor_sums), all(e > 0 for e in minor_sums)


def negative_vector(sym):
    """A vector x with x^T M x < 0 for symmetric M, or None if M is PSD.

    Symmetric congruence elimination, tracking the basis change so the
    returned vector is exact; scaled to integers.
    """
    n = len(sym)
    a = [row[:] for row in frac_matrix(sym)]
    basis = identity(n)
    remaining = list(range(n))

    def finish(v):
        scale = 1
        for x in v:
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        out = [int(x * scale) for x in v]
        g = 0
        for x in out:
            g = _gcd(g, abs(x))
        if g > 1:
            out = [x // g for x in out]
        assert vec_dot(out, mat_vec(frac_matrix(sym), list(map(fr, out)))) < 0
        return out

    while remaining:
        neg = next((k for k in remaining if a[k][k] < 0), None)
        if neg is not None:
            return finish(basis[neg])
        pos = next((k for k in remaining if a[k][k] > 0), None)
        if pos is None:
            for j in remaining:
                for l in remaining:
                    if l > j and a[j][l]:
                        s = ONE if a[j][l] > 0 else -ONE
                        v = [basis[j][t] - s * basis[l][t] for t in range(n)]
                        return finish(v)
            return None
        remaining.remove(pos)
        piv = a[pos][pos]
        for j in remaining:
            if a[j][pos]:
                f = a[j][pos] / piv
                basis[j] = [basis[j][t] - f * basis[pos][t] for t in range(n)]
                for l in range(n):
                    a[j][l] -= f * a[pos][l]
                for l in range(n):
                    a[l][j] -= f * a[l][pos]
    return None


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
