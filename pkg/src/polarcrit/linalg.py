"""Exact dense linear algebra over a coefficient field.

Matrices are plain lists of lists of field elements.  Includes Gaussian
elimination (rank, determinant, inverse, multi-RHS solve), characteristic
polynomials via Hessenberg reduction, and a rank routine for matrices with
entries in F[T]/(q) that splits q when it meets a zero divisor, so rank
statements hold in every residue factor simultaneously.
"""

from __future__ import annotations

from typing import Sequence

from .ring import CoefficientField
from .unipoly import UniPoly

__all__ = [
    "mat_copy",
    "identity",
    "mat_mul",
    "mat_vec",
    "rank",
    "det",
    "inverse",
    "solve_many",
    "kernel_basis",
    "charpoly",
    "rank_range_mod",
]


def mat_copy(m):
    return [row[:] for row in m]


def identity(field: CoefficientField, n: int):
    z, o = field.zero(), field.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(field: CoefficientField, a, b):
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    zero = field.zero()
    out = [[zero] * cols for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for t in range(k):
            v = arow[t]
            if field.eq_zero(v):
                continue
            brow = b[t]
            for j in range(cols):
                orow[j] = field.add(orow[j], field.mul(v, brow[j]))
    return out


def mat_vec(field: CoefficientField, a, v):
    out = []
    for row in a:
        acc = field.zero()
        for x, y in zip(row, v):
            acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return out


def _eliminate(field: CoefficientField, m, augmented_cols: int = 0):
    """Row-reduce in place; returns (rank, pivot_columns, det_factor).

    Only the first ``len(row) - augmented_cols`` columns are searched for
    pivots.  ``det_factor`` tracks row swaps and pivot products for square
    matrices.
    """
    rows = len(m)
    if rows == 0:
        return 0, [], field.one()
    cols = len(m[0]) - augmented_cols
    det_factor = field.one()
    r = 0
    pivots = []
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if not field.eq_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            m[r], m[pivot] = m[pivot], m[r]
            det_factor = field.neg(det_factor)
        det_factor = field.mul(det_factor, m[r][c])
        inv = field.inv(m[r][c])
        m[r] = [field.mul(v, inv) for v in m[r]]
        for i in range(rows):
            if i == r:
                continue
            f = m[i][c]
            if field.eq_zero(f):
                continue
            m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return r, pivots, det_factor


def rank(field: CoefficientField, m) -> int:
    if not m:
        return 0
    work = mat_copy(m)
    r, _, _ = _eliminate(field, work)
    return r


def det(field: CoefficientField, m):
    n = len(m)
    if n == 0:
        return field.one()
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    work = mat_copy(m)
    r, _, factor = _eliminate(field, work)
    return factor if r == n else field.zero()


def solve_many(field: CoefficientField, a, rhs_columns):
    """Solve a*X = B for square invertible a; ``rhs_columns`` is a list of
    columns.  Returns the solution columns, or None when a is singular."""
    n = len(a)
    work = [a[i][:] + [col[i] for col in rhs_columns] for i in range(n)]
    r, _, _ = _eliminate(field, work, augmented_cols=len(rhs_columns))
    if r < n:
        return None
    return [[work[i][n + j] for i in range(n)] for j in range(len(rhs_columns))]


def inverse(field: CoefficientField, a):
    n = len(a)
    cols = solve_many(field, a, [[field.one() if i == j else field.zero() for i in range(n)] for j in range(n)])
    if cols is None:
        return None
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def kernel_basis(field: CoefficientField, m):
    """Basis of the right kernel of m, as a list of vectors."""
    if not m:
        return []
    cols = len(m[0])
    work = mat_copy(m)
    _, pivots, _ = _eliminate(field, work)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [field.zero()] * cols
        vec[f] = field.one()
        for r, c in enumerate(pivots):
            vec[c] = field.neg(work[r][f])
        basis.append(vec)
    return basis


def charpoly(field: CoefficientField, a) -> UniPoly:
    """Characteristic polynomial det(T*I - a), monic, via Hessenberg reduction."""
    n = len(a)
    if n == 0:
        return UniPoly.one(field)
    h = mat_copy(a)
    for c in range(n - 2):
        pivot = None
        for r in range(c + 1, n):
            if not field.eq_zero(h[r][c]):
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != c + 1:
            h[c + 1], h[pivot] = h[pivot], h[c + 1]
            for row in h:
                row[c + 1], row[pivot] = row[pivot], row[c + 1]
        inv = field.inv(h[c + 1][c])
        for r in range(c + 2, n):
            f = field.mul(h[r][c], inv)
            if field.eq_zero(f):
                continue
            h[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(h[r], h[c + 1])]
            # compensating column operation keeps the matrix similar
            for i in range(n):
                h[i][c + 1] = field.add(h[i][c + 1], field.mul(f, h[i][r]))
    # charpoly of the Hessenberg matrix by the standard recurrence
    t = UniPoly.t(field)
    ps = [UniPoly.one(field)]
    for m in range(1, n + 1):
        poly = (t - UniPoly.constant(field, h[m - 1][m - 1])) * ps[m - 1]
        prod = field.one()
        for i in range(1, m):
            prod = field.mul(prod, h[m - i][m - i - 1])
            coeff = field.mul(h[m - i - 1][m - 1], prod)
            poly = poly - ps[m - i - 1].scalar_mul(coeff)
        ps.append(poly)
    return ps[n]


# ---------------------------------------------------------------------------
# Rank over F[T]/(q) with dynamic splitting.
# ---------------------------------------------------------------------------


def rank_range_mod(entries: Sequence[Sequence[UniPoly]], q: UniPoly) -> tuple[int, int]:
    """(min, max) rank of a matrix with entries in F[T]/(q), ranging over the
    residue factors of q.

    When every entry of a candidate pivot column is a zero divisor, q is
    split by the gcd and both branches are processed, so the returned range
    is valid for every root of q (q need not be squarefree, but typically is).
    """
    if q.degree() < 1:
        raise ValueError("modulus must have positive degree")
    mat = [[e % q for e in row] for row in entries]
    return _rank_range(mat, q)


def _rank_range(mat, q: UniPoly) -> tuple[int, int]:
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    r = 0
    c = 0
    mat = [row[:] for row in mat]
    while r < rows and c < cols:
        pivot = None
        for i in range(r, rows):
            e = mat[i][c]
            if e.is_zero():
                continue
            g = e.gcd(q)
            if g.degree() == 0:
                pivot = i
                break
            # zero divisor: split the modulus and recurse on both branches
            q1 = g
            q2 = (q // g).monic()
            if q2.degree() == 0:
                # entry is zero in the whole quotient; normalize and continue
                mat[i][c] = UniPoly.zero(q.field)
                continue
            lo1, hi1 = _rank_range([[x % q1 for x in row] for row in mat], q1)
            lo2, hi2 = _rank_range([[x % q2 for x in row] for row in mat], q2)
            return min(lo1, lo2), max(hi1, hi2)
        if pivot is None:
            c += 1
            continue
        if pivot != r:
            mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = mat[r][c].inverse_mod(q)
        mat[r] = [x.mul_mod(inv, q) for x in mat[r]]
        for i in range(rows):
            if i == r:
                continue
            f = mat[i][c]
            if f.is_zero():
                continue
            mat[i] = [(a - f.mul_mod(b, q)) % q for a, b in zip(mat[i], mat[r])]
        r += 1
        c += 1
    return r, r
