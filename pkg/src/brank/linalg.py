"""Exact linear algebra over Q, quadratic extensions, GF(p), and polynomial rings.

Field matrices (Fraction / QElem / GF wrappers) use plain Gaussian
elimination.  Matrices over MPoly or Laurent use fraction-free Bareiss
elimination with exact division, which computes rank over the fraction field
without ever forming rational functions.  Pivoting is deterministic: the
first nonzero entry in row-major order.
"""

from __future__ import annotations

from fractions import Fraction


def copy_matrix(rows):
    return [list(r) for r in rows]


def field_rank(rows):
    """Rank of a matrix with entries in a field (duck-typed division)."""
    m = copy_matrix(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for i in range(row + 1, nrows):
            if m[i][col]:
                f = m[i][col] / pv
                for j in range(col, ncols):
                    m[i][j] = m[i][j] - f * m[row][j]
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def bareiss_rank(rows):
    """Rank over the fraction field, entries in an integral domain.

    Requires entries supporting +, -, *, exact_div, and truthiness.
    """
    m = copy_matrix(rows)
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    row = 0
    prev = None  # previous pivot; None means 1
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        for i in range(row + 1, nrows):
            for j in range(col + 1, ncols):
                num = pv * m[i][j] - m[i][col] * m[row][j]
                m[i][j] = num if prev is None else num.exact_div(prev)
            m[i][col] = m[i][col] * 0 if not isinstance(m[i][col], Fraction) else Fraction(0)
        prev = pv
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def mat_rank(rows):
    """Exact rank; dispatches on the entry type (empty matrix has rank 0)."""
    for r in rows:
        for x in r:
            if isinstance(x, Fraction):
                return field_rank(rows)
            if hasattr(x, "exact_div"):
                return bareiss_rank(rows)
            return field_rank(rows)
    return 0


def poly_det(rows):
    """Exact determinant of a square matrix over MPoly (fraction-free).

    Bareiss elimination; the result equals the cofactor-expansion determinant.
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    for r in rows:
        if len(r) != n:
            raise ValueError("matrix not square")
    if n == 1:
        return rows[0][0]
    m = copy_matrix(rows)
    sign = 1
    prev = None
    for k in range(n - 1):
        piv = None
        for i in range(k, n):
            if m[i][k]:
                piv = i
                break
        if piv is None:
            return m[0][0] * 0  # zero of the ring
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pv = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pv * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else num.exact_div(prev)
        prev = pv
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def frac_det(rows):
    """Determinant over a field (Fraction or QElem entries)."""
    n = len(rows)
    m = copy_matrix(rows)
    det = None
    sign = 1
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k]:
                piv = i
                break
        if piv is None:
            return Fraction(0) if det is None or isinstance(det, Fraction) else det * 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        pv = m[k][k]
        det = pv if det is None else det * pv
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / pv
                for j in range(k, n):
                    m[i][j] = m[i][j] - f * m[k][j]
    return det * sign


def rref(rows):
    """Reduced row echelon form over a field; returns (matrix, pivot_cols)."""
    m = copy_matrix(rows)
    if not m or not m[0]:
        return m, []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][col]
        m[row] = [x / pv for x in m[row]]
        for i in range(nrows):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    return m, pivots


def nullspace(rows, ncols=None):
    """Basis of the right kernel over a field, as a list of vectors."""
    if not rows:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(ncols or 0)] for j in range(ncols or 0)]
    ncols = len(rows[0])
    r, pivots = rref(rows)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of A x = b over a field, or None if inconsistent."""
    if not rows:
        return [] if not any(rhs) else None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    for i, row in enumerate(m):
        if any(row[:ncols]):
            continue
        if row[ncols]:
            return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        if p == ncols:
            return None
        x[p] = m[i][ncols]
    return x


def invert(rows):
    """Exact inverse of a square matrix over a field, or None if singular."""
    n = len(rows)
    aug = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m[:n]]


def in_span(vectors, target):
    """Is ``target`` in the Q-span of ``vectors``?  All plain Q-vectors."""
    if not vectors:
        return not any(target)
    cols = [list(v) for v in vectors]
    a = [[cols[j][i] for j in range(len(cols))] for i in range(len(target))]
    return solve(a, list(target)) is not None


def span_dim(vectors):
    if not vectors:
        return 0
    return field_rank(vectors)


def identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m2 = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m2)] for i in range(n)]


def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def transpose(a):
    if not a:
        return []
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]
