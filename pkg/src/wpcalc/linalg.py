"""Exact linear algebra over the rationals.

Small dense routines on lists of ``fractions.Fraction`` rows, enough for
the intertwiner solves in :mod:`wpcalc.nilrep`.  No pivoting heuristics:
matrices here are tiny and the arithmetic is exact.
"""

from fractions import Fraction

Matrix = list[list[Fraction]]


def as_fraction_matrix(rows, nrows, ncols):
    """Copy ``rows`` into a fresh nrows x ncols Fraction matrix."""
    out = [[Fraction(rows[i][j]) for j in range(ncols)] for i in range(nrows)]
    return out


def zero_matrix(nrows, ncols):
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity_matrix(n):
    m = zero_matrix(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_mul(a, b):
    n, k = len(a), len(b)
    p = len(b[0]) if b else 0
    out = zero_matrix(n, p)
    for i in range(n):
        ai = a[i]
        for t in range(k):
            x = ai[t]
            if x == 0:
                continue
            bt = b[t]
            oi = out[i]
            for j in range(p):
                oi[j] += x * bt[j]
    return out


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def rank(rows):
    """Rank by fraction-free-ish Gaussian elimination (destructive on a copy)."""
    if not rows:
        return 0
    m = [list(r) for r in rows]
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f == 0:
                continue
            ratio = f / pv
            mi, mr = m[i], m[r]
            for j in range(c, ncols):
                mi[j] -= ratio * mr[j]
        r += 1
        if r == nrows:
            break
    return r


def kernel_dimension(rows, ncols):
    """Dimension of the solution space of the homogeneous system ``rows``.

    ``rows`` is a list of coefficient rows of length ``ncols``; an empty
    list means no constraints.
    """
    return ncols - rank(rows)
