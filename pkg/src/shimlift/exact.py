"""Exact integer and rational linear algebra on small dense matrices.

Matrices are lists of rows. Entries are ints or Fractions; nothing here
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _as_frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def denominator_lcm(rows):
    d = 1
    for row in rows:
        for x in row:
            d = lcm(d, _as_frac(x).denominator)
    return d


def hnf_with_transform(rows):
    """Row Hermite normal form of an integer matrix.

    Returns (H, U) with U unimodular and U*A = H. Nonzero rows of H come
    first, pivots are positive and entries above a pivot are reduced into
    [0, pivot).
    """
    A = [[int(x) for x in row] for row in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][col] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[p] = A[p], A[r]
            U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][col]:
                        clean = False
            if clean:
                break
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
        piv = A[r][col]
        for i in range(r):
            q = A[i][col] // piv
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return A, U


def hnf(rows):
    """Nonzero rows of the integer HNF."""
    H, _ = hnf_with_transform(rows)
    return [row for row in H if any(row)]


def rational_hnf(rows):
    """HNF of the Z-span of rational row vectors, as Fractions."""
    d = denominator_lcm(rows)
    H = hnf([[int(_as_frac(x) * d) for x in row] for row in rows])
    return [[Fraction(x, d) for x in row] for row in H]


def integer_left_kernel(rows):
    """Basis of {x in Z^m : x*A = 0} for a rational m x n matrix A."""
    d = denominator_lcm(rows)
    A = [[int(_as_frac(x) * d) for x in row] for row in rows]
    H, U = hnf_with_transform(A)
    return [U[i] for i in range(len(H)) if not any(H[i])]


def solve_left(basis, x):
    """Solve c*basis = x for a square invertible rational basis.

    Returns the coefficient list c as Fractions.
    """
    n = len(basis)
    # work on the transpose: basis^T c^T = x^T
    M = [[_as_frac(basis[j][i]) for j in range(n)] + [_as_frac(x[i])] for i in range(n)]
    for col in range(n):
        p = next((i for i in range(col, n) if M[i][col] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular basis")
        M[col], M[p] = M[p], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return [M[i][n] for i in range(n)]


def det(rows):
    M = [[_as_frac(x) for x in row] for row in rows]
    n = len(M)
    out = Fraction(1)
    for col in range(n):
        p = next((i for i in range(col, n) if M[i][col] != 0), None)
        if p is None:
            return Fraction(0)
        if p != col:
            M[col], M[p] = M[p], M[col]
            out = -out
        out *= M[col][col]
        for i in range(col + 1, n):
            if M[i][col]:
                f = M[i][col] / M[col][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[col])]
    return out


def rational_kernel(rows):
    """Basis of the rational right kernel {v : A v = 0}, as integer vectors."""
    A = [[_as_frac(x) for x in row] for row in rows]
    n = len(A[0])
    piv_cols = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][col]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv_cols.append(col)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(n) if c not in piv_cols]
    out = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -A[i][fcol]
        out.append(primitive(v))
    return out


def primitive(v):
    """Scale a rational vector to a primitive integer vector."""
    d = denominator_lcm([v])
    w = [int(_as_frac(x) * d) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return w
    return [x // g for x in w]


def saturate(vectors, n):
    """Z^n intersected with the Q-span of the given rational vectors."""
    cols = [[_as_frac(v[i]) for v in vectors] for i in range(n)]
    perp = integer_left_kernel(cols)  # p with p . v = 0 for every v
    if not perp:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    return hnf(integer_left_kernel([list(col) for col in zip(*perp)]))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
