"""Exact matrix inversion over scalars and over a quantum torus.

Matrices are lists of rows.  Over the algebra, row operations multiply on the
left, so the result ``N`` satisfies ``N M = 1``; callers that need a two-sided
inverse check ``M N = 1`` as well.
"""

from __future__ import annotations

from .errors import SingularError
from .scalars import ONE, ZERO


def scalar_inverse(matrix):
    n = len(matrix)
    a = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if pivot is None:
            raise SingularError(f"scalar matrix is singular (column {col})", obstruction=col)
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                k = a[r][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def scalar_matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))] for i in range(len(a))]


def element_inverse(matrix):
    """Left inverse of a square matrix of Elements, pivoting on invertible terms.

    Raises :class:`SingularError` whose ``obstruction`` is the first pivot
    column that contains no invertible entry (e.g. a vanishing Schur complement).
    """
    n = len(matrix)
    alg = matrix[0][0].algebra
    a = [list(row) + [alg.one() if i == j else alg.zero() for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col].is_unit_term()), None)
        if pivot is None:
            column = [str(a[r][col]) for r in range(col, n)]
            raise SingularError(
                f"no invertible pivot in column {col}: {column}",
                obstruction=a[col][col],
            )
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col].inverse()
        a[col] = [inv * x for x in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                k = a[r][col]
                a[r] = [x - k * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def element_matmul(a, b):
    alg = a[0][0].algebra
    out = []
    for i in range(len(a)):
        row = []
        for j in range(len(b[0])):
            acc = alg.zero()
            for k in range(len(b)):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def is_identity(matrix) -> bool:
    return all(
        (x == x.algebra.one()) if i == j else x.is_zero()
        for i, row in enumerate(matrix)
        for j, x in enumerate(row)
    )
