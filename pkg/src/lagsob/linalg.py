"""Small dense linear algebra over either backend.

Exact matrices are cleared of denominators row by row and reduced with
Bareiss' fraction-free elimination, so every intermediate stays an integer.
Float matrices go through LAPACK's partially pivoted LU via numpy.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .scalar import EXACT, FLOAT, common_backend

Matrix = Sequence[Sequence]


class SingularMatrixError(ArithmeticError):
    """Raised when a square system has no unique solution."""

    def __init__(self, message: str, matrix=None):
        super().__init__(message)
        self.matrix = matrix


def _backend(A: Matrix, b: Sequence = ()) -> str:
    return common_backend([v for row in A for v in row] + list(b), default=EXACT)


def _integer_rows(A: Matrix) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return rows and the product of scales."""
    rows = []
    scale = Fraction(1)
    for row in A:
        fr = [Fraction(v) for v in row]
        m = lcm(*(v.denominator for v in fr)) if fr else 1
        rows.append([int(v * m) for v in fr])
        scale *= m
    return rows, scale


def _bareiss(M: list[list[int]], ncols: int) -> tuple[list[list[int]], int, int]:
    """In-place fraction-free forward elimination on the first ``ncols`` columns.

    Returns the reduced matrix, the number of pivots found before the first
    pivot-free column, and the sign of the row permutation.
    """
    n = len(M)
    sign = 1
    prev = 1
    r = 0
    for col in range(ncols):
        if r >= n:
            break
        piv = next((i for i in range(r, n) if M[i][col] != 0), None)
        if piv is None:
            # rank deficient in the leading block; the caller only needs that fact
            break
        if piv != r:
            M[r], M[piv] = M[piv], M[r]
            sign = -sign
        p = M[r][col]
        for i in range(r + 1, n):
            for j in range(col + 1, len(M[i])):
                M[i][j] = (M[i][j] * p - M[r][j] * M[i][col]) // prev
            M[i][col] = 0
        prev = p
        r += 1
    return M, r, sign


def det(A: Matrix):
    """Determinant of a square matrix."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    if _backend(A) == FLOAT:
        return float(np.linalg.det(np.array(A, dtype=float)))
    rows, scale = _integer_rows(A)
    M, rank, sign = _bareiss(rows, n)
    if rank < n:
        return Fraction(0)
    return Fraction(sign * M[n - 1][n - 1]) / scale


def solve(A: Matrix, b: Sequence) -> list:
    """Solve the square system ``A x = b``.

    Raises
    ------
    SingularMatrixError
        If ``A`` is singular (exactly, or numerically on the float backend).
    """
    n = len(A)
    if n == 0:
        return []
    if _backend(A, b) == FLOAT:
        a = np.array(A, dtype=float)
        try:
            x = np.linalg.solve(a, np.array(b, dtype=float))
        except np.linalg.LinAlgError as exc:
            raise SingularMatrixError(str(exc), A) from None
        if not np.all(np.isfinite(x)):
            raise SingularMatrixError("non-finite solution", A)
        return [float(v) for v in x]
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    rows, _ = _integer_rows(aug)
    M, rank, _ = _bareiss(rows, n)
    if rank < n:
        raise SingularMatrixError("singular matrix", A)
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n])
        for j in range(i + 1, n):
            acc -= M[i][j] * x[j]
        x[i] = acc / M[i][i]
    return x


def solve_consistent(A: Matrix, b: Sequence) -> list:
    """A solution of a possibly overdetermined system ``A x = b``.

    Exact systems are reduced by Gauss-Jordan elimination; free unknowns are
    set to zero and inconsistent equations are ignored, so callers must check
    the residual themselves.  Float systems use least squares.
    """
    if not A:
        return []
    ncols = len(A[0])
    if _backend(A, b) == FLOAT:
        x, *_ = np.linalg.lstsq(np.array(A, dtype=float),
                                np.array(b, dtype=float), rcond=None)
        return [float(v) for v in x]
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][col]
        M[r] = [v / p for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [vi - f * vr for vi, vr in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = M[i][ncols]
    return x

