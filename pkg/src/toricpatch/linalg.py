"""Small dense exact linear algebra over the rationals.

Matrices are lists of lists of Fraction; everything here is plain Gaussian
elimination at the sizes this package needs (a few dozen rows at most).
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Matrix = List[List[Fraction]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence]):
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Basis of the right nullspace (list of column vectors as lists)."""
    if not rows:
        n = ncols or 0
        return [[Fraction(i == j) for i in range(n)] for j in range(n)]
    n = ncols if ncols is not None else len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def det(rows: Sequence[Sequence]) -> Fraction:
    m = _copy(rows)
    n = len(m)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        pv = m[c][c]
        result *= pv
        for i in range(c + 1, n):
            if m[i][c]:
                factor = m[i][c] / pv
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    return result * sign


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """One solution of A x = b, or None when inconsistent.

    Free variables are set to 0.
    """
    if not rows:
        return [] if not any(Fraction(v) for v in rhs) else None
    n = len(rows[0])
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = red[r][n]
    return x


def mat_vec(rows: Sequence[Sequence], vec: Sequence) -> List[Fraction]:
    return [sum((Fraction(a) * Fraction(v) for a, v in zip(row, vec)), Fraction(0)) for row in rows]


def int_det3(m: Sequence[Sequence[int]]) -> int:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
