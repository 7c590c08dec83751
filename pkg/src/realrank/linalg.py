"""Exact linear algebra over Q on lists of lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .poly_core import as_fraction, det_fraction

Matrix = List[List[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[as_fraction(v) for v in row] for row in rows]


def rref(m: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot column indices."""
    a = to_matrix(m)
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Kernel basis read off the RREF; one vector per free column, in order.

    Each basis vector has a 1 in its free column and zeros in the other
    free columns, which makes the basis canonical.
    """
    a, pivots = rref(m)
    n = len(a[0]) if a else (ncols or 0)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return basis


def solve(m: Sequence[Sequence], b: Sequence) -> List[Fraction] | None:
    """One exact solution of m x = b, or None when inconsistent."""
    aug = [list(row) + [bv] for row, bv in zip(to_matrix(m), [as_fraction(v) for v in b])]
    a, pivots = rref(aug)
    n = len(aug[0]) - 1
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = a[r][n]
    return x


def det(m: Sequence[Sequence]) -> Fraction:
    return det_fraction(m)


def matvec(m: Sequence[Sequence], v: Sequence) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank(list(vectors) + [list(v)]) == rank(vectors)
