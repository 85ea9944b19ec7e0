"""Fraction-free elimination over Q and over Q(q, t, u, ...).

Rows are first scaled to clear denominators, so elimination runs in an
integral domain (integers or integer polynomials) using Bareiss updates with
exact division.  Only back substitution goes through the fraction field.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .coeff import RatFunc


class SolverFailure(ArithmeticError):
    """Raised when a linear system does not have the expected solution space."""


class _IntRing:
    @staticmethod
    def clear_row(row: Sequence[Fraction]) -> list:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        return [int(Fraction(x) * den) for x in row]

    @staticmethod
    def ediv(a, b):
        q, rem = divmod(a, b)
        if rem:
            raise ArithmeticError("inexact division in Bareiss step")
        return q

    @staticmethod
    def size(a) -> int:
        return abs(a).bit_length()

    @staticmethod
    def to_field(a):
        return Fraction(a)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0


class _PolyRing:
    @staticmethod
    def clear_row(row: Sequence[RatFunc]) -> list:
        row = [x if isinstance(x, RatFunc) else RatFunc(x) for x in row]
        den = None
        for x in row:
            d = x.den
            if den is None:
                den = d
            else:
                g = den.gcd(d)
                den = den * (d / g)
        return [x.num * (den / x.den) for x in row]

    @staticmethod
    def ediv(a, b):
        return a / b

    @staticmethod
    def size(a) -> int:
        return len(a)

    @staticmethod
    def to_field(a):
        return RatFunc._from_polys(a, a * 0 + 1)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0


def _echelon(rows: list, ncols: int, ring):
    """Bareiss row echelon form; returns (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    prev = 1
    top = 0
    for col in range(ncols):
        cands = [i for i in range(top, len(rows)) if not ring.is_zero(rows[i][col])]
        if not cands:
            continue
        best = min(cands, key=lambda i: ring.size(rows[i][col]))
        rows[top], rows[best] = rows[best], rows[top]
        piv = rows[top][col]
        for i in range(top + 1, len(rows)):
            a = rows[i][col]
            row_i = rows[i]
            row_t = rows[top]
            for j in range(col + 1, ncols):
                v = piv * row_i[j] - a * row_t[j]
                row_i[j] = ring.ediv(v, prev) if prev != 1 else v
            row_i[col] = row_i[col] * 0
        prev = piv
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def nullspace(matrix: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """Basis of the right kernel of ``matrix`` (a list of rows) over the coefficient field."""
    rows = [list(r) for r in matrix if any(not _is_zero(x) for x in r)]
    if not rows:
        basis = []
        for f in range(ncols):
            v = [zero] * ncols
            v[f] = one
            basis.append(v)
        return basis
    ring = _PolyRing if isinstance(one, RatFunc) else _IntRing
    cleared = [ring.clear_row(r) for r in rows]
    ech, pivots = _echelon(cleared, ncols, ring)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for k in range(len(pivots) - 1, -1, -1):
            p = pivots[k]
            row = ech[k]
            acc = zero
            for j in range(p + 1, ncols):
                if not ring.is_zero(row[j]) and not _is_zero(x[j]):
                    acc = acc + ring.to_field(row[j]) * x[j]
            x[p] = -acc / ring.to_field(row[p])
        basis.append(x)
    return basis


def _is_zero(x) -> bool:
    if isinstance(x, RatFunc):
        return x.is_zero()
    return x == 0


def solve_square(matrix: Sequence[Sequence], rhs_columns: Sequence[Sequence], zero, one) -> list[list]:
    """Solve ``matrix @ X = B`` for each column of ``B`` (matrix must be invertible).

    Plain Gauss-Jordan in the coefficient field; used for basis changes.
    """
    n = len(matrix)
    k = len(rhs_columns)
    aug = [list(matrix[i]) + [rhs_columns[c][i] for c in range(k)] for i in range(n)]
    for col in range(n):
        cands = [i for i in range(col, n) if not _is_zero(aug[i][col])]
        if not cands:
            raise SolverFailure("singular matrix in basis change")
        best = min(cands, key=lambda i: _weight(aug[i][col]))
        aug[col], aug[best] = aug[best], aug[col]
        inv = one / aug[col][col]
        aug[col] = [x * inv if not _is_zero(x) else x for x in aug[col]]
        for i in range(n):
            if i != col and not _is_zero(aug[i][col]):
                a = aug[i][col]
                aug[i] = [x - a * y if not _is_zero(y) else x for x, y in zip(aug[i], aug[col])]
    return [[aug[i][n + c] for i in range(n)] for c in range(k)]


def _weight(x) -> int:
    if isinstance(x, RatFunc):
        return len(x.num) + len(x.den)
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    return 0
