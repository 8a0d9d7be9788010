"""Exact integer matrix kernel.

Matrices are numpy arrays of ``dtype=object`` holding Python ints, so every
entry is an arbitrary-precision integer and no floating point is involved.
Relation matrices are kept sparse (one ``{row: coefficient}`` dict per column)
and only densified for the Smith normal form.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np
import sympy

logger = logging.getLogger(__name__)

IntMatrix = np.ndarray
SparseColumn = Mapping[int, int]


def int_matrix(rows: Iterable[Iterable[int]], n_cols: int | None = None) -> IntMatrix:
    """Build an object-dtype integer matrix; ``n_cols`` is needed for 0-row input."""
    rows = [[int(value) for value in row] for row in rows]
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    out = np.zeros((len(rows), n_cols), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise ValueError(f"row {i} has {len(row)} entries, expected {n_cols}")
        for j, value in enumerate(row):
            out[i, j] = value
    return out


def as_int_matrix(matrix: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    if isinstance(matrix, np.ndarray):
        if matrix.ndim != 2:
            raise ValueError("expected a 2-dimensional matrix")
        out = np.zeros(matrix.shape, dtype=object)
        for index, value in np.ndenumerate(matrix):
            out[index] = int(value)
        return out
    return int_matrix(matrix)


def identity(size: int) -> IntMatrix:
    out = np.zeros((size, size), dtype=object)
    for i in range(size):
        out[i, i] = 1
    return out


def dense_from_columns(columns: Sequence[SparseColumn], n_rows: int) -> IntMatrix:
    out = np.zeros((n_rows, len(columns)), dtype=object)
    for j, column in enumerate(columns):
        for i, value in column.items():
            out[i, j] = int(value)
    return out


def to_lists(matrix: IntMatrix) -> list[list[int]]:
    return [[int(value) for value in row] for row in matrix]


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``diag`` the diagonal of ``D``."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    diag: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diag if d != 0)


def _least_entry(D: IntMatrix, t: int) -> tuple[int, int] | None:
    # Least absolute value in D[t:, t:]; np.nonzero is row-major, so the first
    # minimum found is the lowest row, then the lowest column.
    sub = D[t:, t:]
    rows, cols = np.nonzero(sub)
    best: tuple[int, int, int] | None = None
    for i, j in zip(rows.tolist(), cols.tolist()):
        size = abs(sub[i, j])
        if best is None or size < best[0]:
            best = (size, i, j)
            if size == 1:
                break
    if best is None:
        return None
    return best[1] + t, best[2] + t


def _least_in_cross(D: IntMatrix, t: int) -> tuple[int, int]:
    best = (abs(D[t, t]), t, t)
    for i in range(t + 1, D.shape[0]):
        value = D[i, t]
        if value != 0 and abs(value) < best[0]:
            best = (abs(value), i, t)
    for j in range(t + 1, D.shape[1]):
        value = D[t, j]
        if value != 0 and abs(value) < best[0]:
            best = (abs(value), t, j)
    return best[1], best[2]


def _move_pivot(D: IntMatrix, U: IntMatrix, V: IntMatrix, t: int, at: tuple[int, int]) -> None:
    i, j = at
    if i != t:
        D[[t, i], :] = D[[i, t], :]
        U[[t, i], :] = U[[i, t], :]
    if j != t:
        D[:, [t, j]] = D[:, [j, t]]
        V[:, [t, j]] = V[:, [j, t]]


def _clear_cross(D: IntMatrix, U: IntMatrix, V: IntMatrix, t: int) -> bool:
    """Reduce row ``t`` and column ``t`` by the pivot; True when both are cleared."""
    pivot = D[t, t]
    cleared = True
    for i in range(t + 1, D.shape[0]):
        if D[i, t] == 0:
            continue
        q = D[i, t] // pivot
        if q:
            D[i, :] -= q * D[t, :]
            U[i, :] -= q * U[t, :]
        if D[i, t] != 0:
            cleared = False
    for j in range(t + 1, D.shape[1]):
        if D[t, j] == 0:
            continue
        q = D[t, j] // pivot
        if q:
            D[:, j] -= q * D[:, t]
            V[:, j] -= q * V[:, t]
        if D[t, j] != 0:
            cleared = False
    return cleared


def _non_divisible_row(D: IntMatrix, t: int) -> int | None:
    sub = D[t + 1 :, t + 1 :]
    if sub.size == 0:
        return None
    rows, _ = np.nonzero(sub % D[t, t])
    if len(rows) == 0:
        return None
    return int(rows[0]) + t + 1


def smith_normal_form(matrix: IntMatrix | Sequence[Sequence[int]]) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Pivot rule: least absolute value, ties broken by lowest row then column.
    Deterministic for a given input.
    """
    A = as_int_matrix(matrix)
    m, n = A.shape
    D = A.copy()
    U = identity(m)
    V = identity(n)

    for t in range(min(m, n)):
        at = _least_entry(D, t)
        if at is None:
            break
        _move_pivot(D, U, V, t, at)
        while True:
            if _clear_cross(D, U, V, t):
                offender = _non_divisible_row(D, t)
                if offender is None:
                    break
                # Pull the offending row in; the next clearing leaves a smaller remainder.
                D[t, :] += D[offender, :]
                U[t, :] += U[offender, :]
            _move_pivot(D, U, V, t, _least_in_cross(D, t))
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]

    diag = tuple(int(D[i, i]) for i in range(min(m, n)))
    logger.debug("Smith normal form of a %dx%d matrix", m, n)
    return SmithForm(U=U, D=D, V=V, diag=diag)


def cokernel_structure(matrix: IntMatrix | Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """(free rank, torsion invariant factors) of Z^rows / column span."""
    A = as_int_matrix(matrix)
    snf = smith_normal_form(A)
    nonzero = snf.invariant_factors
    rank = A.shape[0] - len(nonzero)
    return rank, [d for d in nonzero if d > 1]


def matrix_rank(matrix: IntMatrix | Sequence[Sequence[int]]) -> int:
    return smith_normal_form(matrix).rank


def solve_mod(
    matrix: IntMatrix | Sequence[Sequence[int]], rhs: Sequence[int], modulus: int
) -> list[int] | None:
    """A solution x of ``A x = b (mod modulus)``, or None when there is none."""
    A = as_int_matrix(matrix)
    m, n = A.shape
    if len(rhs) != m:
        raise ValueError(f"right-hand side has {len(rhs)} entries, expected {m}")
    if m == 0:
        return [0] * n
    snf = smith_normal_form(A)
    target = snf.U.dot(np.array([int(v) for v in rhs], dtype=object))
    y = [0] * n
    for i in range(m):
        d = snf.diag[i] if i < len(snf.diag) else 0
        g = gcd(d, modulus)
        value = int(target[i]) % modulus
        if value % g:
            return None
        if i < n and d:
            reduced_modulus = modulus // g
            if reduced_modulus > 1:
                y[i] = (value // g) * pow(d // g, -1, reduced_modulus) % reduced_modulus
    if n == 0:
        return []
    x = snf.V.dot(np.array(y, dtype=object))
    return [int(v) % modulus for v in x]


def determinant(matrix: IntMatrix | Sequence[Sequence[int]]) -> int:
    A = as_int_matrix(matrix)
    if A.shape[0] != A.shape[1]:
        raise ValueError("determinant of a non-square matrix")
    if A.shape[0] == 0:
        return 1
    return int(sympy.Matrix(to_lists(A)).det())


def rational_inverse(matrix: IntMatrix | Sequence[Sequence[int]]) -> tuple[IntMatrix, int]:
    """``(N, d)`` with ``A^-1 == N / d``, ``d > 0`` the least common denominator."""
    A = as_int_matrix(matrix)
    size = A.shape[0]
    if A.shape[1] != size:
        raise ValueError("inverse of a non-square matrix")
    if size == 0:
        return identity(0), 1
    inverse = sympy.Matrix(to_lists(A)).inv()
    denominator = lcm(*[int(entry.q) for entry in inverse])
    scaled = inverse * denominator
    return int_matrix([[int(scaled[i, j]) for j in range(size)] for i in range(size)]), denominator


def unimodular_inverse(matrix: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    numerators, denominator = rational_inverse(matrix)
    if denominator != 1:
        raise ValueError("matrix is not unimodular")
    return numerators
