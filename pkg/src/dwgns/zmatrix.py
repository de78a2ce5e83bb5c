"""Exact integer matrices, Smith normal form, and counting solutions of
integer linear systems with values in a finite abelian group."""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, GuardError
from .groups import FiniteAbelianGroup, GroupElement

DEFAULT_MAX_ENUM = 10**7

# Tests flip this on so every decomposition is verified as it is produced.
CHECK_POSTCONDITIONS = False


def max_enum(default: int = DEFAULT_MAX_ENUM) -> int:
    """Enumeration limit, overridable through ``DWGNS_MAX_ENUM``."""
    raw = os.environ.get("DWGNS_MAX_ENUM")
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise GuardError(f"DWGNS_MAX_ENUM must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("matrix dimensions must be non-negative")
        entries = tuple(tuple(int(v) for v in row) for row in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise DimensionError(
                f"entry grid does not match declared shape {self.rows}x{self.cols}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionError("column count required for a matrix without rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols_t = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(self.rows, other.cols, tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols_t)
            for row in self.entries))

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class SnfDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D.entries[i][i] for i in range(min(self.D.shape)))


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = A.rows
    if n != A.cols:
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(r) for r in A.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _smallest_pivot(D, t, m, n):
    best = None
    for i in range(t, m):
        for j in range(t, n):
            v = D[i][j]
            if v and (best is None or abs(v) < abs(D[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(A: IntMatrix) -> SnfDecomposition:
    """Smith normal form by deterministic elementary operations.

    The pivot is always the nonzero entry of smallest magnitude in the
    remaining block, ties broken row-major.
    """
    m, n = A.shape
    D = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in D:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            pivot = _smallest_pivot(D, t, m, n)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if pivot is None:
            break
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]

    result = SnfDecomposition(
        U=IntMatrix(m, m, tuple(map(tuple, U))),
        D=IntMatrix(m, n, tuple(map(tuple, D))),
        V=IntMatrix(n, n, tuple(map(tuple, V))),
    )
    if CHECK_POSTCONDITIONS:
        verify_snf(A, result)
    return result


def verify_snf(A: IntMatrix, snf: SnfDecomposition) -> None:
    """Raise ``AssertionError`` unless ``snf`` is a valid decomposition of ``A``."""
    U, D, V = snf.U, snf.D, snf.V
    if U @ A @ V != D:
        raise AssertionError("U*A*V != D")
    if abs(determinant(U)) != 1 or abs(determinant(V)) != 1:
        raise AssertionError("transformation matrices are not unimodular")
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D[i, j]:
                raise AssertionError("D is not diagonal")
    diag = snf.diagonal
    if any(d < 0 for d in diag):
        raise AssertionError("negative invariant factor")
    for d1, d2 in zip(diag, diag[1:]):
        if d1 == 0 and d2 != 0 or d1 and d2 % d1:
            raise AssertionError(f"divisibility chain broken: {d1} does not divide {d2}")


def _check_system(M: IntMatrix, t: Sequence[GroupElement], G: FiniteAbelianGroup):
    if len(t) != M.rows:
        raise DimensionError(f"{M.rows} equations but {len(t)} right-hand sides")
    for v in t:
        if not G.contains(v):
            raise DimensionError(f"right-hand side {v} is not a normalized element of {G}")


def count_solutions(M: IntMatrix, t: Sequence[GroupElement], G: FiniteAbelianGroup) -> int:
    """Number of ``x`` in ``G**M.cols`` with ``M x = t``.

    The system is diagonalized once over the integers; each cyclic factor
    ``Z_d`` of ``G`` is then counted independently.
    """
    _check_system(M, t, G)
    snf = smith_normal_form(M)
    U = snf.U.entries
    diag = snf.diagonal
    r = len(diag)
    total = 1
    for k, d in enumerate(G.cyclic_orders):
        rhs = [t_i[k] for t_i in t]
        s = [sum(u * v for u, v in zip(row, rhs)) % d for row in U]
        count = d ** (M.cols - r)
        for i in range(M.rows):
            if i < r:
                g = math.gcd(diag[i], d)
                if s[i] % g:
                    return 0
                count *= g
            elif s[i]:
                return 0
        total *= count
    return total


def brute_force_count(M: IntMatrix, t: Sequence[GroupElement], G: FiniteAbelianGroup,
                      limit: int | None = None) -> int:
    """Same contract as :func:`count_solutions`, by exhaustive enumeration."""
    _check_system(M, t, G)
    limit = max_enum() if limit is None else limit
    space = G.order ** M.cols
    if space > limit:
        raise GuardError(
            f"brute force over {G}^{M.cols} needs {space} evaluations, limit is {limit}")
    count = 0
    elements = G.elements()
    for x in itertools.product(elements, repeat=M.cols):
        if all(G.linear_combination(row, x) == t_i for row, t_i in zip(M.entries, t)):
            count += 1
    return count
