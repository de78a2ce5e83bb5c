"""Universal (GNS) construction at the level of finite generator families.

Given generators ``f_i : empty -> S`` and ``g_j : S -> empty`` and a state
``I`` on closed morphisms, the pairing matrix ``P[i][j] = I(g_j o f_i)``
determines everything computable about the quotient space: its dimension
is ``rank(P)`` and the left radical is the left null space of ``P``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TypeVar

from .errors import DWError, DimensionError, InconsistentError

F = TypeVar("F")
Gen = TypeVar("Gen")
Matrix = list[list[Fraction]]


class ClosureError(DWError):
    """Evaluating the state on a glued generator pair failed."""

    def __init__(self, row: int, col: int, cause: Exception):
        super().__init__(f"closure of in-generator {row} with out-generator {col} failed: {cause}")
        self.row, self.col, self.cause = row, col, cause


def pairing_matrix(fin: Sequence[F], fout: Sequence[Gen],
                   closure: Callable[[F, Gen], Fraction]) -> Matrix:
    if not fin or not fout:
        raise DimensionError("generator families must be nonempty")
    out = []
    for r, f in enumerate(fin):
        row = []
        for c, g in enumerate(fout):
            try:
                row.append(Fraction(closure(f, g)))
            except Exception as exc:
                raise ClosureError(r, c, exc) from exc
        out.append(row)
    return out


def shape(P: Matrix) -> tuple[int, int]:
    return len(P), (len(P[0]) if P else 0)


def transpose(P: Matrix) -> Matrix:
    return [list(col) for col in zip(*P)]


def _eliminate(P: Matrix, track: bool):
    """Row-reduce sparse copies of the rows of ``P``.

    Returns ``(rank, pivot_rows, null_combinations)`` where each null
    combination is a sparse dict ``{original_row: coeff}`` whose rows sum
    to zero. Pivots are chosen column by column, taking the candidate row
    with the fewest nonzeros (lowest index on ties).
    """
    rows = [{j: v for j, v in enumerate(r) if v} for r in P]
    combos = [{i: Fraction(1)} for i in range(len(P))] if track else None
    ncols = shape(P)[1]
    remaining = list(range(len(rows)))
    pivots = []
    for col in range(ncols):
        cands = [i for i in remaining if col in rows[i]]
        if not cands:
            continue
        p = min(cands, key=lambda i: (len(rows[i]), i))
        remaining.remove(p)
        prow = rows[p]
        pv = prow[col]
        for i in cands:
            if i == p:
                continue
            factor = rows[i][col] / pv
            row = rows[i]
            for j, v in prow.items():
                nv = row.get(j, 0) - factor * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
            if track:
                combo = combos[i]
                for k, v in combos[p].items():
                    nv = combo.get(k, 0) - factor * v
                    if nv:
                        combo[k] = nv
                    else:
                        combo.pop(k, None)
        pivots.append(p)
    null = [combos[i] for i in remaining] if track else []
    return len(pivots), pivots, null


def rank(P: Matrix) -> int:
    return _eliminate(P, track=False)[0]


def rank_and_radical(P: Matrix) -> tuple[int, list[list[Fraction]]]:
    """Exact rank and a basis of the left radical ``{r : r P = 0}``."""
    r, _, null = _eliminate(P, track=True)
    n = len(P)
    basis = []
    for combo in null:
        vec = [Fraction(0)] * n
        for k, v in combo.items():
            vec[k] = v
        basis.append(vec)
    return r, basis


def right_radical(P: Matrix) -> list[list[Fraction]]:
    return rank_and_radical(transpose(P))[1] if P and P[0] else []


def left_apply(v: Sequence[Fraction], P: Matrix) -> list[Fraction]:
    """Row vector times matrix."""
    if len(v) != len(P):
        raise DimensionError(f"vector of length {len(v)} against {len(P)} rows")
    ncols = shape(P)[1]
    out = [Fraction(0)] * ncols
    for c, row in zip(v, P):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] += c * x
    return out


def solve_left(P: Matrix, y: Sequence[Fraction]) -> list[Fraction]:
    """One solution ``x`` of ``x P = y``; free coordinates are set to zero."""
    m, n = shape(P)
    if len(y) != n:
        raise DimensionError(f"right-hand side of length {len(y)} for {n} columns")
    # x P = y  <=>  P^T x^T = y^T; reduce the augmented system [P^T | y].
    A = [[Fraction(P[i][j]) for i in range(m)] + [Fraction(y[j])] for j in range(n)]
    pivot_cols = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(n):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivot_cols.append(c)
        r += 1
    if any(A[i][m] for i in range(r, n)):
        raise InconsistentError("values are not in the row space of the pairing matrix")
    x = [Fraction(0)] * m
    for i, c in enumerate(pivot_cols):
        x[c] = A[i][m]
    return x


def check_multiplicative(state: Callable, samples: Iterable[tuple], union: Callable,
                         empty) -> tuple[bool, tuple | None]:
    """Check ``I(x u y) = I(x) I(y)`` on samples and ``I(empty) = 1``.

    Returns ``(True, None)`` or ``(False, counterexample)`` where the
    counterexample is ``(x, y, lhs, rhs)``; for a unit failure ``x`` and
    ``y`` are both ``empty`` and ``rhs`` is 1.
    """
    unit = state(empty)
    if unit != 1:
        return False, (empty, empty, unit, Fraction(1))
    for x, y in samples:
        lhs = state(union(x, y))
        rhs = state(x) * state(y)
        if lhs != rhs:
            return False, (x, y, lhs, rhs)
    return True, None


def product_pairing_matrix(fin1, fin2, fout1, fout2, closure2) -> Matrix:
    """Pairing on product families; rows ``(f1, f2)``, columns ``(g1, g2)``, lexicographic."""
    fin = [(f1, f2) for f1 in fin1 for f2 in fin2]
    fout = [(g1, g2) for g1 in fout1 for g2 in fout2]
    return pairing_matrix(fin, fout, lambda f, g: closure2(f[0], f[1], g[0], g[1]))


def tensor_rank_check(P1: Matrix, P2: Matrix, P12: Matrix) -> bool:
    """``rank(P12) == rank(P1) * rank(P2)``, i.e. the product generators span."""
    (m1, n1), (m2, n2) = shape(P1), shape(P2)
    if shape(P12) != (m1 * m2, n1 * n2):
        raise DimensionError(
            f"product matrix has shape {shape(P12)}, expected {(m1 * m2, n1 * n2)}")
    return rank(P12) == rank(P1) * rank(P2)


def swap_permutation(k1: int, k2: int) -> list[int]:
    """Index map ``(i1, i2) -> (i2, i1)`` between lexicographic product orders."""
    return [i2 * k1 + i1 for i1 in range(k1) for i2 in range(k2)]


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def matrix_to_json(P: Matrix) -> str:
    return json.dumps([[format_rational(v) for v in row] for row in P])
