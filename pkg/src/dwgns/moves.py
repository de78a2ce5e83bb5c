"""Local moves on labeled linking data and the reduction to trivial links.

Every move rewrites the linking matrix and compensates in the labels so
that the homomorphism-count conditions are unchanged. Moves act on Wilson
components only; changing a surgery component would change the ambient
manifold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ContractError, DimensionError
from .groups import FiniteAbelianGroup, GroupElement
from .links import WILSON, FormalSum, LabeledLinkingData
from .zmatrix import IntMatrix


@dataclass(frozen=True)
class Move1:
    """Remove a full twist: ``right`` lowers the framing by one, ``left`` raises it."""

    component: int
    direction: str = "right"


@dataclass(frozen=True)
class Move2:
    """Split a component along a band into two parallel pieces.

    The first piece gets ``first_linking`` (linking numbers with every
    other component, in order, skipping ``component``; zeros by default),
    framing ``first_framing`` and linking ``mutual`` with the second piece.
    The second piece takes the remainder, so linking numbers add back up
    and ``f = f1 + f2 + 2 * mutual``. The result sums over ``b1 + b2 = b``.
    """

    component: int
    first_linking: tuple[int, ...] | None = None
    first_framing: int = 0
    mutual: int = 0


@dataclass(frozen=True)
class Move3:
    """Crossing change between components ``i`` and ``j``: ``m[i][j] += sign``.

    For ``i == j`` the crossing is a self-crossing and the framing moves by ``2 * sign``.
    """

    i: int
    j: int
    sign: int = -1


@dataclass(frozen=True)
class RingRelation:
    """Shift ``b`` by ``sign * c`` and add a 0-framed ring ``(sign * c, a)`` around the component."""

    component: int
    c: GroupElement
    sign: int = 1


Move = Union[Move1, Move2, Move3, RingRelation]


def _require_wilson(d: LabeledLinkingData, i: int) -> None:
    if not 0 <= i < d.n:
        raise DimensionError(f"component index {i} out of range for {d.n} components")
    if d.roles[i] != WILSON:
        raise ContractError(f"component {i} is a surgery component; moves act on Wilson lines")


def _mutable(d: LabeledLinkingData):
    return [list(r) for r in d.matrix.entries], list(d.labels)


def _freeze(d: LabeledLinkingData, rows, labels, roles=None) -> LabeledLinkingData:
    n = len(rows)
    return LabeledLinkingData(IntMatrix(n, n, tuple(map(tuple, rows))),
                              tuple(roles) if roles is not None else d.roles,
                              tuple(labels), d.manifold_components)


def apply_move(d: LabeledLinkingData, move: Move, G: FiniteAbelianGroup) -> FormalSum:
    d.check_group(G)
    if isinstance(move, Move1):
        return FormalSum.single(_move1(d, move, G))
    if isinstance(move, Move3):
        return FormalSum.single(_move3(d, move, G))
    if isinstance(move, RingRelation):
        return FormalSum.single(_ring(d, move, G))
    if isinstance(move, Move2):
        return _move2(d, move, G)
    raise TypeError(f"not a move: {move!r}")


def _move1(d, move: Move1, G):
    i = move.component
    _require_wilson(d, i)
    if move.direction not in ("right", "left"):
        raise ContractError(f"twist direction must be 'right' or 'left', got {move.direction!r}")
    step = -1 if move.direction == "right" else 1
    rows, labels = _mutable(d)
    a, b = labels[i]
    rows[i][i] += step
    labels[i] = (a, G.add(b, G.scalar_mul(step, a)))
    return _freeze(d, rows, labels)


def _move3(d, move: Move3, G):
    i, j, s = move.i, move.j, move.sign
    _require_wilson(d, i)
    _require_wilson(d, j)
    if s not in (1, -1):
        raise ContractError(f"crossing-change sign must be +1 or -1, got {s}")
    rows, labels = _mutable(d)
    if i == j:
        a, b = labels[i]
        rows[i][i] += 2 * s
        labels[i] = (a, G.add(b, G.scalar_mul(2 * s, a)))
    else:
        (a1, b1), (a2, b2) = labels[i], labels[j]
        rows[i][j] += s
        rows[j][i] += s
        labels[i] = (a1, G.add(b1, G.scalar_mul(s, a2)))
        labels[j] = (a2, G.add(b2, G.scalar_mul(s, a1)))
    return _freeze(d, rows, labels)


def _ring(d, move: RingRelation, G):
    i = move.component
    _require_wilson(d, i)
    if move.sign not in (1, -1):
        raise ContractError(f"ring sign must be +1 or -1, got {move.sign}")
    c = G.scalar_mul(move.sign, G.element(move.c))
    n = d.n
    rows, labels = _mutable(d)
    a, b = labels[i]
    labels[i] = (a, G.add(b, c))
    for k, row in enumerate(rows):
        row.append(int(k == i))
    rows.append([int(k == i) for k in range(n)] + [0])
    labels.append((c, a))
    return _freeze(d, rows, labels, d.roles + (WILSON,))


def _move2(d, move: Move2, G):
    i = move.component
    _require_wilson(d, i)
    n = d.n
    others = [k for k in range(n) if k != i]
    first = move.first_linking if move.first_linking is not None else (0,) * len(others)
    if len(first) != len(others):
        raise DimensionError(
            f"first_linking needs {len(others)} entries, got {len(first)}")
    e = d.matrix.entries
    f = e[i][i]
    f1, mu = move.first_framing, move.mutual
    f2 = f - f1 - 2 * mu
    lk1 = dict(zip(others, first))
    # new order: 0..i-1, piece1 (at i), piece2 (at i+1), i+1..n-1
    order = list(range(i)) + [i, i] + list(range(i + 1, n))

    def entry(p, q):
        ip, iq = order[p], order[q]
        piece_p = {i: 1, i + 1: 2}.get(p)
        piece_q = {i: 1, i + 1: 2}.get(q)
        if piece_p and piece_q:
            if p == q:
                return f1 if piece_p == 1 else f2
            return mu
        if piece_p:
            return lk1[iq] if piece_p == 1 else e[i][iq] - lk1[iq]
        if piece_q:
            return lk1[ip] if piece_q == 1 else e[ip][i] - lk1[ip]
        return e[ip][iq]

    size = n + 1
    rows = [[entry(p, q) for q in range(size)] for p in range(size)]
    roles = [d.roles[k] for k in order]
    a, b = d.labels[i]
    terms = []
    for b1 in G:
        b2 = G.sub(b, b1)
        labels = [d.labels[k] for k in order]
        labels[i] = (a, b1)
        labels[i + 1] = (a, b2)
        terms.append((1, _freeze(d, rows, labels, roles)))
    return FormalSum(terms)


def is_trivial(d: LabeledLinkingData) -> bool:
    return all(v == 0 for row in d.matrix.entries for v in row)


def reduce(d: LabeledLinkingData, G: FiniteAbelianGroup) -> tuple[FormalSum, list[Move]]:
    """Reduce an all-Wilson link to unlinked 0-framed unknots.

    Crossing changes clear the off-diagonal entries, then twists clear the
    framings. The trace has ``sum_{i<j} |m_ij| + sum_i |m_ii|`` moves.
    """
    if d.surgery_indices:
        raise ContractError("reduce needs an all-Wilson link in S^3")
    trace: list[Move] = []
    current = d
    for i in range(d.n):
        for j in range(i + 1, d.n):
            while current.m(i, j):
                move = Move3(i, j, -1 if current.m(i, j) > 0 else 1)
                (_, current), = apply_move(current, move, G).terms
                trace.append(move)
    for i in range(d.n):
        while current.m(i, i):
            move = Move1(i, "right" if current.m(i, i) > 0 else "left")
            (_, current), = apply_move(current, move, G).terms
            trace.append(move)
    return FormalSum.single(current), trace


def trivial_link_value(d: LabeledLinkingData, G: FiniteAbelianGroup) -> Fraction:
    """Value of an unlinked 0-framed unknot collection: nonzero iff all ``b`` vanish."""
    if not is_trivial(d):
        raise ContractError("linking matrix is not zero")
    if any(label[1] != G.zero for label in d.labels):
        return Fraction(0)
    return Fraction(1, G.order ** d.manifold_components)


def move_to_json(move: Move) -> dict:
    if isinstance(move, Move1):
        return {"move": 1, "component": move.component, "direction": move.direction}
    if isinstance(move, Move3):
        return {"move": 3, "i": move.i, "j": move.j, "sign": move.sign}
    if isinstance(move, Move2):
        return {"move": 2, "component": move.component,
                "first_linking": list(move.first_linking or ()),
                "first_framing": move.first_framing, "mutual": move.mutual}
    return {"move": "ring", "component": move.component, "c": list(move.c), "sign": move.sign}


def move_to_text(move: Move) -> str:
    if isinstance(move, Move1):
        return f"move1 component={move.component} remove {move.direction} twist"
    if isinstance(move, Move3):
        return f"move3 components=({move.i},{move.j}) sign={move.sign:+d}"
    if isinstance(move, Move2):
        return f"move2 component={move.component}"
    return f"ring component={move.component} c={list(move.c)} sign={move.sign:+d}"
