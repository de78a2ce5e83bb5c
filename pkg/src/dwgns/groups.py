"""Finite abelian groups presented as products of cyclic groups.

Elements are plain tuples of residues, one per cyclic factor, always kept
normalized to ``0 <= x[i] < d[i]``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, ParseError

GroupElement = tuple[int, ...]

_FACTOR = re.compile(r"[Zz](-?\d+)\Z")


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z_{d1} x ... x Z_{dk}`` with the factors kept exactly as given.

    Equality is structural: ``Z2xZ3`` and ``Z6`` are different objects.
    """

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.cyclic_orders)
        if not orders:
            raise ValueError("a group needs at least one cyclic factor")
        for d in orders:
            if d < 1:
                raise ValueError(f"cyclic order must be >= 1, got {d}")
        object.__setattr__(self, "cyclic_orders", orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    def __len__(self) -> int:
        return self.order

    def __str__(self) -> str:
        return "x".join(f"Z{d}" for d in self.cyclic_orders)

    @property
    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def element(self, values: Iterable[int] | int) -> GroupElement:
        """Normalize ``values`` into an element of this group.

        A bare integer is accepted for single-factor groups.
        """
        if isinstance(values, int):
            values = (values,)
        values = tuple(values)
        if len(values) != self.rank:
            raise DimensionError(
                f"element {list(values)} has {len(values)} entries, "
                f"group {self} has {self.rank} factors")
        for v in values:
            if isinstance(v, bool) or not isinstance(v, int):
                raise DimensionError(f"element entries must be integers, got {v!r}")
        return tuple(v % d for v, d in zip(values, self.cyclic_orders))

    def _check(self, x: Sequence[int]) -> None:
        if len(x) != self.rank:
            raise DimensionError(
                f"element of length {len(x)} does not belong to {self}")

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        self._check(x)
        self._check(y)
        return tuple((u + v) % d for u, v, d in zip(x, y, self.cyclic_orders))

    def sub(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.add(x, self.neg(y))

    def neg(self, x: GroupElement) -> GroupElement:
        return self.scalar_mul(-1, x)

    def scalar_mul(self, k: int, x: GroupElement) -> GroupElement:
        self._check(x)
        return tuple((k * v) % d for v, d in zip(x, self.cyclic_orders))

    def linear_combination(self, coeffs: Sequence[int],
                           xs: Sequence[GroupElement]) -> GroupElement:
        """``sum_j coeffs[j] * xs[j]`` in the group."""
        if len(coeffs) != len(xs):
            raise DimensionError("coefficient and element counts differ")
        out = [0] * self.rank
        for k, x in zip(coeffs, xs):
            self._check(x)
            if k:
                for i, v in enumerate(x):
                    out[i] += k * v
        return tuple(v % d for v, d in zip(out, self.cyclic_orders))

    def contains(self, x: Sequence[int]) -> bool:
        return (len(x) == self.rank
                and all(0 <= v < d for v, d in zip(x, self.cyclic_orders)))

    def elements(self) -> list[GroupElement]:
        """All elements in lexicographic residue order."""
        return list(self)

    def __iter__(self) -> Iterator[GroupElement]:
        return itertools.product(*(range(d) for d in self.cyclic_orders))


def parse_group(spec: str) -> FiniteAbelianGroup:
    """Parse ``"Z2xZ4"`` style group specifications.

    >>> parse_group("Z2xZ4").cyclic_orders
    (2, 4)
    """
    if not isinstance(spec, str) or not spec.strip():
        raise ParseError("empty group specification")
    orders = []
    for token in re.split(r"[xX]", spec.strip()):
        token = token.strip()
        match = _FACTOR.match(token)
        if match is None:
            raise ParseError(f"bad group factor {token!r} in {spec!r}; expected Z<d>")
        d = int(match.group(1))
        if d < 1:
            raise ParseError(f"bad group factor {token!r} in {spec!r}; order must be >= 1")
        orders.append(d)
    return FiniteAbelianGroup(tuple(orders))
