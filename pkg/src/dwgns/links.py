"""Labeled framed links: diagram input, linking-matrix data, formal sums.

Everything downstream works on :class:`LabeledLinkingData`. For an abelian
gauge group the invariant only sees first homology of the link complement,
which is determined by linking numbers and framings, so the diagram is
reduced to its linking matrix as early as possible.

Conventions: positive crossings follow the right-hand rule, a label
``(a, b)`` is (meridian holonomy, longitude holonomy), framing is the
blackboard framing (writhe).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .errors import ContractError, DimensionError, ParseError
from .groups import FiniteAbelianGroup, GroupElement
from .zmatrix import IntMatrix

WILSON = "wilson"
SURGERY = "surgery"
ROLES = (WILSON, SURGERY)

Label = tuple[GroupElement, GroupElement]


@dataclass(frozen=True)
class LinkDiagram:
    """Combinatorial link diagram: signed crossings between components.

    Each entry of ``crossings`` is one geometric crossing
    ``(over_component, under_component, sign)``. ``roles`` and ``labels``
    are the optional per-component slots of the file format, kept raw.
    """

    components: int
    crossings: tuple[tuple[int, int, int], ...] = ()
    roles: tuple[str, ...] | None = None
    labels: tuple[Any, ...] | None = None

    def __post_init__(self):
        if self.components < 0:
            raise ParseError("component count must be non-negative")
        for k, (over, under, sign) in enumerate(self.crossings):
            for c in (over, under):
                if not 0 <= c < self.components:
                    raise ParseError(
                        f"crossing {k}: component index {c} out of range 0..{self.components - 1}")
            if sign not in (1, -1):
                raise ParseError(f"crossing {k}: sign must be +1 or -1, got {sign}")


@dataclass(frozen=True)
class LabeledLinkingData:
    """Linking matrix with per-component roles and labels.

    ``labels[i]`` is a pair ``(a, b)`` for Wilson components and ``None``
    for surgery components. ``manifold_components`` counts the connected
    pieces of the ambient closed manifold; it is 0 only for the empty
    manifold (no components, the unit of disjoint union).
    """

    matrix: IntMatrix
    roles: tuple[str, ...]
    labels: tuple[Label | None, ...]
    manifold_components: int = 1

    def __post_init__(self):
        n = self.matrix.rows
        if not self.matrix.is_symmetric():
            raise ContractError("linking matrix must be square and symmetric")
        if len(self.roles) != n or len(self.labels) != n:
            raise DimensionError(
                f"{n} components but {len(self.roles)} roles and {len(self.labels)} labels")
        for i, (role, label) in enumerate(zip(self.roles, self.labels)):
            if role not in ROLES:
                raise ContractError(f"component {i}: unknown role {role!r}")
            if (role == WILSON) != (label is not None):
                raise ContractError(
                    f"component {i}: Wilson components carry labels, surgery components do not")
        if self.manifold_components < 0 or (self.manifold_components == 0 and n):
            raise ContractError("manifold_components must be >= 1 for a non-empty link")

    @classmethod
    def wilson(cls, matrix: Sequence[Sequence[int]], labels: Sequence[Label],
               manifold_components: int = 1) -> LabeledLinkingData:
        """All-Wilson link in S^3; ``labels`` must already be normalized."""
        n = len(labels)
        return cls(IntMatrix.from_rows(matrix, cols=n), (WILSON,) * n,
                   tuple((tuple(a), tuple(b)) for a, b in labels), manifold_components)

    @property
    def n(self) -> int:
        return self.matrix.rows

    def m(self, i: int, j: int) -> int:
        return self.matrix.entries[i][j]

    @property
    def wilson_indices(self) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r == WILSON]

    @property
    def surgery_indices(self) -> list[int]:
        return [i for i, r in enumerate(self.roles) if r == SURGERY]

    def check_group(self, G: FiniteAbelianGroup) -> None:
        for i, label in enumerate(self.labels):
            if label is not None and not (G.contains(label[0]) and G.contains(label[1])):
                raise DimensionError(f"component {i}: label {label} is not in {G} x {G}")

    def permuted(self, perm: Sequence[int]) -> LabeledLinkingData:
        """Component ``k`` of the result is component ``perm[k]`` of ``self``."""
        if sorted(perm) != list(range(self.n)):
            raise ContractError(f"{list(perm)} is not a permutation of {self.n} components")
        e = self.matrix.entries
        mat = IntMatrix(self.n, self.n, tuple(tuple(e[i][j] for j in perm) for i in perm))
        return LabeledLinkingData(mat, tuple(self.roles[i] for i in perm),
                                  tuple(self.labels[i] for i in perm), self.manifold_components)


EMPTY_MANIFOLD = LabeledLinkingData(IntMatrix.zeros(0, 0), (), (), 0)
EMPTY_S3 = LabeledLinkingData(IntMatrix.zeros(0, 0), (), (), 1)


def linking_data(d: LinkDiagram, roles: Sequence[str] | None, labels: Sequence[Any] | None,
                 G: FiniteAbelianGroup, manifold_components: int = 1) -> LabeledLinkingData:
    """Linking matrix of a diagram together with normalized labels.

    Off-diagonal entries are half the signed count of crossings between
    the two components; diagonal entries are writhes.
    """
    n = d.components
    between = [[0] * n for _ in range(n)]
    for over, under, sign in d.crossings:
        between[over][under] += sign
        if over != under:
            between[under][over] += sign
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(between[i][i])
            else:
                if between[i][j] % 2:
                    raise ParseError(
                        f"components {i} and {j} cross with odd signed total {between[i][j]}; "
                        "a closed diagram has an even count")
                row.append(between[i][j] // 2)
        rows.append(tuple(row))
    roles = d.roles if roles is None else roles
    labels = d.labels if labels is None else labels
    return _assemble(IntMatrix(n, n, tuple(rows)), roles, labels, G, manifold_components)


def _assemble(matrix, roles, labels, G, manifold_components) -> LabeledLinkingData:
    n = matrix.rows
    if roles is None:
        roles = (WILSON,) * n
    roles = tuple(str(r).lower() for r in roles)
    if len(roles) != n:
        raise ContractError(f"{len(roles)} roles given for {n} components")
    if labels is None:
        labels = (None,) * n
    if len(labels) != n:
        raise ContractError(f"{len(labels)} labels given for {n} components")
    norm = []
    for i, (role, label) in enumerate(zip(roles, labels)):
        if role not in ROLES:
            raise ContractError(f"component {i}: unknown role {role!r}")
        if role == WILSON:
            if label is None:
                raise ContractError(f"component {i}: Wilson component needs a label")
            norm.append(_parse_label(label, G, i))
        else:
            if label is not None:
                raise ContractError(f"component {i}: surgery component must not carry a label")
            norm.append(None)
    return LabeledLinkingData(matrix, roles, tuple(norm), manifold_components)


def _parse_label(label, G: FiniteAbelianGroup, i: int) -> Label:
    try:
        a, b = label
        return G.element(a), G.element(b)
    except (TypeError, ValueError) as exc:
        raise ContractError(f"component {i}: bad label {label!r}: {exc}") from None


def disjoint_union(x: LabeledLinkingData, y: LabeledLinkingData) -> LabeledLinkingData:
    """Block-diagonal union; ambient manifold components add up."""
    n, k = x.n, y.n
    rows = [tuple(r) + (0,) * k for r in x.matrix.entries]
    rows += [(0,) * n + tuple(r) for r in y.matrix.entries]
    return LabeledLinkingData(IntMatrix(n + k, n + k, tuple(rows)), x.roles + y.roles,
                              x.labels + y.labels,
                              x.manifold_components + y.manifold_components)


def disjoint_union_all(items: Iterable[LabeledLinkingData]) -> LabeledLinkingData:
    out = EMPTY_MANIFOLD
    for item in items:
        out = disjoint_union(out, item)
    return out


class FormalSum:
    """Finite rational linear combination of :class:`LabeledLinkingData`.

    Equal data are merged and zero coefficients dropped on construction;
    insertion order of first appearance is kept.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Any, LabeledLinkingData]] = ()):
        merged: dict[LabeledLinkingData, Fraction] = {}
        for coeff, data in terms:
            merged[data] = merged.get(data, Fraction(0)) + Fraction(coeff)
        self._terms = {d: c for d, c in merged.items() if c != 0}

    @classmethod
    def single(cls, data: LabeledLinkingData, coeff=1) -> FormalSum:
        return cls([(coeff, data)])

    @property
    def terms(self) -> list[tuple[Fraction, LabeledLinkingData]]:
        return [(c, d) for d, c in self._terms.items()]

    def __iter__(self) -> Iterator[tuple[Fraction, LabeledLinkingData]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalSum) and self._terms == other._terms

    def __add__(self, other: FormalSum) -> FormalSum:
        return FormalSum(self.terms + other.terms)

    def __mul__(self, scalar) -> FormalSum:
        return FormalSum((c * scalar, d) for c, d in self.terms)

    __rmul__ = __mul__

    def evaluate(self, state: Callable[[LabeledLinkingData], Fraction]) -> Fraction:
        """Extend ``state`` linearly."""
        return sum((c * state(d) for c, d in self.terms), Fraction(0))

    def __repr__(self) -> str:
        return f"FormalSum({self.terms!r})"


# -- JSON link files ---------------------------------------------------------

def _load(text: str | bytes | Mapping) -> dict:
    if isinstance(text, Mapping):
        return dict(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError("link file must contain a JSON object")
    return obj


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def parse_diagram(text) -> LinkDiagram:
    obj = _load(text)
    if "components" not in obj:
        raise ParseError("missing key 'components'")
    n = _int(obj["components"], "components")
    raw = obj.get("crossings", [])
    if not isinstance(raw, list):
        raise ParseError("'crossings' must be a list")
    crossings = []
    for k, c in enumerate(raw):
        if not isinstance(c, list) or len(c) != 3:
            raise ParseError(f"crossings[{k}]: expected [over, under, sign], got {c!r}")
        crossings.append(tuple(_int(v, f"crossings[{k}]") for v in c))
    roles = obj.get("roles")
    labels = obj.get("labels")
    return LinkDiagram(n, tuple(crossings),
                       tuple(roles) if roles is not None else None,
                       _freeze(labels) if labels is not None else None)


def _freeze(value):
    if isinstance(value, list):
        return tuple(_freeze(v) for v in value)
    return value


def _thaw(value):
    if isinstance(value, tuple):
        return [_thaw(v) for v in value]
    return value


def serialize_diagram(d: LinkDiagram) -> str:
    obj: dict[str, Any] = {"components": d.components,
                           "crossings": [list(c) for c in d.crossings]}
    if d.roles is not None:
        obj["roles"] = list(d.roles)
    if d.labels is not None:
        obj["labels"] = _thaw(d.labels)
    return json.dumps(obj)


def parse_link(text, G: FiniteAbelianGroup) -> LabeledLinkingData:
    """Read either JSON link form (diagram or direct linking matrix)."""
    obj = _load(text)
    c = _int(obj.get("manifold_components", 1), "manifold_components")
    if "linking_matrix" in obj:
        raw = obj["linking_matrix"]
        if not isinstance(raw, list) or any(not isinstance(r, list) for r in raw):
            raise ParseError("'linking_matrix' must be a list of rows")
        n = len(raw)
        rows = []
        for i, r in enumerate(raw):
            if len(r) != n:
                raise ParseError(f"linking_matrix row {i} has length {len(r)}, expected {n}")
            rows.append(tuple(_int(v, f"linking_matrix[{i}]") for v in r))
        matrix = IntMatrix(n, n, tuple(rows))
        if not matrix.is_symmetric():
            raise ParseError("linking_matrix must be symmetric")
        return _assemble(matrix, obj.get("roles"), obj.get("labels"), G, c)
    return linking_data(parse_diagram(obj), None, None, G, c)


def data_to_json(d: LabeledLinkingData) -> dict:
    return {
        "linking_matrix": d.matrix.tolist(),
        "roles": list(d.roles),
        "labels": [None if l is None else [list(l[0]), list(l[1])] for l in d.labels],
        "manifold_components": d.manifold_components,
    }
