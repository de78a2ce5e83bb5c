"""State spaces of the Dijkgraaf-Witten TQFT through handlebody generators.

A connected surface of genus ``g`` with ``n`` labeled arc pairs bounds a
handlebody carrying the standard ribbons: a knot ``k`` around every hole
labeled ``(a, b)`` and, per arc pair, a ribbon ``l`` with a small ring
``(c, A)`` around it. Gluing to the complementary handlebody with the dual
ribbons gives a link in S^3, and the state of that link is the pairing.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from . import gns
from .errors import ContractError, DimensionError, GuardError, ParseError
from .groups import FiniteAbelianGroup, GroupElement
from .invariant import HomologyPresentation, invariant_presentation, invariant_s3, link_presentation
from .links import Label, LabeledLinkingData, disjoint_union
from .zmatrix import max_enum

DEFAULT_MAX_BASIS = 4096


@dataclass(frozen=True)
class SurfaceObject:
    genus: int
    arcs: tuple[Label, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise ContractError("genus must be non-negative")
        object.__setattr__(self, "arcs", tuple((tuple(a), tuple(b)) for a, b in self.arcs))

    @property
    def n(self) -> int:
        return len(self.arcs)

    def check_group(self, G: FiniteAbelianGroup) -> None:
        for j, (A, B) in enumerate(self.arcs):
            if not (G.contains(A) and G.contains(B)):
                raise DimensionError(f"arc pair {j}: label {(A, B)} is not in {G} x {G}")

    def basis_size(self, G: FiniteAbelianGroup) -> int:
        return G.order ** (2 * self.genus + self.n)


@dataclass(frozen=True)
class BasisElement:
    handles: tuple[Label, ...]
    rings: tuple[GroupElement, ...] = ()

    def fits(self, s: SurfaceObject) -> bool:
        return len(self.handles) == s.genus and len(self.rings) == s.n


def basis(s: SurfaceObject, G: FiniteAbelianGroup) -> list[BasisElement]:
    """Basis labels in lexicographic order of ``(a1, b1, ..., ag, bg, c1, ..., cn)``."""
    return list(_iter_basis(s, G))


def _iter_basis(s, G) -> Iterator[BasisElement]:
    g = s.genus
    for tup in itertools.product(G.elements(), repeat=2 * g + s.n):
        handles = tuple((tup[2 * k], tup[2 * k + 1]) for k in range(g))
        yield BasisElement(handles, tuple(tup[2 * g:]))


def _check_shape(s: SurfaceObject, *elements: BasisElement) -> None:
    for e in elements:
        if not e.fits(s):
            raise DimensionError(
                f"basis element with {len(e.handles)} handles and {len(e.rings)} rings "
                f"does not fit genus {s.genus} with {s.n} arc pairs")


def standard_closure(s: SurfaceObject, b: BasisElement, b_dual: BasisElement) -> LabeledLinkingData:
    """Link in S^3 obtained by gluing a basis element to a dual basis element.

    Component order: for each handle the pair ``(k, k*)``; then for each arc
    pair ``(l, g, g*)``.
    """
    _check_shape(s, b, b_dual)
    labels: list[Label] = []
    links: list[tuple[int, int]] = []
    for (a, bb), dual in zip(b.handles, b_dual.handles):
        k = len(labels)
        labels += [(a, bb), dual]
        links.append((k, k + 1))
    for (A, B), c, c_dual in zip(s.arcs, b.rings, b_dual.rings):
        k = len(labels)
        labels += [(A, B), (c, A), (c_dual, A)]
        links += [(k, k + 1), (k, k + 2)]
    n = len(labels)
    m = [[0] * n for _ in range(n)]
    for i, j in links:
        m[i][j] = m[j][i] = 1
    return LabeledLinkingData.wilson(m, labels)


def pairing_entry(s: SurfaceObject, b: BasisElement, b_dual: BasisElement,
                  G: FiniteAbelianGroup) -> Fraction:
    s.check_group(G)
    return invariant_s3(standard_closure(s, b, b_dual), G)


def predicted_entry(s: SurfaceObject, b: BasisElement, b_dual: BasisElement,
                    G: FiniteAbelianGroup) -> Fraction:
    """Closed form: ``1/|G|`` times the Kronecker-delta pattern, 0 otherwise."""
    _check_shape(s, b, b_dual)
    for (a, bb), (a2, b2) in zip(b.handles, b_dual.handles):
        if a != b2 or bb != a2:
            return Fraction(0)
    for (_, B), c, c2 in zip(s.arcs, b.rings, b_dual.rings):
        if G.add(c, c2) != B:
            return Fraction(0)
    return Fraction(1, G.order)


def _guard(s: SurfaceObject, G: FiniteAbelianGroup) -> int:
    size = s.basis_size(G)
    limit = max_enum(DEFAULT_MAX_BASIS)
    if size > limit:
        raise GuardError(
            f"basis of size {size} exceeds the full-matrix limit {limit}; "
            "use spot_check for larger surfaces")
    return size


def pairing_matrix(s: SurfaceObject, G: FiniteAbelianGroup) -> gns.Matrix:
    """Full pairing matrix, rows = basis, columns = dual basis, same order."""
    _guard(s, G)
    s.check_group(G)
    elems = basis(s, G)
    return gns.pairing_matrix(elems, elems, lambda b, bd: pairing_entry(s, b, bd, G))


def space_dimension(s: SurfaceObject, G: FiniteAbelianGroup) -> int:
    """Rank of the computed pairing matrix."""
    return gns.rank(pairing_matrix(s, G))


def spot_check(s: SurfaceObject, G: FiniteAbelianGroup, samples: int, rng) -> bool:
    """Compare random entries with the closed form, for surfaces past the guard."""
    s.check_group(G)
    elems = G.elements()
    size = 2 * s.genus + s.n

    def draw():
        tup = [rng.choice(elems) for _ in range(size)]
        return BasisElement(tuple((tup[2 * k], tup[2 * k + 1]) for k in range(s.genus)),
                            tuple(tup[2 * s.genus:]))

    for _ in range(samples):
        b, bd = draw(), draw()
        if pairing_entry(s, b, bd, G) != predicted_entry(s, b, bd, G):
            return False
    return True


def coordinates(s: SurfaceObject, pair_values: Mapping[BasisElement, Fraction],
                G: FiniteAbelianGroup) -> dict[BasisElement, Fraction]:
    """Coefficients of a vector in the basis from its pairings with all dual
    basis elements. Missing dual elements are read as pairing 0."""
    P = pairing_matrix(s, G)
    elems = basis(s, G)
    known = set(elems)
    for key in pair_values:
        if key not in known:
            raise DimensionError(f"{key} is not a basis element of this surface")
    y = [Fraction(pair_values.get(e, 0)) for e in elems]
    x = gns.solve_left(P, y)
    return dict(zip(elems, x))


def pair_with_duals(s: SurfaceObject, vector: Mapping[BasisElement, Fraction],
                    G: FiniteAbelianGroup) -> dict[BasisElement, Fraction]:
    """Pairings of a formal combination of basis elements against every dual
    basis element, evaluated on the glued links."""
    elems = basis(s, G)
    return {bd: sum((Fraction(c) * pairing_entry(s, b, bd, G) for b, c in vector.items()),
                    Fraction(0))
            for bd in elems}


def cylinder_presentation(s: SurfaceObject, b: BasisElement, b_dual: BasisElement
                          ) -> HomologyPresentation:
    """``s x [0, 1]`` capped by the basis handlebody and the dual one.

    The capped cylinder is S^3 with the standard closure link, so this is
    the meridian presentation of that link's complement.
    """
    return link_presentation(standard_closure(s, b, b_dual))


def disjoint_cylinder_presentation(parts: Sequence[tuple[SurfaceObject, BasisElement, BasisElement]]
                                   ) -> HomologyPresentation:
    data = None
    for s, b, bd in parts:
        closure = standard_closure(s, b, bd)
        data = closure if data is None else disjoint_union(data, closure)
    if data is None:
        raise ContractError("no cylinder parts given")
    return link_presentation(data)


def transition_amplitude(p: HomologyPresentation, G: FiniteAbelianGroup) -> Fraction:
    """Constrained bundle-groupoid cardinality of the glued closed manifold."""
    return invariant_presentation(p, G)


def cylinder_amplitude_matrix(s: SurfaceObject, G: FiniteAbelianGroup) -> gns.Matrix:
    _guard(s, G)
    elems = basis(s, G)
    return [[transition_amplitude(cylinder_presentation(s, b, bd), G) for bd in elems]
            for b in elems]


def duality_permutation(s: SurfaceObject, G: FiniteAbelianGroup) -> list[list[int]]:
    """0/1 matrix with a 1 where the dual element matches the basis element."""
    elems = basis(s, G)
    return [[int(predicted_entry(s, b, bd, G) != 0) for bd in elems] for b in elems]


def is_scaled_permutation(P: gns.Matrix, scale: Fraction) -> bool:
    """True when ``P / scale`` is a permutation matrix."""
    scaled = [[v / scale for v in row] for row in P]
    if any(v not in (0, 1) for row in scaled for v in row):
        return False
    return (all(sum(row) == 1 for row in scaled)
            and all(sum(col) == 1 for col in zip(*scaled)))


def parse_surface(text, G: FiniteAbelianGroup, genus: int | None = None) -> SurfaceObject:
    """Surface JSON ``{"genus": g, "arcs": [[[a...], [b...]], ...]}``.

    A bare list is read as the ``arcs`` entry; ``genus`` overrides the file.
    """
    if isinstance(text, (str, bytes)):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    else:
        obj = text
    if isinstance(obj, list):
        obj = {"arcs": obj}
    if not isinstance(obj, dict):
        raise ParseError("surface file must contain a JSON object or an arc list")
    g = genus if genus is not None else obj.get("genus", 0)
    if isinstance(g, bool) or not isinstance(g, int) or g < 0:
        raise ParseError(f"genus must be a non-negative integer, got {g!r}")
    arcs = []
    for j, arc in enumerate(obj.get("arcs", [])):
        try:
            A, B = arc
            arcs.append((G.element(A), G.element(B)))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"arcs[{j}]: bad label {arc!r}: {exc}") from None
    return SurfaceObject(g, tuple(arcs))


def surface_to_json(s: SurfaceObject) -> dict:
    return {"genus": s.genus, "arcs": [[list(A), list(B)] for A, B in s.arcs]}


def basis_to_json(b: BasisElement) -> dict:
    return {"handles": [[list(a), list(bb)] for a, bb in b.handles],
            "rings": [list(c) for c in b.rings]}
