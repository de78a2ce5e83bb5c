"""The abelian Dijkgraaf-Witten state as a groupoid cardinality.

For abelian ``G`` a bundle on a connected space is a homomorphism
``H_1 -> G`` and every bundle has automorphism group ``G``, so the
cardinality of the bundle groupoid is ``#Hom / |G|`` per connected
component of the ambient manifold. Boundary conditions from Wilson-line
labels become linear constraints on the homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContractError, DimensionError
from .groups import FiniteAbelianGroup, GroupElement
from .links import EMPTY_S3, SURGERY, LabeledLinkingData
from .zmatrix import IntMatrix, count_solutions


@dataclass(frozen=True)
class HomologyPresentation:
    """Generators ``mu_1..mu_n``, relators, and boundary constraints.

    A homomorphism ``phi`` is counted when every relation row maps to 0
    and every constraint ``(row, value)`` has ``phi(sum row_j mu_j) = value``.
    """

    generators: int
    relations: IntMatrix
    constraints: tuple[tuple[tuple[int, ...], GroupElement], ...] = ()
    manifold_components: int = 1

    def __post_init__(self):
        if self.relations.cols != self.generators:
            raise DimensionError(
                f"relations have {self.relations.cols} columns, expected {self.generators}")
        constraints = tuple((tuple(row), tuple(value)) for row, value in self.constraints)
        for row, _ in constraints:
            if len(row) != self.generators:
                raise DimensionError(
                    f"constraint row of length {len(row)}, expected {self.generators}")
        if self.manifold_components < 0:
            raise ContractError("manifold_components must be non-negative")
        object.__setattr__(self, "constraints", constraints)

    def system(self, G: FiniteAbelianGroup) -> tuple[IntMatrix, list[GroupElement]]:
        """Stack relations and constraints into one system ``M phi = t``."""
        for _, value in self.constraints:
            if not G.contains(value):
                raise DimensionError(f"constraint value {value} is not in {G}")
        rows = list(self.relations.entries) + [row for row, _ in self.constraints]
        rhs = [G.zero] * self.relations.rows + [value for _, value in self.constraints]
        return IntMatrix(len(rows), self.generators, tuple(rows)), rhs


def groupoid_cardinality(count: int, G: FiniteAbelianGroup, components: int) -> Fraction:
    return Fraction(count, G.order ** components)


def invariant_presentation(p: HomologyPresentation, G: FiniteAbelianGroup) -> Fraction:
    M, t = p.system(G)
    return groupoid_cardinality(count_solutions(M, t, G), G, p.manifold_components)


def link_presentation(d: LabeledLinkingData) -> HomologyPresentation:
    """Meridian presentation of ``H_1`` of the link complement in the
    surgered manifold, with the Wilson labels as boundary constraints.

    A surgery component's framed longitude bounds after surgery, giving
    the relator ``sum_j m[i][j] mu_j``. A Wilson component ``(a, b)``
    pins its meridian to ``a`` and its longitude to ``b``.
    """
    n = d.n
    e = d.matrix.entries
    relations = [e[i] for i in d.surgery_indices]
    constraints = []
    for i in d.wilson_indices:
        a, b = d.labels[i]
        constraints.append((tuple(int(i == j) for j in range(n)), a))
        constraints.append((e[i], b))
    return HomologyPresentation(n, IntMatrix(len(relations), n, tuple(relations)),
                                tuple(constraints), d.manifold_components)


def invariant_closed(d: LabeledLinkingData, G: FiniteAbelianGroup) -> Fraction:
    """Invariant of the closed manifold presented by surgery on the
    surgery components, with the Wilson components as labeled ribbons."""
    d.check_group(G)
    return invariant_presentation(link_presentation(d), G)


def longitude_holonomy(d: LabeledLinkingData, i: int, G: FiniteAbelianGroup) -> GroupElement:
    """``sum_j m[i][j] a_j``: the longitude holonomy forced by the meridian labels."""
    return G.linear_combination(d.matrix.entries[i], [label[0] for label in d.labels])


def invariant_s3(d: LabeledLinkingData, G: FiniteAbelianGroup) -> Fraction:
    """``1/|G|`` if every Wilson label satisfies ``b_i = sum_j m_ij a_j``, else 0.

    With ``manifold_components = c > 1`` the link is read as sitting in
    ``c`` disjoint copies of S^3 and the nonzero value is ``1/|G|^c``.
    """
    if d.surgery_indices:
        raise ContractError(
            "invariant_s3 needs an all-Wilson link; use invariant_closed for surgery data")
    d.check_group(G)
    for i in range(d.n):
        if longitude_holonomy(d, i, G) != d.labels[i][1]:
            return Fraction(0)
    return groupoid_cardinality(1, G, d.manifold_components)


def sphere_presentation() -> HomologyPresentation:
    return link_presentation(EMPTY_S3)


def s1_x_s2() -> LabeledLinkingData:
    """0-framed surgery on the unknot."""
    return LabeledLinkingData(IntMatrix.from_rows([[0]]), (SURGERY,), (None,))


def three_torus() -> LabeledLinkingData:
    """0-framed surgery on the Borromean rings; all linking numbers vanish."""
    return LabeledLinkingData(IntMatrix.zeros(3, 3), (SURGERY,) * 3, (None,) * 3)


def eta(G: FiniteAbelianGroup) -> Fraction:
    """Surgery constant: ``I(S^3) / I(S^1 x S^2)``, both computed."""
    return invariant_closed(EMPTY_S3, G) / invariant_closed(s1_x_s2(), G)


def meridian_matrix(d: LabeledLinkingData, G: FiniteAbelianGroup
                    ) -> tuple[IntMatrix, list[GroupElement]]:
    """Linear system whose solution count is ``#Hom`` for ``d``; shared with oracles."""
    return link_presentation(d).system(G)


def value_is_normalized(value: Fraction, G: FiniteAbelianGroup, components: int) -> bool:
    """True when ``value = k / |G|^components`` for some integer ``k >= 0``."""
    scaled = value * G.order ** components
    return value >= 0 and scaled.denominator == 1

