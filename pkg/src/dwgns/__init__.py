"""Exact abelian Dijkgraaf-Witten invariants and their GNS state spaces."""

from .errors import (ContractError, DimensionError, DWError, GuardError, InconsistentError,
                     ParseError)
from .groups import FiniteAbelianGroup, GroupElement, parse_group
from .invariant import (HomologyPresentation, eta, invariant_closed, invariant_presentation,
                        invariant_s3, link_presentation)
from .links import (EMPTY_MANIFOLD, EMPTY_S3, FormalSum, LabeledLinkingData, LinkDiagram,
                    disjoint_union, linking_data, parse_diagram, parse_link)
from .moves import Move1, Move2, Move3, RingRelation, apply_move, reduce
from .zmatrix import IntMatrix, brute_force_count, count_solutions, smith_normal_form

__version__ = "0.1.0"
