"""Exact computations in path categories of quivers with relations.

The library materializes finite windows of (possibly infinite) quivers,
computes hom spaces of the quotient category by exact linear algebra,
and builds on that: tensor/box-ideal products, triangular matrix
categories via augmented quivers, quasi-hereditary filtration
certification, Delta-filtration tests, and one-point extensions with
their extension/restriction adjunction and tilting checks.
"""

from .field import QQ, PrimeField, RationalField, field_from_name
from .linalg import Matrix, quotient_reps
from .quiver import (
    Arrow,
    Path,
    Quiver,
    QuiverPresentation,
    Relation,
    box_ideal,
    enumerate_paths,
    product_presentation,
    product_quiver,
)
from .families import FamilySpec, linear_a_inf, materialize_window, mesh_za_inf, zigzag_a_inf
from .homspace import (
    HomSpace,
    Morphism,
    PresentationHoms,
    TruncationError,
    compose,
    get_homs,
    hom_basis,
    ideal_membership,
    radical,
    validate_presentation,
)

__version__ = "0.1.0"
