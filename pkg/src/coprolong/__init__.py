"""Co-prolongations of group extensions with abelian kernel.

Layers, bottom up: finite groups as Cayley tables (:mod:`.groups`), exact
integer linear algebra (:mod:`.zlattice`), second cohomology
(:mod:`.cohomology`), extensions and crossed products (:mod:`.extensions`),
the co-prolongation obstruction and classification (:mod:`.coprolongation`),
and brute-force cross-checks (:mod:`.oracle`).
"""

from .cohomology import Cochain, GModule, H2Map, H2Presentation, coboundary, h2, induced_map_h2, is_cocycle, pullback
from .coprolongation import (
    System,
    check_morphism,
    classify,
    construct_coprolongation,
    induced_crossed_module,
    kernel_splitting,
    obstruction,
    preimage_decomposition,
    representatives_check,
    split_case_construct,
    validate_system,
)
from .errors import AlgebraError
from .extensions import (
    Extension,
    Section,
    are_equivalent,
    canonical_section,
    crossed_product,
    factor_set,
    induced_action,
    is_central,
    verify_crossed_module,
)
from .groups import FiniteGroup, GroupHom, Subgroup, build_group, build_hom, quotient, small_groups, structure_tag
from .zlattice import FiniteAbelianGroup, smith_normal_form, solve_mod

__all__ = [name for name in dir() if not name.startswith("_")]
