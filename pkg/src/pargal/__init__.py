"""Partial group actions on finite commutative rings.

Exact, table-driven implementations of unital partial actions, partial
Galois coordinates, partial group cohomology H^0..H^3, partial skew
group rings and crossed products, the induced action on the Picard
semigroup of a finite ring, and enumeration-level consequence checks
for the associated exact sequence.
"""

__version__ = "0.1.0"

from .cohomology import (Cochain, coboundary, cochain_from_map,
                         cohomologous, cohomology_group, identity_cochain,
                         is_cocycle)
from .crossed import (crossed_product, delta_theta, kappa_iso,
                      skew_group_ring, theta_factor_set)
from .errors import BudgetError, DefectError, PreconditionError
from .finring import make_ring
from .fixtures import fixture, fixture_names
from .galois import find_certificate, is_galois, regular_representation, verify_certificate
from .groups import make_group
from .partial_action import (GlobalAction, PartialAction, as_partial,
                             invariant_subring, restrict_global,
                             trivial_partial_action, validate)
from .picsemi import pics_monoid, star_action, z1_pics
from .sequence import (consequence_check, delta_theta_brauer_class,
                       twisted_invariants)

__all__ = [
    "BudgetError", "DefectError", "PreconditionError", "__version__",
    "make_ring", "make_group",
    "PartialAction", "GlobalAction", "as_partial", "restrict_global",
    "trivial_partial_action", "validate", "invariant_subring",
    "fixture", "fixture_names",
    "find_certificate", "verify_certificate", "is_galois",
    "regular_representation",
    "Cochain", "cochain_from_map", "identity_cochain", "coboundary",
    "is_cocycle", "cohomologous", "cohomology_group",
    "skew_group_ring", "crossed_product", "theta_factor_set", "delta_theta",
    "kappa_iso",
    "pics_monoid", "star_action", "z1_pics",
    "consequence_check", "delta_theta_brauer_class", "twisted_invariants",
]
