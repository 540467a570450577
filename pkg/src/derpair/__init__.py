"""derpair: exact-rational verification and cohomology for algebras with derivations.

The package represents finite-dimensional algebras by rational structure
constants, checks every defining identity of the supported structure kinds
(associative, Lie, pre-Lie, zinbiel, dendriform, their derivation pairs, and
the compatible variants of all of these), runs the structure-transfer
constructions between them, tests square-zero characterizations of the
corresponding graded-bracket elements, and computes cochain-complex
cohomology dimensions by exact linear algebra.
"""

from .linalg import Matrix, Scalar, Space, compose, kernel_dim, nullspace, rank
from .cochains import AltMap, CompatCochain, DerCochain, MultiMap, circle_g, circle_nr
from .brackets import assder_bracket, dc_bracket, gerstenhaber, nijenhuis_richardson
from .structures import (KINDS, Presentation, Violation, check_morphism,
                         check_operator, check_structure, derivation_system,
                         cross_derivation_system)
from .constructions import (RECIPES, dendrify, endo_brackets, nijenhuis_product,
                            rb_deform_assder, rb_lie_to_prelie)
# the cohomology() entry point stays on its submodule so the function does
# not shadow the derpair.cohomology module attribute
from .cohomology import (ComplexSpec, CohomologyReport, hochschild_d,
                         ce_d, der_D, assder_d, lieder_d, compat_assoc_d, cad_d,
                         cldp_d)
from .maurer_cartan import (McVerdict, bidifferential_check, deformation_check,
                            mc_assder, mc_lieder, mc_pair_assder, mc_pair_lieder)

__all__ = [
    "AltMap", "CompatCochain", "CohomologyReport", "ComplexSpec", "DerCochain",
    "KINDS", "Matrix", "McVerdict", "MultiMap", "Presentation", "RECIPES",
    "Scalar", "Space", "Violation",
    "assder_bracket", "assder_d", "bidifferential_check", "cad_d", "ce_d",
    "check_morphism", "check_operator", "check_structure", "circle_g",
    "circle_nr", "cldp_d", "compat_assoc_d", "compose",
    "cross_derivation_system", "dc_bracket", "deformation_check", "dendrify",
    "der_D", "derivation_system", "endo_brackets", "gerstenhaber",
    "hochschild_d", "kernel_dim", "lieder_d", "mc_assder", "mc_lieder",
    "mc_pair_assder", "mc_pair_lieder", "nijenhuis_product",
    "nijenhuis_richardson", "nullspace", "rank", "rb_deform_assder",
    "rb_lie_to_prelie",
]
