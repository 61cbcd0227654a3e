"""versalkit: local standard bases, module extensions, and miniversal
deformations of isolated complete-intersection singularities, over exact
fields (Q or F_p)."""

from .field import GF, QQ
from .poly import Poly, PolyRing
from .parse import parse_poly
from .basis import Ideal, StandardBasis, Staircase, Vec, lift_through, syzygies
from .quotient import FiniteQuotient
from .modules import (CertificationError, ModuleHom, PresentedModule,
                      ext_module, free_module, hom_space, kernel)
from .extensions import (Extension, baer_sum, extensions_isomorphic, is_split,
                         opposite, pullback, pushforward, split_extension,
                         splitting)
from .singularity import (NotIsolated, NotRegularSequence, RejectedInput,
                          Singularity)
from .artinian import (ArtinianAlgebra, SmallExtensionStep, filtration,
                       make_truncation)
from .deformation import (EmbeddedLifting, check_flatness, certify_flat,
                          e_class, glue_over_fiber_product, liftings_isomorphic,
                          mixed_ring, nu_difference, trivial_lifting)
from .versal import (DeformationFamily, FirstObstruction, VersalityReport,
                     VersalResult, first_obstruction, kodaira_spencer,
                     lift_to_next_order, miniversal, verify_versality_order)

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Poly", "PolyRing", "parse_poly",
    "Ideal", "StandardBasis", "Staircase", "Vec", "lift_through", "syzygies",
    "FiniteQuotient",
    "CertificationError", "ModuleHom", "PresentedModule", "ext_module",
    "free_module", "hom_space", "kernel",
    "Extension", "baer_sum", "extensions_isomorphic", "is_split", "opposite",
    "pullback", "pushforward", "split_extension", "splitting",
    "NotIsolated", "NotRegularSequence", "RejectedInput", "Singularity",
    "ArtinianAlgebra", "SmallExtensionStep", "filtration", "make_truncation",
    "EmbeddedLifting", "check_flatness", "certify_flat", "e_class",
    "glue_over_fiber_product", "liftings_isomorphic", "mixed_ring",
    "nu_difference", "trivial_lifting",
    "DeformationFamily", "FirstObstruction", "VersalityReport", "VersalResult",
    "first_obstruction", "kodaira_spencer", "lift_to_next_order", "miniversal",
    "verify_versality_order",
    "__version__",
]
