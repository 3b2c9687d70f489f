"""semimark: finite marked semi-simplicial machinery.

Shuffle tensor products, admissible marked horn decompositions with
replayable certificates, quasi-unit and invertibility analysis on nerves of
finite non-unital categories, lifting-property decision procedures, a
truncated right Kan extension, and exact integral homology as a
contractibility oracle.
"""

from .errors import BudgetError
from .ordinal import OrdinalMap, Shuffle, compose, enumerate_maps, enumerate_shuffles, sections_of
from .sset import SSet, SSetMap, boundary, horn, spine, standard, validate
from .marked import MarkedSSet, MarkedMap, MarkedHornSpec, flat, is_admissible, sharp, tensor, tilde
from .homology import HomologyProfile, homology_profile, smith_normal_form
from .nucat import NuCat, NuFunctor, marked_nerve, nerve
from .decompose import PushoutCertificate, shuffle_filtration, spread_decomposition, verify
from .kanext import SimpSet, forget_plus, rk_plus_level, verify_counit_gaunt
from .lifting import has_rlp, is_quasi_unital_via_rlp, q_generators

__all__ = [
    "BudgetError",
    "OrdinalMap",
    "Shuffle",
    "compose",
    "enumerate_maps",
    "enumerate_shuffles",
    "sections_of",
    "SSet",
    "SSetMap",
    "boundary",
    "horn",
    "spine",
    "standard",
    "validate",
    "MarkedSSet",
    "MarkedMap",
    "MarkedHornSpec",
    "flat",
    "is_admissible",
    "sharp",
    "tensor",
    "tilde",
    "HomologyProfile",
    "homology_profile",
    "smith_normal_form",
    "NuCat",
    "NuFunctor",
    "marked_nerve",
    "nerve",
    "PushoutCertificate",
    "shuffle_filtration",
    "spread_decomposition",
    "verify",
    "SimpSet",
    "forget_plus",
    "rk_plus_level",
    "verify_counit_gaunt",
    "has_rlp",
    "is_quasi_unital_via_rlp",
    "q_generators",
]

__version__ = "0.1.0"
