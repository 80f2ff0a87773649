"""Toric varieties from polygon dissections.

The package builds the bridge in both directions: dissections of a convex
polygon to rooted plane trees and back, trees to smooth projective toric
varieties via their fans, and fans to integral cohomology rings.  On top of
that sit exact certificates (Fano via primitive collections), enumeration
(class counts per number of cells), and isomorphism classification with a
bounded witness search.
"""

from .classify import (
    Fingerprint,
    IsoVerdict,
    TheoremOneReport,
    ThreeCellTree,
    UniformTreeReport,
    cohomology_isomorphic_bounded,
    count_classes,
    fingerprint,
    variety_isomorphic,
    verify_prop_further,
    verify_theorem1,
)
from .cohomology import (
    DJPresentation,
    SchroederPresentation,
    betti_profile,
    descendant_set,
    dj_presentation,
    eliminate,
    schroeder_presentation,
)
from .combinatorics import (
    Dissection,
    RiordanTable,
    SchroederTree,
    canonical_code,
    canonical_form,
    dissection_to_tree,
    enumerate_dissections,
    enumerate_trees,
    kirkman_cayley,
    phi_labels,
    riordan_table,
    tree_to_dissection,
)
from .errors import InternalError
from .fan import (
    Fan,
    FanoCertificate,
    FanStructureError,
    build_fan_direct,
    build_fan_subdivision,
    is_fano,
    primitive_collections,
    primitive_relation,
)
from .polyring import (
    IntPolynomial,
    RingPresentation,
    hilbert_series,
    normal_form,
    power_is_zero,
)

__version__ = "0.1.0"

__all__ = [
    "DJPresentation",
    "Dissection",
    "Fan",
    "FanStructureError",
    "FanoCertificate",
    "Fingerprint",
    "IntPolynomial",
    "InternalError",
    "IsoVerdict",
    "RingPresentation",
    "RiordanTable",
    "SchroederPresentation",
    "SchroederTree",
    "TheoremOneReport",
    "ThreeCellTree",
    "UniformTreeReport",
    "betti_profile",
    "build_fan_direct",
    "build_fan_subdivision",
    "canonical_code",
    "canonical_form",
    "cohomology_isomorphic_bounded",
    "count_classes",
    "descendant_set",
    "dissection_to_tree",
    "dj_presentation",
    "eliminate",
    "enumerate_dissections",
    "enumerate_trees",
    "fingerprint",
    "hilbert_series",
    "is_fano",
    "kirkman_cayley",
    "normal_form",
    "phi_labels",
    "power_is_zero",
    "primitive_collections",
    "primitive_relation",
    "riordan_table",
    "schroeder_presentation",
    "tree_to_dissection",
    "variety_isomorphic",
    "verify_prop_further",
    "verify_theorem1",
]
