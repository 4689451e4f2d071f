"""coarselab: verified computations on large-scale set-family structures.

Finite universes get exhaustive axiom checkers for every structure
class (alike-at-large-scale collections, near collections, subset
equivalences, coarse relation families, proximities); the integer line
gets an exact eventually-periodic representation with a decidable
Hausdorff engine, scale-bounded certificates for enumerator-backed
sets, cover coarsening, and an asymptotic dimension report.
"""

__version__ = "0.1.0"

from .lineset import (
    BlocksSet,
    ExtendedDistance,
    FiniteSet,
    GeometricSet,
    LineSet,
    PeriodicSet,
    hausdorff_at_scale,
    hausdorff_distance,
)
from .setcore import Family, Subset, Universe, downward_closure, ll_refines, vee
from .structures import (
    ExplicitASR,
    ExplicitCoarse,
    ExplicitLSR,
    ExplicitNearness,
    ExplicitProximity,
    check_asr_axioms,
    check_coarse,
    check_lsr_axioms,
    check_nearness_axioms,
    check_proximity_axioms,
    is_a_lsr,
    is_ls_regular,
)
from .verdict import TriVerdict

__all__ = [
    "BlocksSet",
    "ExplicitASR",
    "ExplicitCoarse",
    "ExplicitLSR",
    "ExplicitNearness",
    "ExplicitProximity",
    "ExtendedDistance",
    "Family",
    "FiniteSet",
    "GeometricSet",
    "LineSet",
    "PeriodicSet",
    "Subset",
    "TriVerdict",
    "Universe",
    "check_asr_axioms",
    "check_coarse",
    "check_lsr_axioms",
    "check_nearness_axioms",
    "check_proximity_axioms",
    "downward_closure",
    "hausdorff_at_scale",
    "hausdorff_distance",
    "is_a_lsr",
    "is_ls_regular",
    "ll_refines",
    "vee",
]
