"""Isomorphism checks for 2-level orthogonal arrays through persistence diagrams of moment filtrations."""

from .design import (
    CountingVector,
    Design,
    IsoTransform,
    MomentVector,
    Pmf,
    apply_transform,
    are_isomorphic_exact,
    canonical_form,
    check_strength,
    counting_vector,
    enumerate_oas,
    extend_oas,
    moments,
    pmf,
    random_transform,
    reduce_to_classes,
    transform_counts,
)
from .isocheck import Certificate, IsoVerdict, SearchMode, classification_experiment, conjecture_scan, iso_check
from .metrics import MatchingMode, d1_wasserstein, d2_wasserstein, diagrams_equal
from .topology import PersistenceDiagram, betti_at, build_filtration, diagram_of, persistence

__version__ = "0.1.0"
