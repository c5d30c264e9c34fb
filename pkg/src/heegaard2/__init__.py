"""Genus-2 Heegaard diagram combinatorics.

Diagram validation and reduction, Whitehead graph classification, group
presentations with a layered word oracle, truncated left-order search, and
the order-driven splitting of word-labelled branched surfaces.
"""

__version__ = "0.1.0"

from .diagram import HeegaardDiagram, parse_diagram, trace_faces, find_bigons, tighten
from .moves import Wave, ComplexityTriple, complexity, find_waves, minimize, wave_move
from .whitehead import WhiteheadGraph, whitehead_graph, parallel_arc_classes, band_sum
from .groups import (
    GroupPresentation,
    RegionLabeling,
    TriValue,
    WordOracle,
    Budget,
    presentation,
    region_words,
    rebase,
)
from .orders import PartialLeftOrder, search_positive_cone, minimal_region
from .branched import (
    BranchedSurface,
    SplitTrace,
    build_branched,
    trivial_sectors,
    delete_sectors,
    split_step,
    run_splitting,
    detect_disk_of_contact,
    detect_twisted_disk,
    check_product_complement,
)
from .contact import corner_report, contact_bound_check, outermost_count_check

__all__ = [name for name in dir() if not name.startswith("_")]
