"""Tools for spectral extremal problems on planar graphs.

Small graphs are stored as neighbour bitsets (:class:`Graph`).  On top of that
sit a planarity test, a power-iteration spectral radius, forbidden-pattern
detection, isomorph-free enumeration and checkers for the extremal families.
"""

from .canon import are_isomorphic, canonical_form, canonical_graph6, canonical_labelling
from .generate import EnumerationConfig, EnumerationError, enumerate_graphs, iter_graphs
from .graph import (
    FAMILIES,
    Graph,
    GraphError,
    book,
    edge_count_between,
    edge_count_within,
    family_F,
    family_M,
    family_W,
    friendship,
    join,
    wheel,
)
from .graph6 import Graph6Error, from_graph6, read_graph6, to_graph6, write_graph6
from .patterns import (
    ForbiddenPattern,
    Friendship,
    Generic,
    Matching,
    PatternError,
    Wheel,
    contains_subgraph,
    fits_in_K2m,
    is_pattern_free,
    matching_number,
    maximum_matching,
    parse_pattern,
)
from .planarity import EulerVerdict, Filter, PlanarityVerdict, euler_filter, is_planar, planar
from .spectral import (
    ConvergenceError,
    SpectrumResult,
    closed_form_rho_book,
    closed_form_rho_k2n,
    eigen_window_check,
    ellingham_zha_bound,
    spectral_radius,
    spectral_radius_mp,
)
from .theorems import (
    InvariantViolation,
    PathSystem,
    SearchReport,
    StructureWitness,
    TheoremReport,
    spex_search,
    structure_witness,
    transform,
    transformation_path,
    verify_lemma9,
    verify_theorem,
)

__version__ = "0.1.0"
