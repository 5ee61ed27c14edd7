"""Euclidean Steiner trees and spanning trees on regular-polygon terminal sets."""

from .catalog import CatalogEntry, empirical_length, empirical_length_p, generate_catalog, symmetry_identity_check
from .geometry import (
    Point2,
    TerminalSet,
    Triangle,
    fermat_point,
    regular_polygon,
    similar_same_chirality,
    stem_elevation,
    steiner_3_length,
)
from .relax import (
    GeometricTree,
    RelaxOptions,
    classify_symmetry,
    effective_nodal_total,
    find_all_local_minima,
    is_stable,
    relax,
    search_local_minima,
)
from .spanning import SpanningTree, enumerate_spanning_trees, minimum_spanning_tree, spanning_catalog
from .topology import SteinerTopology, enumerate_topologies
from .triangulation import (
    NamedConfiguration,
    TriangleChainSpec,
    build_configuration,
    solve_partition,
    validate_chain,
)

__all__ = [name for name in dir() if not name.startswith("_")]
