"""Exact computations on weighted branching graphs and their harmonic functions.

The package works on finite windows of infinite graded graphs with exact
rational arithmetic throughout. Main entry points:

* :mod:`branchgraph.graph`: graded graphs, validation, shifted dimensions
* :mod:`branchgraph.order`: ideals, coideals, saturation, primitivity
* :mod:`branchgraph.cone`: the cone order on formal vertex combinations
* :mod:`branchgraph.harmonic`: harmonic functions, prelimit sums, diagnostics
* :mod:`branchgraph.extres`: restriction to ideals and extension back
* :mod:`branchgraph.multiplicative`: structure-constant oracles and checks
* :mod:`branchgraph.boyer`: the path-counting criterion and glued graphs
* :mod:`branchgraph.products`: direct products and tensor functions
* :mod:`branchgraph.catalog`: named graphs, subsets and functions
"""

from .cone import ConeElement, cone_compare, evaluate_functional, push_down
from .errors import (
    BranchGraphError,
    CatalogError,
    ContractError,
    CoverageError,
    DepthError,
    DomainError,
    LevelOverflowError,
    ResourceError,
    UndefinedFormError,
    VertexLookupError,
)
from .extreal import INF
from .graph import GradedGraph, LevelGenerator, enumerate_paths, shifted_dim, validate_graph
from .harmonic import HarmonicFunction

__version__ = "0.1.0"

__all__ = [
    "INF",
    "GradedGraph",
    "LevelGenerator",
    "HarmonicFunction",
    "ConeElement",
    "validate_graph",
    "shifted_dim",
    "enumerate_paths",
    "push_down",
    "cone_compare",
    "evaluate_functional",
    "BranchGraphError",
    "CatalogError",
    "ContractError",
    "CoverageError",
    "DepthError",
    "DomainError",
    "LevelOverflowError",
    "ResourceError",
    "UndefinedFormError",
    "VertexLookupError",
]
