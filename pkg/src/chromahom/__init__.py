"""Integral chromatic homology of graphs over Z[x]/(x^2)."""

from .graphs import (
    GraphError,
    OrderedGraph,
    chromatic_polynomial,
    complete_graph,
    contract_edge,
    cycle_graph,
    delete_edge,
    family,
    kpartial,
    path_graph,
    random_connected,
)
from .homology import BigradedTable, HomologyGroup, homology_table, presentation
from .states import EnhancedState, ResourceCapExceeded, chain_complex

__all__ = [
    "BigradedTable",
    "EnhancedState",
    "GraphError",
    "HomologyGroup",
    "OrderedGraph",
    "ResourceCapExceeded",
    "chain_complex",
    "chromatic_polynomial",
    "clear_caches",
    "complete_graph",
    "contract_edge",
    "cycle_graph",
    "delete_edge",
    "family",
    "homology_table",
    "kpartial",
    "path_graph",
    "presentation",
    "random_connected",
]


def clear_caches() -> None:
    """Drop cached complexes, presentations and tables (they can be large)."""
    from . import sequences

    chain_complex.cache_clear()
    sequences._presentation.cache_clear()
    sequences._table.cache_clear()
