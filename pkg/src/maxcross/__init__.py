"""maxcross: exact maximum-crossing-number toolkit for small graphs."""

__version__ = "0.1.0"

from .graphs import (
    Graph,
    SubgraphEmbedding,
    build_named,
    cartesian_product,
    delete_vertex,
    disjoint_cycle_pairs,
    enumerate_cycles,
    find_subgraphs,
    make_graph,
    non_incident_pairs,
    sub_thrackle_number,
    thrackle_number,
)

__all__ = [
    "Graph",
    "SubgraphEmbedding",
    "build_named",
    "cartesian_product",
    "delete_vertex",
    "disjoint_cycle_pairs",
    "enumerate_cycles",
    "find_subgraphs",
    "make_graph",
    "non_incident_pairs",
    "sub_thrackle_number",
    "thrackle_number",
    "__version__",
]
