"""Subgraph-density PCA for samples of networks.

Thin wrapper over the compiled _core module. See the C++ headers for the
full API surface; everything here keeps the same names and semantics.
"""

from ._core import (
    Graph,
    brute_force_count,
    configuration_names,
    count,
    default_tau_k,
    density,
    density_vector,
    kernel_moment,
    load_edge_list,
    load_manifest,
    max_count,
    partition,
    pcan,
    sample_graph,
    spcan,
    write_edge_list,
)

__version__ = "1.0.0"

__all__ = [
    "Graph",
    "brute_force_count",
    "configuration_names",
    "count",
    "default_tau_k",
    "density",
    "density_vector",
    "kernel_moment",
    "load_edge_list",
    "load_manifest",
    "max_count",
    "partition",
    "pcan",
    "sample_graph",
    "spcan",
    "write_edge_list",
    "__version__",
]
