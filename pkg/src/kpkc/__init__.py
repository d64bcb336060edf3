"""k-partite k-clique search and a combinatorial certificate for the
optimal colored Tverberg property of 10-point configurations."""

from .bitgraph import GraphFormatError, KPartiteGraph, build_graph, parse_graph, write_graph
from .chirotope import Chirotope, Quad, classify_quad, valid_quads
from .engines import (
    SearchTimeout,
    brute_cliques,
    clique_engine,
    findclique_iter,
    has_kclique,
    kpkc_iter,
)
from .geomoracle import check_theorem, convex_config, sample_config
from .randgen import GrunertParams, RareParams, SplitMix64, gen_grunert, gen_rare
from .tverberg import (
    ColorPartition,
    OrientationVertex,
    TverbergPartition,
    build_H,
    census,
    enumerate_color_partitions,
    verify_chirotope,
)

__version__ = "0.1.0"

__all__ = [
    "Chirotope",
    "ColorPartition",
    "GraphFormatError",
    "GrunertParams",
    "KPartiteGraph",
    "OrientationVertex",
    "Quad",
    "RareParams",
    "SearchTimeout",
    "SplitMix64",
    "TverbergPartition",
    "build_H",
    "build_graph",
    "brute_cliques",
    "census",
    "check_theorem",
    "classify_quad",
    "clique_engine",
    "enumerate_color_partitions",
    "convex_config",
    "findclique_iter",
    "gen_grunert",
    "gen_rare",
    "has_kclique",
    "kpkc_iter",
    "parse_graph",
    "sample_config",
    "valid_quads",
    "verify_chirotope",
    "write_graph",
]
