"""Fractional repetition codes viewed as hypergraphs.

Ids (nodes, packets, vertices, edges) are 1-based throughout.
"""

from ._core import (
    ClassificationFlags,
    FRCode,
    FrcError,
    Hypergraph,
    adapt,
    check_bounds,
    classify,
    construct,
    dual,
    dual_code,
    existence_check,
    file_size_table,
    filesize_csv,
    fr_to_hypergraph,
    hypergraph_to_fr,
    is_adaptation_of,
    is_universally_good,
    max_file_size,
    min_distance,
    parse_frc,
    realize,
    reconstruction_degree,
    repair_degree,
    serialize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
