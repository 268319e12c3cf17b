"""Spaceship search for outer-totalistic cellular automata."""

from .pattern import (
    Pattern,
    ShipDescriptor,
    classify_ship,
    emit_rle,
    evolve_pattern,
    parse_rle,
)
from .rules import Rule, evolution_table, evolve_cell, evolve_row_triple, format_rule, parse_rule
from .search import (
    EXHAUSTED,
    SHIP_FOUND,
    WIDTH_EXHAUSTED,
    SearchConfig,
    SearchResult,
    SearchStatus,
    run_search,
)
from .statespace import (
    ASYMMETRIC,
    DIAGONAL,
    EVEN_MIRROR,
    GLIDE_REFLECT,
    ODD_MIRROR,
    ORTHOGONAL,
    SearchParams,
    debruijn_size,
)

__all__ = [
    "ASYMMETRIC",
    "DIAGONAL",
    "EVEN_MIRROR",
    "EXHAUSTED",
    "GLIDE_REFLECT",
    "ODD_MIRROR",
    "ORTHOGONAL",
    "Pattern",
    "Rule",
    "SHIP_FOUND",
    "SearchConfig",
    "SearchParams",
    "SearchResult",
    "SearchStatus",
    "ShipDescriptor",
    "WIDTH_EXHAUSTED",
    "classify_ship",
    "debruijn_size",
    "emit_rle",
    "evolution_table",
    "evolve_cell",
    "evolve_pattern",
    "evolve_row_triple",
    "format_rule",
    "parse_rle",
    "parse_rule",
    "run_search",
]
