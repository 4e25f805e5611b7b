"""Pattern matching on grammar-compressed text with a CDAWG index."""

from .access import AccessCounters, FifoCache, PositionIndex, RandomAccess, access_char, access_range, build_position_index
from .cdawg import Cdawg, build_cdawg, compute_counts, deserialize_cdawg, serialize_cdawg
from .grammar import Grammar, expand, expansion_length, grammar_stats, load_grammar, save_grammar
from .matcher import Index, MatchPoint, count, exists, find_point, locate
from .repair import repair_compress

__all__ = [
    "AccessCounters", "Cdawg", "FifoCache", "Grammar", "Index", "MatchPoint", "PositionIndex",
    "RandomAccess", "access_char", "access_range", "build_cdawg", "build_position_index",
    "compute_counts", "count", "deserialize_cdawg", "exists", "expand", "expansion_length",
    "find_point", "grammar_stats", "load_grammar", "locate", "repair_compress", "save_grammar",
    "serialize_cdawg",
]
