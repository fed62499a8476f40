"""Fully-online DAWG and suffix tree for a collection of growing texts."""
from .core import InvalidTextId, StreamParseError, TextStore, UpdateOp, parse_stream, replay, serialize_stream
from .dawg import SOURCE, Dawg, DawgUpdateResult, PreconditionError
from .dyntree import DynTree, MarkSet, OrderList
from .index import FullyOnlineIndex, IndexConfig, build
from .lpt import CanonicalRef, InvariantViolation, Lpt
from .oracle import CheckedOracle, SuffixTreeOracle, WalkupOracle, make_oracle
from .query import Match, StateError, count_occurrences, find_pattern, find_pattern_dawg, report_occurrences
from .stree import STNode, SuffixTree

__all__ = [
    "InvalidTextId", "StreamParseError", "TextStore", "UpdateOp", "parse_stream", "replay",
    "serialize_stream", "SOURCE", "Dawg", "DawgUpdateResult", "PreconditionError", "DynTree",
    "MarkSet", "OrderList", "FullyOnlineIndex", "IndexConfig", "build", "CanonicalRef",
    "InvariantViolation", "Lpt", "CheckedOracle", "SuffixTreeOracle", "WalkupOracle",
    "make_oracle", "Match", "StateError", "count_occurrences", "find_pattern",
    "find_pattern_dawg", "report_occurrences", "STNode", "SuffixTree",
]
