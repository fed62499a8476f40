"""Pattern queries over a live or finalized index."""
from __future__ import annotations

from dataclasses import dataclass

from .lpt import CanonicalRef


class StateError(RuntimeError):
    pass


@dataclass
class Match:
    found: bool
    stree_locus: CanonicalRef | None = None
    dawg_node: int | None = None


def find_pattern_dawg(index, pattern: str) -> Match:
    v = index.dawg.lookup(pattern)
    return Match(v is not None, None, v)


def find_pattern(index, pattern: str) -> Match:
    """Descend the suffix tree; finish on the DAWG past a lazy leaf edge.

    A lazy leaf edge only knows its first character.  When the pattern runs
    into one, the remaining characters are matched on the DAWG from the
    class of the explicit node above the edge.
    """
    ref, lazy = index.stree.locus(pattern)
    if ref is None:
        return Match(False)
    if lazy is None:
        return Match(True, ref, None)
    dawg = index.dawg
    # the explicit parent spells pattern[:depth]; respell it on the DAWG
    v = dawg.lookup(pattern[:ref.base.depth])
    for ch in pattern[ref.base.depth:]:
        v = dawg.edges[v].get(ch)
        if v is None:
            return Match(False)
    return Match(True, ref, v)


def count_occurrences(index, pattern: str) -> int:
    """Number of (text, end position) occurrences, by a suffix-link subtree scan."""
    if not pattern:
        return index.store.total_len
    v = index.dawg.lookup(pattern)
    return 0 if v is None else index.dawg.epos_size(v)


def report_occurrences(index, pattern: str) -> list[tuple[int, int]]:
    """All (text id, 1-based start) occurrences; needs a finalized index."""
    st = index.stree
    if not st.finalized:
        raise StateError("report_occurrences requires finalize()")
    ref, _ = st.locus(pattern)
    if ref is None:
        return []
    top = ref.base if ref.length == 0 else ref.base.children[ref.first_char]
    m = len(pattern)
    out = []
    stack = [top]
    while stack:
        node = stack.pop()
        for k, i, depth in node.witnesses:
            if depth >= m:
                out.append((k, i))
        stack.extend(node.children.values())
    out.sort()
    return out
