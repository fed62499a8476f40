"""Query a collection while it is still growing.

Leaf edges of the suffix tree are lazy: only their first character is
known.  A pattern that runs into one is finished on the DAWG.  Once the
collection is finalized every edge is labeled and occurrences can be listed.

    python demos/live_queries.py
"""
from fullyonline import FullyOnlineIndex, count_occurrences, find_pattern, report_occurrences
from fullyonline.fixtures import FIG1_TEXTS, round_robin_ops

ix = FullyOnlineIndex().extend_all(round_robin_ops(FIG1_TEXTS))
print("texts:", ix.store.as_strings())
for p in ["ab", "bab", "abc", "aab", "ba", "cc"]:
    m = find_pattern(ix, p)
    via = "DAWG fallback" if m.dawg_node is not None else "suffix tree"
    print(f"  {p!r:6s} found={m.found!s:5s} count={count_occurrences(ix, p)}"
          + (f"  ({via})" if m.found else ""))

ix.append(3, "c")  # keep growing after the queries
print("after T3 += 'c':", find_pattern(ix, "abc").found, count_occurrences(ix, "abc"))

ix.finalize()
for p in ["ab", "bc"]:
    print(f"  occurrences of {p!r} (text, start):", report_occurrences(ix, p))
