"""Named update sequences used by the CLI ``verify`` command and the tests.

Each fixture is a list of :class:`UpdateOp`.  Collections given as finished
texts are fed text by text, with one extra update at the end when the
example is about a single step.
"""
from __future__ import annotations

from .core import UpdateOp


def texts_ops(texts: list[str]) -> list[UpdateOp]:
    """Feed the texts one after another (a semi-online order)."""
    return [UpdateOp(k, ch) for k, t in enumerate(texts, start=1) for ch in t]


def round_robin_ops(texts: list[str]) -> list[UpdateOp]:
    """Interleave the texts one character at a time."""
    ops = []
    for i in range(max(map(len, texts), default=0)):
        for k, t in enumerate(texts, start=1):
            if i < len(t):
                ops.append(UpdateOp(k, t[i]))
    return ops


def pairs(seq: list[tuple[int, str]]) -> list[UpdateOp]:
    return [UpdateOp(k, a) for k, a in seq]


FIG1_TEXTS = ["aaab", "ababc", "bab"]

# the 15-update fully-online example: ends with texts ``aaabc``, ``babc``, ``acbcbb``
SECTION2_OPS = pairs([(1, "a"), (2, "b"), (2, "a"), (3, "a"), (1, "a"), (3, "c"), (3, "b"),
                      (2, "b"), (1, "a"), (1, "b"), (3, "c"), (3, "b"), (1, "c"), (3, "b"),
                      (2, "c")])

# two texts; the 8th update leaves T_1's active point at the root
FIG6_OPS = pairs([(1, "a"), (1, "b"), (2, "b"), (1, "a"), (2, "a"), (1, "b"), (1, "c"),
                  (2, "b"), (2, "c"), (2, "d")])

# {abab, aaab}, then b appended to T_1: a split of the class of "b"
FIG4_OPS = texts_ops(["abab", "aaab"]) + [UpdateOp(1, "b")]

# {aaab, ababc, ab}, then c appended to T_1: NMA from "abc" answers "ab"
FIG7_OPS = texts_ops(["aaab", "ababc", "ab"]) + [UpdateOp(1, "c")]

# {abab, aaab, ababc}, then d appended to T_1: branch "bab" splits the edge
# below "b", labeled <3,3,4>.  T_3 spells "aba" first, so the LPT edge into
# the class of "aba" carries <3,3>.
FIG8_OPS = pairs([(1, "a"), (2, "a"), (3, "a"), (3, "b"), (3, "a"), (1, "b"), (1, "a"),
                  (1, "b"), (2, "a"), (2, "a"), (2, "b"), (3, "b"), (3, "c"), (1, "d")])

# same collection as FIG4; the suffix tree installs root -b-> b and b -a-> ab
FIG9_OPS = FIG4_OPS

FIXTURES: dict[str, list[UpdateOp]] = {
    "fig1": round_robin_ops(FIG1_TEXTS),
    "fig4": FIG4_OPS,
    "fig6": FIG6_OPS,
    "fig7": FIG7_OPS,
    "fig8": FIG8_OPS,
    "fig9": FIG9_OPS,
    "section2": SECTION2_OPS,
    "round-robin": round_robin_ops(["a" * 100] * 3),
    "round-robin-ab": round_robin_ops(["ab" * 40, "ab" * 40, "ba" * 40]),
}
