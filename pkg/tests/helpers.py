"""Shared strategies and small builders for the test suite."""
from hypothesis import strategies as st

from fullyonline.core import UpdateOp
from fullyonline.index import FullyOnlineIndex


@st.composite
def op_sequences(draw, max_size=60, max_texts=3, alphabet="abc"):
    n = draw(st.integers(0, max_size))
    ops, opened = [], 0
    for _ in range(n):
        k = draw(st.integers(1, min(max_texts, opened + 1)))
        opened = max(opened, k)
        ops.append(UpdateOp(k, draw(st.sampled_from(alphabet))))
    return ops


def build(ops, oracle="checked", finalize=False):
    index = FullyOnlineIndex(oracle=oracle).extend_all(ops)
    if finalize:
        index.finalize()
    return index


def st_node_for(index, s):
    """The explicit suffix-tree node spelling s, or None."""
    node = index.stree.root
    pos = 0
    while pos < len(s):
        child = node.children.get(s[pos])
        if child is None or child.lazy:
            return None
        edge = index.stree.edge_string(child)
        if not s.startswith(edge, pos):
            return None
        pos += len(edge)
        node = child
    return node if pos == len(s) else None
