"""Longest path tree: the spanning tree of primary DAWG edges.

Every DAWG node appears exactly once, at string depth ``long_len``.  A node
is marked once its DAWG node branches *and* it has been linked to the
suffix-tree node spelling the same string, so every NMA answer carries a
usable link.
"""
from __future__ import annotations

from dataclasses import dataclass

from .dawg import SOURCE, Dawg, DawgUpdateResult
from .dyntree import DynTree


class InvariantViolation(AssertionError):
    pass


@dataclass
class CanonicalRef:
    """Locus named by its lowest explicit ancestor ``base``."""

    base: object  # suffix-tree node
    first_char: str | None
    length: int

    @property
    def explicit(self) -> bool:
        return self.length == 0


class Lpt:
    def __init__(self, dawg: Dawg):
        self.dawg = dawg
        self.store = dawg.store
        self.tree = DynTree(root_payload=SOURCE)
        self.dt = [self.tree.root]
        self.label_in: list[tuple[int, int]] = [(0, 0)]
        self.stree_link: list[object | None] = [None]
        self.nodes_created = 1
        self.pending: list[int] = []

    def __len__(self):
        return len(self.dt)

    def _grow(self, v: int):
        missing = v + 1 - len(self.dt)
        if missing > 0:
            self.dt.extend([None] * missing)
            self.label_in.extend([(0, 0)] * missing)
            self.stree_link.extend([None] * missing)

    def _add(self, v: int, parent: int, label: tuple[int, int]):
        self._grow(v)
        self.dt[v] = self.tree.insert_leaf(self.dt[parent], payload=v)
        self.label_in[v] = label
        self.nodes_created += 1

    def parent(self, v: int) -> int | None:
        p = self.dt[v].parent
        return None if p is None else p.payload

    def is_marked(self, v: int) -> bool:
        return self.dt[v].marked

    def link(self, v: int, st_node):
        self.stree_link[v] = st_node
        self.tree.mark(self.dt[v])

    def apply(self, res: DawgUpdateResult):
        """Insert the new primary edges and collect newly branching nodes."""
        label = (res.text_id, res.new_len)
        if res.new_sink is not None:
            self._add(res.new_sink, res.prev_active, label)
        pending = []
        if res.split is not None:
            w = res.split[1]
            via = res.stop_node if res.new_sink is not None else res.prev_active
            self._add(w, via, label)
            if self.dawg.out_degree(w) >= 2:
                pending.append(w)
        for wn in res.walk:
            if self.dawg.out_degree(wn.node) >= 2 and not self.dt[wn.node].marked:
                pending.append(wn.node)
        self.pending = pending

    def path_char(self, top: int, bottom: int) -> str:
        """First character on the LPT path from ``top`` down to ``bottom``."""
        h, j = self.label_in[bottom]
        start = j - self.dawg.long_len[bottom] + 1
        return self.store.char_at(h, start + self.dawg.long_len[top])

    def locate(self, d: int) -> CanonicalRef:
        """Reference to long(d) on the suffix tree, from its nearest linked ancestor."""
        anc = self.tree.nma(self.dt[d]).payload
        base = self.stree_link[anc]
        if base is None:
            raise InvariantViolation(f"marked LPT node {anc} has no suffix-tree link")
        length = self.dawg.long_len[d] - self.dawg.long_len[anc]
        if length == 0:
            return CanonicalRef(base, None, 0)
        return CanonicalRef(base, self.path_char(anc, d), length)

    def locate_explicit(self, d: int):
        """Suffix-tree node for long(d), which must be explicit."""
        ref = canonicalize(self.locate(d))
        if ref.length:
            raise InvariantViolation(f"long member of DAWG node {d} is not explicit")
        return ref.base

    def locate_longest_type3(self, res: DawgUpdateResult) -> CanonicalRef:
        return canonicalize(self.locate(res.lrs_node))

    def label_for_descent(self, start: int, c: str, length: int,
                          check: bool = False) -> tuple[int, int, int]:
        """Label <h, j, j+length-1> read off the LPT edge leaving ``start`` with c."""
        t = self.dawg.edges[start].get(c)
        if t is None or self.dawg.long_len[t] != self.dawg.long_len[start] + 1:
            raise InvariantViolation(f"LPT node {start} has no out-edge {c!r}")
        h, j = self.label_in[t]
        if check:
            x = t
            for step in range(1, length):
                if self.dawg.out_degree(x) != 1 or j + step > self.store.length(h):
                    raise InvariantViolation("LPT path branches before the requested length")
                x = self.dawg.edges[x][self.store.char_at(h, j + step)]
                if self.dawg.long_len[x] != self.dawg.long_len[start] + step + 1:
                    raise InvariantViolation("LPT path leaves the primary edges")
        return (h, j, j + length - 1)

    def to_dot(self) -> str:
        lines = ["digraph lpt {", "  node [shape=circle];"]
        for v, node in enumerate(self.dt):
            if node is None:
                continue
            fill = ', style=filled, fillcolor=gray' if node.marked else ""
            lines.append(f'  n{v} [label="{v}:{self.dawg.long_len[v]}"{fill}];')
        for v, node in enumerate(self.dt):
            if node is None or node.parent is None:
                continue
            h, j = self.label_in[v]
            ch = self.store.char_at(h, j)
            lines.append(f'  n{node.parent.payload} -> n{v} [label="{_esc(ch)} <{h},{j}>"];')
        for v, st in enumerate(self.stree_link):
            if st is not None:
                lines.append(f'  st{st.ident} [shape=box, label="st{st.ident}:{st.depth}"];')
                lines.append(f'  n{v} -> st{st.ident} [style=dashed];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def canonicalize(ref: CanonicalRef) -> CanonicalRef:
    """Hop over at most one explicit node sitting exactly at the locus."""
    if ref.length == 0:
        return ref
    child = ref.base.children.get(ref.first_char)
    if child is None:
        raise InvariantViolation("reference leaves the tree")
    if child.is_leaf:
        return ref
    edge = child.depth - ref.base.depth
    if edge == ref.length:
        return CanonicalRef(child, None, 0)
    if edge < ref.length:
        raise InvariantViolation("reference crosses an explicit node")
    return ref


def _esc(ch: str) -> str:
    if ch in '"\\' or not ch.isprintable():
        return f"\\\\x{ord(ch):02X}"
    return ch
