"""Generalized suffix tree maintained fully-online.

Leaf edges are lazy: only their first character is known while texts
grow (it is the key under which the leaf hangs).  Internal edges carry full
``(k, i, j)`` labels, meaning ``T_k[i..j]``.  After an update only the
Type-2 suffixes need work: each one adds a new branch under the locus of
its prefix without the new character.  Those loci are chained from the
shortest to the longest through reversed suffix links found by the oracle.
"""
from __future__ import annotations

from .core import TextStore
from .dawg import Dawg, DawgUpdateResult
from .lpt import CanonicalRef, InvariantViolation, Lpt


class STNode:
    __slots__ = ("ident", "depth", "parent", "children", "label", "slink", "rslinks",
                 "leaf", "witnesses", "dt", "heavy", "lt", "edge")

    def __init__(self, ident: int, depth: int | None, parent, label, leaf: bool):
        self.ident = ident
        self.depth = depth  # None for a leaf until finalization
        self.parent = parent
        self.children: dict[str, STNode] = {}
        self.label = label  # (k, i, j) or None for a lazy leaf edge
        self.slink = None
        self.rslinks: dict[str, STNode] = {}
        self.leaf = leaf
        self.witnesses: list[tuple[int, int, int]] = []
        self.dt = None
        self.heavy = False
        self.lt = None
        self.edge = None

    @property
    def is_leaf(self) -> bool:
        return self.leaf

    @property
    def lazy(self) -> bool:
        return self.leaf and self.label is None

    def __repr__(self):
        kind = "leaf" if self.leaf else "node"
        return f"STNode({kind} {self.ident}, depth={self.depth})"


class SuffixTree:
    def __init__(self, store: TextStore, dawg: Dawg, lpt: Lpt, oracle_factory):
        self.store = store
        self.dawg = dawg
        self.lpt = lpt
        self.root = STNode(0, 0, None, None, False)
        self.nodes: list[STNode] = [self.root]
        self.oracle = oracle_factory(self.root)
        self.lpt.link(0, self.root)
        self.finalized = False
        self.leaves_created = 0
        self.internal_created = 0
        self.slinks_set = 0
        self.rslinks_set = 0
        self.remark1 = 0
        self.descent_steps = 0
        self.visits = 0  # nodes touched by Type-2 work
        self.last_visited: list[STNode] = []

    # -- helpers --------------------------------------------------------------

    def _new(self, depth, parent, label, leaf) -> STNode:
        node = STNode(len(self.nodes), depth, parent, label, leaf)
        self.nodes.append(node)
        return node

    def _split(self, parent: STNode, key: str, depth: int, lower_key: str,
               upper_label) -> STNode:
        """Explicit node at string depth ``depth`` on the edge parent -key->."""
        child = parent.children[key]
        mid = self._new(depth, parent, upper_label, False)
        parent.children[key] = mid
        mid.children[lower_key] = child
        child.parent = mid
        if child.label is not None and not child.lazy:
            h, i, j = child.label
            child.label = (h, i + depth - parent.depth, j)
        self.internal_created += 1
        self.oracle.insert_internal(mid)
        return mid

    def _add_leaf(self, parent: STNode, a: str) -> STNode:
        if a in parent.children:
            raise InvariantViolation(
                f"node {parent.ident} already has an {a!r}-child at a Type-2 branch")
        leaf = self._new(None, parent, None, True)
        parent.children[a] = leaf
        self.leaves_created += 1
        self.oracle.insert_leaf(leaf)
        return leaf

    # -- update ---------------------------------------------------------------

    def extend(self, res: DawgUpdateResult):
        self.last_visited = []
        if self.finalized:
            raise InvariantViolation("suffix tree was finalized; no further updates")
        lo, hi = res.type2_range
        ys: dict[int, STNode] = {}
        if lo <= hi:
            self._insert_type2(res, lo, hi, ys)
        self._link_pending(res, ys)

    def _insert_type2(self, res: DawgUpdateResult, lo: int, hi: int, ys: dict):
        k, a = res.text_id, res.ch
        m = res.new_len - 1
        store = self.store
        text = store.texts[k - 1]
        walk = res.walk
        wi = 0
        if lo == 1:
            prev = None
        else:
            prev = self.lpt.locate_explicit(res.stop_node)
            if prev.depth != lo - 2:
                raise InvariantViolation("start locus has the wrong depth")
        visited = self.last_visited
        for L in range(lo, hi + 1):
            ylen = L - 1
            if ylen == 0:
                y = self.root
            else:
                b = text[m - ylen]
                u = self.oracle.query(prev, b)
                if u is None:
                    self.remark1 += 1
                    cur = self.root
                else:
                    cur = u.rslinks[b]
                start = m - ylen  # 0-based start of y in text
                # descend to depth ylen inside a single edge
                d = cur.depth
                if d < ylen:
                    c = text[start + d]
                    child = cur.children[c]
                    self.descent_steps += 1
                    if child.leaf or child.depth > ylen:
                        while walk[wi].max_len < ylen:
                            wi += 1
                        node = walk[wi].node
                        others = [x for x in self.dawg.edges[node] if x != a]
                        if len(others) != 1:
                            raise InvariantViolation(
                                f"branch string of length {ylen} is not a one-way extension")
                        if child.leaf:
                            upper = (k, start + 1 + d, m)
                        else:
                            h, i, _ = child.label
                            upper = (h, i, i + ylen - d - 1)
                        y = self._split(cur, c, ylen, others[0], upper)
                    elif child.depth == ylen:
                        y = child
                    else:
                        raise InvariantViolation("descent crossed an explicit node")
                else:
                    if d != ylen:
                        raise InvariantViolation("oracle answer lies too deep")
                    y = cur
                if y.slink is None:
                    y.slink = prev
                    self.slinks_set += 1
                elif y.slink is not prev:
                    raise InvariantViolation(f"node {y.ident} has an inconsistent suffix link")
                if b not in prev.rslinks:
                    prev.rslinks[b] = y
                    self.rslinks_set += 1
                    self.oracle.insert_rslink(prev, b, y)
            visited.append(y)
            ys[ylen] = y
            self._add_leaf(y, a)
            prev = y
        self.visits += len(visited)

    def _link_pending(self, res: DawgUpdateResult, ys: dict):
        # Walk nodes spell suffixes of the text before the update, like the
        # branch strings in ``ys``; the split node needs an LPT lookup.
        split_node = res.split[1] if res.split is not None else None
        long_len = self.dawg.long_len
        for d in sorted(self.lpt.pending, key=long_len.__getitem__):
            node = None if d == split_node else ys.get(long_len[d])
            if node is None:
                node = self.lpt.locate_explicit(d)
            self.lpt.link(d, node)
        self.lpt.pending = []

    # -- finalization ---------------------------------------------------------

    def finalize(self):
        """Resolve every lazy leaf label and attach (text, start) witnesses."""
        if self.finalized:
            return
        store, dawg = self.store, self.dawg
        for node in self.nodes:
            node.witnesses = []
        for k in range(1, store.num_texts + 1):
            text = store.texts[k - 1]
            n = len(text)
            cls = dawg.act(k)
            base = self.root
            for i in range(n):  # suffix text[i:], 0-based start
                length = n - i
                while length < dawg.min_len(cls):
                    cls = dawg.slink[cls]
                # skip/count down to depth `length`
                while base.depth < length:
                    child = base.children[text[i + base.depth]]
                    if child.leaf or child.depth > length:
                        break
                    base = child
                if base.depth == length:
                    base.witnesses.append((k, i + 1, length))
                else:
                    child = base.children[text[i + base.depth]]
                    if child.leaf and not dawg.edges[cls]:
                        if child.label is None:
                            child.label = (k, i + 1 + base.depth, n)
                            child.depth = length
                        elif child.depth != length:
                            raise InvariantViolation(f"leaf {child.ident} resolved twice")
                    child.witnesses.append((k, i + 1, length))
                base = self.root if base is self.root else base.slink
        for node in self.nodes:
            if node.leaf and node.label is None:
                raise InvariantViolation(f"leaf {node.ident} was never reached")
        self.finalized = True

    # -- inspection -----------------------------------------------------------

    def edge_string(self, node: STNode) -> str | None:
        if node.label is None:
            return None
        h, i, j = node.label
        return self.store.substring(h, i, j)

    def path_string(self, node: STNode) -> str:
        parts = []
        while node.parent is not None:
            parts.append(self.edge_string(node))
            node = node.parent
        return "".join(reversed(parts))

    def key_of(self, node: STNode) -> str:
        for key, child in node.parent.children.items():
            if child is node:
                return key
        raise InvariantViolation("node is not a child of its parent")

    def locus(self, pattern: str) -> tuple[CanonicalRef | None, STNode | None]:
        """Locate ``pattern``; returns (reference, lazy leaf) when it runs into a lazy edge.

        The first result is ``None`` when the pattern does not occur in the
        explicitly labeled part of the tree.
        """
        node = self.root
        pos = 0
        while pos < len(pattern):
            child = node.children.get(pattern[pos])
            if child is None:
                return None, None
            if child.lazy:
                return CanonicalRef(node, pattern[pos], len(pattern) - node.depth), child
            h, i, j = child.label
            edge_len = j - i + 1
            take = min(edge_len, len(pattern) - pos)
            text = self.store.texts[h - 1]
            for t in range(take):
                if text[i - 1 + t] != pattern[pos + t]:
                    return None, None
            pos += take
            if take < edge_len:
                return CanonicalRef(node, pattern[node.depth], pos - node.depth), None
            node = child
        return CanonicalRef(node, None, 0), None

    def counters(self) -> dict:
        return {
            "nodes": len(self.nodes),
            "leaves_created": self.leaves_created,
            "internal_created": self.internal_created,
            "slinks_set": self.slinks_set,
            "rslinks_set": self.rslinks_set,
            "remark1": self.remark1,
            "type2_visits": self.visits,
            "oracle": self.oracle.counters(),
        }

    def to_dot(self) -> str:
        from .dawg import _dot_escape

        lines = ["digraph stree {", "  node [shape=circle];"]
        for node in self.nodes:
            shape = ', shape=box' if node.leaf else ""
            depth = "?" if node.depth is None else node.depth
            lines.append(f'  s{node.ident} [label="{node.ident}:{depth}"{shape}];')
        for node in self.nodes:
            for key in sorted(node.children):
                child = node.children[key]
                if child.lazy:
                    text = _dot_escape(key) + "… (lazy)"
                    style = "dotted"
                else:
                    text = _dot_escape(self.edge_string(child))
                    style = "solid"
                lines.append(f'  s{node.ident} -> s{child.ident} [label="{text}", style={style}];')
        for node in self.nodes:
            if node.slink is not None:
                lines.append(f"  s{node.ident} -> s{node.slink.ident} [style=dashed, color=gray];")
        lines.append("}")
        return "\n".join(lines) + "\n"
