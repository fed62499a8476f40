"""Generalized DAWG maintained under fully-online appends.

Nodes are integer handles into parallel arrays.  Node 0 is the source.
An edge ``u -a-> t`` is primary when ``long_len[t] == long_len[u] + 1``;
the flag is derived from the lengths rather than stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import TextStore

SOURCE = 0


class PreconditionError(ValueError):
    pass


@dataclass
class WalkNode:
    """A node visited by the suffix-link walk, with its member length range."""

    node: int
    min_len: int
    max_len: int


@dataclass
class DawgUpdateResult:
    case: str  # "1a", "1b", "2a" or "2b"
    text_id: int
    ch: str
    new_len: int
    prev_active: int
    new_sink: int | None
    split: tuple[int, int] | None  # (z, w): z keeps the old handle
    lrs_node: int
    lrs_len: int
    stop_node: int | None  # node whose existing a-edge ended the walk
    type2_range: tuple[int, int]  # inclusive; empty when lo > hi
    walk: list[WalkNode] = field(default_factory=list)  # increasing lengths

    @property
    def type2_lengths(self) -> range:
        lo, hi = self.type2_range
        return range(lo, hi + 1)


class Dawg:
    def __init__(self, store: TextStore):
        self.store = store
        self.long_len: list[int] = [0]
        self.slink: list[int | None] = [None]
        self.edges: list[dict[str, int]] = [{}]
        self.slink_children: list[set[int]] = [set()]
        # number of text prefixes T_k[1..j] whose class is this node
        self.end_count: list[int] = [0]
        # (text id, end position) of one occurrence of the longest member
        self.origin: list[tuple[int, int]] = [(0, 0)]
        self.active: list[int] = []
        self.nodes_created = 1
        self.edges_created = 0
        self.slinks_set = 0
        self.edges_redirected = 0
        self.deletions = 0
        self.case_counts = {"1a": 0, "1b": 0, "2a": 0, "2b": 0}

    # -- accessors ---------------------------------------------------------

    def __len__(self):
        return len(self.long_len)

    @property
    def num_edges(self) -> int:
        return sum(len(e) for e in self.edges)

    def act(self, k: int) -> int:
        return self.active[k - 1] if k <= len(self.active) else SOURCE

    def min_len(self, v: int) -> int:
        s = self.slink[v]
        return 0 if s is None else self.long_len[s] + 1

    def is_primary(self, u: int, a: str) -> bool:
        return self.long_len[self.edges[u][a]] == self.long_len[u] + 1

    def out_degree(self, v: int) -> int:
        return len(self.edges[v])

    # -- construction -------------------------------------------------------

    def _new_node(self, long_len: int, origin: tuple[int, int],
                  edges: dict[str, int] | None = None) -> int:
        v = len(self.long_len)
        self.long_len.append(long_len)
        self.origin.append(origin)
        self.slink.append(None)
        self.edges.append({} if edges is None else edges)
        self.slink_children.append(set())
        self.end_count.append(0)
        self.nodes_created += 1
        return v

    def _set_slink(self, v: int, target: int):
        old = self.slink[v]
        if old is not None:
            self.slink_children[old].discard(v)
        self.slink[v] = target
        self.slink_children[target].add(v)
        self.slinks_set += 1

    def _split(self, v: int, a: str, q: int, origin: tuple[int, int]) -> int:
        """Separate the members of q no longer than long(v)+1 into a new node."""
        w = self._new_node(self.long_len[v] + 1, origin, dict(self.edges[q]))
        self.edges_created += len(self.edges[w])
        self._set_slink(w, self.slink[q])
        self._set_slink(q, w)
        x = v
        while x is not None and self.edges[x].get(a) == q:
            self.edges[x][a] = w
            self.edges_redirected += 1
            x = self.slink[x]
        return w

    def extend(self, k: int, a: str) -> DawgUpdateResult:
        """Update after ``a`` was appended to text k (the store already holds it)."""
        while len(self.active) < k:
            self.active.append(SOURCE)
        n = self.store.length(k)
        v = self.active[k - 1]
        if self.long_len[v] != n - 1:
            raise PreconditionError("text store and DAWG are out of step")
        q = self.edges[v].get(a)
        if q is not None:
            if self.long_len[q] == n:
                case, split, w = "1a", None, q
            else:
                case = "1b"
                w = self._split(v, a, q, (k, n))
                split = (q, w)
            self.active[k - 1] = w
            self.end_count[w] += 1
            self.case_counts[case] += 1
            return DawgUpdateResult(case, k, a, n, v, None, split, w, n, None, (n + 1, n))

        s = self._new_node(n, (k, n))
        walk = []
        while v is not None and a not in self.edges[v]:
            self.edges[v][a] = s
            self.edges_created += 1
            walk.append(v)
            v = self.slink[v]
        stop = v
        split = None
        if stop is None:
            case, lrs_node, lrs_len = "2a", SOURCE, 0
        else:
            q = self.edges[stop][a]
            lrs_len = self.long_len[stop] + 1
            if self.long_len[q] == lrs_len:
                case, lrs_node = "2a", q
            else:
                case = "2b"
                lrs_node = self._split(stop, a, q, (k, n))
                split = (q, lrs_node)
        self._set_slink(s, lrs_node)
        self.active[k - 1] = s
        self.end_count[s] += 1
        self.case_counts[case] += 1

        # walk nodes from shortest to longest members, with their length ranges
        ranges = []
        lower = -1 if stop is None else self.long_len[stop]
        for node in reversed(walk):
            ranges.append(WalkNode(node, lower + 1, self.long_len[node]))
            lower = self.long_len[node]
        hi = n
        for wn in ranges:
            # a walk node whose only out-edge is the new one held suffixes that
            # were leaves; those and all longer ones extend implicitly
            if wn.node != SOURCE and len(self.edges[wn.node]) == 1:
                hi = wn.min_len
                break
        return DawgUpdateResult(case, k, a, n, walk[0], s, split, lrs_node, lrs_len,
                                stop, (lrs_len + 1, hi), ranges)

    # -- queries ------------------------------------------------------------

    def lookup(self, pattern: str) -> int | None:
        v = SOURCE
        for ch in pattern:
            v = self.edges[v].get(ch)
            if v is None:
                return None
        return v

    def epos_size(self, v: int) -> int:
        total = 0
        stack = [v]
        while stack:
            u = stack.pop()
            total += self.end_count[u]
            stack.extend(self.slink_children[u])
        return total

    def nodes(self) -> range:
        return range(len(self.long_len))

    def long_string(self, v: int) -> str:
        if v == SOURCE:
            return ""
        h, j = self.origin[v]
        return self.store.substring(h, j - self.long_len[v] + 1, j)

    # -- exports ------------------------------------------------------------

    def export_reverse_suffix_tree(self, prepend_markers: bool = True) -> ReverseTree:
        """The tree of suffix links, labeled with reversed longest members.

        With a unique first character in every text this is the suffix tree
        of the reversed texts.
        """
        if prepend_markers:
            counts = self.store.char_counts
            for k, text in enumerate(self.store.texts, start=1):
                if text and counts[text[0]] != 1:
                    raise PreconditionError(
                        f"text {k} does not start with a unique marker character")
        parent = {v: self.slink[v] for v in self.nodes()}
        label = {v: self.long_string(v)[::-1] for v in self.nodes()}
        return ReverseTree(parent, label)

    def to_dot(self) -> str:
        lines = ["digraph dawg {", "  rankdir=LR;", "  node [shape=circle];"]
        for v in self.nodes():
            lines.append(f'  n{v} [label="{v}:{self.long_len[v]}"];')
        for v in self.nodes():
            for a in sorted(self.edges[v]):
                t = self.edges[v][a]
                style = "bold" if self.is_primary(v, a) else "solid, penwidth=0.5"
                lines.append(f'  n{v} -> n{t} [label="{_dot_escape(a)}", style="{style}"];')
        for v in self.nodes():
            if self.slink[v] is not None:
                lines.append(f"  n{v} -> n{self.slink[v]} [style=dashed, color=gray];")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass
class ReverseTree:
    parent: dict[int, int | None]
    label: dict[int, str]

    def canonical(self) -> set[tuple[str, str | None]]:
        return {
            (self.label[v], None if p is None else self.label[p])
            for v, p in self.parent.items()
        }


def _dot_escape(s: str) -> str:
    out = []
    for ch in s:
        if ch in '"\\':
            out.append("\\" + ch)
        elif not ch.isprintable():
            out.append(f"\\\\x{ord(ch):02X}")
        else:
            out.append(ch)
    return "".join(out)
