"""Brute-force structures and baselines used as correctness oracles.

Everything here favours obviousness over speed.  The O(N^2)-size
constructions refuse inputs above a size guard.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import TextStore, UpdateOp

DEFAULT_GUARD = 3000


class GuardExceeded(ValueError):
    pass


class PreconditionError(ValueError):
    pass


def _guard(texts: Sequence[str], guard: int):
    total = sum(len(t) for t in texts)
    if total > guard:
        raise GuardExceeded(f"total length {total} exceeds the guard {guard}")


def substrings(texts: Sequence[str]) -> set[str]:
    out = {""}
    for t in texts:
        for i in range(len(t)):
            for j in range(i + 1, len(t) + 1):
                out.add(t[i:j])
    return out


def epos_table(texts: Sequence[str], guard: int = DEFAULT_GUARD) -> dict[str, frozenset]:
    """Epos of every substring; the empty string ends at every (k, j), j >= 0."""
    _guard(texts, guard)
    table = defaultdict(set)
    table[""] = set()
    for k, t in enumerate(texts, start=1):
        for j in range(len(t) + 1):
            table[""].add((k, j))
            for i in range(j):
                table[t[i:j]].add((k, j))
    return {x: frozenset(e) for x, e in table.items()}


def right_extensions(texts: Sequence[str]) -> dict[str, set[str]]:
    ext = defaultdict(set)
    for t in texts:
        for i in range(len(t) + 1):
            for j in range(i, len(t)):
                ext[t[i:j]].add(t[j])
    for x in substrings(texts):
        ext.setdefault(x, set())
    return dict(ext)


# -- suffix trie ----------------------------------------------------------------

@dataclass
class TrieNode:
    children: dict[str, str] = field(default_factory=dict)
    slink: str | None = None
    suffix_of: set[int] = field(default_factory=set)


@dataclass
class NaiveTrie:
    nodes: dict[str, TrieNode]

    def __len__(self):
        return len(self.nodes)


def naive_suffix_trie(texts: Sequence[str], guard: int = DEFAULT_GUARD) -> NaiveTrie:
    _guard(texts, guard)
    nodes = {"": TrieNode()}
    for x in substrings(texts):
        nodes.setdefault(x, TrieNode())
    for x, node in nodes.items():
        if x:
            nodes[x[:-1]].children[x[-1]] = x
            node.slink = x[1:]
    for k, t in enumerate(texts, start=1):
        for i in range(len(t) + 1):
            nodes[t[i:]].suffix_of.add(k)
    return NaiveTrie(nodes)


# -- DAWG -----------------------------------------------------------------------

@dataclass
class NaiveDawg:
    """Nodes are named by their longest member."""

    members: dict[str, list[str]]
    edges: dict[str, dict[str, str]]
    slink: dict[str, str | None]
    epos: dict[str, frozenset]

    def __len__(self):
        return len(self.members)

    def canonical(self):
        edges = frozenset(
            (u, a, t, len(t) == len(u) + 1)
            for u, out in self.edges.items() for a, t in out.items())
        return frozenset(self.members), edges, frozenset(self.slink.items())


def naive_dawg(texts: Sequence[str], guard: int = DEFAULT_GUARD) -> NaiveDawg:
    epos = epos_table(texts, guard)
    classes = defaultdict(list)
    for x, e in epos.items():
        classes[e].append(x)
    name = {}
    members = {}
    for group in classes.values():
        group.sort(key=len)
        long = group[-1]
        members[long] = group
        for x in group:
            name[x] = long
    edges = {u: {} for u in members}
    for x in epos:
        if x:
            edges[name[x[:-1]]][x[-1]] = name[x]
    slink = {u: (None if u == "" else name[group[0][1:]]) for u, group in members.items()}
    return NaiveDawg(members, edges, slink, {u: epos[u] for u in members})


def dawg_canonical(dawg) -> tuple:
    """Canonical form of an online Dawg, comparable with NaiveDawg.canonical()."""
    names = {v: dawg.long_string(v) for v in dawg.nodes()}
    edges = frozenset(
        (names[u], a, names[t], dawg.is_primary(u, a))
        for u in dawg.nodes() for a, t in dawg.edges[u].items())
    slinks = frozenset(
        (names[v], None if dawg.slink[v] is None else names[dawg.slink[v]])
        for v in dawg.nodes())
    return frozenset(names.values()), edges, slinks


def dawg_isomorphic(a, b) -> bool:
    ca = a.canonical() if isinstance(a, NaiveDawg) else dawg_canonical(a)
    cb = b.canonical() if isinstance(b, NaiveDawg) else dawg_canonical(b)
    return ca == cb


# -- suffix tree ----------------------------------------------------------------

@dataclass
class NaiveSTree:
    """Nodes are named by their path strings."""

    parent: dict[str, str | None]
    leaf: dict[str, bool]
    slink: dict[str, str | None]

    def __len__(self):
        return len(self.parent)

    def canonical(self):
        return (frozenset((x, p, self.leaf[x]) for x, p in self.parent.items()),
                frozenset(self.slink.items()))


def naive_stree(texts: Sequence[str], guard: int = DEFAULT_GUARD) -> NaiveSTree:
    """Compacted suffix trie without end markers.

    Explicit nodes: the root, branching substrings (two or more right
    extensions) and leaves (substrings with no right extension).
    """
    _guard(texts, guard)
    ext = right_extensions(texts)
    explicit = {x for x, e in ext.items() if len(e) != 1}
    explicit.add("")
    parent, leaf, slink = {}, {}, {}
    for x in explicit:
        leaf[x] = bool(x) and not ext[x]
        if x == "":
            parent[x] = None
        else:
            p = x[:-1]
            while p not in explicit:
                p = p[:-1]
            parent[x] = p
        slink[x] = x[1:] if x and not leaf[x] else None
    return NaiveSTree(parent, leaf, slink)


def stree_canonical(st, full: bool = False):
    """Canonical form of an online SuffixTree.

    Internal nodes are named by their path strings.  Before finalization a
    leaf is named by its parent's string plus its key character, which is
    all a lazy edge records; with ``full`` the leaf's whole string is used.
    """
    names = {}
    stack = [(st.root, "")]
    nodes = []
    while stack:
        node, s = stack.pop()
        names[id(node)] = s
        nodes.append(node)
        for key, child in node.children.items():
            if child.leaf and not full:
                stack.append((child, s + key))
            else:
                stack.append((child, s + st.edge_string(child)))
    entries = frozenset(
        (names[id(n)], None if n.parent is None else names[id(n.parent)], n.leaf) for n in nodes)
    slinks = frozenset(
        (names[id(n)], None if n.slink is None else names[id(n.slink)])
        for n in nodes if not n.leaf)
    return entries, slinks


def naive_stree_canonical(tree: NaiveSTree, full: bool = False):
    entries = set()
    for x, p in tree.parent.items():
        name = x if (full or not tree.leaf[x]) else x[: len(p) + 1]
        entries.add((name, p, tree.leaf[x]))
    slinks = frozenset((x, s) for x, s in tree.slink.items() if not tree.leaf[x])
    return frozenset(entries), slinks


def stree_isomorphic(a, b, full: bool = True) -> bool:
    ca = naive_stree_canonical(a, full) if isinstance(a, NaiveSTree) else stree_canonical(a, full)
    cb = naive_stree_canonical(b, full) if isinstance(b, NaiveSTree) else stree_canonical(b, full)
    return ca == cb


def reverse_tree_canonical(texts: Sequence[str], guard: int = DEFAULT_GUARD):
    """(label, parent label) pairs of the suffix tree of the reversed texts.

    Nodes are all explicit nodes of that tree, including leaves; the form
    matches ``Dawg.export_reverse_suffix_tree().canonical()``.
    """
    tree = naive_stree([t[::-1] for t in texts], guard)
    return {(x, p) for x, p in tree.parent.items()}


# -- incremental substring statistics -------------------------------------------

START = None  # left context of an occurrence at the start of a text
_EMPTY_SIG = -1  # the empty string is its own class


class SubstringTracker:
    """Exact per-substring statistics, updated one appended character at a time.

    For every distinct substring x it keeps the Epos set as a bitmask over
    global step numbers (each end position is created by exactly one step),
    the set of right extensions and the set of left contexts.  Class,
    branching and leaf counts are maintained incrementally, so per-step
    checks never rebuild anything.
    """

    def __init__(self):
        self.texts: list[str] = []
        self.epos: dict[str, int] = {"": _EMPTY_SIG}
        self.rext: dict[str, set] = {"": set()}
        self.lext: dict[str, set] = {"": set()}
        self.sig_count: dict[int, int] = {_EMPTY_SIG: 1}
        self.branching = 0  # nonempty substrings with >= 2 right extensions
        self.leafy = 0  # nonempty substrings with no right extension
        self.step = 0

    @property
    def num_classes(self) -> int:
        return len(self.sig_count)

    def _set_epos(self, x: str, new: int):
        old = self.epos.get(x)
        if old is not None:
            c = self.sig_count[old] - 1
            if c:
                self.sig_count[old] = c
            else:
                del self.sig_count[old]
        self.epos[x] = new
        self.sig_count[new] = self.sig_count.get(new, 0) + 1

    def append(self, k: int, a: str):
        self.step += 1
        bit = 1 << self.step
        if k == len(self.texts) + 1:
            self.texts.append("")
        old = self.texts[k - 1]
        m = len(old)
        rext = self.rext
        for ell in range(m + 1):
            x = old[m - ell:]
            e = rext[x]
            if a not in e:
                e.add(a)
                if x:
                    if len(e) == 1:
                        self.leafy -= 1
                    elif len(e) == 2:
                        self.branching += 1
        new = old + a
        self.texts[k - 1] = new
        n = m + 1
        for ell in range(1, n + 1):
            x = new[n - ell:]
            sig = self.epos.get(x)
            if sig is None:
                rext[x] = set()
                self.lext[x] = set()
                self.leafy += 1
                self._set_epos(x, bit)
            else:
                self._set_epos(x, sig | bit)
            self.lext[x].add(new[n - ell - 1] if ell < n else START)

    def is_longest(self, x: str) -> bool:
        """True when no single-character left extension keeps the Epos."""
        if x == "":
            return True
        e = self.lext[x]
        return len(e) >= 2 or START in e


# -- semi-online Ukkonen --------------------------------------------------------

class UkNode:
    __slots__ = ("start", "end", "text", "children", "slink", "leaf")

    def __init__(self, text, start, end, leaf):
        self.text = text  # text id the label points into
        self.start = start  # 0-based start of the in-edge label
        self.end = end  # exclusive end, None for an open edge
        self.children: dict[str, UkNode] = {}
        self.slink = None
        self.leaf = leaf


class SemiOnlineUkkonen:
    """Ukkonen's algorithm extended to texts built one after another.

    Each text must be finished before the next one starts and must end with
    a character that occurs nowhere else, so the active point is back at the
    root whenever a new text begins.  Leaf edges are open: their end is the
    current length of the text they point into.
    """

    def __init__(self):
        self.texts: list[list[str]] = []
        self.root = UkNode(0, 0, 0, False)
        self.current = 0
        self.node = self.root
        self.edge = 0  # position in the current text of the active edge's first char
        self.length = 0
        self.remainder = 0
        self.hops = 0
        # (active length at a leaf insertion, hops spent reaching it) per leaf
        self.leaf_trace: list[list[tuple[int, int]]] = []

    def _edge_len(self, child: UkNode) -> int:
        end = len(self.texts[child.text - 1]) if child.end is None else child.end
        return end - child.start

    def append(self, k: int, a: str):
        if k != self.current:
            if k != self.current + 1:
                raise PreconditionError(f"text {k} started out of order")
            if self.remainder:
                raise PreconditionError(f"text {self.current} did not end with a unique marker")
            self.texts.append([])
            self.current = k
            self.node, self.length = self.root, 0
        text = self.texts[k - 1]
        text.append(a)
        pos = len(text) - 1
        self.remainder += 1
        last_new = None
        trace = []
        hops = 0
        while self.remainder:
            if self.length == 0:
                self.edge = pos
            child = self.node.children.get(text[self.edge])
            if child is None:
                self.node.children[text[self.edge]] = UkNode(k, pos, None, True)
                trace.append((self.length, hops))
                hops = 0
                if last_new is not None:
                    last_new.slink = self.node
                    last_new = None
            else:
                el = self._edge_len(child)
                if self.length >= el:
                    self.node = child
                    self.edge += el
                    self.length -= el
                    hops += 1
                    self.hops += 1
                    continue
                if self.texts[child.text - 1][child.start + self.length] == a:
                    if last_new is not None and self.node is not self.root:
                        last_new.slink = self.node
                    self.length += 1
                    break
                mid = UkNode(child.text, child.start, child.start + self.length, False)
                self.node.children[text[self.edge]] = mid
                child.start += self.length
                mid.children[self.texts[child.text - 1][child.start]] = child
                mid.children[a] = UkNode(k, pos, None, True)
                trace.append((self.length, hops))
                hops = 0
                if last_new is not None:
                    last_new.slink = mid
                last_new = mid
            self.remainder -= 1
            if self.node is self.root and self.length > 0:
                self.length -= 1
                self.edge = pos - self.remainder + 1
            elif self.node is not self.root:
                self.node = self.node.slink if self.node.slink is not None else self.root
        self.leaf_trace.append(trace)

    def canonical(self, full: bool = True):
        """Same shape as ``stree_canonical`` on the online tree."""
        entries = set()
        slinks = set()
        names = {}
        stack = [(self.root, None, "")]
        while stack:
            node, parent, s = stack.pop()
            names[id(node)] = s
            entries.add((s, parent, node.leaf))
            for key, child in node.children.items():
                end = len(self.texts[child.text - 1]) if child.end is None else child.end
                label = "".join(self.texts[child.text - 1][child.start:end])
                if child.leaf and not full:
                    label = key
                stack.append((child, s, s + label))
        stack = [self.root]
        while stack:
            node = stack.pop()
            if not node.leaf:
                slinks.add((names[id(node)],
                            None if node is self.root else names[id(node.slink or self.root)]))
            stack.extend(node.children.values())
        return frozenset(entries), frozenset(slinks)


def check_semi_online(ops: Sequence[UpdateOp]):
    """Raise PreconditionError unless texts are built one after another with end markers."""
    current = 0
    for op in ops:
        if op.text_id != current:
            if op.text_id != current + 1:
                raise PreconditionError(f"text {op.text_id} started out of order")
            current = op.text_id
    store = TextStore()
    for op in ops:
        store.append(op)
    for k, t in enumerate(store.as_strings(), start=1):
        if not t or store.char_counts[t[-1]] != 1:
            raise PreconditionError(f"text {k} does not end with a unique end marker")


def semi_online_ukkonen(ops: Iterable[UpdateOp]) -> SemiOnlineUkkonen:
    ops = list(ops)
    check_semi_online(ops)
    tree = SemiOnlineUkkonen()
    for op in ops:
        tree.append(op.text_id, op.ch)
    return tree


def naive_occurrences(texts: Sequence[str], pattern: str) -> list[tuple[int, int]]:
    """Every (text id, 1-based start) of ``pattern``, by scanning each text."""
    out = []
    for k, t in enumerate(texts, start=1):
        if not pattern:
            out.extend((k, i + 1) for i in range(len(t)))
            continue
        i = t.find(pattern)
        while i >= 0:
            out.append((k, i + 1))
            i = t.find(pattern, i + 1)
    return out
