"""Semi-dynamic rooted trees with nearest-marked-ancestor queries.

Each node owns an ``open`` and a ``close`` token in an order-maintenance
list (an Euler tour of the tree).  Ancestor tests and preorder comparisons
reduce to comparing integer labels.  Marked nodes live in a treap keyed by
their open token and augmented with the subtree element of maximal close
token; the nearest marked ancestor of ``v`` is the rightmost marked node
whose open precedes ``open(v)`` and whose close follows ``close(v)``.

Labels are renumbered by the order-maintenance list from time to time, but
renumbering never changes relative order, so the treap stays valid.
"""
from __future__ import annotations

import random
import warnings

# labels are Python ints, so a wide universe is cheap and relabels rarely
_LABEL_BITS = 256
_UNIVERSE = 1 << _LABEL_BITS
_DENSITY_BASE = 1.6


class _Token:
    __slots__ = ("label", "prev", "next")

    def __init__(self, label, prev, next):
        self.label = label
        self.prev = prev
        self.next = next


class OrderList:
    """Order-maintenance list with amortized O(log n) relabeling."""

    def __init__(self):
        self.head = _Token(0, None, None)
        self.size = 0
        self.relabels = 0

    def insert_after(self, tok: _Token) -> _Token:
        nxt = tok.next
        hi = nxt.label if nxt is not None else _UNIVERSE
        new = _Token(None, tok, nxt)
        tok.next = new
        if nxt is not None:
            nxt.prev = new
        self.size += 1
        if hi - tok.label >= 2:
            new.label = tok.label + (hi - tok.label) // 2
        else:
            self._relabel(new, tok.label)
        return new

    def insert_before(self, tok: _Token) -> _Token:
        return self.insert_after(tok.prev)

    def _relabel(self, new: _Token, anchor: int):
        # Grow an aligned window around the anchor until it is sparse enough,
        # then spread the window's tokens evenly.
        lo = hi = new
        count = 1
        i = 0
        while True:
            i += 1
            size = 1 << i
            base = anchor & ~(size - 1)
            while lo.prev is not None and lo.prev.label is not None and lo.prev.label >= base and lo.prev is not self.head:
                lo = lo.prev
                count += 1
            while hi.next is not None and hi.next.label < base + size:
                hi = hi.next
                count += 1
            if i >= _LABEL_BITS or count < size / _DENSITY_BASE**i:
                break
        if base == 0:
            base, size = 1, size - 1
        gap = size // (count + 1)
        if gap == 0:
            raise OverflowError("order-maintenance label space exhausted")
        tok, label = lo, base + gap
        while True:
            tok.label = label
            self.relabels += 1
            if tok is hi:
                break
            tok = tok.next
            label += gap


class DTNode:
    __slots__ = ("parent", "open", "close", "marked", "payload", "_tnode")

    def __init__(self, parent, open_tok, close_tok, payload=None):
        self.parent = parent
        self.open = open_tok
        self.close = close_tok
        self.marked = False
        self.payload = payload
        self._tnode = None

    def __repr__(self):
        return f"DTNode({self.payload!r})"


class _TNode:
    __slots__ = ("key", "prio", "left", "right", "mx")

    def __init__(self, key, prio):
        self.key = key
        self.prio = prio
        self.left = None
        self.right = None
        self.mx = key


def _pull(t: _TNode):
    best = t.key
    if t.left is not None and t.left.mx.close.label > best.close.label:
        best = t.left.mx
    if t.right is not None and t.right.mx.close.label > best.close.label:
        best = t.right.mx
    t.mx = best


def _split(t, label):
    """Split into (open < label, open >= label)."""
    if t is None:
        return None, None
    if t.key.open.label < label:
        a, b = _split(t.right, label)
        t.right = a
        _pull(t)
        return t, b
    a, b = _split(t.left, label)
    t.left = b
    _pull(t)
    return a, t


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.prio > b.prio:
        a.right = _merge(a.right, b)
        _pull(a)
        return a
    b.left = _merge(a, b.left)
    _pull(b)
    return b


def _rightmost_covering(t, close_label):
    # every element of t already satisfies the open constraint
    while t is not None:
        if t.right is not None and t.right.mx.close.label > close_label:
            t = t.right
        elif t.key.close.label > close_label:
            return t.key
        elif t.left is not None and t.left.mx.close.label > close_label:
            t = t.left
        else:
            return None
    return None


def _query(t, open_label, close_label):
    if t is None:
        return None
    if t.key.open.label >= open_label:
        return _query(t.left, open_label, close_label)
    found = _query(t.right, open_label, close_label)
    if found is not None:
        return found
    if t.key.close.label > close_label:
        return t.key
    if t.left is not None and t.left.mx.close.label > close_label:
        return _rightmost_covering(t.left, close_label)
    return None


class MarkSet:
    """A set of marked nodes of one DynTree, answering NMA queries."""

    def __init__(self, tree: DynTree, seed: int = 0):
        self.tree = tree
        self._root = None
        self._members: dict[int, _TNode] = {}
        self._rng = random.Random(seed)
        self.queries = 0

    def __contains__(self, v: DTNode) -> bool:
        return id(v) in self._members

    def __len__(self):
        return len(self._members)

    def add(self, v: DTNode) -> bool:
        if id(v) in self._members:
            return False
        node = _TNode(v, self._rng.random())
        self._members[id(v)] = node
        # descend to the insertion point by priority, then split what hangs there
        key, close = v.open.label, v.close.label
        parent, left_side = None, False
        t = self._root
        while t is not None and t.prio > node.prio:
            if close > t.mx.close.label:
                t.mx = v
            parent = t
            left_side = key < t.key.open.label
            t = t.left if left_side else t.right
        node.left, node.right = _split(t, key)
        _pull(node)
        if parent is None:
            self._root = node
        elif left_side:
            parent.left = node
        else:
            parent.right = node
        return True

    def discard(self, v: DTNode) -> bool:
        if id(v) not in self._members:
            return False
        del self._members[id(v)]
        a, b = _split(self._root, v.open.label)
        mid, c = _split(b, v.open.label + 1)
        self._root = _merge(a, c)
        return True

    def nearest(self, v: DTNode, inclusive: bool = True) -> DTNode | None:
        self.queries += 1
        if inclusive and id(v) in self._members:
            return v
        return _query(self._root, v.open.label, v.close.label)


class DynTree:
    """Rooted tree supporting leaf insertion, edge subdivision and NMA."""

    def __init__(self, root_marked: bool = False, root_payload=None):
        self.order = OrderList()
        open_tok = self.order.insert_after(self.order.head)
        close_tok = self.order.insert_after(open_tok)
        self.root = DTNode(None, open_tok, close_tok, root_payload)
        self.size = 1
        self.marks = MarkSet(self)
        if root_marked:
            self.mark(self.root)

    def insert_leaf(self, parent: DTNode, payload=None) -> DTNode:
        """New last child of ``parent``."""
        if parent is None:
            raise ValueError("parent handle required")
        open_tok = self.order.insert_before(parent.close)
        close_tok = self.order.insert_after(open_tok)
        self.size += 1
        return DTNode(parent, open_tok, close_tok, payload)

    def insert_on_edge(self, child: DTNode, payload=None) -> DTNode:
        """New node between ``child`` and its parent."""
        if child.parent is None:
            raise ValueError("cannot subdivide above the root")
        open_tok = self.order.insert_before(child.open)
        close_tok = self.order.insert_after(child.close)
        node = DTNode(child.parent, open_tok, close_tok, payload)
        child.parent = node
        self.size += 1
        return node

    def mark(self, v: DTNode):
        if v.marked:
            warnings.warn("node is already marked", RuntimeWarning, stacklevel=2)
            return
        v.marked = True
        self.marks.add(v)

    def nma(self, v: DTNode, inclusive: bool = True) -> DTNode | None:
        return self.marks.nearest(v, inclusive)

    @staticmethod
    def is_ancestor(u: DTNode, v: DTNode) -> bool:
        """True when u is an ancestor of v or u is v."""
        return u.open.label <= v.open.label and v.close.label <= u.close.label

    @staticmethod
    def preorder_cmp(u: DTNode, v: DTNode) -> int:
        a, b = u.open.label, v.open.label
        return (a > b) - (a < b)

    @staticmethod
    def depth(v: DTNode) -> int:
        d = 0
        while v.parent is not None:
            v = v.parent
            d += 1
        return d
