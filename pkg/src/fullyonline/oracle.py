"""Suffix tree oracle: nearest ancestor with a reversed suffix link on b.

``query(v, b)`` returns the deepest ancestor ``u`` of ``v`` (``v`` included)
whose ``rslinks`` map has an entry for ``b``.  Two implementations:

* :class:`WalkupOracle` walks parent pointers.  It is the baseline.
* :class:`SuffixTreeOracle` is the heavy/light scheme.  Light trees are
  small (total weight below ``2 * sigma_cap``, weight = leaves + rslinks) and
  are searched through per-character lists kept in preorder.  Heavy nodes
  form an upward-closed subtree whose non-branching chains are contracted
  into the edges of an induced tree.  Each induced edge keeps, per character,
  its nodes carrying that rslink sorted by string depth, and the induced
  tree supports per-character nearest-marked-ancestor queries.
"""
from __future__ import annotations

from bisect import bisect_right, insort

from .dyntree import DynTree, MarkSet


def _depth(node) -> int:
    return node.depth


def _open(node) -> int:
    return node.dt.open.label


class WalkupOracle:
    """Parent-walk oracle; every hook except ``query`` is a no-op."""

    name = "walkup"

    def __init__(self, root):
        self.root = root
        self.queries = 0
        self.steps = 0

    def query(self, v, b):
        self.queries += 1
        while v is not None:
            self.steps += 1
            if b in v.rslinks:
                return v
            v = v.parent
        return None

    def insert_leaf(self, leaf):
        pass

    def insert_internal(self, node):
        pass

    def insert_rslink(self, u, b, target):
        pass

    def ensure_sigma(self, sigma: int):
        pass

    def counters(self) -> dict:
        return {"queries": self.queries, "walk_steps": self.steps}

    def dump(self) -> dict:
        return {"kind": "walkup", **self.counters()}


class LightTree:
    __slots__ = ("root", "weight", "sets")

    def __init__(self, root):
        self.root = root
        self.weight = 0
        self.sets: dict[str, list] = {}


class InducedEdge:
    """Chain of heavy nodes ending at an induced node ``bottom``."""

    __slots__ = ("bottom", "dt", "count", "lists")

    def __init__(self, bottom):
        self.bottom = bottom
        self.dt = None
        self.count = 0
        self.lists: dict[str, list] = {}


class SuffixTreeOracle:
    name = "full"

    def __init__(self, root, sigma_cap: int = 1):
        self.root = root
        self.sigma_cap = sigma_cap
        # mirrors the suffix tree; used for preorder and ancestor tests
        self.dtree = DynTree(root_payload=root)
        root.dt = self.dtree.root
        self.itree = DynTree()
        self.nma: dict[str, MarkSet] = {}
        self.queries = 0
        self.light_scan = 0
        self.promotions = {"a": 0, "b": 0, "c": 0, "root": 0}
        self.redirected = 0
        self.retained = 0
        self.rebuilds = 0
        self.rebuild_work = 0
        self.promote_work = 0
        self._fresh_light(root)

    # -- queries --------------------------------------------------------------

    def query(self, v, b):
        self.queries += 1
        if not v.heavy:
            lt = v.lt
            lst = lt.sets.get(b)
            if lst:
                label = v.dt.open.label
                close = v.dt.close.label
                j = bisect_right(lst, label, key=_open) - 1
                while j >= 0:
                    self.light_scan += 1
                    c = lst[j].dt
                    if c.close.label >= close:
                        return lst[j]
                    j -= 1
            v = lt.root.parent
            if v is None:
                return None
        e = v.edge
        lst = e.lists.get(b)
        if lst:
            j = bisect_right(lst, v.depth, key=_depth)
            if j:
                return lst[j - 1]
        ms = self.nma.get(b)
        if ms is None:
            return None
        f = ms.nearest(e.dt.parent)
        if f is None:
            return None
        return f.payload.lists[b][-1]

    # -- updates --------------------------------------------------------------

    def insert_leaf(self, leaf):
        parent = leaf.parent
        leaf.dt = self.dtree.insert_leaf(parent.dt, leaf)
        leaf.heavy = False
        if parent.heavy:
            lt = LightTree(leaf)
        else:
            lt = parent.lt
            if len(parent.children) == 1:
                # the parent was a childless root and already weighed as a leaf
                leaf.lt = lt
                return
        leaf.lt = lt
        lt.weight += 1
        if lt.weight >= 2 * self.sigma_cap:
            self._promote(lt)

    def insert_internal(self, node):
        """``node`` was inserted on the edge above its only child."""
        (child,) = node.children.values()
        node.dt = self.dtree.insert_on_edge(child.dt, node)
        if child.heavy:
            node.heavy = True
            node.lt = None
            node.edge = child.edge
            node.edge.count += 1
        else:
            node.heavy = False
            node.lt = child.lt
            if node.parent.heavy:
                child.lt.root = node

    def insert_rslink(self, u, b, target):
        if u.heavy:
            e = u.edge
            lst = e.lists.get(b)
            if lst is None:
                e.lists[b] = [u]
                self._nma(b).add(e.dt)
            else:
                insort(lst, u, key=_depth)
        else:
            lt = u.lt
            lst = lt.sets.get(b)
            if lst is None:
                lt.sets[b] = [u]
            else:
                insort(lst, u, key=_open)
            lt.weight += 1
            if lt.weight >= 2 * self.sigma_cap:
                self._promote(lt)

    def ensure_sigma(self, sigma: int):
        if sigma > self.sigma_cap:
            cap = self.sigma_cap
            while cap < sigma:
                cap *= 2
            self.rebuild_for_alphabet(cap)

    # -- internals ------------------------------------------------------------

    def _nma(self, b) -> MarkSet:
        ms = self.nma.get(b)
        if ms is None:
            ms = self.nma[b] = MarkSet(self.itree)
        return ms

    def _fresh_light(self, root) -> LightTree:
        """Make the subtree of ``root`` one light tree and rebuild its sets."""
        lt = LightTree(root)
        members = []
        stack = [root]
        while stack:
            x = stack.pop()
            x.heavy = False
            x.lt = lt
            x.edge = None
            if not x.children:
                lt.weight += 1
            if x.rslinks:
                lt.weight += len(x.rslinks)
                members.append(x)
            stack.extend(x.children.values())
        members.sort(key=_open)
        for x in members:
            for b in x.rslinks:
                lt.sets.setdefault(b, []).append(x)
        return lt

    def _add_to_edge(self, e: InducedEdge, chain):
        """Append heavy nodes, deeper than any node already on ``e``."""
        for s in chain:
            s.heavy = True
            s.lt = None
            s.edge = e
            e.count += 1
            for b in s.rslinks:
                lst = e.lists.get(b)
                if lst is None:
                    e.lists[b] = [s]
                    self._nma(b).add(e.dt)
                else:
                    lst.append(s)

    def _new_edge(self, parent_dt, chain) -> InducedEdge:
        e = InducedEdge(chain[-1])
        e.dt = self.itree.insert_leaf(parent_dt, e)
        self._add_to_edge(e, chain)
        return e

    def _promote(self, lt: LightTree):
        sigma = self.sigma_cap
        # subtree weights of the light tree, children before parents
        order = []
        stack = [lt.root]
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(x.children.values())
        self.promote_work += len(order)
        weight = {}
        for x in reversed(order):
            w = len(x.rslinks) + (0 if x.children else 1)
            for c in x.children.values():
                w += weight[id(c)]
            weight[id(x)] = w
        chain = [lt.root]
        x = lt.root
        while True:
            nxt = None
            for key in sorted(x.children):
                c = x.children[key]
                if weight[id(c)] >= sigma:
                    nxt = c
                    break
            if nxt is None:
                break
            chain.append(nxt)
            x = nxt
        on_chain = {id(s) for s in chain}
        for s in chain:
            s.heavy = True
        for s in chain:
            for c in s.children.values():
                if id(c) not in on_chain:
                    self._fresh_light(c)

        p = chain[0].parent
        if p is None:
            self.promotions["root"] += 1
            self._new_edge(self.itree.root, chain)
            return
        ep = p.edge
        if ep.bottom is p:
            has_heavy_child = any(c.heavy and c is not chain[0] for c in p.children.values())
            if has_heavy_child:
                self.promotions["a"] += 1
                self._new_edge(ep.dt, chain)
            else:
                self.promotions["b"] += 1
                ep.bottom = chain[-1]
                self._add_to_edge(ep, chain)
            return
        self.promotions["c"] += 1
        upper_dt = self._split_edge(ep, p)
        self._new_edge(upper_dt, chain)

    def _split_edge(self, ep: InducedEdge, p):
        """Make ``p`` (inside ``ep``) an induced node; returns the upper edge's dt node."""
        # walk both halves in lockstep so the cost is the size of the smaller
        up, low = p, ep.bottom
        upper_nodes, lower_nodes = [], []
        while True:
            if up is None or up.edge is not ep:
                smaller, move_upper = upper_nodes, True
                break
            if low is p:
                smaller, move_upper = lower_nodes, False
                break
            upper_nodes.append(up)
            lower_nodes.append(low)
            up, low = up.parent, low.parent
        self.redirected += len(smaller)
        self.retained += ep.count - len(smaller)

        lower_dt = ep.dt
        upper_dt = self.itree.insert_on_edge(lower_dt)
        ne = InducedEdge(None)
        if move_upper:
            ne.bottom, ne.dt = p, upper_dt
            upper_dt.payload = ne
            upper_e, lower_e = ne, ep
        else:
            ne.bottom, ne.dt = ep.bottom, lower_dt
            lower_dt.payload = ne
            ep.bottom, ep.dt = p, upper_dt
            upper_dt.payload = ep
            upper_e, lower_e = ep, ne
        for s in smaller:
            s.edge = ne
        ne.count = len(smaller)
        ep.count -= len(smaller)

        old_lists = ep.lists
        upper_e.lists, lower_e.lists = {}, {}
        for b, lst in old_lists.items():
            j = bisect_right(lst, p.depth, key=_depth)
            ms = self.nma[b]
            if j:
                upper_e.lists[b] = lst[:j]
                ms.add(upper_dt)
            if j < len(lst):
                lower_e.lists[b] = lst[j:]
            else:
                ms.discard(lower_dt)
        return upper_dt

    def rebuild_for_alphabet(self, new_cap: int):
        """Reclassify every node for a larger alphabet capacity."""
        self.sigma_cap = new_cap
        self.rebuilds += 1
        self.itree = DynTree()
        self.nma = {}
        order = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(x.children.values())
        self.rebuild_work += len(order)
        weight = {}
        for x in reversed(order):
            w = len(x.rslinks) + (0 if x.children else 1)
            for c in x.children.values():
                w += weight[id(c)]
            weight[id(x)] = w
        threshold = 2 * new_cap
        if weight[id(self.root)] < threshold:
            self._fresh_light(self.root)
            return
        pending = [(self.itree.root, self.root)]
        while pending:
            parent_dt, start = pending.pop()
            chain = [start]
            x = start
            while True:
                heavy_children = [c for c in x.children.values() if weight[id(c)] >= threshold]
                if len(heavy_children) != 1:
                    break
                x = heavy_children[0]
                chain.append(x)
            for s in chain:
                for c in s.children.values():
                    if weight[id(c)] < threshold:
                        self._fresh_light(c)
            e = self._new_edge(parent_dt, chain)
            for c in heavy_children:
                pending.append((e.dt, c))

    # -- inspection -----------------------------------------------------------

    def counters(self) -> dict:
        return {
            "queries": self.queries,
            "light_scan": self.light_scan,
            "promotions": dict(self.promotions),
            "redirected": self.redirected,
            "retained": self.retained,
            "rebuilds": self.rebuilds,
            "rebuild_work": self.rebuild_work,
            "promote_work": self.promote_work,
            "sigma_cap": self.sigma_cap,
        }

    def nodes(self):
        stack = [self.root]
        while stack:
            x = stack.pop()
            yield x
            stack.extend(x.children.values())

    def dump(self) -> dict:
        """Heavy/light classification and the induced tree, JSON-ready."""
        light = {}
        heavy = []
        edges = {}
        for x in self.nodes():
            if x.heavy:
                heavy.append(x.ident)
                edges.setdefault(id(x.edge), x.edge)
            else:
                light.setdefault(id(x.lt), x.lt)
        induced = []
        for e in edges.values():
            parent = e.dt.parent.payload
            induced.append({
                "bottom": e.bottom.ident,
                "parent_bottom": None if parent is None else parent.bottom.ident,
                "count": e.count,
                "lowest": {b: lst[-1].ident for b, lst in sorted(e.lists.items())},
            })
        induced.sort(key=lambda d: d["bottom"])
        return {
            "sigma_cap": self.sigma_cap,
            "heavy": sorted(heavy),
            "light_trees": sorted(
                ({"root": lt.root.ident, "weight": lt.weight} for lt in light.values()),
                key=lambda d: d["root"]),
            "induced": induced,
        }

    def check(self) -> list[str]:
        """Recompute weights and the heavy structure from scratch; list problems."""
        problems = []
        nodes = list(self.nodes())
        weight = {}
        for x in reversed(nodes):
            w = len(x.rslinks) + (0 if x.children else 1)
            for c in x.children.values():
                w += weight[id(c)]
            weight[id(x)] = w
        sigma = self.sigma_cap
        lts = {}
        for x in nodes:
            w = weight[id(x)]
            if x.heavy:
                if w < sigma:
                    problems.append(f"heavy node {x.ident} has weight {w} < {sigma}")
                if x.parent is not None and not x.parent.heavy:
                    problems.append(f"heavy node {x.ident} under a light parent")
                e = x.edge
                # every heavy node lies on the chain above its edge's bottom
                y = e.bottom
                while y is not None and y is not x and y.edge is e:
                    y = y.parent
                if y is not x:
                    problems.append(f"heavy node {x.ident} not on its edge's chain")
            else:
                if w >= 2 * sigma:
                    problems.append(f"light node {x.ident} has weight {w} >= {2 * sigma}")
                lts.setdefault(id(x.lt), x.lt)
                if x.parent is not None and not x.parent.heavy and x.parent.lt is not x.lt:
                    problems.append(f"light node {x.ident} not in its parent's light tree")
        for lt in lts.values():
            r = lt.root
            if r.parent is not None and not r.parent.heavy:
                problems.append(f"light root {r.ident} has a light parent")
            if lt.weight != weight[id(r)]:
                problems.append(f"light tree {r.ident} counter {lt.weight} != {weight[id(r)]}")
            for b, lst in lt.sets.items():
                labels = [_open(n) for n in lst]
                if labels != sorted(labels) or any(b not in n.rslinks for n in lst):
                    problems.append(f"light tree {r.ident} set {b!r} is inconsistent")
        for x in nodes:
            if not x.heavy:
                continue
            e = x.edge
            hc = [c for c in x.children.values() if c.heavy]
            is_bottom = e.bottom is x
            if is_bottom != (len(hc) != 1):
                problems.append(f"heavy node {x.ident} has wrong induced-node status")
            for b in x.rslinks:
                if x not in e.lists.get(b, ()):
                    problems.append(f"heavy node {x.ident} missing from its edge list {b!r}")
        return problems


class CheckedOracle:
    """Runs the full oracle and the walk-up baseline side by side."""

    name = "checked"

    def __init__(self, root):
        self.full = SuffixTreeOracle(root)
        self.walk = WalkupOracle(root)
        self.checked = 0
        self.mismatches = 0

    def query(self, v, b):
        got = self.full.query(v, b)
        want = self.walk.query(v, b)
        self.checked += 1
        if got is not want:
            self.mismatches += 1
            raise AssertionError(
                f"oracle mismatch at node {v.ident} on {b!r}: "
                f"{None if got is None else got.ident} != {None if want is None else want.ident}")
        return got

    def insert_leaf(self, leaf):
        self.full.insert_leaf(leaf)

    def insert_internal(self, node):
        self.full.insert_internal(node)

    def insert_rslink(self, u, b, target):
        self.full.insert_rslink(u, b, target)

    def ensure_sigma(self, sigma: int):
        self.full.ensure_sigma(sigma)

    def counters(self) -> dict:
        return {**self.full.counters(), "checked": self.checked, "mismatches": self.mismatches}

    def dump(self) -> dict:
        return self.full.dump()


def make_oracle(kind: str, root):
    if kind == "full":
        return SuffixTreeOracle(root)
    if kind == "walkup":
        return WalkupOracle(root)
    if kind == "checked":
        return CheckedOracle(root)
    raise ValueError(f"unknown oracle {kind!r}")
