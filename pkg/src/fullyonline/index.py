"""Lock-step driver for the text store, DAWG, LPT, suffix tree and oracle."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import TextStore, UpdateOp
from .dawg import Dawg, DawgUpdateResult
from .lpt import Lpt
from .oracle import make_oracle
from .stree import SuffixTree


@dataclass
class IndexConfig:
    oracle: str = "full"  # "full", "walkup" or "checked"


class FullyOnlineIndex:
    def __init__(self, config: IndexConfig | None = None, oracle: str | None = None):
        self.config = config or IndexConfig()
        if oracle is not None:
            self.config.oracle = oracle
        self.store = TextStore()
        self.dawg = Dawg(self.store)
        self.lpt = Lpt(self.dawg)
        kind = self.config.oracle
        self.stree = SuffixTree(self.store, self.dawg, self.lpt,
                                lambda root: make_oracle(kind, root))
        self.steps = 0

    @property
    def oracle(self):
        return self.stree.oracle

    def append(self, k: int, ch: str) -> DawgUpdateResult:
        return self.apply(UpdateOp(k, ch))

    def apply(self, op: UpdateOp) -> DawgUpdateResult:
        self.store.append(op)
        self.oracle.ensure_sigma(self.store.sigma)
        res = self.dawg.extend(op.text_id, op.ch)
        self.lpt.apply(res)
        self.stree.extend(res)
        self.steps += 1
        return res

    def extend_all(self, ops: Iterable[UpdateOp]):
        for op in ops:
            self.apply(op)
        return self

    def finalize(self):
        self.stree.finalize()
        return self

    def created_breakdown(self) -> dict:
        """Nodes, edges and suffix links created, per structure.

        Reversed suffix links of the suffix tree are listed separately; they
        mirror suffix links and are not counted in the total.
        """
        d, st, lpt = self.dawg, self.stree, self.lpt
        return {
            "dawg": d.nodes_created + d.edges_created + d.slinks_set,
            "lpt": lpt.nodes_created + (len(lpt) - 1),
            "stree": len(st.nodes) + (len(st.nodes) - 1) + st.slinks_set,
            "stree_rslinks": st.rslinks_set,
        }

    def created_total(self) -> int:
        b = self.created_breakdown()
        return b["dawg"] + b["lpt"] + b["stree"]

    def stats(self) -> dict:
        d = self.dawg
        return {
            "N": self.store.total_len,
            "texts": self.store.num_texts,
            "lengths": [len(t) for t in self.store.texts],
            "sigma": self.store.sigma,
            "dawg": {
                "nodes": len(d),
                "edges": d.num_edges,
                "nodes_created": d.nodes_created,
                "edges_created": d.edges_created,
                "slinks_set": d.slinks_set,
                "edges_redirected": d.edges_redirected,
                "deletions": d.deletions,
                "cases": dict(d.case_counts),
            },
            "lpt": {
                "nodes": len(self.lpt),
                "marked": len(self.lpt.tree.marks),
                "nma_queries": self.lpt.tree.marks.queries,
                "relabels": self.lpt.tree.order.relabels,
            },
            "stree": self.stree.counters(),
            "created": self.created_breakdown(),
            "created_total": self.created_total(),
        }


def build(ops: Iterable[UpdateOp], oracle: str = "full", finalize: bool = False) -> FullyOnlineIndex:
    index = FullyOnlineIndex(oracle=oracle).extend_all(ops)
    if finalize:
        index.finalize()
    return index
