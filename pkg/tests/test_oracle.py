import random

import pytest

from fullyonline.core import UpdateOp
from fullyonline.fixtures import FIG9_OPS
from fullyonline.oracle import CheckedOracle, SuffixTreeOracle, WalkupOracle, make_oracle
from fullyonline.stree import STNode
from fullyonline.verify import random_ops

from helpers import build


def record_queries(ix):
    """Wrap the index's oracle so every query and its answer is logged."""
    log = []
    oracle = ix.stree.oracle
    inner = oracle.query

    def query(v, b):
        u = inner(v, b)
        log.append((v, b, u))
        return u

    oracle.query = query
    return log


def test_fig9_query_finds_node_a():
    ix = build(FIG9_OPS[:-1], oracle="full")
    log = record_queries(ix)
    before = ix.stree.remark1
    ix.apply(FIG9_OPS[-1])  # (1, b) on {abab, aaab}
    st = ix.stree
    # Type-2 suffixes bb then abb: the first falls back to the root's b-edge
    assert len(log) == 2
    v, b, u = log[0]
    assert v is st.root and b == "b" and u is None
    assert st.remark1 == before + 1
    v, b, u = log[1]
    assert st.path_string(v) == "b" and b == "a"
    assert st.path_string(u.rslinks["a"]) == "a"


class Tree:
    """A hand-driven suffix-tree shape, just enough for the oracle hooks."""

    def __init__(self, oracle_cls=SuffixTreeOracle, **kw):
        self.root = STNode(0, 0, None, None, False)
        self.nodes = [self.root]
        self.oracle = oracle_cls(self.root, **kw)

    def leaf(self, parent, key):
        x = STNode(len(self.nodes), None, parent, None, True)
        self.nodes.append(x)
        parent.children[key] = x
        self.oracle.insert_leaf(x)
        return x

    def rslink(self, u, b):
        u.rslinks[b] = self.root  # target is irrelevant to the oracle
        self.oracle.insert_rslink(u, b, self.root)


def test_bare_root_query_is_absent():
    t = Tree()
    assert t.oracle.query(t.root, "a") is None


def test_first_root_rslink_enters_light_set():
    t = Tree(sigma_cap=4)
    t.leaf(t.root, "a")
    t.rslink(t.root, "b")
    assert not t.root.heavy
    assert t.root.lt.sets["b"] == [t.root]
    assert t.oracle.query(t.root, "b") is t.root
    assert t.oracle.check() == []


def test_promotion_fires_once_at_threshold():
    t = Tree(sigma_cap=2)
    for key in "abc":
        t.leaf(t.root, key)
    assert t.root.lt.weight == 3 and sum(t.oracle.promotions.values()) == 0
    t.leaf(t.root, "d")  # weight reaches 2 * sigma
    assert sum(t.oracle.promotions.values()) == 1
    assert t.root.heavy
    assert t.oracle.check() == []


def test_make_oracle_kinds():
    root = STNode(0, 0, None, None, False)
    assert isinstance(make_oracle("walkup", root), WalkupOracle)
    with pytest.raises(ValueError):
        make_oracle("nope", root)


@pytest.mark.parametrize("sigma", [2, 4, 26])
def test_agrees_with_walkup_on_every_query(sigma):
    ix = build(random_ops(1000, 3, sigma, seed=sigma), oracle="checked")
    oracle = ix.stree.oracle
    assert isinstance(oracle, CheckedOracle)
    assert oracle.checked > 0 and oracle.mismatches == 0
    assert oracle.full.check() == []


@pytest.mark.parametrize("seed", range(6))
def test_structure_recomputed_each_step(seed):
    sigma = (1, 2, 3, 5, 8, 26)[seed]
    ix = build([], oracle="full")
    for op in random_ops(250, 3, sigma, seed):
        ix.apply(op)
        assert ix.stree.oracle.check() == []


def test_take_the_smaller_and_all_cases():
    promotions = {"a": 0, "b": 0, "c": 0, "root": 0}
    splits = 0
    for seed in range(30):
        ix = build([], oracle="full")
        oracle = ix.stree.oracle
        inner = oracle._split_edge

        def split(ep, p, inner=inner, oracle=oracle):
            nonlocal splits
            r0, k0 = oracle.redirected, oracle.retained
            out = inner(ep, p)
            assert oracle.redirected - r0 <= oracle.retained - k0
            splits += 1
            return out

        oracle._split_edge = split
        ix.extend_all(random_ops(300, 1 + seed % 3, 2 + seed % 4, seed))
        for k, v in oracle.promotions.items():
            promotions[k] += v
    assert all(v > 0 for v in promotions.values()), promotions
    assert splits == promotions["c"]


def test_rebuild_doubles_and_keeps_answers():
    ix = build(random_ops(400, 2, 2, seed=5), oracle="full")
    oracle = ix.stree.oracle
    assert oracle.sigma_cap == 2
    rng = random.Random(0)
    nodes = ix.stree.nodes
    sample = [(rng.choice(nodes), rng.choice("ab")) for _ in range(1000)]
    walk = WalkupOracle(ix.stree.root)
    before = [oracle.query(v, b) for v, b in sample]
    assert before == [walk.query(v, b) for v, b in sample]
    ix.apply(UpdateOp(1, "c"))  # a third character doubles the capacity
    assert oracle.sigma_cap == 4 and oracle.rebuilds >= 1
    assert oracle.check() == []
    assert [oracle.query(v, b) for v, b in sample] == [walk.query(v, b) for v, b in sample]


def test_rebuild_work_is_linear():
    # every new character is fresh for a while: capacity doubles log-many times
    ops = [UpdateOp(1 + i % 2, chr(0x100 + (i if i < 64 else i % 64))) for i in range(2000)]
    ix = build(ops, oracle="full")
    c = ix.stree.oracle.counters()
    assert c["sigma_cap"] == 64 and c["rebuilds"] == 6
    assert c["rebuild_work"] <= 4 * len(ix.stree.nodes)


def test_dump_is_json_ready():
    import json

    ix = build(random_ops(200, 2, 2, seed=1), oracle="full")
    d = ix.stree.oracle.dump()
    assert json.loads(json.dumps(d)) == d
    assert d["heavy"] and d["induced"]
