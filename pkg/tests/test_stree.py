import pytest
from hypothesis import given

from fullyonline.core import UpdateOp
from fullyonline.fixtures import FIG1_TEXTS, FIG6_OPS, FIG9_OPS, round_robin_ops, texts_ops
from fullyonline.lpt import InvariantViolation
from fullyonline.reference import naive_stree, stree_canonical, stree_isomorphic
from fullyonline.verify import StepVerifier, VerifyOptions, random_ops

from helpers import build, op_sequences, st_node_for


def test_fig9_type2_insertions():
    ix = build(FIG9_OPS[:-1])
    st = ix.stree
    assert st_node_for(ix, "b") is None and st_node_for(ix, "ab") is None
    res = ix.apply(FIG9_OPS[-1])
    assert ix.dawg.long_string(res.lrs_node) == "b"  # longest Type-3 suffix
    b, ab, a = st_node_for(ix, "b"), st_node_for(ix, "ab"), st_node_for(ix, "a")
    assert b.parent is st.root and ab.parent is a
    assert b.children["b"].lazy and ab.children["b"].lazy
    assert st.root.rslinks["b"] is b
    assert b.rslinks["a"] is ab
    assert ab.slink is b and b.slink is st.root
    assert [st.path_string(y) for y in st.last_visited] == ["b", "ab"]
    assert stree_isomorphic(st, naive_stree(ix.store.as_strings()), full=False)


def test_first_character_single_leaf():
    ix = build([UpdateOp(1, "a")])
    st = ix.stree
    assert list(st.root.children) == ["a"] and st.root.children["a"].lazy
    assert st.remark1 == 0 and st.last_visited == [st.root]
    assert len(st.nodes) == 2


def test_fig6_active_point_change():
    ix = build(FIG6_OPS[:8])
    assert ix.store.as_strings() == ["ababc", "bab"]
    leaf = st_node_for(ix, "b").children["a"]
    assert leaf.lazy  # babc is a leaf for now
    ix.extend_all(FIG6_OPS[8:])
    texts = ix.store.as_strings()
    assert texts == ["ababc", "babcd"]
    st = ix.stree
    assert stree_isomorphic(st, naive_stree(texts), full=False)
    # the old leaf edge now runs on to babcd; babc is implicit on it
    assert st_node_for(ix, "babc") is None
    ref, lazy = st.locus("babc")
    assert lazy is leaf and ref.base is st_node_for(ix, "b")
    ix.finalize()
    assert leaf.label == (2, 2, 5)  # <2,2,inf> once T_2 is babcd
    assert st.path_string(leaf) == "babcd"
    for s in ("abcd", "bcd"):
        ref, _ = st.locus(s)
        assert ref.explicit
        node = ref.base
        assert node.leaf and node.label == (2, 4, 5) and st.path_string(node) == s
    assert stree_isomorphic(st, naive_stree(texts), full=True)


def test_single_text_finalize():
    ix = build(texts_ops(["abc"]), finalize=True)
    st = ix.stree
    labels = sorted(child.label for child in st.root.children.values())
    assert labels == [(1, 1, 3), (1, 2, 3), (1, 3, 3)]
    assert all(len(leaf.witnesses) == 1 for leaf in st.root.children.values())
    assert stree_isomorphic(st, naive_stree(["abc"]), full=True)


def test_fig1_tree():
    ix = build(round_robin_ops(FIG1_TEXTS), finalize=True)
    assert stree_isomorphic(ix.stree, naive_stree(FIG1_TEXTS), full=True)
    # bab is a suffix of T_3 only: its leaf carries that witness
    ref, _ = ix.stree.locus("bab")
    assert ref.base.depth <= 3


def test_finalized_tree_refuses_updates():
    ix = build(texts_ops(["ab"]), finalize=True)
    with pytest.raises(InvariantViolation):
        ix.apply(UpdateOp(1, "c"))


def test_duplicate_child_is_a_violation():
    ix = build(texts_ops(["ab"]))
    with pytest.raises(InvariantViolation):
        ix.stree._add_leaf(ix.stree.root, "a")


def test_no_tree_work_without_type2():
    ix = build(random_ops(300, 3, 2, seed=2), oracle="full")
    st = ix.stree
    seen = 0
    for op in random_ops(300, 3, 2, seed=3):
        q = st.oracle.queries
        n = len(st.nodes)
        res = ix.apply(op)
        assert all(not y.leaf for y in st.last_visited)
        if not res.type2_lengths:
            seen += 1
            assert st.oracle.queries == q and len(st.nodes) == n
            assert st.last_visited == []
    assert seen > 0


@pytest.mark.parametrize("oracle", ["full", "walkup"])
@given(ops=op_sequences(max_size=50))
def test_matches_naive_every_step(oracle, ops):
    ix = build([], oracle=oracle)
    for op in ops:
        ix.apply(op)
        assert stree_isomorphic(ix.stree, naive_stree(ix.store.as_strings()), full=False)
    ix.finalize()
    assert stree_isomorphic(ix.stree, naive_stree(ix.store.as_strings()), full=True)
    for node in ix.stree.nodes:
        if node.leaf:
            assert node.witnesses


@pytest.mark.parametrize("sigma", [1, 2, 4, 26])
def test_random_runs_per_step(sigma):
    v = StepVerifier(VerifyOptions(dawg=False, stree=True, oracle="checked"))
    v.run(random_ops(800, 4, sigma, seed=10 + sigma))
    ix = v.index
    ix.finalize()
    assert stree_isomorphic(ix.stree, naive_stree(ix.store.as_strings()), full=True)


def test_full_edge_labels_spell_their_edges():
    ix = build(random_ops(500, 3, 3, seed=7))
    st = ix.stree
    for node in st.nodes:
        if node.parent is None or node.lazy:
            continue
        h, i, j = node.label
        assert j - i + 1 == node.depth - node.parent.depth
        assert ix.store.char_at(h, i) == st.key_of(node)


def test_oracles_build_the_same_tree():
    ops = random_ops(600, 3, 4, seed=11)
    a, b = build(ops, oracle="full"), build(ops, oracle="walkup")
    assert stree_canonical(a.stree) == stree_canonical(b.stree)


def test_dot_lazy_markers():
    ix = build(round_robin_ops(FIG1_TEXTS))
    assert ix.stree.to_dot().count("(lazy)") > 0
    ix.finalize()
    dot = ix.stree.to_dot()
    assert dot.count("(lazy)") == 0 and "style=dashed" in dot
