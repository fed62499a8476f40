import random

import pytest
from hypothesis import given

from fullyonline.core import UpdateOp
from fullyonline.fixtures import FIG1_TEXTS, texts_ops
from fullyonline.reference import (GuardExceeded, NaiveDawg, PreconditionError, SubstringTracker,
                                   dawg_isomorphic, epos_table, naive_dawg, naive_occurrences,
                                   naive_stree, naive_stree_canonical, naive_suffix_trie,
                                   right_extensions, semi_online_ukkonen, stree_canonical,
                                   stree_isomorphic, substrings)
from fullyonline.verify import random_ops

from helpers import build, op_sequences


def test_trie_of_ab():
    trie = naive_suffix_trie(["ab"])
    assert set(trie.nodes) == {"", "a", "ab", "b"}
    assert trie.nodes[""].children == {"a": "a", "b": "b"}
    assert trie.nodes["ab"].slink == "b"


def test_fig1_trie_suffix_marks():
    trie = naive_suffix_trie(FIG1_TEXTS)
    assert 3 in trie.nodes["bab"].suffix_of
    assert trie.nodes["abab"].suffix_of == set()


@given(op_sequences(max_size=30))
def test_trie_paths_are_the_suffixes(ops):
    texts = build(ops, oracle="walkup").store.as_strings()
    trie = naive_suffix_trie(texts)
    assert set(trie.nodes) == substrings(texts)
    for k, t in enumerate(texts, start=1):
        for i in range(len(t) + 1):
            assert k in trie.nodes[t[i:]].suffix_of


def test_fig1_dawg_and_tree():
    d = naive_dawg(FIG1_TEXTS)
    assert "ab" in d.members and "b" in d.members
    assert d.members["aaab"] == ["aab", "aaab"]
    assert d.slink["aaab"] == "ab"
    t = naive_stree(FIG1_TEXTS)
    assert not t.leaf["ab"] and not t.leaf["b"] and t.leaf["ababc"] and t.leaf["aaab"]
    assert "bab" not in t.parent  # followed by c inside ababc: implicit


def test_unary_dawg_is_a_chain():
    d = naive_dawg(["aaa"])
    assert len(d) == 4
    assert d.edges == {"": {"a": "a"}, "a": {"a": "aa"}, "aa": {"a": "aaa"}, "aaa": {}}


def compact(trie):
    """Suffix tree by compacting the trie's unary, non-leaf nodes."""
    explicit = {x for x, n in trie.nodes.items() if len(n.children) != 1}
    explicit.add("")
    parent = {}
    for x in explicit:
        if x:
            p = x[:-1]
            while p not in explicit:
                p = p[:-1]
            parent[x] = p
        else:
            parent[x] = None
    return parent


def merge_classes(trie, texts):
    """DAWG nodes by grouping trie nodes with identical end-position sets."""
    epos = epos_table(texts)
    groups = {}
    for x in trie.nodes:
        groups.setdefault(epos.get(x, frozenset()), []).append(x)
    return {max(g, key=len) for g in groups.values()}


@given(op_sequences(max_size=30))
def test_cross_constructions(ops):
    texts = build(ops, oracle="walkup").store.as_strings()
    trie = naive_suffix_trie(texts)
    assert compact(trie) == naive_stree(texts).parent
    d = naive_dawg(texts)
    assert merge_classes(trie, texts) == set(d.members)
    # no two classes share an Epos set
    assert len({e for e in d.epos.values()}) == len(d)


def test_guard():
    with pytest.raises(GuardExceeded):
        naive_dawg(["a" * 40], guard=30)
    naive_stree(["a" * 40], guard=40)


def test_isomorphism_helpers():
    ix = build(texts_ops(FIG1_TEXTS))
    assert dawg_isomorphic(ix.dawg, ix.dawg)
    d = naive_dawg(FIG1_TEXTS)
    assert dawg_isomorphic(ix.dawg, d)
    # make the primary edge aaa -b-> aaab look secondary
    names, edges, slinks = d.canonical()
    flipped = frozenset((u, a, t, (not p) if (u, a) == ("aaa", "b") else p)
                        for u, a, t, p in edges)
    assert (names, flipped, slinks) != dawg_canonical_of(ix)
    assert stree_isomorphic(ix.stree, ix.stree, full=False)
    # T_3 = bab occurs inside T_2, so dropping it changes nothing; dropping T_2 does
    assert stree_isomorphic(ix.stree, naive_stree(FIG1_TEXTS[:2]), full=False)
    assert not stree_isomorphic(ix.stree, naive_stree(FIG1_TEXTS[::2]), full=False)


def dawg_canonical_of(ix):
    from fullyonline.reference import dawg_canonical
    return dawg_canonical(ix.dawg)


def test_tracker_matches_naive_counts():
    tr = SubstringTracker()
    for op in random_ops(120, 3, 3, seed=1):
        tr.append(op.text_id, op.ch)
        texts = tr.texts
        ext = right_extensions(texts)
        assert tr.num_classes == len(naive_dawg(texts))
        assert tr.branching == sum(1 for x, e in ext.items() if x and len(e) >= 2)
        assert tr.leafy == sum(1 for x, e in ext.items() if x and not e)
        epos = epos_table(texts)
        for x in ("a", "ab", "ba"):
            if x in epos:
                assert {e for e in epos[x]} and (x in tr.epos)


def test_naive_occurrences():
    assert naive_occurrences(["abab", "b"], "ab") == [(1, 1), (1, 3)]
    assert naive_occurrences(["ab"], "abc") == []


# -- semi-online Ukkonen -------------------------------------------------------------

def semi_online_texts(seed, k=3, sigma=2, max_len=60):
    rng = random.Random(seed)
    texts = []
    for i in range(1, k + 1):
        body = "".join(rng.choice("abcd"[:sigma]) for _ in range(rng.randint(0, max_len)))
        texts.append(body + chr(0x2460 + i))
    return texts


def test_ukkonen_single_text():
    tree = semi_online_ukkonen(texts_ops(["abab$"]))
    assert tree.canonical() == naive_stree_canonical(naive_stree(["abab$"]), full=True)


def test_ukkonen_rejects_fully_online_input():
    with pytest.raises(PreconditionError):
        semi_online_ukkonen([UpdateOp(1, "a"), UpdateOp(2, "b"), UpdateOp(1, "c")])
    with pytest.raises(PreconditionError):
        semi_online_ukkonen(texts_ops(["ab", "ab"]))  # no unique end markers


@pytest.mark.parametrize("seed", range(10))
def test_ukkonen_equals_naive_and_online(seed):
    texts = semi_online_texts(seed, sigma=2 + seed % 3)
    ops = texts_ops(texts)
    tree = semi_online_ukkonen(ops)
    want = naive_stree_canonical(naive_stree(texts), full=True)
    assert tree.canonical() == want
    online = build(ops, oracle="full", finalize=True)
    assert stree_canonical(online.stree, full=True) == want


@pytest.mark.parametrize("seed", range(10))
def test_ukkonen_walk_telescopes(seed):
    texts = semi_online_texts(seed, k=2, sigma=2, max_len=300)
    tree = semi_online_ukkonen(texts_ops(texts))
    for trace in tree.leaf_trace:
        for (l1, _), (l2, hops) in zip(trace, trace[1:]):
            assert hops <= l1 - l2 + 1
    n = sum(map(len, texts))
    assert tree.hops <= 2 * n
