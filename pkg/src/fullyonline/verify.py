"""Step-by-step verification of a live index against exact references.

``StepVerifier`` feeds every update to both the index and a
:class:`~fullyonline.reference.SubstringTracker` and, after each step,
checks the DAWG and the suffix tree in full against the tracker's exact
statistics.  Long strings of DAWG nodes and path strings of suffix-tree
nodes never change once created, so they are cached.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .core import UpdateOp, serialize_stream
from .index import FullyOnlineIndex
from .reference import (SubstringTracker, naive_occurrences, naive_stree,
                        reverse_tree_canonical, stree_isomorphic)


class VerificationError(AssertionError):
    def __init__(self, step: int, structure: str, problems: list[str]):
        super().__init__(f"step {step}: {structure}: " + "; ".join(problems[:5]))
        self.step = step
        self.structure = structure
        self.problems = problems


@dataclass
class VerifyOptions:
    dawg: bool = True
    stree: bool = True
    reverse: bool = False  # needs unique first characters
    oracle: str = "checked"


class StepVerifier:
    def __init__(self, options: VerifyOptions | None = None):
        self.options = options or VerifyOptions()
        self.index = FullyOnlineIndex(oracle=self.options.oracle)
        self.tracker = SubstringTracker()
        self.ops: list[UpdateOp] = []
        self._long: list[str] = []
        self._path: dict[int, str] = {id(self.index.stree.root): ""}
        self.checks = 0

    def apply(self, op: UpdateOp):
        self.ops.append(op)
        self.index.apply(op)
        self.tracker.append(op.text_id, op.ch)
        step = len(self.ops)
        if self.options.dawg:
            self._raise(step, "dawg", self.check_dawg())
        if self.options.stree:
            self._raise(step, "stree", self.check_stree())
        if self.options.reverse:
            self._raise(step, "reverse", self.check_reverse())
        self.checks += 1

    def run(self, ops: Iterable[UpdateOp]) -> StepVerifier:
        for op in ops:
            self.apply(op)
        return self

    @staticmethod
    def _raise(step, structure, problems):
        if problems:
            raise VerificationError(step, structure, problems)

    # -- DAWG ----------------------------------------------------------------

    def _long_strings(self) -> list[str]:
        dawg = self.index.dawg
        for v in range(len(self._long), len(dawg)):
            self._long.append(dawg.long_string(v))
        return self._long

    def check_dawg(self) -> list[str]:
        dawg, tr = self.index.dawg, self.tracker
        ls = self._long_strings()
        problems = []
        if len(dawg) != tr.num_classes:
            problems.append(f"{len(dawg)} nodes for {tr.num_classes} classes")
        seen = set()
        for v in dawg.nodes():
            x = ls[v]
            sig = tr.epos.get(x)
            if sig is None:
                problems.append(f"node {v}: {x!r} does not occur")
                continue
            if sig in seen:
                problems.append(f"node {v}: class of {x!r} represented twice")
            seen.add(sig)
            if not tr.is_longest(x):
                problems.append(f"node {v}: {x!r} is not the longest member of its class")
            s = dawg.slink[v]
            if v == 0:
                if s is not None:
                    problems.append("source has a suffix link")
            else:
                y = ls[s]
                if len(y) >= len(x) or not x.endswith(y):
                    problems.append(f"node {v}: suffix link target {y!r} is not a suffix of {x!r}")
                elif tr.epos.get(x[len(x) - len(y) - 1:]) != sig:
                    problems.append(f"node {v}: shortest member is not {len(y) + 1} long")
            out = dawg.edges[v]
            if set(out) != tr.rext[x]:
                problems.append(f"node {v}: out-edges {sorted(out)} != extensions {sorted(tr.rext[x])}")
            for a, t in out.items():
                lt = ls[t]
                n = len(x) + 1
                if not (lt and lt[-1] == a and dawg.min_len(t) <= n <= len(lt)
                        and lt.endswith(x, 0, len(lt) - 1)):
                    problems.append(f"edge {v} -{a}-> {t} does not lead to the class of {x + a!r}")
        for k, text in enumerate(tr.texts, start=1):
            if ls[dawg.act(k)] != text:
                problems.append(f"active node of text {k} is wrong")
        return problems

    # -- suffix tree ---------------------------------------------------------

    def check_stree(self) -> list[str]:
        st, tr = self.index.stree, self.tracker
        path = self._path
        problems = []
        internal = leaves = 0
        strings = set()
        linked = []
        stack = [st.root]
        while stack:
            node = stack.pop()
            internal += 1
            s = path[id(node)]
            strings.add(s)
            if node.depth != len(s):
                problems.append(f"node {node.ident}: depth {node.depth} != {len(s)}")
            ext = tr.rext.get(s)
            if ext is None:
                problems.append(f"node {node.ident}: {s!r} does not occur")
                continue
            if node.parent is not None:
                if len(ext) < 2:
                    problems.append(f"node {node.ident}: {s!r} is not branching")
                linked.append((node, s))
            if set(node.children) != ext:
                problems.append(f"node {node.ident}: children {sorted(node.children)} != {sorted(ext)}")
            for key, child in node.children.items():
                if child.leaf:
                    leaves += 1
                    if child.label is not None and not st.finalized:
                        problems.append(f"leaf {child.ident} lost its lazy edge")
                    continue
                cs = path.get(id(child))
                if cs is None:
                    edge = st.edge_string(child)
                    cs = path[id(child)] = s + edge
                if not cs.startswith(s) or len(cs) <= len(s) or cs[len(s)] != key:
                    problems.append(f"node {child.ident}: edge label inconsistent with key {key!r}")
                stack.append(child)
        for node, s in linked:
            if node.slink is None or path.get(id(node.slink)) != s[1:]:
                problems.append(f"node {node.ident}: wrong suffix link")
        if internal != tr.branching + 1:
            problems.append(f"{internal - 1} internal nodes for {tr.branching} branching substrings")
        if len(strings) != internal:
            problems.append("two internal nodes spell the same string")
        if leaves != tr.leafy:
            problems.append(f"{leaves} leaves for {tr.leafy} non-extendable substrings")
        return problems

    # -- reverse tree ----------------------------------------------------------

    def check_reverse(self) -> list[str]:
        texts = self.tracker.texts
        got = self.index.dawg.export_reverse_suffix_tree().canonical()
        want = reverse_tree_canonical(texts)
        if got != want:
            return [f"{len(got ^ want)} differing (node, parent) pairs"]
        return []


def check_finalized(index) -> list[str]:
    texts = index.store.as_strings()
    if not stree_isomorphic(index.stree, naive_stree(texts), full=True):
        return ["finalized tree differs from the naive suffix tree"]
    return []


def check_queries(index, patterns: Iterable[str]) -> list[str]:
    """Existence (both paths) and, on a finalized index, reported positions."""
    from .query import find_pattern, find_pattern_dawg, report_occurrences

    texts = index.store.as_strings()
    problems = []
    for p in patterns:
        occ = naive_occurrences(texts, p)
        want = bool(occ) or p == ""
        if find_pattern(index, p).found != want:
            problems.append(f"find_pattern({p!r}) != {want}")
        if find_pattern_dawg(index, p).found != want:
            problems.append(f"find_pattern_dawg({p!r}) != {want}")
        if index.stree.finalized and p and report_occurrences(index, p) != occ:
            problems.append(f"report_occurrences({p!r}) differs")
    return problems


def random_ops(n: int, k: int, sigma: int, seed: int, alphabet: str | None = None) -> list[UpdateOp]:
    """A random fully-online sequence; text ids are opened in order."""
    rng = random.Random(seed)
    alphabet = alphabet or "".join(chr(ord("a") + i) for i in range(sigma))
    ops, opened = [], 0
    for _ in range(n):
        t = rng.randint(1, min(k, opened + 1))
        opened = max(opened, t)
        ops.append(UpdateOp(t, rng.choice(alphabet)))
    return ops


def with_begin_markers(ops: list[UpdateOp], base: int = 0x2460) -> list[UpdateOp]:
    """Prefix every text with its own marker character, placed just before its first update."""
    out, seen = [], set()
    for op in ops:
        if op.text_id not in seen:
            seen.add(op.text_id)
            out.append(UpdateOp(op.text_id, chr(base + op.text_id)))
        out.append(op)
    return out


@dataclass
class VerifyReport:
    name: str
    steps: int
    ok: bool
    failure: str | None = None
    failing_prefix: str | None = None
    counters: dict = field(default_factory=dict)
    oracle_dump: dict | None = None


def verify_sequence(name: str, ops: list[UpdateOp], options: VerifyOptions | None = None,
                    patterns: int = 200, seed: int = 0) -> VerifyReport:
    verifier = StepVerifier(options)
    try:
        verifier.run(ops)
        index = verifier.index
        rng = random.Random(seed)
        pats = _sample_patterns(index.store.as_strings(), patterns, rng)
        problems = check_queries(index, pats)
        index.finalize()
        problems += check_finalized(index) + check_queries(index, pats)
        if problems:
            raise VerificationError(len(ops), "queries/finalize", problems)
    except (VerificationError, AssertionError) as exc:
        step = getattr(exc, "step", len(verifier.ops))
        return VerifyReport(name, len(verifier.ops), False, str(exc),
                            serialize_stream(ops[:step]))
    return VerifyReport(name, len(ops), True, counters=verifier.index.stats(),
                        oracle_dump=verifier.index.oracle.dump())


def _sample_patterns(texts: list[str], count: int, rng: random.Random) -> list[str]:
    alphabet = sorted(set("".join(texts))) or ["a"]
    pats = []
    for _ in range(count):
        if texts and rng.random() < 0.5:
            t = rng.choice(texts)
            if t:
                i = rng.randrange(len(t))
                pats.append(t[i:i + rng.randint(1, 8)])
                continue
        pats.append("".join(rng.choice(alphabet) for _ in range(rng.randint(1, 6))))
    return pats


FUZZ_SIGMAS = (1, 2, 4, 26)
FUZZ_TEXTS = (1, 2, 3, 8)


def fuzz_case(seed: int, n: int = 500) -> tuple[int, int, list[UpdateOp]]:
    """(sigma, K, ops) for one fuzz seed; seeds cycle through every sigma/K pair."""
    sigma = FUZZ_SIGMAS[seed % len(FUZZ_SIGMAS)]
    k = FUZZ_TEXTS[(seed // len(FUZZ_SIGMAS)) % len(FUZZ_TEXTS)]
    return sigma, k, random_ops(n, k, sigma, seed)
