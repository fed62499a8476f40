"""Step through a fully-online update sequence and watch the DAWG cases.

Three texts grow in an arbitrary interleaving.  Each update prints the
Blumer case taken, the node split (if any), and the range of new Type-2
suffix lengths that become branches in the suffix tree.

    python demos/walkthrough.py
"""
from fullyonline import FullyOnlineIndex
from fullyonline.fixtures import SECTION2_OPS

ix = FullyOnlineIndex()
for i, op in enumerate(SECTION2_OPS, start=1):
    res = ix.apply(op)
    d = ix.dawg
    split = ""
    if res.split is not None:
        z, w = res.split
        split = f"  split {d.long_string(z)!r} -> new class {d.long_string(w)!r}"
    t2 = list(res.type2_lengths)
    print(f"{i:2d}  T{op.text_id} += {op.ch!r}  case {res.case:2s}  "
          f"longest repeated suffix {d.long_string(res.lrs_node)!r:8s} "
          f"type-2 lengths {t2}{split}")

print()
print("texts:", ix.store.as_strings())
s = ix.stats()
print(f"DAWG {s['dawg']['nodes']} nodes / {s['dawg']['edges']} edges, "
      f"suffix tree {s['stree']['nodes']} nodes, created total {s['created_total']} for N={s['N']}")
