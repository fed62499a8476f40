"""Watch the suffix-tree oracle's heavy/light decomposition develop.

The oracle answers "nearest ancestor with a reversed suffix link on b".
Light subtrees are scanned directly; once a light tree's weight reaches
2*sigma it is promoted and its heavy nodes join the induced tree.

    python demos/oracle_tour.py
"""
import json

from fullyonline import FullyOnlineIndex
from fullyonline.verify import random_ops

ix = FullyOnlineIndex(oracle="checked")  # cross-checks every answer against a parent walk
for step, op in enumerate(random_ops(3000, 3, 4, seed=7), start=1):
    ix.apply(op)
    if step in (100, 1000, 3000):
        c = ix.oracle.counters()
        print(f"after {step:4d} updates: {c['queries']} queries, promotions {c['promotions']}, "
              f"rebuilds {c['rebuilds']}, mismatches {c['mismatches']}")

dump = ix.oracle.dump()
print(f"heavy nodes {len(dump['heavy'])}, light trees {len(dump['light_trees'])}, "
      f"induced edges {len(dump['induced'])}")
print(json.dumps(dump["induced"][:2], indent=1))
