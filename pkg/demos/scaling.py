"""Doubling experiment: time and created-object counts grow linearly.

    python demos/scaling.py [N]
"""
import sys

from fullyonline.cli import run_bench

n = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000
prev = None
for size in (n, 2 * n, 4 * n):
    row = run_bench(size, sigma=4, texts=3, seed=0)
    ratio = "" if prev is None else f"  x{row['seconds'] / prev['seconds']:.2f} time"
    print(f"N={size:7d}  {row['seconds']:6.2f}s  created/N={row['created_per_n']:.2f}  "
          f"DAWG edges/N={row['dawg_edges_created'] / size:.2f}{ratio}")
    prev = row
