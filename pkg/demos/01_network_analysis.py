"""
Walkway network and shortest paths
==================================

Load a venue, look at its distance matrix and summarise the distribution of
all-pairs shortest-path distances.
"""

from pathlib import Path

import numpy as np

from alleyflow import io as aio
from alleyflow.apsp import apsp_distance_stats, floyd_warshall, reconstruct_ids

HERE = Path(__file__).parent / "data"

# The demo venue is synthetic: two long aisles joined by 44 cross-alleys,
# nine diagonal short-cuts and four one-way cashier lanes.
g = aio.load_venue(HERE / "hypermarket_nodes.csv", HERE / "hypermarket_links.csv")
print(f"{g.n} nodes, {len(g.links)} links, {int(g.A.sum())} directed links")

# Cashier lanes make D asymmetric.
print("symmetric:", np.array_equal(g.A, g.A.T))
print(aio.matrix_csv_text(g.D[:5, :5], g.ids[:5]))

res = floyd_warshall(g)
print("L0 -> R43:", "-".join(reconstruct_ids(res, "L0", "R43")), f"({res.S[0, -1]:.1f} m)")

st = apsp_distance_stats(res, bin_width=1.0)
for key in ("mean", "median", "mode", "std", "iqr", "skewness", "fence_high", "max"):
    print(f"{key:>10}: {getattr(st, key):8.2f}")
