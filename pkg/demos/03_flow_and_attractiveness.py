"""
Flow pattern and alley attractiveness
=====================================

Count directed link traversals, normalise them into attractiveness indices,
bucket alleys into four flow categories and turn the index into relative
rents.
"""

from collections import Counter
from pathlib import Path

import numpy as np

from alleyflow import io as aio
from alleyflow.flow import (
    accumulate_flow,
    alley_totals,
    attractiveness_index,
    attractiveness_stats,
    categorize_flows,
    relative_rents,
)

HERE = Path(__file__).parent / "data"
g = aio.load_venue(HERE / "hypermarket_nodes.csv", HERE / "hypermarket_links.csv")
trajs, _ = aio.load_trajectories(HERE / "hypermarket_trajectories.txt")

fm = accumulate_flow(trajs, g, study_label="demo weekday")
print(f"{fm.total} traversals, busiest directed link carries {fm.F.max()}")

alpha = attractiveness_index(fm)
st = attractiveness_stats(alpha, bin_width=0.02)
print(f"alpha: mean {st.mean:.4f}, median {st.median:.4f}, skewness {st.skewness:.2f}, "
      f"outliers above {st.fence_high:.3f}")

cats, th = categorize_flows(alley_totals(fm))
print("thresholds:", th)
print(Counter(c.category for c in cats))

rent = relative_rents(alpha, max_rent=120.0)
i, j = np.unravel_index(rent.argmax(), rent.shape)
print(f"top rent {rent[i, j]:.0f} on {g.ids[i]} -> {g.ids[j]}")
