"""
Maps and heatmaps
=================

Write the flow map (stroke width by category, quiet alleys dashed) and
heatmaps of the distance, shortest-path and flow matrices as SVG.
"""

import sys
from pathlib import Path

import numpy as np

from alleyflow import io as aio
from alleyflow.apsp import floyd_warshall
from alleyflow.flow import accumulate_flow, alley_totals, categorize_flows
from alleyflow.render import RenderSpec, render_heatmap_svg, render_network_svg

HERE = Path(__file__).parent / "data"
out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("demo_output")
out.mkdir(exist_ok=True)

g = aio.load_venue(HERE / "hypermarket_nodes.csv", HERE / "hypermarket_links.csv")
trajs, _ = aio.load_trajectories(HERE / "hypermarket_trajectories.txt")
fm = accumulate_flow(trajs, g)
cats, _ = categorize_flows(alley_totals(fm))

(out / "flow_map.svg").write_text(render_network_svg(g, cats, RenderSpec(scale=6.0)))
(out / "D.svg").write_text(render_heatmap_svg(g.D, g.ids, RenderSpec(palette="gray")))
(out / "S.svg").write_text(render_heatmap_svg(floyd_warshall(g).S, g.ids))
no_link = (g.A == 0) & ~np.eye(g.n, dtype=bool)
(out / "F.svg").write_text(render_heatmap_svg(fm.F, g.ids, mask=no_link))
print("wrote", ", ".join(sorted(p.name for p in out.glob("*.svg"))), "to", out)
