"""
Walking distance and the median ratio
=====================================

Measure every respondent's route, compare with the shortest-path distances
of the venue, and flag unusual walkers with Tukey fences.
"""

from pathlib import Path

from alleyflow import io as aio
from alleyflow.apsp import apsp_distance_stats, floyd_warshall
from alleyflow.stats import describe
from alleyflow.trajectory import lambda_index, validate_trajectory, walking_distances

HERE = Path(__file__).parent / "data"
g = aio.load_venue(HERE / "hypermarket_nodes.csv", HERE / "hypermarket_links.csv")
trajs, errors = aio.load_trajectories(HERE / "hypermarket_trajectories.txt")
print(f"{len(trajs)} routes, {len(errors)} unreadable lines")

valid = [t for t in trajs if validate_trajectory(t, g).valid]
walk = describe(walking_distances(valid, g), bin_width=1.0)
short = apsp_distance_stats(floyd_warshall(g), bin_width=1.0)

print(f"median walk {walk.median:.1f} m, median shortest path {short.median:.1f} m")
print(f"lambda = {lambda_index(walk.median, short.median):.3f}")
print(f"outlier fences: below {walk.fence_low:.1f} m or above {walk.fence_high:.1f} m")

# A route far longer than the rest is easy to pick out.
longest = max(valid, key=lambda t: len(t.nodes))
print("longest route:", longest.respondent_id, len(longest.nodes), "nodes")
