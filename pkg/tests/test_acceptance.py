"""Acceptance gate: one test per exit criterion, with its stated tolerance and
time budget.  A PASS/FAIL line per criterion is printed in the terminal
summary (see ``conftest.py``); run directly with ``python tests/test_acceptance.py``
for the same report without pytest.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest

from alleyflow import io as aio
from alleyflow.apsp import floyd_warshall
from alleyflow.flow import (
    FlowMatrix,
    accumulate_flow,
    alley_totals,
    attractiveness_index,
    merge_flows,
    relative_rents,
    sliced_flow,
    static_trajectories_from_ntxy,
)
from alleyflow.netmodel import build_graph
from alleyflow.render import render_heatmap_svg, render_network_svg
from alleyflow.stats import describe
from alleyflow.synth import (
    WalkerPolicy,
    brute_force_apsp,
    generate_walkers,
    make_grid_venue,
    ntxy_from_trajectories,
    random_venue,
)
from alleyflow.trajectory import (
    lambda_index,
    parse_trajectories,
    validate_trajectory,
    walking_distance,
)

DATA = Path(__file__).parent / "data"
RESULTS: dict[int, tuple[bool, str]] = {}

SHOPPER_160 = (
    "1a-A-B-D-F-H-J-I-K-L-N-M-K-X-AA-AD-AG-AJ-AM-AL-AO-AP-AS-AR-AU-AV-AY-BB-BE-BH-"
    "BK-BL-BO-BN-BQ-BR-BO-BL-BI-BF-BC-AZ-1d-1c-1b"
)


def timed(budget):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            detail = fn()
            took = time.perf_counter() - t0
            assert took < budget, f"took {took:.2f}s, budget {budget}s"
            return f"{detail} [{took:.2f}s < {budget}s]"
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def recount(batch, graph):
    F = np.zeros((graph.n, graph.n), dtype=np.int64)
    for t in batch:
        for a, b in zip(t.nodes, t.nodes[1:]):
            F[graph.index[a], graph.index[b]] += 1
    return F


@timed(1.0)
def c01_lambda():
    """lambda reproduction: 267.8 / 36.5 = 7.336 +/- 0.001, shown as 7.34"""
    lam = lambda_index(267.8, 36.5)
    assert abs(lam - 7.336) <= 0.001, lam
    assert f"{lam:.2f}" == "7.34"
    return f"lambda={lam:.4f} display={lam:.2f}"


@timed(1.0)
def c02_tukey():
    """Tukey fences: q1=220.3, q3=315.3 give iqr 95, fences 77.8/457.8; width = 4 iqr"""
    s = describe([152.0, 220.3, 267.8, 315.3, 430.0], 1.0)
    assert (s.q1, s.q3) == (220.3, 315.3)
    assert math.isclose(s.iqr, 95.0, abs_tol=1e-9)
    assert math.isclose(s.fence_low, 77.8, abs_tol=1e-9)
    assert math.isclose(s.fence_high, 457.8, abs_tol=1e-9)
    rng = np.random.default_rng(2)
    for _ in range(200):
        v = rng.gamma(2.0, 50.0, size=int(rng.integers(2, 300)))
        r = describe(v, 1.0)
        assert math.isclose(r.fence_high - r.fence_low, 4 * r.iqr, rel_tol=1e-12, abs_tol=1e-9)
    return f"iqr={s.iqr:.6f} fences={s.fence_low:.6f}/{s.fence_high:.6f}; 200 random datasets"


@timed(30.0)
def c03_apsp_oracles():
    """Floyd-Warshall = Dijkstra (>=100 graphs, <=50 nodes) and = exhaustive (>=200 graphs, <=7 nodes)"""
    rng = np.random.default_rng(3)
    dij = exh = 0
    for _ in range(120):
        n = int(rng.integers(2, 51))
        g = build_graph(*random_venue(n, rng, extra=float(rng.uniform(0.02, 0.3)), one_way=0.25))
        S, ref = floyd_warshall(g).S, brute_force_apsp(g, "dijkstra")
        assert np.array_equal(np.isinf(S), np.isinf(ref))
        fin = np.isfinite(S)
        assert np.max(np.abs(S[fin] - ref[fin])) <= 1e-9
        dij += 1
    for _ in range(250):
        n = int(rng.integers(2, 8))
        g = build_graph(*random_venue(n, rng, extra=float(rng.uniform(0.0, 0.8)), one_way=0.3))
        S, ref = floyd_warshall(g).S, brute_force_apsp(g, "exhaustive")
        assert np.array_equal(np.isinf(S), np.isinf(ref))
        fin = np.isfinite(S)
        assert np.max(np.abs(S[fin] - ref[fin])) <= 1e-9
        exh += 1
    return f"{dij} Dijkstra cases, {exh} exhaustive cases, tol 1e-9"


@timed(1.0)
def c04_grid():
    """grid venues: S = Manhattan distance x spacing exactly"""
    checked = 0
    for rows, cols, sp in ((10, 10, 10.0), (3, 7, 2.5), (6, 4, 1.0)):
        g = build_graph(*make_grid_venue(rows, cols, sp))
        S = floyd_warshall(g).S
        r, c = np.divmod(np.arange(rows * cols), cols)
        manhattan = (np.abs(r[:, None] - r[None, :]) + np.abs(c[:, None] - c[None, :])) * sp
        assert np.array_equal(S, manhattan)
        checked += S.size
    return f"{checked} entries exact"


@timed(5.0)
def c05_flow_counting():
    """flow: sum F = sum(len-1), F = recount, sharded merge = sequential (>=50 batches)"""
    rng = np.random.default_rng(5)
    venues = [build_graph(*make_grid_venue(5, 5, 10.0)),
              build_graph(*random_venue(30, rng, extra=0.1, one_way=0.2))]
    venues = [g for g in venues if np.isfinite(floyd_warshall(g).S).all()]
    kinds = ("random_walk", "shortest_path", "shopping_list")
    batches = 0
    for b in range(60):
        g = venues[b % len(venues)]
        batch = generate_walkers(g, WalkerPolicy(kinds[b % 3], seed=b), int(rng.integers(1, 80)))
        fm = accumulate_flow(batch, g)
        assert fm.total == sum(len(t.nodes) - 1 for t in batch)
        assert np.array_equal(fm.F, recount(batch, g))
        k = int(rng.integers(2, 6))
        assert np.array_equal(merge_flows([accumulate_flow(batch[s::k], g) for s in range(k)]).F, fm.F)
        batches += 1
    return f"{batches} batches"


@timed(5.0)
def c06_alpha():
    """alpha: max 1, replay-invariant (k=2,3,5), support(alpha)=support(F), rents/max = alpha within 1e-12"""
    g = build_graph(*make_grid_venue(5, 5, 10.0))
    cases = 0
    for seed in range(30):
        batch = generate_walkers(g, WalkerPolicy("random_walk", steps=10, seed=seed), 1 + seed % 17)
        fm = accumulate_flow(batch, g)
        a = attractiveness_index(fm)
        assert a.alpha.max() == 1.0
        assert np.array_equal(a.alpha > 0, fm.F > 0)
        for k in (2, 3, 5):
            ak = attractiveness_index(accumulate_flow(batch * k, g))
            assert np.array_equal(ak.alpha, a.alpha)
        for rent in (1.0, 1000.0, 37.5):
            assert np.max(np.abs(relative_rents(a, rent) / rent - a.alpha)) <= 1e-12
        cases += 1
    return f"{cases} batches"


@timed(1.0)
def c07_shopper_160():
    """shopper 160: 45 nodes / 44 links, valid on fixture venue, 44 increments incl. BO-BL twice"""
    g = aio.load_venue(DATA / "shopper160_nodes.csv", DATA / "shopper160_links.csv")
    (t,), errors = parse_trajectories((DATA / "shopper160_traj.txt").read_text())
    assert not errors and "-".join(t.nodes) == SHOPPER_160
    assert (len(t.nodes), t.n_links) == (45, 44)
    assert validate_trajectory(t, g).valid
    fm = accumulate_flow([t], g)
    assert fm.total == 44
    totals = {frozenset((a.source, a.target)): a.total for a in alley_totals(fm)}
    assert totals[frozenset(("BO", "BL"))] == 2
    return f"nodes={len(t.nodes)} links={t.n_links} increments={fm.total} BO-BL={totals[frozenset(('BO', 'BL'))]}"


@timed(5.0)
def c08_shortest_walkers():
    """shortest-path walkers: walking distance = S[o][d]; dominance holds with equality"""
    count = 0
    rng = np.random.default_rng(8)
    venues = [build_graph(*make_grid_venue(6, 6, 10.0)),
              aio.load_venue(DATA / "hypermarket_nodes.csv", DATA / "hypermarket_links.csv"),
              build_graph(*make_grid_venue(4, 9, 3.0))]
    for g in venues:
        S = floyd_warshall(g).S
        for t in generate_walkers(g, WalkerPolicy("shortest_path", seed=int(rng.integers(1 << 30))), 300):
            d = walking_distance(t, g)
            ref = S[g.index[t.nodes[0]], g.index[t.nodes[-1]]]
            assert math.isclose(d, ref, rel_tol=0, abs_tol=1e-9)
            assert d >= ref - 1e-9
            count += 1
    return f"{count} walkers"


@timed(10.0)
def c09_static_dynamic():
    """time-sliced NTXY flow summed over slices = flow of the static reductions"""
    g = build_graph(*make_grid_venue(5, 5, 10.0))
    rng = np.random.default_rng(9)
    checks = 0
    for seed in range(5):
        walkers = generate_walkers(g, WalkerPolicy("random_walk", steps=30, no_backtrack=True, seed=seed), 80)
        recs = ntxy_from_trajectories(walkers, g, rng)
        F = accumulate_flow(static_trajectories_from_ntxy(recs, g), g).F
        for width in (30.0, 120.0, 600.0):
            slices = sliced_flow(recs, g, width)
            assert np.array_equal(sum(slices.values()), F)
            checks += 1
    return f"{checks} slicings"


@timed(1.0)
def c10_render_golden():
    """golden SVGs for the 5x5 grid (map, D heatmap) byte-identical across runs"""
    from test_render import golden_outputs

    first, second = golden_outputs(), golden_outputs()
    assert first == second
    for name, svg in first.items():
        assert (DATA / "golden" / name).read_bytes() == svg.encode("utf-8"), name
    return ", ".join(sorted(first))


CRITERIA = [c01_lambda, c02_tukey, c03_apsp_oracles, c04_grid, c05_flow_counting, c06_alpha,
            c07_shopper_160, c08_shortest_walkers, c09_static_dynamic, c10_render_golden]


@pytest.mark.parametrize("number, check", list(enumerate(CRITERIA, start=1)), ids=[c.__name__ for c in CRITERIA])
def test_criterion(number, check):
    try:
        detail = check()
    except AssertionError as exc:
        RESULTS[number] = (False, f"{check.__doc__}: {exc}")
        raise
    RESULTS[number] = (True, f"{check.__doc__}: {detail}")


def report():
    return [f"{'PASS' if ok else 'FAIL'} [{n:2d}] {text}" for n, (ok, text) in sorted(RESULTS.items())]


if __name__ == "__main__":
    import sys

    sys.path.insert(0, str(Path(__file__).parent))
    for n, check in enumerate(CRITERIA, start=1):
        try:
            test_criterion(n, check)
        except AssertionError:
            pass
    print("\n".join(report()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
