"""``alleyflow`` command line.

Exit status: 0 on success, 1 for data or validation problems, 2 for usage
errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io as aio
from .apsp import apsp_distance_stats, floyd_warshall
from .errors import DataError
from .flow import (
    CATEGORIES,
    Thresholds,
    accumulate_flow,
    alley_totals,
    attractiveness_index,
    attractiveness_stats,
    categorize_flows,
    relative_rents,
)
from .render import PALETTES, RenderSpec, render_heatmap_svg, render_network_svg
from .stats import FIELDS, describe
from .synth import WalkerPolicy, generate_walkers, make_grid_venue
from .trajectory import lambda_index, validate_trajectory, walking_distances

DISTANCE_BIN = 1.0
ALPHA_BIN = 0.02


class UsageError(Exception):
    pass


# --- output helpers --------------------------------------------------------


def _plain(v):
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.floating,)):
        return float(v)
    return v


def _kv(pairs: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({k: _plain(v) for k, v in pairs.items()}, indent=2) + "\n"
    return "".join(f"{k},{_plain(v)}\n" for k, v in pairs.items())


def _stats_dict(st) -> dict:
    d = st.as_dict()
    return {k: d[k] for k in FIELDS}


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _inputs(args, *names) -> dict:
    return {n: getattr(args, n) for n in names if getattr(args, n, None)}


# --- loaders ---------------------------------------------------------------


def _graph(args):
    if not args.nodes or not args.links:
        raise UsageError("--nodes and --links are required")
    return aio.load_venue(args.nodes, args.links)


def _trajectories(args, graph, strict=True):
    if not args.trajectories:
        raise UsageError("--trajectories is required")
    trajs, errors = aio.load_trajectories(args.trajectories)
    if errors and strict:
        first = errors[0]
        raise DataError(
            f"{args.trajectories} line {first.line}: {first.message} ({len(errors)} malformed line(s))"
        )
    return trajs, errors


def _bin(args, default):
    return args.bin_width if args.bin_width is not None else default


# --- commands --------------------------------------------------------------


def cmd_net_stats(args):
    g = _graph(args)
    n_one_way = sum(1 for link in g.links if link.one_way)
    finite = np.isfinite(g.D) & ~np.eye(g.n, dtype=bool)
    lengths = g.D[finite]
    info = {
        "nodes": g.n,
        "links": len(g.links),
        "one_way_links": n_one_way,
        "directed_links": int(g.A.sum()),
        "alleys": len(g.alleys()),
        "finite_offdiagonal": int(finite.sum()),
        "symmetric": bool((g.A == g.A.T).all()),
        "total_alley_length": float(sum(g.D[i, j] for i, j in g.alleys())),
        "mean_link_length": float(lengths.mean()) if lengths.size else 0.0,
    }
    _emit(args, _kv(info, args.format))


def cmd_apsp(args):
    g = _graph(args)
    res = floyd_warshall(g)
    if args.export:
        head = aio.provenance_line(_inputs(args, "nodes", "links"))
        aio.write_text(args.export, aio.matrix_csv_text(res.S, g.ids, head))
    st = apsp_distance_stats(res, _bin(args, DISTANCE_BIN))
    _emit(args, _kv(_stats_dict(st), args.format))


def cmd_traj_validate(args):
    g = _graph(args)
    trajs, errors = _trajectories(args, g, strict=False)
    rows = []
    for e in errors:
        rows.append({"respondent_id": None, "line": e.line, "status": "malformed", "reasons": [e.message]})
    n_invalid = len(errors)
    for t in trajs:
        check = validate_trajectory(t, g)
        n_invalid += not check.valid
        rows.append({
            "respondent_id": t.respondent_id,
            "status": check.status,
            "nodes": len(t.nodes),
            "reasons": [f"{r}@{p}" for p, r in check.reasons],
        })
    if args.format == "json":
        text = json.dumps({"valid": len(trajs) + len(errors) - n_invalid, "invalid": n_invalid,
                           "trajectories": rows}, indent=2) + "\n"
    else:
        lines = ["respondent_id,status,reasons"]
        for r in rows:
            rid = r["respondent_id"] if r["respondent_id"] is not None else f"line{r['line']}"
            lines.append(f"{rid},{r['status']},{' '.join(r['reasons'])}")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return 1 if n_invalid else 0


def cmd_traj_distances(args):
    g = _graph(args)
    trajs, _ = _trajectories(args, g)
    dist = walking_distances(trajs, g)
    st = describe(dist, _bin(args, DISTANCE_BIN))
    if args.format == "json":
        text = json.dumps({
            "distances": {t.respondent_id: float(d) for t, d in zip(trajs, dist)},
            "stats": _stats_dict(st),
        }, indent=2) + "\n"
    else:
        text = "respondent_id,walking_distance\n" + "".join(
            f"{t.respondent_id},{float(d)!r}\n" for t, d in zip(trajs, dist)
        )
    _emit(args, text)


def cmd_lambda(args):
    if args.median_walk is not None or args.median_apsp is not None:
        if args.median_walk is None or args.median_apsp is None:
            raise UsageError("--median-walk and --median-apsp go together")
        walk, short = args.median_walk, args.median_apsp
    else:
        g = _graph(args)
        trajs, _ = _trajectories(args, g)
        walk = describe(walking_distances(trajs, g), DISTANCE_BIN).median
        short = apsp_distance_stats(floyd_warshall(g), DISTANCE_BIN).median
    lam = lambda_index(walk, short)
    _emit(args, _kv({
        "median_walk": walk,
        "median_apsp": short,
        "lambda": lam,
        "lambda_display": f"{lam:.2f}",
    }, args.format))


def _flow(args):
    g = _graph(args)
    trajs, _ = _trajectories(args, g)
    return g, accumulate_flow(trajs, g, study_label=args.label or ""), len(trajs)


def _thresholds(text):
    if text is None:
        return None
    try:
        lo, mid, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise UsageError("--thresholds expects three comma-separated numbers") from None
    return Thresholds(lo, mid, hi)


def cmd_flow(args):
    g, fm, n_traj = _flow(args)
    head = aio.provenance_line(_inputs(args, "nodes", "links", "trajectories"))
    if args.export:
        aio.write_text(args.export, aio.matrix_csv_text(fm.F, g.ids, head))
    cats, th = categorize_flows(alley_totals(fm), _thresholds(args.thresholds))
    if args.categories:
        aio.write_text(args.categories, aio.categories_csv_text(cats, th, head))
    info = {
        "trajectories": n_traj,
        "traversals": fm.total,
        "max_flow": int(fm.F.max()),
        "used_links": int((fm.F > 0).sum()),
        "threshold_low": th.low,
        "threshold_mid": th.mid,
        "threshold_high": th.high,
    }
    for name in CATEGORIES:
        info[f"alleys_{name}"] = sum(1 for c in cats if c.category == name)
    _emit(args, _kv(info, args.format))


def cmd_alpha(args):
    g, fm, _ = _flow(args)
    alpha = attractiveness_index(fm)
    head = aio.provenance_line(_inputs(args, "nodes", "links", "trajectories"))
    if args.export:
        aio.write_text(args.export, aio.matrix_csv_text(alpha.alpha, g.ids, head))
    info = {"max_flow": alpha.max_flow}
    info.update(_stats_dict(attractiveness_stats(alpha, _bin(args, ALPHA_BIN))))
    if args.max_rent is not None:
        rents = relative_rents(alpha, args.max_rent)
        info["max_rent"] = args.max_rent
        if args.rents:
            aio.write_text(args.rents, aio.matrix_csv_text(rents, g.ids, head))
    _emit(args, _kv(info, args.format))


def _spec(args):
    return RenderSpec(palette=args.palette, labels=not args.no_labels)


def cmd_render_map(args):
    g = _graph(args)
    if args.categories_in:
        cats, _ = aio.read_categories_csv(Path(args.categories_in).read_text(encoding="utf-8"))
    else:
        if args.trajectories:
            trajs, _ = _trajectories(args, g)
        else:
            trajs = []
        cats, _ = categorize_flows(alley_totals(accumulate_flow(trajs, g)), _thresholds(args.thresholds))
    _emit(args, render_network_svg(g, cats, _spec(args)))


def cmd_render_heatmap(args):
    g = _graph(args)
    mask = None
    if args.matrix == "D":
        M = g.D
    elif args.matrix == "S":
        M = floyd_warshall(g).S
    else:
        _, fm, _ = _flow(args)
        M = fm.F if args.matrix == "F" else attractiveness_index(fm).alpha
        # cells with no link are structural zeros
        mask = (g.A == 0) & ~np.eye(g.n, dtype=bool)
    _emit(args, render_heatmap_svg(M, g.ids, _spec(args), mask=mask))


def cmd_synth_grid(args):
    nodes, links = make_grid_venue(args.rows, args.cols, args.spacing)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    head = aio.provenance_line()
    aio.write_text(out / "nodes.csv", aio.nodes_csv_text(nodes, head))
    aio.write_text(out / "links.csv", aio.links_csv_text(links, head))
    sys.stderr.write(f"wrote {len(nodes)} nodes and {len(links)} links to {out}\n")


def cmd_synth_walkers(args):
    g = _graph(args)
    policy = WalkerPolicy(kind=args.policy, waypoints=args.waypoints, steps=args.steps,
                          no_backtrack=args.no_backtrack, seed=args.seed)
    trajs = generate_walkers(g, policy, args.count)
    text = aio.provenance_line(_inputs(args, "nodes", "links")) + f" policy={args.policy} seed={args.seed}\n"
    text += "".join(t.to_line() + "\n" for t in trajs)
    _emit(args, text)


# --- parser ----------------------------------------------------------------


def _global_options(parser, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    g = parser.add_argument_group("global options")
    g.add_argument("--nodes", default=d(None), help="nodes CSV (id,x,y)")
    g.add_argument("--links", default=d(None), help="links CSV (from,to,one_way)")
    g.add_argument("--trajectories", default=d(None), help="trajectory file (id,node-node-...)")
    g.add_argument("--bin-width", type=float, default=d(None),
                   help=f"histogram bin for the mode (default {DISTANCE_BIN} m, {ALPHA_BIN} for alpha)")
    g.add_argument("--seed", type=int, default=d(0))
    g.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    g.add_argument("--out", default=d(None), help="write the main output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alleyflow", description="Pedestrian flow analytics on walkway networks.")
    parser.add_argument("--version", action="version", version=f"alleyflow {__version__}")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(subparsers, name, func, help):
        p = subparsers.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    net = sub.add_parser("net", help="venue graph summaries").add_subparsers(dest="action", required=True)
    leaf(net, "stats", cmd_net_stats, "node/link counts and symmetry")

    p = leaf(sub, "apsp", cmd_apsp, "shortest-path distance statistics")
    p.add_argument("--export", help="write the shortest-distance matrix CSV")

    traj = sub.add_parser("traj", help="trajectory checks").add_subparsers(dest="action", required=True)
    leaf(traj, "validate", cmd_traj_validate, "check every route against the venue")
    leaf(traj, "distances", cmd_traj_distances, "walking distance per respondent")

    p = leaf(sub, "lambda", cmd_lambda, "median walking distance / median shortest path")
    p.add_argument("--median-walk", type=float)
    p.add_argument("--median-apsp", type=float)

    for name, func, help in (("flow", cmd_flow, "directed flow matrix and alley categories"),
                             ("alpha", cmd_alpha, "alley attractiveness index")):
        p = leaf(sub, name, func, help)
        p.add_argument("--export", help="write the matrix CSV")
        p.add_argument("--label", help="study label (venue + period)")
        p.add_argument("--thresholds", help="category thresholds low,mid,high (default: quartiles)")
        if name == "flow":
            p.add_argument("--categories", help="write per-alley categories CSV")
        else:
            p.add_argument("--max-rent", type=float)
            p.add_argument("--rents", help="with --max-rent, write the relative rent matrix CSV")

    render = sub.add_parser("render", help="SVG output").add_subparsers(dest="action", required=True)
    for name, func in (("map", cmd_render_map), ("heatmap", cmd_render_heatmap)):
        p = leaf(render, name, func, f"{name} SVG")
        p.add_argument("--palette", choices=sorted(PALETTES), default="heat")
        p.add_argument("--no-labels", action="store_true")
        p.add_argument("--label", help=argparse.SUPPRESS)
        if name == "map":
            p.add_argument("--categories-in", help="categories CSV from 'flow --categories'")
            p.add_argument("--thresholds")
        else:
            p.add_argument("--matrix", choices=("D", "S", "F", "alpha"), default="D")

    synth = sub.add_parser("synth", help="synthetic venues and walkers").add_subparsers(dest="action", required=True)
    p = leaf(synth, "grid", cmd_synth_grid, "grid venue (writes nodes.csv, links.csv into --out DIR)")
    p.add_argument("--rows", type=int, default=5)
    p.add_argument("--cols", type=int, default=5)
    p.add_argument("--spacing", type=float, default=10.0)
    p = leaf(synth, "walkers", cmd_synth_walkers, "generate trajectories on a venue")
    p.add_argument("--policy", choices=("shortest_path", "random_walk", "shopping_list"), default="shortest_path")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--waypoints", type=int, default=3)
    p.add_argument("--no-backtrack", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args) or 0
    except UsageError as exc:
        parser.error(str(exc))
    except (DataError, ValueError) as exc:
        sys.stderr.write(f"alleyflow: error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"alleyflow: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
