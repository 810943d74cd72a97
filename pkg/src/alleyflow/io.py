"""Reading and writing the CSV and text formats.

Formats
-------
nodes.csv        ``id,x,y``
links.csv        ``from,to,one_way`` with ``one_way`` 0 or 1
trajectories     ``respondent_id,node-node-...`` one per line
ntxy.csv         ``n,t,x,y``
matrix csv       header ``id,<node ids>``, then one labelled row per node; ``inf``
                 marks no connection
categories.csv   ``from,to,total,category,threshold_low,threshold_mid,threshold_high``

Lines starting with ``#`` are comments everywhere.  Files written here start
with one such comment carrying the package version and input digests.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import re
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .errors import CsvSchemaError, DataError, EmptyGraph
from .flow import AlleyCategory, Thresholds
from .netmodel import (
    Link,
    Node,
    WalkwayGraph,
    build_graph,
    format_value,
    matrix_table,
    parse_matrix_table,
)
from .trajectory import NtxyRecord, ParseError, StaticTrajectory, parse_trajectories

NODE_COLUMNS = ("id", "x", "y")
LINK_COLUMNS = ("from", "to", "one_way")
NTXY_COLUMNS = ("n", "t", "x", "y")
CATEGORY_COLUMNS = (
    "from", "to", "total", "category", "threshold_low", "threshold_mid", "threshold_high",
)


def provenance_line(inputs: dict[str, str | Path] | None = None) -> str:
    """``# alleyflow <version> name=sha256:<12 hex> ...``"""
    parts = [f"# alleyflow {__version__}"]
    for name, path in sorted((inputs or {}).items()):
        digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()[:12]
        parts.append(f"{name}=sha256:{digest}")
    return " ".join(parts)


def _records(text: str, source: str, columns: Sequence[str]):
    """Yield ``(line_number, row_dict)`` after checking the header."""
    numbered = [
        (k, line) for k, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not numbered:
        return
    reader = csv.reader([line for _, line in numbered])
    header = [h.strip() for h in next(reader)]
    missing = [c for c in columns if c not in header]
    extra = [c for c in header if c not in columns]
    if missing or extra:
        bits = []
        if missing:
            bits.append(f"missing column(s) {', '.join(missing)}")
        if extra:
            bits.append(f"unexpected column(s) {', '.join(extra)}")
        raise CsvSchemaError(f"{source} line {numbered[0][0]}: {'; '.join(bits)}")
    for (lineno, _), row in zip(numbered[1:], reader):
        if len(row) != len(header):
            raise CsvSchemaError(
                f"{source} line {lineno}: expected {len(header)} fields, found {len(row)}"
            )
        yield lineno, dict(zip(header, (v.strip() for v in row)))


def _number(value: str, source: str, lineno: int, column: str) -> float:
    try:
        out = float(value)
    except ValueError:
        raise CsvSchemaError(f"{source} line {lineno}: {column}={value!r} is not a number") from None
    if not math.isfinite(out):
        raise CsvSchemaError(f"{source} line {lineno}: {column}={value!r} is not finite")
    return out


def parse_nodes(text: str, source: str = "nodes") -> tuple[list[Node], list[int]]:
    nodes, lines = [], []
    for lineno, row in _records(text, source, NODE_COLUMNS):
        if not row["id"]:
            raise CsvSchemaError(f"{source} line {lineno}: empty node id")
        if "-" in row["id"] or "," in row["id"]:
            raise CsvSchemaError(f"{source} line {lineno}: node id {row['id']!r} contains '-' or ','")
        nodes.append(Node(row["id"], _number(row["x"], source, lineno, "x"),
                          _number(row["y"], source, lineno, "y")))
        lines.append(lineno)
    return nodes, lines


def parse_links(text: str, source: str = "links") -> tuple[list[Link], list[int]]:
    links, lines = [], []
    for lineno, row in _records(text, source, LINK_COLUMNS):
        if row["one_way"] not in ("0", "1"):
            raise CsvSchemaError(f"{source} line {lineno}: one_way must be 0 or 1, got {row['one_way']!r}")
        links.append(Link(row["from"], row["to"], row["one_way"] == "1"))
        lines.append(lineno)
    return links, lines


def load_venue(nodes_csv: str | Path, links_csv: str | Path) -> WalkwayGraph:
    """Read both venue files and build the graph.

    Build errors are re-raised with the offending file line attached.
    """
    nodes_csv, links_csv = Path(nodes_csv), Path(links_csv)
    nodes, node_lines = parse_nodes(nodes_csv.read_text(encoding="utf-8"), str(nodes_csv))
    if not nodes:
        raise EmptyGraph(f"{nodes_csv}: no nodes")
    links, link_lines = parse_links(links_csv.read_text(encoding="utf-8"), str(links_csv))
    try:
        return build_graph(nodes, links)
    except DataError as exc:
        raise type(exc)(_locate(str(exc), nodes_csv, node_lines, links_csv, link_lines)) from exc


def _locate(message, nodes_csv, node_lines, links_csv, link_lines):
    # build_graph reports list positions; map them back to file lines
    m = re.match(r"link (\d+) ", message)
    if m:
        return f"{links_csv} line {link_lines[int(m.group(1))]}: {message}"
    m = re.search(r"at position (\d+)", message)
    if m:
        return f"{nodes_csv} line {node_lines[int(m.group(1))]}: {message}"
    return message


def write_text(path: str | Path | None, text: str) -> str:
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _csv_text(rows: Iterable[Sequence], header_comment: str | None) -> str:
    buf = io.StringIO()
    if header_comment:
        buf.write(header_comment + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def nodes_csv_text(nodes: Sequence[Node], header_comment: str | None = None) -> str:
    return _csv_text([NODE_COLUMNS, *((n.id, repr(n.x), repr(n.y)) for n in nodes)], header_comment)


def links_csv_text(links: Sequence[Link], header_comment: str | None = None) -> str:
    rows = [(l.source, l.target, int(l.one_way)) for l in links]
    return _csv_text([LINK_COLUMNS, *rows], header_comment)


def matrix_csv_text(matrix: np.ndarray, labels: Sequence[str], header_comment: str | None = None) -> str:
    return _csv_text(matrix_table(matrix, labels), header_comment)


def read_matrix_csv(text: str) -> tuple[list[str], np.ndarray]:
    rows = [
        row for row in csv.reader(
            line for line in text.splitlines() if line.strip() and not line.startswith("#")
        )
    ]
    return parse_matrix_table(rows)


def categories_csv_text(
    categories: Sequence[AlleyCategory], thresholds: Thresholds, header_comment: str | None = None,
) -> str:
    th = [format_value(thresholds.low), format_value(thresholds.mid), format_value(thresholds.high)]
    rows = [(c.source, c.target, c.total, c.category, *th) for c in categories]
    return _csv_text([CATEGORY_COLUMNS, *rows], header_comment)


def read_categories_csv(text: str, source: str = "categories") -> tuple[list[AlleyCategory], Thresholds]:
    cats, th = [], None
    for lineno, row in _records(text, source, CATEGORY_COLUMNS):
        cats.append(AlleyCategory(row["from"], row["to"], int(row["total"]), row["category"]))
        th = Thresholds(float(row["threshold_low"]), float(row["threshold_mid"]), float(row["threshold_high"]))
    return cats, th or Thresholds(0.0, 0.0, 0.0)


def load_trajectories(path: str | Path) -> tuple[list[StaticTrajectory], list[ParseError]]:
    return parse_trajectories(Path(path).read_text(encoding="utf-8"))


def parse_ntxy(text: str, source: str = "ntxy") -> list[NtxyRecord]:
    return [
        NtxyRecord(row["n"], _number(row["t"], source, k, "t"),
                   _number(row["x"], source, k, "x"), _number(row["y"], source, k, "y"))
        for k, row in _records(text, source, NTXY_COLUMNS)
    ]


def ntxy_csv_text(records: Sequence[NtxyRecord], header_comment: str | None = None) -> str:
    rows = [(r.n, repr(r.t), repr(r.x), repr(r.y)) for r in records]
    return _csv_text([NTXY_COLUMNS, *rows], header_comment)
