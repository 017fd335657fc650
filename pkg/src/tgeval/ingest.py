"""Parsers for edge-list files.

Two on-disk layouts are supported:

* interaction CSV: ``user_id,item_id,timestamp,state_label,f1..fk`` with a
  mandatory header. User and item ids live in separate dense spaces and are
  mapped into one node-id space with items offset after users (bipartite
  usage). ``state_label`` is ignored; trailing float columns become edge
  features.
* plain edge list: ``source,destination,timestamp[,weight]`` with an
  optional header (auto-detected). Id tokens are arbitrary strings and are
  densified in order of first appearance in the time-sorted stream, which
  makes export->parse a perfect round trip.

Blank lines are skipped (and counted); any malformed row is a hard error
carrying its line number — silent data loss corrupts benchmarks.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .stream import EdgeStream


class ParseError(ValueError):
    """A malformed input file; message includes the offending line number."""


@dataclass(frozen=True)
class ParseReport:
    edges_read: int
    nodes_assigned: int
    lines_skipped: int
    feature_dim: int


def _read_rows(path: str | Path) -> tuple[list[tuple[int, list[str]]], int, bool]:
    """Split a CSV file into (lineno, fields) rows, counting blank lines.

    Returns (rows, blank_count, had_lines).
    """
    rows: list[tuple[int, list[str]]] = []
    blanks = 0
    had = False
    with open(path, "r", encoding="utf-8", newline="") as f:
        for lineno, raw in enumerate(f, start=1):
            had = True
            line = raw.rstrip("\r\n")
            if not line.strip():
                blanks += 1
                continue
            rows.append((lineno, line.split(",")))
    return rows, blanks, had


def _count_blank_lines(path: str | Path) -> int:
    blanks = 0
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.strip():
                blanks += 1
    return blanks


def _interaction_fast_path(path: str | Path) -> tuple[np.ndarray, int] | None:
    """Bulk-parse the all-numeric interaction matrix with numpy.

    Returns (matrix, blank_count), or None when the file needs the row-by-row
    parser (malformed content, so errors carry line numbers)."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            matrix = np.loadtxt(
                path, delimiter=",", skiprows=1, ndmin=2, dtype=np.float64
            )
    except Exception:
        return None
    if matrix.size == 0 or matrix.shape[1] < 4:
        return None
    ids = matrix[:, :2]
    if np.any(ids < 0) or np.any(ids != np.floor(ids)) or not np.all(np.isfinite(ids)):
        return None
    ts = matrix[:, 2]
    if np.any(~np.isfinite(ts)) or np.any(ts < 0):
        return None
    return matrix, _count_blank_lines(path)


def parse_interaction_csv(
    path: str | Path, directed: bool = True, name: str = ""
) -> tuple[EdgeStream, ParseReport]:
    """Parse a user/item interaction CSV into an :class:`EdgeStream`.

    The header line is mandatory. Rows are stable-sorted by timestamp; the
    produced node-id space is users first, then items (``item + user_count``).
    """
    fast = _interaction_fast_path(path)
    if fast is not None:
        matrix, blanks = fast
        n, cols = matrix.shape
        users = matrix[:, 0].astype(np.int64)
        items = matrix[:, 1].astype(np.int64)
        ts = matrix[:, 2].copy()
        feat_dim = cols - 4
        feats = matrix[:, 4:].copy() if feat_dim else None
        return _assemble_interaction(
            path, users, items, ts, feats, feat_dim, blanks, directed, name
        )

    rows, blanks, had = _read_rows(path)
    if not had:
        raise ParseError(f"{path}: empty file")
    if not rows:
        raise ParseError(f"{path}: no data lines")
    data = rows[1:]
    if not data:
        raise ParseError(f"{path}: header but no data rows")

    n = len(data)
    users = np.empty(n, dtype=np.int64)
    items = np.empty(n, dtype=np.int64)
    ts = np.empty(n, dtype=np.float64)
    feat_dim: int | None = None
    feats: np.ndarray | None = None

    for i, (lineno, fields) in enumerate(data):
        if len(fields) < 4:
            raise ParseError(
                f"{path}:{lineno}: expected at least 4 columns, got {len(fields)}"
            )
        if feat_dim is None:
            feat_dim = len(fields) - 4
            if feat_dim:
                feats = np.empty((n, feat_dim), dtype=np.float64)
        elif len(fields) - 4 != feat_dim:
            raise ParseError(
                f"{path}:{lineno}: expected {feat_dim + 4} columns, got {len(fields)}"
            )
        try:
            users[i] = int(fields[0])
            items[i] = int(fields[1])
            ts[i] = float(fields[2])
            float(fields[3])  # state label: validated, ignored
            if feat_dim:
                feats[i] = [float(x) for x in fields[4:]]
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: non-numeric field ({exc})") from None
        if users[i] < 0 or items[i] < 0:
            raise ParseError(f"{path}:{lineno}: negative node id")
        if not ts[i] >= 0:
            raise ParseError(f"{path}:{lineno}: invalid timestamp {fields[2]!r}")

    return _assemble_interaction(
        path, users, items, ts, feats, feat_dim or 0, blanks, directed, name
    )


def _assemble_interaction(
    path, users, items, ts, feats, feat_dim, blanks, directed, name
) -> tuple[EdgeStream, ParseReport]:
    user_count = int(users.max()) + 1
    item_count = int(items.max()) + 1
    src = users
    dst = items + user_count

    order = np.argsort(ts, kind="stable")
    src, dst, ts = src[order], dst[order], ts[order]
    if feats is not None:
        feats = feats[order]
    if not directed:
        # users always precede items in the shared space, so pairs are
        # canonical already; the swap is kept for safety.
        swap = src > dst
        src[swap], dst[swap] = dst[swap], src[swap]

    stream = EdgeStream(
        src=src,
        dst=dst,
        ts=ts,
        node_count=user_count + item_count,
        directed=directed,
        features=feats,
        name=name or Path(path).stem,
        bipartite_users=user_count,
    )
    report = ParseReport(
        edges_read=len(stream),
        nodes_assigned=stream.node_count,
        lines_skipped=blanks,
        feature_dim=feat_dim,
    )
    return stream, report


def _looks_like_header(fields: list[str]) -> bool:
    # Data rows must carry a numeric timestamp in the third column; id tokens
    # may be arbitrary strings, so the timestamp column decides.
    if len(fields) < 3:
        return False
    try:
        float(fields[2])
        return False
    except ValueError:
        return True


def parse_edgelist_csv(
    path: str | Path, directed: bool = True, name: str = ""
) -> tuple[EdgeStream, ParseReport]:
    """Parse a ``source,destination,timestamp[,weight]`` CSV.

    A header is auto-detected (non-numeric timestamp column on the first
    line). Id tokens are densified by first appearance in the time-sorted
    stream; column arity (3 or 4) is fixed by the first data row.
    """
    rows, blanks, had = _read_rows(path)
    if not had:
        raise ParseError(f"{path}: empty file")
    if not rows:
        raise ParseError(f"{path}: no data lines")
    if _looks_like_header(rows[0][1]):
        rows = rows[1:]
        if not rows:
            raise ParseError(f"{path}: header but no data rows")

    arity = len(rows[0][1])
    if arity not in (3, 4):
        raise ParseError(
            f"{path}:{rows[0][0]}: expected 3 or 4 columns, got {arity}"
        )

    n = len(rows)
    src_tok: list[str] = [""] * n
    dst_tok: list[str] = [""] * n
    ts = np.empty(n, dtype=np.float64)
    weights = np.empty(n, dtype=np.float64) if arity == 4 else None

    for i, (lineno, fields) in enumerate(rows):
        if len(fields) != arity:
            raise ParseError(
                f"{path}:{lineno}: expected {arity} columns, got {len(fields)}"
            )
        src_tok[i] = fields[0].strip()
        dst_tok[i] = fields[1].strip()
        try:
            ts[i] = float(fields[2])
            if weights is not None:
                weights[i] = float(fields[3])
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: non-numeric field ({exc})") from None
        if not ts[i] >= 0:
            raise ParseError(f"{path}:{lineno}: invalid timestamp {fields[2]!r}")

    order = np.argsort(ts, kind="stable").tolist()
    ids: dict[str, int] = {}
    src = np.empty(n, dtype=np.int64)
    dst = np.empty(n, dtype=np.int64)
    for rank, i in enumerate(order):
        for tok, arr in ((src_tok[i], src), (dst_tok[i], dst)):
            node = ids.get(tok)
            if node is None:
                node = len(ids)
                ids[tok] = node
            arr[rank] = node
    ts = ts[np.asarray(order)]
    if weights is not None:
        weights = weights[np.asarray(order)]
    if not directed:
        swap = src > dst
        tmp = src[swap].copy()
        src[swap] = dst[swap]
        dst[swap] = tmp

    stream = EdgeStream(
        src=src,
        dst=dst,
        ts=ts,
        node_count=len(ids),
        directed=directed,
        weights=weights,
        name=name or Path(path).stem,
    )
    report = ParseReport(
        edges_read=n,
        nodes_assigned=len(ids),
        lines_skipped=blanks,
        feature_dim=0,
    )
    return stream, report


def parse_file(
    path: str | Path, fmt: str, directed: bool = True, name: str = ""
) -> tuple[EdgeStream, ParseReport]:
    """Dispatch on ``fmt`` in {interaction, edgelist}."""
    if fmt == "interaction":
        return parse_interaction_csv(path, directed=directed, name=name)
    if fmt == "edgelist":
        return parse_edgelist_csv(path, directed=directed, name=name)
    raise ValueError(f"unknown format: {fmt!r}")


def _fmt_float(x: float) -> str:
    return repr(float(x))


def write_edgelist_csv(stream: EdgeStream, path: str | Path) -> None:
    """Export a stream as ``source,destination,timestamp[,weight]`` CSV.

    Re-parsing the result with :func:`parse_edgelist_csv` (same ``directed``
    flag) reproduces the stream exactly.
    """
    with_weights = stream.weights is not None
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("source,destination,timestamp,weight\n" if with_weights
                else "source,destination,timestamp\n")
        src = stream.src.tolist()
        dst = stream.dst.tolist()
        ts = stream.ts.tolist()
        if with_weights:
            w = stream.weights.tolist()
            for i in range(len(src)):
                f.write(f"{src[i]},{dst[i]},{_fmt_float(ts[i])},{_fmt_float(w[i])}\n")
        else:
            for i in range(len(src)):
                f.write(f"{src[i]},{dst[i]},{_fmt_float(ts[i])}\n")


def write_interaction_csv(stream: EdgeStream, path: str | Path) -> None:
    """Export a bipartite stream back to the interaction CSV layout."""
    if stream.bipartite_users is None:
        raise ValueError("stream has no user/item boundary; cannot export")
    u = stream.bipartite_users
    k = stream.feature_dim
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        cols = "user_id,item_id,timestamp,state_label"
        if k:
            cols += "," + ",".join(f"f{i}" for i in range(1, k + 1))
        f.write(cols + "\n")
        src = stream.src.tolist()
        dst = stream.dst.tolist()
        ts = stream.ts.tolist()
        for i in range(len(src)):
            row = f"{src[i]},{dst[i] - u},{_fmt_float(ts[i])},0"
            if k:
                row += "," + ",".join(_fmt_float(x) for x in stream.features[i].tolist())
            f.write(row + "\n")
