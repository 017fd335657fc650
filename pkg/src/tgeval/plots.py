"""Edge-reoccurrence visualizations: per-timestamp appearance counts and
per-pair lifespan rows, with SVG rendering and CSV export.

The appearance series counts, for every distinct timestamp, how many distinct
pairs are repeats of earlier observations versus brand new. The lifespan rows
give one row per distinct pair (first and last occurrence, split category),
ordered by first appearance then last appearance.

Rendering is deterministic: identical inputs produce byte-identical SVG.
Counts use distinct pairs per timestamp, so a pair repeated within a single
timestamp counts once.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .stream import ChronoSplit, EdgeStream, NodePair, edge_sets

CATEGORY_TRAIN_ONLY = "train_only"
CATEGORY_TRANSDUCTIVE = "transductive"
CATEGORY_INDUCTIVE = "inductive"
CATEGORY_VAL_ONLY = "val_only"

_CATEGORY_COLORS = {
    CATEGORY_TRAIN_ONLY: "#2ca02c",
    CATEGORY_TRANSDUCTIVE: "#ff7f0e",
    CATEGORY_INDUCTIVE: "#d62728",
    CATEGORY_VAL_ONLY: "#7f7f7f",
}

_REPEATED_COLOR = "#9e9e9e"
_NEW_COLOR = "#d62728"


class TeaPoint(NamedTuple):
    timestamp: float
    repeated: int
    new: int


class TetRow(NamedTuple):
    pair: NodePair
    first_ts: float
    last_ts: float
    category: str


def tea_series(stream: EdgeStream) -> list[TeaPoint]:
    """Per-timestamp counts of repeated vs newly observed distinct pairs.

    One chronological pass; "repeated" means the pair occurred at any
    strictly earlier timestamp.
    """
    src = stream.src.tolist()
    dst = stream.dst.tolist()
    ts = stream.ts.tolist()
    seen: set[tuple[int, int]] = set()
    series: list[TeaPoint] = []
    i, n = 0, len(ts)
    while i < n:
        t = ts[i]
        group: set[tuple[int, int]] = set()
        while i < n and ts[i] == t:
            group.add((src[i], dst[i]))
            i += 1
        new = sum(1 for p in group if p not in seen)
        series.append(TeaPoint(t, len(group) - new, new))
        seen |= group
    return series


def tet_rows(
    stream: EdgeStream, split: ChronoSplit, history: str = "train"
) -> list[TetRow]:
    """One row per distinct pair: lifespan and split category.

    Rows are sorted by first appearance, then last appearance (pair id breaks
    remaining ties so the order is total). Under ``history="train"`` pairs
    that appear only in the validation span get their own ``val_only``
    category; under ``history="train+val"`` they fold into the train side.
    """
    sets = edge_sets(stream, split)
    train = sets.history_pairs(history)
    test = sets.test_pairs

    first: dict[NodePair, float] = {}
    last: dict[NodePair, float] = {}
    for pair, t in zip(stream.pairs(), stream.ts.tolist()):
        if pair not in first:
            first[pair] = t
        last[pair] = t

    rows: list[TetRow] = []
    for pair, first_ts in first.items():
        in_train = pair in train
        in_test = pair in test
        if in_train and in_test:
            category = CATEGORY_TRANSDUCTIVE
        elif in_train:
            category = CATEGORY_TRAIN_ONLY
        elif in_test:
            category = CATEGORY_INDUCTIVE
        else:
            category = CATEGORY_VAL_ONLY
        rows.append(TetRow(pair, first_ts, last[pair], category))
    rows.sort(key=lambda r: (r.first_ts, r.last_ts, r.pair))
    return rows


def tea_csv(series: Sequence[TeaPoint]) -> str:
    lines = ["t,repeated,new"]
    lines.extend(f"{repr(p.timestamp)},{p.repeated},{p.new}" for p in series)
    return "\n".join(lines) + "\n"


def tet_csv(rows: Sequence[TetRow]) -> str:
    lines = ["pair_id,source,destination,first_ts,last_ts,category"]
    lines.extend(
        f"{i},{r.pair.source},{r.pair.destination},"
        f"{repr(r.first_ts)},{repr(r.last_ts)},{r.category}"
        for i, r in enumerate(rows)
    )
    return "\n".join(lines) + "\n"


def bin_tea_series(series: Sequence[TeaPoint], bins: int) -> list[TeaPoint]:
    """Aggregate a series into at most ``bins`` equal-width time buckets.

    Summed counts are preserved exactly. Series with no more distinct
    timestamps than ``bins`` come back unchanged.
    """
    if bins < 1:
        raise ValueError("bins must be >= 1")
    if len(series) <= bins:
        return list(series)
    t0 = series[0].timestamp
    t1 = series[-1].timestamp
    span = t1 - t0
    repeated = [0] * bins
    new = [0] * bins
    for p in series:
        if span > 0:
            idx = min(int((p.timestamp - t0) / span * bins), bins - 1)
        else:
            idx = 0
        repeated[idx] += p.repeated
        new[idx] += p.new
    width = span / bins if span > 0 else 0.0
    return [
        TeaPoint(t0 + (i + 0.5) * width, repeated[i], new[i]) for i in range(bins)
    ]


def _svg_header(width: int, height: int, title: str) -> list[str]:
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{width / 2:.1f}" y="18" font-size="14" '
            f'text-anchor="middle" font-family="sans-serif">{title}</text>'
        )
    return parts


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_tea_svg(
    series: Sequence[TeaPoint], bins: int = 50, title: str = ""
) -> str:
    """Stacked-bar chart: repeated counts below, new counts above.

    Bars are positioned by bucket index; when the series has more distinct
    timestamps than ``bins`` it is time-binned first.
    """
    if not series:
        raise ValueError("cannot render an empty series")
    binned = bin_tea_series(series, bins)
    width, height = 900, 450
    left, right, top, bottom = 60, 20, 30, 40
    plot_w = width - left - right
    plot_h = height - top - bottom

    max_total = max(p.repeated + p.new for p in binned)
    max_total = max(max_total, 1)
    nbars = len(binned)
    bar_w = plot_w / nbars
    y_of = lambda v: top + plot_h * (1 - v / max_total)

    parts = _svg_header(width, height, title)
    parts.append(
        f'<line x1="{left}" y1="{top + plot_h}" x2="{left + plot_w}" '
        f'y2="{top + plot_h}" stroke="#000000" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" '
        f'stroke="#000000" stroke-width="1"/>'
    )
    for i, p in enumerate(binned):
        x = left + i * bar_w
        w = max(bar_w * 0.9, 0.5)
        if p.repeated:
            y = y_of(p.repeated)
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(w)}" '
                f'height="{_fmt(top + plot_h - y)}" fill="{_REPEATED_COLOR}"/>'
            )
        if p.new:
            y_top = y_of(p.repeated + p.new)
            y_bot = y_of(p.repeated)
            parts.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y_top)}" width="{_fmt(w)}" '
                f'height="{_fmt(y_bot - y_top)}" fill="{_NEW_COLOR}"/>'
            )
    parts.append(
        f'<text x="{left}" y="{height - 10}" font-size="11" '
        f'font-family="sans-serif">t={repr(binned[0].timestamp)}</text>'
    )
    parts.append(
        f'<text x="{left + plot_w}" y="{height - 10}" font-size="11" '
        f'text-anchor="end" font-family="sans-serif">t={repr(binned[-1].timestamp)}</text>'
    )
    parts.append(
        f'<text x="12" y="{top + 10}" font-size="11" '
        f'font-family="sans-serif">{max_total}</text>'
    )
    legend = [("repeated", _REPEATED_COLOR), ("new", _NEW_COLOR)]
    for i, (label, color) in enumerate(legend):
        x = left + plot_w - 150 + i * 80
        parts.append(
            f'<rect x="{x}" y="8" width="10" height="10" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{x + 14}" y="17" font-size="11" '
            f'font-family="sans-serif">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_tet_svg(
    rows: Sequence[TetRow], t_split: float, title: str = ""
) -> str:
    """Lifespan chart: one horizontal bar per pair in row order, colored by
    category, with a vertical marker at the split time."""
    if not rows:
        raise ValueError("cannot render an empty row set")
    width, height = 900, 520
    left, right, top, bottom = 60, 20, 30, 40
    plot_w = width - left - right
    plot_h = height - top - bottom

    t0 = min(r.first_ts for r in rows)
    t1 = max(r.last_ts for r in rows)
    t1 = max(t1, t_split)
    span = t1 - t0 or 1.0
    x_of = lambda t: left + (t - t0) / span * plot_w
    row_h = plot_h / len(rows)
    bar_h = max(min(row_h, 4.0), 0.3)

    parts = _svg_header(width, height, title)
    for i, r in enumerate(rows):
        x1 = x_of(r.first_ts)
        x2 = max(x_of(r.last_ts), x1 + 0.5)
        y = top + i * row_h
        parts.append(
            f'<rect x="{_fmt(x1)}" y="{_fmt(y)}" width="{_fmt(x2 - x1)}" '
            f'height="{_fmt(bar_h)}" fill="{_CATEGORY_COLORS[r.category]}"/>'
        )
    xs = x_of(t_split)
    parts.append(
        f'<line x1="{_fmt(xs)}" y1="{top}" x2="{_fmt(xs)}" y2="{top + plot_h}" '
        f'stroke="#000000" stroke-width="1.5" stroke-dasharray="6,3"/>'
    )
    parts.append(
        f'<text x="{_fmt(xs)}" y="{top - 6}" font-size="11" text-anchor="middle" '
        f'font-family="sans-serif">t_split</text>'
    )
    present = [c for c in _CATEGORY_COLORS if any(r.category == c for r in rows)]
    for i, c in enumerate(present):
        x = left + i * 120
        parts.append(
            f'<rect x="{x}" y="{height - 22}" width="10" height="10" '
            f'fill="{_CATEGORY_COLORS[c]}"/>'
        )
        parts.append(
            f'<text x="{x + 14}" y="{height - 13}" font-size="11" '
            f'font-family="sans-serif">{c}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
