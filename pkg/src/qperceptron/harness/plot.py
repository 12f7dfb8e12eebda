"""SVG line plots of result CSVs (one polyline per method/metric series)."""

import csv
from collections import defaultdict
from xml.sax.saxutils import escape

from ..errors import DomainError
from .experiment import CSV_HEADER

WIDTH, HEIGHT = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 60.0, 500.0, 20.0, 350.0
METRICS = ("train_error", "test_error", "loss", "accuracy")
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def read_series(csv_path, seed=None):
    """Map ``"method:metric"`` to ``[(iteration, value), ...]``.

    Values are averaged over seeds unless ``seed`` selects one.
    """
    with open(csv_path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DomainError(f"{csv_path} is empty")
        if tuple(reader.fieldnames) != CSV_HEADER:
            raise DomainError(f"{csv_path}: unexpected header {reader.fieldnames}")
        sums = defaultdict(lambda: defaultdict(float))
        counts = defaultdict(lambda: defaultdict(int))
        for row in reader:
            if seed is not None and int(row["seed"]) != seed:
                continue
            it = int(row["iteration"])
            for metric in METRICS:
                key = f"{row['method']}:{metric}"
                sums[key][it] += float(row[metric])
                counts[key][it] += 1
    if not sums:
        raise DomainError(f"{csv_path} has no data rows")
    return {key: [(it, sums[key][it] / counts[key][it]) for it in sorted(sums[key])] for key in sorted(sums)}


def scale(points, xlim, ylim):
    """Affine map from data coordinates to the SVG plot box (y grows downward)."""
    (x0, x1), (y0, y1) = xlim, ylim
    out = []
    for x, y in points:
        px = LEFT + (x - x0) / (x1 - x0) * (RIGHT - LEFT)
        py = BOTTOM - (y - y0) / (y1 - y0) * (BOTTOM - TOP)
        out.append((px, py))
    return out


def _limits(values):
    lo, hi = min(values), max(values)
    if lo == hi:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def render_svg(series, keys, title=""):
    pts = [p for k in keys for p in series[k]]
    xlim = _limits([p[0] for p in pts])
    ylim = _limits([p[1] for p in pts])
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<line x1="{LEFT}" y1="{BOTTOM}" x2="{RIGHT}" y2="{BOTTOM}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{BOTTOM}" stroke="black"/>',
        f'<text x="{(LEFT + RIGHT) / 2}" y="{HEIGHT - 15}" text-anchor="middle" font-size="13">training index</text>',
        f'<text x="15" y="{(TOP + BOTTOM) / 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 15 {(TOP + BOTTOM) / 2})">value</text>',
    ]
    for x, anchor in ((xlim[0], "start"), (xlim[1], "end")):
        px = scale([(x, ylim[0])], xlim, ylim)[0][0]
        out.append(f'<text x="{px:.3f}" y="{BOTTOM + 15}" text-anchor="{anchor}" font-size="11">{x:g}</text>')
    for y in ylim:
        py = scale([(xlim[0], y)], xlim, ylim)[0][1]
        out.append(f'<text x="{LEFT - 5}" y="{py:.3f}" text-anchor="end" font-size="11">{y:.3g}</text>')
    if title:
        out.append(f'<text x="{(LEFT + RIGHT) / 2}" y="14" text-anchor="middle" font-size="13">{escape(title)}</text>')
    for i, key in enumerate(keys):
        color = COLORS[i % len(COLORS)]
        coords = " ".join(f"{px:.3f},{py:.3f}" for px, py in scale(series[key], xlim, ylim))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>')
        ly = TOP + 10 + 18 * i
        out.append(f'<line x1="{RIGHT + 10}" y1="{ly}" x2="{RIGHT + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{RIGHT + 35}" y="{ly + 4}" font-size="11">{escape(key)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(csv_path, series_keys, out_path, seed=None, title=""):
    """Write an SVG with one polyline per requested ``"method:metric"`` key."""
    series = read_series(csv_path, seed)
    keys = list(series_keys)
    missing = [k for k in keys if k not in series]
    if missing or not keys:
        raise DomainError(f"unknown series {missing}; available: {', '.join(series)}")
    svg = render_svg(series, keys, title)
    with open(out_path, "w") as fh:
        fh.write(svg)
    return out_path
