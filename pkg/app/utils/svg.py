"""Hand-written SVG 1.1 charts: grouped bars, score traces and a labelled scatter."""
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

COLORS = ['#1f77b4', '#d62728', '#2ca02c', '#ff7f0e', '#9467bd', '#8c564b']

WIDTH, HEIGHT = 960, 540
LEFT, RIGHT, TOP, BOTTOM = 80, 200, 60, 120


def _escape(text: str) -> str:
    return (str(text).replace('&', '&amp;').replace('<', '&lt;').replace('>', '&gt;')
            .replace('"', '&quot;').replace("'", '&#39;'))


def _header(title: str) -> List[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{WIDTH / 2:.1f}" y="32" text-anchor="middle" font-size="20" font-family="Arial">'
        f'{_escape(title)}</text>',
    ]


def _y_axis(lines: List[str], y_min: float, y_max: float, to_px, ticks: int = 5):
    right = WIDTH - RIGHT
    for i in range(ticks + 1):
        value = y_min + (y_max - y_min) * i / ticks
        y = to_px(value)
        lines.append(f'<line x1="{LEFT}" y1="{y:.2f}" x2="{right}" y2="{y:.2f}" stroke="#d9d9d9" stroke-width="1"/>')
        lines.append(f'<text x="{LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" font-size="12" '
                     f'font-family="Arial">{_format_tick(value)}</text>')
    lines.append(f'<line x1="{LEFT}" y1="{HEIGHT - BOTTOM}" x2="{right}" y2="{HEIGHT - BOTTOM}" '
                 f'stroke="#000000" stroke-width="1.5"/>')
    lines.append(f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{HEIGHT - BOTTOM}" stroke="#000000" stroke-width="1.5"/>')


def _legend(lines: List[str], names: Sequence[str]):
    x = WIDTH - RIGHT + 20
    for idx, name in enumerate(names):
        y = TOP + 10 + idx * 22
        lines.append(f'<rect x="{x}" y="{y - 10}" width="14" height="14" fill="{COLORS[idx % len(COLORS)]}"/>')
        lines.append(f'<text x="{x + 20}" y="{y + 2}" font-size="13" font-family="Arial">{_escape(name)}</text>')


def _format_tick(value: float) -> str:
    if abs(value) >= 100:
        return f'{value:.0f}'
    if abs(value) >= 10:
        return f'{value:.1f}'
    return f'{value:.2f}'


def bar_chart(title: str, categories: Sequence[str], series: Dict[str, Sequence[float]]) -> str:
    """Grouped bars, one group per category and one bar per series, on a [0, 1] axis."""
    if not categories:
        raise ValueError('bar chart needs at least one category')
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def to_px(v: float) -> float:
        return HEIGHT - BOTTOM - min(max(v, 0.0), 1.0) * plot_h

    lines = _header(title)
    _y_axis(lines, 0.0, 1.0, to_px)
    group_w = plot_w / len(categories)
    bar_w = 0.8 * group_w / max(len(series), 1)
    for c, category in enumerate(categories):
        x0 = LEFT + c * group_w + 0.1 * group_w
        for s, values in enumerate(series.values()):
            value = float(values[c])
            top = to_px(value)
            lines.append(f'<rect x="{x0 + s * bar_w:.2f}" y="{top:.2f}" width="{bar_w:.2f}" '
                         f'height="{HEIGHT - BOTTOM - top:.2f}" fill="{COLORS[s % len(COLORS)]}">'
                         f'<title>{_escape(category)}: {value:.4f}</title></rect>')
        cx = LEFT + (c + 0.5) * group_w
        ly = HEIGHT - BOTTOM + 14
        lines.append(f'<text x="{cx:.2f}" y="{ly}" text-anchor="end" font-size="11" font-family="Arial" '
                     f'transform="rotate(-35 {cx:.2f} {ly})">{_escape(category)}</text>')
    _legend(lines, list(series))
    lines.append('</svg>')
    return '\n'.join(lines)


def trace_chart(title: str, scores: Sequence[float], segments: Sequence[Tuple[int, int]]) -> str:
    """Score series over the executions with the drift segments shaded."""
    s = np.asarray(scores, dtype=float)
    T = len(s)
    if T == 0:
        raise ValueError('trace needs at least one score')
    lo, hi = float(s.min()), float(s.max())
    if hi <= lo:
        hi = lo + 1.0
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def x_px(t: float) -> float:
        return LEFT + (t - 1) / max(T - 1, 1) * plot_w

    def y_px(v: float) -> float:
        return HEIGHT - BOTTOM - (v - lo) / (hi - lo) * plot_h

    lines = _header(title)
    for l, h in segments:
        lines.append(f'<rect x="{x_px(l):.2f}" y="{TOP}" width="{max(x_px(h) - x_px(l), 1.0):.2f}" '
                     f'height="{plot_h}" fill="#d62728" fill-opacity="0.2"/>')
    _y_axis(lines, lo, hi, y_px)
    points = ' '.join(f'{x_px(t):.2f},{y_px(v):.2f}' for t, v in enumerate(s, start=1))
    lines.append(f'<polyline fill="none" stroke="{COLORS[0]}" stroke-width="1" points="{points}"/>')
    for t in np.linspace(1, T, num=min(T, 6)).round().astype(int):
        lines.append(f'<text x="{x_px(t):.2f}" y="{HEIGHT - BOTTOM + 18}" text-anchor="middle" font-size="12" '
                     f'font-family="Arial">{t}</text>')
    _legend(lines, ['score'])
    lines.append('</svg>')
    return '\n'.join(lines)


def scatter_chart(title: str, x_label: str, y_label: str,
                  groups: Dict[str, Sequence[Tuple[str, float, float]]]) -> str:
    """Labelled points in the unit square, one color per group."""
    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def x_px(v: float) -> float:
        return LEFT + min(max(v, 0.0), 1.0) * plot_w

    def y_px(v: float) -> float:
        return HEIGHT - BOTTOM - min(max(v, 0.0), 1.0) * plot_h

    lines = _header(title)
    _y_axis(lines, 0.0, 1.0, y_px)
    for g, points in enumerate(groups.values()):
        color = COLORS[g % len(COLORS)]
        for label, x, y in points:
            lines.append(f'<circle cx="{x_px(x):.2f}" cy="{y_px(y):.2f}" r="5" fill="{color}">'
                         f'<title>{_escape(label)}</title></circle>')
    lines.append(f'<text x="{LEFT + plot_w / 2:.1f}" y="{HEIGHT - BOTTOM + 40}" text-anchor="middle" font-size="14" '
                 f'font-family="Arial">{_escape(x_label)}</text>')
    mid = TOP + plot_h / 2
    lines.append(f'<text x="24" y="{mid:.1f}" text-anchor="middle" font-size="14" font-family="Arial" '
                 f'transform="rotate(-90 24 {mid:.1f})">{_escape(y_label)}</text>')
    _legend(lines, list(groups))
    lines.append('</svg>')
    return '\n'.join(lines)


def write_svg(path: Path, text: str) -> Path:
    path = Path(path)
    path.write_text(text, encoding='utf-8')
    return path
