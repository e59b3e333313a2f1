"""Minimal SVG chart emission: line, histogram, and box-summary primitives.

Charts are plain standalone SVG with the plotted series embedded as JSON in a
<metadata> element, so every figure can be audited against its data without
re-running anything.  No plotting library is used; output is deterministic.
"""

from __future__ import annotations

import json
import math

WIDTH, HEIGHT = 640, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 40, 55


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def _nice_ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    span = hi - lo
    if span <= 0:
        return [lo]
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for mult in (1, 2, 2.5, 5, 10):
        step = mult * mag
        if span / step <= target:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * span:
        ticks.append(round(t, 10))
        t += step
    return ticks


class _Frame:
    """Data-to-pixel mapping plus axes/labels for one chart."""

    def __init__(self, xlo, xhi, ylo, yhi, title, xlabel, ylabel):
        if xhi <= xlo:
            xhi = xlo + 1.0
        if yhi <= ylo:
            yhi = ylo + 1.0
        pad = 0.05 * (yhi - ylo)
        self.xlo, self.xhi = xlo, xhi
        self.ylo, self.yhi = ylo - pad, yhi + pad
        self.title, self.xlabel, self.ylabel = title, xlabel, ylabel

    def px(self, x):
        frac = (x - self.xlo) / (self.xhi - self.xlo)
        return MARGIN_L + frac * (WIDTH - MARGIN_L - MARGIN_R)

    def py(self, y):
        frac = (y - self.ylo) / (self.yhi - self.ylo)
        return HEIGHT - MARGIN_B - frac * (HEIGHT - MARGIN_T - MARGIN_B)

    def chrome(self) -> list[str]:
        parts = [
            f'<rect x="{MARGIN_L}" y="{MARGIN_T}" '
            f'width="{WIDTH - MARGIN_L - MARGIN_R}" '
            f'height="{HEIGHT - MARGIN_T - MARGIN_B}" '
            'fill="none" stroke="#333" stroke-width="1"/>',
            f'<text x="{WIDTH / 2}" y="{MARGIN_T - 14}" text-anchor="middle" '
            f'font-size="15">{self.title}</text>',
            f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" text-anchor="middle" '
            f'font-size="13">{self.xlabel}</text>',
            f'<text x="18" y="{HEIGHT / 2}" text-anchor="middle" font-size="13" '
            f'transform="rotate(-90 18 {HEIGHT / 2})">{self.ylabel}</text>',
        ]
        y0 = HEIGHT - MARGIN_B
        for t in _nice_ticks(self.xlo, self.xhi):
            x = self.px(t)
            parts.append(
                f'<line x1="{_fmt(x)}" y1="{y0}" x2="{_fmt(x)}" y2="{y0 + 5}" '
                'stroke="#333"/>'
            )
            parts.append(
                f'<text x="{_fmt(x)}" y="{y0 + 20}" text-anchor="middle" '
                f'font-size="11">{_fmt(t)}</text>'
            )
        for t in _nice_ticks(self.ylo, self.yhi):
            y = self.py(t)
            parts.append(
                f'<line x1="{MARGIN_L - 5}" y1="{_fmt(y)}" x2="{MARGIN_L}" '
                f'y2="{_fmt(y)}" stroke="#333"/>'
            )
            parts.append(
                f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
                f'font-size="11">{_fmt(t)}</text>'
            )
        return parts


def _document(frame: _Frame, body: list[str], data: dict) -> str:
    meta = json.dumps(data, sort_keys=True)
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" '
        'font-family="sans-serif">',
        f"<metadata>{meta}</metadata>",
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    return "\n".join(head + frame.chrome() + body + ["</svg>"]) + "\n"


_COLORS = ["#1965b0", "#dc050c", "#4eb265", "#f1932d"]


def line_chart(series, title="", xlabel="", ylabel="") -> str:
    """series: list of (label, xs, ys) drawn as polylines."""
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys]
    frame = _Frame(min(xs_all), max(xs_all), min(0.0, min(ys_all)), max(ys_all),
                   title, xlabel, ylabel)
    body = []
    for i, (label, xs, ys) in enumerate(series):
        pts = " ".join(
            f"{_fmt(frame.px(x))},{_fmt(frame.py(y))}" for x, y in zip(xs, ys)
        )
        body.append(
            f'<polyline points="{pts}" fill="none" '
            f'stroke="{_COLORS[i % len(_COLORS)]}" stroke-width="1.6"/>'
        )
        body.append(
            f'<text x="{WIDTH - MARGIN_R - 6}" y="{MARGIN_T + 18 + 16 * i}" '
            f'text-anchor="end" font-size="12" '
            f'fill="{_COLORS[i % len(_COLORS)]}">{label}</text>'
        )
    data = {
        "type": "line",
        "series": [
            {"label": lab, "x": list(map(float, xs)), "y": list(map(float, ys))}
            for lab, xs, ys in series
        ],
    }
    return _document(frame, body, data)


def histogram_chart(edges, densities, overlay=None, title="", xlabel="",
                    ylabel="density") -> str:
    """Bars from bin edges/densities, with an optional (label, xs, ys) overlay."""
    ymax = max(densities)
    if overlay is not None:
        ymax = max(ymax, max(overlay[2]))
    frame = _Frame(edges[0], edges[-1], 0.0, ymax, title, xlabel, ylabel)
    body = []
    for j, d in enumerate(densities):
        x0, x1 = frame.px(edges[j]), frame.px(edges[j + 1])
        y = frame.py(d)
        h = frame.py(0.0) - y
        body.append(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y)}" width="{_fmt(x1 - x0)}" '
            f'height="{_fmt(h)}" fill="#a5c8e1" stroke="#1965b0" '
            'stroke-width="0.5"/>'
        )
    data = {
        "type": "histogram",
        "edges": list(map(float, edges)),
        "density": list(map(float, densities)),
    }
    if overlay is not None:
        label, xs, ys = overlay
        pts = " ".join(
            f"{_fmt(frame.px(x))},{_fmt(frame.py(y))}" for x, y in zip(xs, ys)
        )
        body.append(
            f'<polyline points="{pts}" fill="none" stroke="#dc050c" '
            'stroke-width="1.8"/>'
        )
        body.append(
            f'<text x="{WIDTH - MARGIN_R - 6}" y="{MARGIN_T + 18}" '
            f'text-anchor="end" font-size="12" fill="#dc050c">{label}</text>'
        )
        data["overlay"] = {"label": label, "x": list(map(float, xs)),
                           "y": list(map(float, ys))}
    return _document(frame, body, data)


def box_chart(groups, title="", ylabel="", reference=None) -> str:
    """groups: list of (label, {lo, q1, median, q3, hi}) box summaries.

    ``reference`` draws a horizontal dashed line at the given y.
    """
    ylo = min(g[1]["lo"] for g in groups)
    yhi = max(g[1]["hi"] for g in groups)
    if reference is not None:
        ylo, yhi = min(ylo, reference), max(yhi, reference)
    frame = _Frame(0.0, float(len(groups)), ylo, yhi, title, "", ylabel)
    body = []
    for i, (label, q) in enumerate(groups):
        cx = frame.px(i + 0.5)
        half = 0.3 * (frame.px(1) - frame.px(0))
        for lo_key, hi_key in (("lo", "q1"), ("q3", "hi")):
            body.append(
                f'<line x1="{_fmt(cx)}" y1="{_fmt(frame.py(q[lo_key]))}" '
                f'x2="{_fmt(cx)}" y2="{_fmt(frame.py(q[hi_key]))}" '
                'stroke="#333"/>'
            )
        top, bot = frame.py(q["q3"]), frame.py(q["q1"])
        body.append(
            f'<rect x="{_fmt(cx - half)}" y="{_fmt(top)}" '
            f'width="{_fmt(2 * half)}" height="{_fmt(bot - top)}" '
            'fill="#a5c8e1" stroke="#1965b0"/>'
        )
        med = frame.py(q["median"])
        body.append(
            f'<line x1="{_fmt(cx - half)}" y1="{_fmt(med)}" '
            f'x2="{_fmt(cx + half)}" y2="{_fmt(med)}" '
            'stroke="#dc050c" stroke-width="2"/>'
        )
        body.append(
            f'<text x="{_fmt(cx)}" y="{HEIGHT - MARGIN_B + 34}" '
            f'text-anchor="middle" font-size="11">{label}</text>'
        )
    if reference is not None:
        y = frame.py(reference)
        body.append(
            f'<line x1="{MARGIN_L}" y1="{_fmt(y)}" x2="{WIDTH - MARGIN_R}" '
            f'y2="{_fmt(y)}" stroke="#4eb265" stroke-dasharray="6 4"/>'
        )
    data = {
        "type": "box",
        "groups": [
            {"label": lab, **{k: float(v) for k, v in q.items()}}
            for lab, q in groups
        ],
        "reference": reference,
    }
    return _document(frame, body, data)
