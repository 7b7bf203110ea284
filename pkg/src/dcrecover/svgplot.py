"""Minimal dependency-free SVG line/scatter chart for score differences."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

W, H = 720, 360
PAD_L, PAD_R, PAD_T, PAD_B = 70, 20, 40, 50


def _ticks(lo: float, hi: float, k: int = 5):
    if hi == lo:
        return [lo]
    step = (hi - lo) / k
    mag = 10 ** math.floor(math.log10(step))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= step), default=step)
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12:
        out.append(round(v, 12))
        v += step
    return out


def delta_chart(values, title: str = "", ylabel: str = "") -> str:
    """Index on x, value on y, zero line and a dashed line at the mean.

    Non-finite values are drawn as gaps.
    """
    finite = [v for v in values if math.isfinite(v)]
    mean = sum(finite) / len(finite) if finite else 0.0
    lo = min(finite + [0.0])
    hi = max(finite + [0.0])
    if hi == lo:
        lo, hi = lo - 1, hi + 1
    span = hi - lo
    lo, hi = lo - 0.05 * span, hi + 0.05 * span
    n = max(len(values), 1)

    def sx(i):
        return PAD_L + (W - PAD_L - PAD_R) * (i + 0.5) / n

    def sy(v):
        return PAD_T + (H - PAD_T - PAD_B) * (hi - v) / (hi - lo)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2:.1f}" y="22" font-family="sans-serif" font-size="14" text-anchor="middle">{escape(title)}</text>',
        f'<line x1="{PAD_L}" y1="{PAD_T}" x2="{PAD_L}" y2="{H - PAD_B}" stroke="black"/>',
        f'<line x1="{PAD_L}" y1="{H - PAD_B}" x2="{W - PAD_R}" y2="{H - PAD_B}" stroke="black"/>',
    ]
    for t in _ticks(lo, hi):
        y = sy(t)
        parts.append(f'<line x1="{PAD_L - 4}" y1="{y:.2f}" x2="{PAD_L}" y2="{y:.2f}" stroke="black"/>')
        parts.append(f'<text x="{PAD_L - 6}" y="{y + 4:.2f}" font-family="sans-serif" font-size="10" '
                     f'text-anchor="end">{t:g}</text>')
    parts.append(f'<line x1="{PAD_L}" y1="{sy(0):.2f}" x2="{W - PAD_R}" y2="{sy(0):.2f}" stroke="#999"/>')
    parts.append(f'<line x1="{PAD_L}" y1="{sy(mean):.2f}" x2="{W - PAD_R}" y2="{sy(mean):.2f}" '
                 f'stroke="#d62728" stroke-dasharray="6,4"><title>mean {mean:.6f}</title></line>')
    segs, cur = [], []
    for i, v in enumerate(values):
        if math.isfinite(v):
            cur.append(f"{sx(i):.2f},{sy(v):.2f}")
        elif cur:
            segs.append(cur)
            cur = []
    if cur:
        segs.append(cur)
    for s in segs:
        parts.append(f'<polyline points="{" ".join(s)}" fill="none" stroke="#1f77b4"/>')
    for i, v in enumerate(values):
        if math.isfinite(v):
            parts.append(f'<circle cx="{sx(i):.2f}" cy="{sy(v):.2f}" r="2.5" fill="#1f77b4"/>')
    parts.append(f'<text x="{(PAD_L + W - PAD_R) / 2:.1f}" y="{H - 12}" font-family="sans-serif" '
                 f'font-size="12" text-anchor="middle">image index</text>')
    parts.append(f'<text x="16" y="{(PAD_T + H - PAD_B) / 2:.1f}" font-family="sans-serif" font-size="12" '
                 f'text-anchor="middle" transform="rotate(-90 16 {(PAD_T + H - PAD_B) / 2:.1f})">'
                 f'{escape(ylabel)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def xy_chart(xs, ys, title: str = "", xlabel: str = "", ylabel: str = "", markers=()) -> str:
    """Line chart of ys against xs with optional vertical markers ``(x, colour, label)``."""
    xlo, xhi = min(xs), max(xs)
    if xhi == xlo:
        xlo, xhi = xlo - 1, xhi + 1
    ylo, yhi = 0.0, max(max(ys), 1e-9) * 1.05

    def sx(x):
        return PAD_L + (W - PAD_L - PAD_R) * (x - xlo) / (xhi - xlo)

    def sy(y):
        return PAD_T + (H - PAD_T - PAD_B) * (yhi - y) / (yhi - ylo)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
        f'<text x="{W / 2:.1f}" y="22" font-family="sans-serif" font-size="14" text-anchor="middle">{escape(title)}</text>',
        f'<line x1="{PAD_L}" y1="{PAD_T}" x2="{PAD_L}" y2="{H - PAD_B}" stroke="black"/>',
        f'<line x1="{PAD_L}" y1="{H - PAD_B}" x2="{W - PAD_R}" y2="{H - PAD_B}" stroke="black"/>',
    ]
    for t in _ticks(ylo, yhi):
        parts.append(f'<text x="{PAD_L - 6}" y="{sy(t) + 4:.2f}" font-family="sans-serif" font-size="10" '
                     f'text-anchor="end">{t:g}</text>')
    for t in _ticks(xlo, xhi):
        parts.append(f'<text x="{sx(t):.2f}" y="{H - PAD_B + 14}" font-family="sans-serif" font-size="10" '
                     f'text-anchor="middle">{t:g}</text>')
    pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4"/>')
    for k, (x, colour, label) in enumerate(markers):
        dash = "2,3" if k % 2 == 0 else "6,4"
        parts.append(f'<line x1="{sx(x):.2f}" y1="{PAD_T}" x2="{sx(x):.2f}" y2="{H - PAD_B}" stroke="{colour}" '
                     f'stroke-dasharray="{dash}"><title>{escape(label)}</title></line>')
    parts.append(f'<text x="{(PAD_L + W - PAD_R) / 2:.1f}" y="{H - 12}" font-family="sans-serif" '
                 f'font-size="12" text-anchor="middle">{escape(xlabel)}</text>')
    parts.append(f'<text x="16" y="{(PAD_T + H - PAD_B) / 2:.1f}" font-family="sans-serif" font-size="12" '
                 f'text-anchor="middle" transform="rotate(-90 16 {(PAD_T + H - PAD_B) / 2:.1f})">'
                 f'{escape(ylabel)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
