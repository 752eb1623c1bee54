"""Deterministic report writers: CSV, JSON, and a dependency-free SVG
log-log plot.

Two runs of the same configuration must produce byte-identical files,
so floats are rendered with repr (shortest round trip), line endings
are fixed to "\n", and nothing time- or environment-dependent is ever
written.
"""

from __future__ import annotations

import io
import json
import math

import numpy as np

__all__ = [
    "NORM_HEADER",
    "BOUNDS_HEADER",
    "format_cell",
    "render_csv",
    "render_json",
    "render_loglog_svg",
]

NORM_HEADER = ("t", "s", "j", "target", "value", "abs_error", "nodes")
BOUNDS_HEADER = (
    "bound",
    "zone",
    "line",
    "s",
    "j",
    "fitted_constant",
    "max_ratio",
    "worst_t",
    "worst_r",
    "passed",
)


def format_cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def render_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_cell(x) for x in row) + "\n")
    return buf.getvalue()


def _sanitize(obj):
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def render_json(obj) -> str:
    return json.dumps(_sanitize(obj), indent=2) + "\n"


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


def _decade_ticks(lo: float, hi: float):
    first = math.floor(lo)
    last = math.ceil(hi)
    step = max(1, int(math.ceil((last - first) / 8.0)))
    return list(range(first, last + 1, step))


def render_loglog_svg(series, title: str = "", xlabel: str = "t", ylabel: str = "norm") -> str:
    """Static log-log line plot.  ``series`` is an iterable of
    (label, xs, ys); points with a nonpositive coordinate are dropped.
    """
    width, height = 800.0, 520.0
    ml, mr, mt, mb = 80.0, 24.0, 48.0, 56.0
    pts = []
    for label, xs, ys in series:
        cur = [
            (math.log10(x), math.log10(y))
            for x, y in zip(xs, ys)
            if x > 0.0 and y > 0.0 and math.isfinite(x) and math.isfinite(y)
        ]
        pts.append((str(label), cur))
    all_x = [q[0] for _, cur in pts for q in cur]
    all_y = [q[1] for _, cur in pts for q in cur]
    if not all_x:
        all_x, all_y = [0.0, 1.0], [0.0, 1.0]
    lx0, lx1 = min(all_x), max(all_x)
    ly0, ly1 = min(all_y), max(all_y)
    if lx1 - lx0 < 1e-12:
        lx0, lx1 = lx0 - 0.5, lx1 + 0.5
    if ly1 - ly0 < 1e-12:
        ly0, ly1 = ly0 - 0.5, ly1 + 0.5
    pad_y = 0.05 * (ly1 - ly0)
    ly0, ly1 = ly0 - pad_y, ly1 + pad_y

    def sx(lx):
        return ml + (lx - lx0) / (lx1 - lx0) * (width - ml - mr)

    def sy(ly):
        return height - mb - (ly - ly0) / (ly1 - ly0) * (height - mt - mb)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect width="{width:.0f}" height="{height:.0f}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]
    for tx in _decade_ticks(lx0, lx1):
        if lx0 <= tx <= lx1:
            x = sx(tx)
            out.append(
                f'<line x1="{x:.2f}" y1="{mt:.1f}" x2="{x:.2f}" y2="{height - mb:.1f}" '
                f'stroke="#dddddd" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{x:.2f}" y="{height - mb + 18:.1f}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="12">1e{tx}</text>'
            )
    for ty in _decade_ticks(ly0, ly1):
        if ly0 <= ty <= ly1:
            y = sy(ty)
            out.append(
                f'<line x1="{ml:.1f}" y1="{y:.2f}" x2="{width - mr:.1f}" y2="{y:.2f}" '
                f'stroke="#dddddd" stroke-width="1"/>'
            )
            out.append(
                f'<text x="{ml - 8:.1f}" y="{y + 4:.2f}" text-anchor="end" '
                f'font-family="sans-serif" font-size="12">1e{ty}</text>'
            )
    out.append(
        f'<rect x="{ml:.1f}" y="{mt:.1f}" width="{width - ml - mr:.1f}" '
        f'height="{height - mt - mb:.1f}" fill="none" stroke="#333333"/>'
    )
    out.append(
        f'<text x="{width / 2:.1f}" y="{height - 12:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{xlabel}</text>'
    )
    out.append(
        f'<text x="20" y="{height / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="13" transform="rotate(-90 20 {height / 2:.1f})">{ylabel}</text>'
    )
    for i, (label, cur) in enumerate(pts):
        color = _PALETTE[i % len(_PALETTE)]
        if cur:
            path = " ".join(f"{sx(lx):.2f},{sy(ly):.2f}" for lx, ly in cur)
            out.append(
                f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="2"/>'
            )
            for lx, ly in cur:
                out.append(
                    f'<circle cx="{sx(lx):.2f}" cy="{sy(ly):.2f}" r="3" fill="{color}"/>'
                )
        ly_leg = mt + 16 + 18 * i
        out.append(
            f'<line x1="{width - mr - 150:.1f}" y1="{ly_leg:.1f}" x2="{width - mr - 120:.1f}" '
            f'y2="{ly_leg:.1f}" stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{width - mr - 112:.1f}" y="{ly_leg + 4:.1f}" font-family="sans-serif" '
            f'font-size="12">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
