"""Minimal SVG line plots for eyeballing truth against prediction."""

from __future__ import annotations

import numpy as np

_WIDTH, _HEIGHT = 640, 360
_MARGIN = 48


def _polyline(xs, ys, color: str) -> str:
    points = " ".join(f"{x:.2f},{y:.2f}" for x, y in zip(xs, ys))
    return f'<polyline fill="none" stroke="{color}" stroke-width="2" points="{points}"/>'


def render_forecast_svg(truth, prediction, title: str = "") -> str:
    """Two polylines (truth black, prediction red) with plain axes."""
    truth = np.asarray(truth, dtype=np.float64)
    prediction = np.asarray(prediction, dtype=np.float64)
    n = truth.size
    lo = min(truth.min(), prediction.min(), 0.0)
    hi = max(truth.max(), prediction.max())
    if hi <= lo:
        hi = lo + 1.0

    plot_w = _WIDTH - 2 * _MARGIN
    plot_h = _HEIGHT - 2 * _MARGIN
    xs = _MARGIN + np.arange(n) / max(n - 1, 1) * plot_w
    to_y = lambda v: _MARGIN + (hi - v) / (hi - lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_HEIGHT - _MARGIN}" x2="{_WIDTH - _MARGIN}" '
        f'y2="{_HEIGHT - _MARGIN}" stroke="black"/>',
        f'<text x="{_MARGIN}" y="{_MARGIN - 16}" font-size="14">{title}</text>',
        f'<text x="4" y="{_MARGIN}" font-size="11">{hi:.1f}</text>',
        f'<text x="4" y="{_HEIGHT - _MARGIN}" font-size="11">{lo:.1f}</text>',
        f'<text x="{_MARGIN}" y="{_HEIGHT - _MARGIN + 16}" font-size="11">0</text>',
        f'<text x="{_WIDTH - _MARGIN}" y="{_HEIGHT - _MARGIN + 16}" '
        f'font-size="11" text-anchor="end">{n - 1}h</text>',
        _polyline(xs, [to_y(v) for v in truth], "black"),
        _polyline(xs, [to_y(v) for v in prediction], "#cc2222"),
        f'<text x="{_WIDTH - _MARGIN}" y="{_MARGIN - 16}" font-size="12" '
        f'text-anchor="end" fill="black">truth</text>',
        f'<text x="{_WIDTH - _MARGIN}" y="{_MARGIN}" font-size="12" '
        f'text-anchor="end" fill="#cc2222">prediction</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"
