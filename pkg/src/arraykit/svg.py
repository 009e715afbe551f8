"""Minimal polar pattern plot rendered directly as SVG text."""

from xml.sax.saxutils import escape

import numpy as np

from .array import main_lobe_direction

SIZE = 600
FLOOR_DB = -40.0


def polar_svg(trace, title=""):
    """Half-plane polar plot of a trace: array axis horizontal, broadside up.

    Radius is linear in dB from ``FLOOR_DB`` (centre) to 0 dB (rim), with
    rings every 10 dB. The main lobe is marked and labelled.
    """
    cx, cy = SIZE / 2, SIZE / 2
    radius = SIZE / 2 - 40

    def point(theta_deg, db):
        r = radius * (np.clip(db, FLOOR_DB, 0.0) - FLOOR_DB) / -FLOOR_DB
        t = np.radians(theta_deg)
        return cx + r * np.cos(t), cy - r * np.sin(t)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
             f'viewBox="0 0 {SIZE} {SIZE}">',
             f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>']
    for ring in np.arange(0.0, FLOOR_DB, -10.0):
        r = radius * (ring - FLOOR_DB) / -FLOOR_DB
        parts.append(f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="{r:.1f}" fill="none" '
                     f'stroke="#cccccc" stroke-width="1"/>')
        parts.append(f'<text x="{cx + 4:.1f}" y="{cy - r - 3:.1f}" font-size="11" '
                     f'fill="#888888">{ring:.0f} dB</text>')
    for spoke in range(0, 181, 30):
        x, y = point(spoke, 0.0)
        parts.append(f'<line x1="{cx:.1f}" y1="{cy:.1f}" x2="{x:.1f}" y2="{y:.1f}" '
                     f'stroke="#eeeeee" stroke-width="1"/>')

    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in
                   (point(t, m) for t, m in zip(trace.theta_deg, trace.magnitude_db)))
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="2"/>')

    peak = main_lobe_direction(trace)
    px, py = point(peak, 0.0)
    parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="4" fill="#c0392b"/>')
    parts.append(f'<text x="{px:.2f}" y="{py - 8:.2f}" font-size="12" fill="#c0392b" '
                 f'text-anchor="middle">main lobe {peak:.1f} deg</text>')
    if title:
        parts.append(f'<text x="{cx:.1f}" y="20" font-size="14" text-anchor="middle">{escape(title)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
