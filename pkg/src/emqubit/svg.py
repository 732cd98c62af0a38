"""Static SVG pictures of charts and force lines."""
from __future__ import annotations

from pathlib import Path

import numpy as np

WIDTH = 600.0
PAD = 20.0

_EQ_STYLE = {
    "saddle": "stroke:#c0392b;stroke-width:2.5;fill:none",
    "node:sink": "fill:#2471a3;stroke:#1b2631;stroke-width:1",
    "node:source": "fill:#cb4335;stroke:#1b2631;stroke-width:1",
    "degenerate": "fill:#f1c40f;stroke:#1b2631;stroke-width:1",
}


class _Frame:
    def __init__(self, region):
        self.r = region
        self.scale = (WIDTH - 2 * PAD) / (region.xmax - region.xmin)
        self.height = 2 * PAD + self.scale * (region.ymax - region.ymin)

    def xy(self, x, y) -> tuple[str, str]:
        px = PAD + (x - self.r.xmin) * self.scale
        py = self.height - PAD - (y - self.r.ymin) * self.scale
        return f"{px:.3f}", f"{py:.3f}"


def _polyline(frame, pts, cls) -> str:
    coords = " ".join(",".join(frame.xy(x, y)) for x, y in np.asarray(pts))
    return f'<polyline class="{cls}" points="{coords}"/>'


def _marker(frame, eq) -> str:
    px, py = (float(v) for v in frame.xy(*eq.position))
    label = eq.label
    style = _EQ_STYLE[label]
    cls = f'equilibrium {label.replace(":", "-")}'
    if label == "saddle":
        d = 6.0
        return (f'<path class="{cls}" style="{style}" d="M{px - d:.3f},{py - d:.3f} '
                f'L{px + d:.3f},{py + d:.3f} M{px - d:.3f},{py + d:.3f} L{px + d:.3f},{py - d:.3f}"/>')
    if label == "degenerate":
        return f'<rect class="{cls}" style="{style}" x="{px - 5:.3f}" y="{py - 5:.3f}" width="10" height="10"/>'
    return f'<circle class="{cls}" style="{style}" cx="{px:.3f}" cy="{py:.3f}" r="5"/>'


def chart_svg(chart, field_lines=()) -> str:
    """Deterministic SVG text: force lines thin grey, separatrices thick red,
    saddles as crosses, nodes as dots, conductors as discs (hollow when uncharged)."""
    frame = _Frame(chart.region)
    r = chart.region
    x0, y1 = frame.xy(r.xmin, r.ymax)
    w = f"{(r.xmax - r.xmin) * frame.scale:.3f}"
    h = f"{(r.ymax - r.ymin) * frame.scale:.3f}"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0f}" height="{frame.height:.3f}" '
        f'viewBox="0 0 {WIDTH:.0f} {frame.height:.3f}">',
        "<style>"
        ".field-line{fill:none;stroke:#7f8c8d;stroke-width:0.8}"
        ".separatrix{fill:none;stroke:#c0392b;stroke-width:2;stroke-dasharray:6 3}"
        ".ground{stroke:#1b2631;stroke-width:3}"
        ".region{fill:#fdfefe;stroke:#aab7b8;stroke-width:1}"
        "</style>",
        f'<rect class="region" x="{x0}" y="{y1}" width="{w}" height="{h}"/>',
    ]
    if chart.ground:
        gx0, gy = frame.xy(r.xmin, 0.0)
        gx1, _ = frame.xy(r.xmax, 0.0)
        out.append(f'<line class="ground" x1="{gx0}" y1="{gy}" x2="{gx1}" y2="{gy}"/>')
    out.append('<g id="field-lines">')
    out += [_polyline(frame, ln.points, "field-line") for ln in field_lines if len(ln.points) > 1]
    out.append("</g>")
    out.append('<g id="separatrices">')
    out += [_polyline(frame, s.points, "separatrix") for s in chart.separatrices]
    out.append("</g>")
    out.append('<g id="conductors">')
    rad = max(3.0, chart.conductor_radius * frame.scale)
    for x, y, q in chart.layout:
        cx, cy = frame.xy(x, y)
        fill = "#cb4335" if q > 0 else "#2471a3" if q < 0 else "none"
        out.append(f'<circle class="conductor" cx="{cx}" cy="{cy}" r="{rad:.3f}" '
                   f'style="fill:{fill};stroke:#1b2631;stroke-width:1.5"/>')
    out.append("</g>")
    out.append('<g id="equilibria">')
    out += [_marker(frame, e) for e in chart.equilibria]
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_chart_svg(chart, field_lines, path) -> Path:
    path = Path(path)
    path.write_text(chart_svg(chart, field_lines), encoding="utf-8")
    return path
