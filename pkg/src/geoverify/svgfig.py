"""Minimal SVG 1.1 emitter for planar figures.

Coordinates are mathematical (y up); rendering flips the axis.  Floats
are formatted with a fixed precision so output files are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

PALETTE = ("#1f6fb2", "#c23b22", "#2e8b57", "#8652a8", "#b8860b", "#444444")


def _fmt(x: float) -> str:
    return f"{x:.6g}"


@dataclass
class SvgCanvas:
    margin: float = 0.05  # fraction of the content extent
    width: int = 640
    elements: list[str] = field(default_factory=list)
    bounds: list[float] | None = None  # xmin, ymin, xmax, ymax (math coords)

    def _grow(self, x: float, y: float) -> None:
        if self.bounds is None:
            self.bounds = [x, y, x, y]
        else:
            self.bounds[0] = min(self.bounds[0], x)
            self.bounds[1] = min(self.bounds[1], y)
            self.bounds[2] = max(self.bounds[2], x)
            self.bounds[3] = max(self.bounds[3], y)

    def polyline(self, points, color: str = PALETTE[0], width: float = 0.01, closed: bool = False, fill: str = "none"):
        pts = [(float(p[0]), float(p[1])) for p in points]
        for x, y in pts:
            self._grow(x, y)
        coords = " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in pts)
        tag = "polygon" if closed else "polyline"
        self.elements.append(
            f'<{tag} points="{coords}" fill="{fill}" stroke="{color}" stroke-width="{_fmt(width)}"/>'
        )

    def line(self, p, q, color: str = PALETTE[5], width: float = 0.008):
        self.polyline([p, q], color=color, width=width)

    def circle(self, center, radius: float, color: str = PALETTE[1], width: float = 0.01, fill: str = "none"):
        x, y = float(center[0]), float(center[1])
        self._grow(x - radius, y - radius)
        self._grow(x + radius, y + radius)
        self.elements.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius)}" fill="{fill}" '
            f'stroke="{color}" stroke-width="{_fmt(width)}"/>'
        )

    def dot(self, center, radius: float = 0.02, color: str = PALETTE[1]):
        x, y = float(center[0]), float(center[1])
        self._grow(x - radius, y - radius)
        self._grow(x + radius, y + radius)
        self.elements.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius)}" fill="{color}" stroke="none"/>'
        )

    def text(self, pos, content: str, size: float = 0.08, color: str = "#222222"):
        x, y = float(pos[0]), float(pos[1])
        self._grow(x, y)
        self.elements.append(
            f'<text x="{_fmt(x)}" y="{_fmt(-y)}" font-size="{_fmt(size)}" '
            f'fill="{color}" font-family="sans-serif">{content}</text>'
        )

    def to_string(self) -> str:
        if self.bounds is None:
            xmin = ymin = -1.0
            xmax = ymax = 1.0
        else:
            xmin, ymin, xmax, ymax = self.bounds
        span_x = max(xmax - xmin, 1e-9)
        span_y = max(ymax - ymin, 1e-9)
        pad = self.margin * max(span_x, span_y)
        view = (
            xmin - pad,
            -(ymax + pad),  # y flips: top of the viewBox is max math y
            span_x + 2 * pad,
            span_y + 2 * pad,
        )
        height = int(round(self.width * view[3] / view[2]))
        header = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.width}" height="{height}" '
            f'viewBox="{_fmt(view[0])} {_fmt(view[1])} {_fmt(view[2])} {_fmt(view[3])}">'
        )
        return "\n".join([header, *self.elements, "</svg>"]) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_string())
