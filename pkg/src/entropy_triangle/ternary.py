"""De Finetti projection and SVG rendering of entropy triangles.

Orientation: the information vertex is the apex, the divergence vertex
sits bottom right and the variation-of-information vertex bottom left.

SVG layout (800 x 720 user units, 40 unit margin, 20 more above the apex)::

    <svg>
      <title/>                 plot title
      <g id="grid">            lines parallel to each side at the grid step
      <g id="axes">            outline, tick labels, vertex labels
      <g id="points">          one <g class="point"> per point
      <g id="legend">          one entry per distinct glyph/color/legend text
    </svg>

Axis colors: divergence ``#c9a100`` (yellow), information ``#2e8b2e``
(green), variation of information ``#c62828`` (red).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .balance import TriangleCoord
from .errors import ConfigError

__all__ = ["PlotPoint", "PlotSpec", "project", "render_svg", "GLYPHS", "AXIS_COLORS"]

SQRT3_2 = math.sqrt(3) / 2
GLYPHS = ("cross", "circle", "filled-circle", "filled-triangle")
GLYPH_MEANING = {
    "cross": "X split",
    "circle": "Y split",
    "filled-circle": "aggregate",
    "filled-triangle": "reference",
}
AXIS_COLORS = {"delta": "#c9a100", "info": "#2e8b2e", "vi": "#c62828"}
GRID_STEPS = (0.1, 0.2, 0.25)

WIDTH, HEIGHT, MARGIN = 800, 720, 40
SIDE = WIDTH - 2 * MARGIN
TOP = MARGIN + 20  # room for the title above the apex
BASE_Y = TOP + SIDE * SQRT3_2
MARK = 6.0


def project(c) -> tuple[float, float]:
    """Planar position of a composition ``(delta', info', vi')``.

    Accepts a :class:`TriangleCoord` or any 3-sequence summing to 1.

    >>> project((0.0, 1.0, 0.0))[0]
    0.5
    """
    if isinstance(c, TriangleCoord):
        a, b, v = c.as_tuple()
    else:
        try:
            a, b, v = (float(t) for t in c)
        except (TypeError, ValueError):
            raise ConfigError(f"expected a 3-part composition, got {c!r}") from None
        parts = (a, b, v)
        if (not all(math.isfinite(t) for t in parts) or min(parts) < -1e-9
                or abs(a + b + v - 1.0) > 1e-9):
            raise ConfigError(f"not a composition: {parts}")
    return (b / 2 + a, b * SQRT3_2)


@dataclass(frozen=True)
class PlotPoint:
    coord: TriangleCoord
    label: str = ""
    glyph: str = "filled-circle"
    color: str = "#1f3b73"
    legend: str | None = None

    def __post_init__(self):
        if self.glyph not in GLYPHS:
            raise ConfigError(f"glyph must be one of {GLYPHS}, got {self.glyph!r}")


@dataclass(frozen=True)
class PlotSpec:
    title: str = ""
    kind: str = "aggregate"  # aggregate | split
    points: tuple = field(default_factory=tuple)
    grid_step: float = 0.2

    def __post_init__(self):
        if self.kind not in ("aggregate", "split"):
            raise ConfigError(f"kind must be 'aggregate' or 'split', got {self.kind!r}")
        if self.grid_step not in GRID_STEPS:
            raise ConfigError(f"grid step must be one of {GRID_STEPS}, got {self.grid_step}")
        object.__setattr__(self, "points", tuple(self.points))

    def axis_labels(self) -> dict:
        if self.kind == "aggregate":
            return {"delta": "ΔH′", "info": "2·I′", "vi": "VI′"}
        return {"delta": "ΔH′_X, ΔH′_Y", "info": "I′", "vi": "H′(X|Y), H′(Y|X)"}


def _xy(a: float, b: float, v: float) -> tuple[float, float]:
    x, y = b / 2 + a, b * SQRT3_2
    return MARGIN + SIDE * x, BASE_Y - SIDE * y


def _f(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _line(p, q, **attrs) -> str:
    extra = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<line x1="{_f(p[0])}" y1="{_f(p[1])}" x2="{_f(q[0])}" y2="{_f(q[1])}"{extra}/>'


def _text(x, y, s, anchor="middle", size=14, color="#222222") -> str:
    return (f'<text x="{_f(x)}" y="{_f(y)}" text-anchor="{anchor}" font-size="{size}" '
            f'fill="{color}">{escape(s)}</text>')


def _marker(glyph: str, x: float, y: float, color: str) -> str:
    r = MARK
    if glyph == "cross":
        return (_line((x - r, y - r), (x + r, y + r), stroke=color, stroke_width=2)
                + _line((x - r, y + r), (x + r, y - r), stroke=color, stroke_width=2))
    if glyph == "circle":
        return (f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" fill="none" '
                f'stroke="{color}" stroke-width="2"/>')
    if glyph == "filled-circle":
        return f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" fill="{color}" stroke="none"/>'
    pts = [(x, y - r * 1.2), (x - r * 1.1, y + r * 0.8), (x + r * 1.1, y + r * 0.8)]
    return ('<polygon points="' + " ".join(f"{_f(px)},{_f(py)}" for px, py in pts)
            + f'" fill="{color}" stroke="none"/>')


def render_svg(spec: PlotSpec) -> str:
    """Render a plot spec as a standalone SVG 1.1 document.

    The output depends only on ``spec``: same spec, same bytes.
    """
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">',
        f"<title>{escape(spec.title)}</title>",
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if spec.title:
        out.append(_text(WIDTH / 2, 22, spec.title, size=18))

    steps = int(round(1 / spec.grid_step))
    out.append('<g id="grid" stroke-width="0.8" stroke-dasharray="4,3">')
    for k in range(1, steps):
        t = k / steps
        out.append(_line(_xy(t, 0, 1 - t), _xy(t, 1 - t, 0), stroke=AXIS_COLORS["delta"]))
        out.append(_line(_xy(0, t, 1 - t), _xy(1 - t, t, 0), stroke=AXIS_COLORS["info"]))
        out.append(_line(_xy(0, 1 - t, t), _xy(1 - t, 0, t), stroke=AXIS_COLORS["vi"]))
    out.append("</g>")

    labels = spec.axis_labels()
    left, right, apex = _xy(0, 0, 1), _xy(1, 0, 0), _xy(0, 1, 0)
    out.append('<g id="axes">')
    out.append(f'<polygon points="{_f(left[0])},{_f(left[1])} {_f(right[0])},{_f(right[1])} '
               f'{_f(apex[0])},{_f(apex[1])}" fill="none" stroke="#222222" stroke-width="1.5"/>')
    for k in range(0, steps + 1):
        t = k / steps
        # delta' ticks on the bottom side, info' on the right side, vi' on the left side
        x, y = _xy(t, 0, 1 - t)
        out.append(_text(x, y + 18, _f(t), size=11, color=AXIS_COLORS["delta"]))
        x, y = _xy(1 - t, t, 0)
        out.append(_text(x + 10, y + 4, _f(t), anchor="start", size=11, color=AXIS_COLORS["info"]))
        x, y = _xy(0, 1 - t, t)
        out.append(_text(x - 10, y + 4, _f(t), anchor="end", size=11, color=AXIS_COLORS["vi"]))
    out.append(_text(right[0], right[1] + 34, f"{labels['delta']} = 1", anchor="end",
                     color=AXIS_COLORS["delta"]))
    out.append(_text(apex[0], apex[1] - 10, f"{labels['info']} = 1", color=AXIS_COLORS["info"]))
    out.append(_text(left[0], left[1] + 34, f"{labels['vi']} = 1", anchor="start",
                     color=AXIS_COLORS["vi"]))
    out.append("</g>")

    out.append('<g id="points">')
    for p in spec.points:
        x, y = _xy(*p.coord.as_tuple())
        out.append(f'<g class="point" data-glyph="{p.glyph}" data-label={quoteattr(p.label)}>')
        out.append(_marker(p.glyph, x, y, p.color))
        if p.label:
            out.append(_text(x + 9, y - 7, p.label, anchor="start", size=10, color=p.color))
        out.append("</g>")
    out.append("</g>")

    out.append('<g id="legend">')
    entries = []
    for p in spec.points:
        key = (p.glyph, p.color, p.legend or GLYPH_MEANING[p.glyph])
        if key not in entries:
            entries.append(key)
    for n, (glyph, color, text) in enumerate(entries):
        y = TOP + 16 + 20 * n
        out.append(_marker(glyph, 56, y, color))
        out.append(_text(70, y + 5, text, anchor="start", size=12))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
