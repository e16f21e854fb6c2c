"""Poincare-disc layout of the heptagrid and SVG emission.

Tiles are placed by hyperbolic edge reflections: each cell's heptagon is
the reflection of its tree father's heptagon in their shared edge, starting
from a regular central heptagon.  Reflection in a hyperbolic line through
two disc points is a Euclidean circle inversion, so adjacent tiles share
their edge vertices exactly (up to float error).
"""

from __future__ import annotations

import cmath
import math

from .topology import CENTER, Heptagrid

#: colour language of the seven states
PALETTE = {
    "W": "#ffffff",
    "B": "#2244cc",
    "R": "#cc2222",
    "Y": "#eedd44",
    "G": "#22aa44",
    "O": "#ee8822",
    "M": "#cc66cc",
}

# circumradius of a {7,3} tile: cosh(R) = cot(pi/7) * cot(pi/3)
_COSH_R = 1 / (math.tan(math.pi / 7) * math.tan(math.pi / 3))
_DISC_R = math.tanh(math.acosh(_COSH_R) / 2)


def _central_heptagon() -> list[complex]:
    """Vertices CCW; edge j faces the sector-(j+1) root at angle 2*pi*j/7."""
    return [_DISC_R * cmath.exp(1j * (2 * math.pi * (j - 0.5) / 7))
            for j in range(7)]


def _reflect(z: complex, a: complex, b: complex) -> complex:
    """Reflect z in the hyperbolic line through disc points a and b."""
    # the geodesic through a, b is a circle orthogonal to the unit circle
    # (or a diameter); orthogonality gives |c|^2 = r^2 + 1 for its centre c.
    d = (a * b.conjugate() - a.conjugate() * b)
    if abs(d) < 1e-14:
        # diameter: Euclidean reflection in the line through a, b
        u = (b - a) / abs(b - a)
        return a + (z - a).conjugate() * u * u
    c = (a * (1 + abs(b) ** 2) - b * (1 + abs(a) ** 2)) / d
    c = 1j * c.imag + c.real  # keep complex
    r2 = abs(c) ** 2 - 1
    return c + r2 / (z - c).conjugate()


class Layout:
    """Lazily extended map cell -> 7 CCW vertices (complex)."""

    def __init__(self, grid: Heptagrid):
        self.grid = grid
        self._polys: dict[int, list[complex]] = {CENTER: _central_heptagon()}

    def polygon(self, c: int) -> list[complex]:
        poly = self._polys.get(c)
        if poly is not None:
            return poly
        chain = []
        x = c
        while x not in self._polys:
            chain.append(x)
            x = self.grid.parent(x)
        for cell in reversed(chain):
            f = self.grid.parent(cell)
            fp = self._polys[f]
            # index of `cell` among f's ring gives the shared edge of f
            i = self.grid.ring(f).index(cell)
            a, b = fp[i], fp[(i + 1) % 7]
            w = [_reflect(z, a, b) for z in fp]
            # child vertices CCW with edge 0 (shared with its father) first
            self._polys[cell] = [w[(i + 1 - j) % 7] for j in range(7)]
        return self._polys[c]

    def centroid(self, c: int) -> complex:
        p = self.polygon(c)
        return sum(p) / 7


def layout(grid: Heptagrid, cells) -> dict[int, list[complex]]:
    """Polygons for the given cells."""
    lay = Layout(grid)
    return {c: lay.polygon(c) for c in cells}


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def emit_svg(grid: Heptagrid, states: dict[int, str], radius: int,
             palette: dict[str, str] | None = None, *, size: int = 900,
             labels: bool = False) -> str:
    """SVG document of the ball of `radius` with per-cell fills.

    `states` maps cell -> state letter; absent cells render quiescent.
    Output bytes are deterministic for fixed inputs.
    """
    pal = dict(PALETTE)
    if palette:
        pal.update(palette)
    lay = Layout(grid)
    cells = sorted(grid.ball(CENTER, radius))
    extra = sorted(c for c in states if c not in set(cells))
    for c in extra:
        if grid.level(c) > radius:
            raise ValueError(
                f"cell {grid.address(c)} lies outside the layout radius {radius}")
    half = size / 2
    scale = half * 0.98

    def pt(z: complex) -> str:
        return f"{_fmt(half + scale * z.real)},{_fmt(half - scale * z.imag)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<circle cx="{_fmt(half)}" cy="{_fmt(half)}" r="{_fmt(scale)}" '
        'fill="none" stroke="#888888" stroke-width="0.5"/>',
    ]
    for c in cells:
        poly = lay.polygon(c)
        points = " ".join(pt(z) for z in poly)
        fill = pal[states.get(c, "W")]
        out.append(f'<polygon points="{points}" fill="{fill}" '
                   'stroke="#404040" stroke-width="0.4"/>')
        if labels:
            z = lay.centroid(c)
            out.append(f'<text x="{pt(z).split(",")[0]}" y="{pt(z).split(",")[1]}" '
                       f'font-size="6" text-anchor="middle">{grid.address(c)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_frames(grid: Heptagrid, initial: dict[int, str], trace, radius: int,
                palette: dict[str, str] | None = None) -> list[str]:
    """One SVG per time step, replaying a trace from the initial states."""
    frames = [emit_svg(grid, dict(initial), radius, palette)]
    states = dict(initial)
    for _, changes in trace.steps:
        for c, _, new in changes:
            if new == "W":
                states.pop(c, None)
            else:
                states[c] = new
        frames.append(emit_svg(grid, dict(states), radius, palette))
    return frames
