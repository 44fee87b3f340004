"""SVG rendering of lifted-map graphs.

The picture follows the house convention: the fundamental square
[-3/4, 3/4]^2 with the diagonal, a gray box over image x image, the graph
of the lift sampled densely, and the marked points drawn as filled disks
with their targets as open boxes.  Points on the first critical orbit are
blue, on the second red, on both purple, and gray otherwise.
"""

from __future__ import annotations

from typing import List, Optional

from .combinatorics import Combinatorics, orbit_of
from .pullback import MarkedState
from .quadmap import EpsteinParams, lifted_eval

SAMPLES = 2048
SIZE = 480
LO, HI = -0.75, 0.75

COLORS = {
    "first": "#1f5fd0",
    "second": "#d03030",
    "both": "#8030c0",
    "free": "#808080",
}


def _px(value: float) -> float:
    return (value - LO) / (HI - LO) * SIZE


def _py(value: float) -> float:
    return SIZE - (value - LO) / (HI - LO) * SIZE


def _marked_colors(c: Combinatorics) -> List[str]:
    jm, jp = c.critical_indices
    first = set(orbit_of(c, jm))
    second = set(orbit_of(c, jp))
    colors = []
    for j in range(c.n + 1):
        in_first, in_second = j in first, j in second
        if in_first and in_second:
            colors.append(COLORS["both"])
        elif in_first:
            colors.append(COLORS["first"])
        elif in_second:
            colors.append(COLORS["second"])
        else:
            colors.append(COLORS["free"])
    return colors


def render_lifted_graph(
    params: EpsteinParams,
    state: Optional[MarkedState] = None,
    c: Optional[Combinatorics] = None,
    samples: int = SAMPLES,
) -> str:
    """Return an SVG document for the graph of the lift of ``params``."""
    p = params.as_floats()
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" '
        f'height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white" '
        'stroke="none"/>',
    ]

    v1, v2 = lifted_eval(p, -0.25), lifted_eval(p, 0.25)
    lo_v, hi_v = min(v1, v2), max(v1, v2)
    parts.append(
        f'<rect x="{_px(lo_v):.2f}" y="{_py(hi_v):.2f}" '
        f'width="{_px(hi_v) - _px(lo_v):.2f}" '
        f'height="{_py(lo_v) - _py(hi_v):.2f}" fill="#e8e8e8" stroke="#bbbbbb"/>'
    )
    parts.append(
        f'<line x1="0" y1="{SIZE}" x2="{SIZE}" y2="0" stroke="#999999" '
        'stroke-dasharray="4,4"/>'
    )
    parts.append(
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="none" '
        'stroke="green" stroke-width="2"/>'
    )

    points = []
    for i in range(samples + 1):
        t = LO + (HI - LO) * i / samples
        points.append(f"{_px(t):.2f},{_py(lifted_eval(p, t)):.2f}")
    parts.append(
        '<polyline fill="none" stroke="black" stroke-width="1.2" '
        f'points="{" ".join(points)}"/>'
    )

    if state is not None and c is not None:
        colors = _marked_colors(c)
        t_values = state.floats()
        for j, t in enumerate(t_values):
            f_t = lifted_eval(p, t)
            color = colors[j]
            parts.append(
                f'<circle cx="{_px(t):.2f}" cy="{_py(f_t):.2f}" r="4" '
                f'fill="{color}"/>'
            )
            target = t_values[c.m[j]]
            parts.append(
                f'<rect x="{_px(target) - 4:.2f}" y="{_py(f_t) - 4:.2f}" '
                f'width="8" height="8" fill="none" stroke="{color}" '
                'stroke-width="1.3"/>'
            )

    parts.append("</svg>")
    return "\n".join(parts)
