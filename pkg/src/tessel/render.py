"""SVG drawing of a ball of the tiling.

Hyperbolic tilings are drawn in the Poincare disk with geodesic edges as
circular arcs; Euclidean ones in the plane, scaled to fit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import vertex_types
from .lemmas import SpanningTree
from .oracle import DualGraph
from .params import Letter

# a fixed 10-colour cycle
PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")
UNTYPED = "#dddddd"
SIZE = 800


@dataclass(frozen=True)
class RenderResult:
    svg: str
    tiles: int
    tree_edges: int


def _disk(graph: DualGraph, pts: np.ndarray) -> np.ndarray:
    if graph.params.hyperbolic:
        return pts[:, :2] / (1.0 + pts[:, 2:3])
    return pts[:, :2]


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Frame:
    def __init__(self, graph: DualGraph, max_gen: int):
        self.hyper = graph.params.hyperbolic
        if self.hyper:
            self.scale = SIZE / 2 - 10
        else:
            ids = [v for v, g in enumerate(graph.generation) if g <= max_gen]
            pts = np.concatenate([graph.tile_polygon(v) for v in ids])
            extent = float(np.max(np.abs(pts[:, :2]))) or 1.0
            self.scale = (SIZE / 2 - 10) / extent

    def xy(self, p) -> tuple[float, float]:
        # SVG y points down
        return SIZE / 2 + self.scale * float(p[0]), SIZE / 2 - self.scale * float(p[1])


def _arc(frame: _Frame, z1: np.ndarray, z2: np.ndarray) -> str:
    x2, y2 = frame.xy(z2)
    if not frame.hyper:
        return f"L {_fmt(x2)} {_fmt(y2)}"
    # geodesic: circle through z1 and z2 orthogonal to the unit circle
    a1, a2 = complex(*z1), complex(*z2)
    if abs((a1.conjugate() * a2).imag) < 1e-12:
        return f"L {_fmt(x2)} {_fmt(y2)}"
    b1 = (abs(a1) ** 2 + 1) / 2
    b2 = (abs(a2) ** 2 + 1) / 2
    m = np.array([[a1.real, a1.imag], [a2.real, a2.imag]])
    c = np.linalg.solve(m, [b1, b2])
    radius = float(np.hypot(c[0] - a1.real, c[1] - a1.imag)) * frame.scale
    x1, y1 = frame.xy(z1)
    cx, cy = frame.xy(c)
    sweep = 1 if (x1 - cx) * (y2 - cy) - (y1 - cy) * (x2 - cx) > 0 else 0
    return f"A {_fmt(radius)} {_fmt(radius)} 0 0 {sweep} {_fmt(x2)} {_fmt(y2)}"


def _tile_path(frame: _Frame, poly: np.ndarray) -> str:
    x0, y0 = frame.xy(poly[0])
    parts = [f"M {_fmt(x0)} {_fmt(y0)}"]
    n = len(poly)
    for i in range(n):
        parts.append(_arc(frame, poly[i], poly[(i + 1) % n]))
    parts.append("Z")
    return " ".join(parts)


def render_svg(graph: DualGraph, max_gen: int, color: str = "gen",
               tree: SpanningTree | None = None, alphabet: tuple[Letter, ...] = ()) -> RenderResult:
    """Tiles of generation ``<= max_gen``, coloured by generation or by type."""
    if color not in ("gen", "type"):
        raise ValueError(f"unknown colouring {color!r}")
    frame = _Frame(graph, max_gen)
    types = vertex_types(graph) if color == "type" else {}
    order = {x: i for i, x in enumerate(alphabet)}
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<title>{{{graph.params.p},{graph.params.q}}} tiling, generations 0-{max_gen}</title>",
    ]
    if graph.params.hyperbolic:
        r = _fmt(frame.scale)
        lines.append(f'<circle cx="{SIZE // 2}" cy="{SIZE // 2}" r="{r}" fill="none" stroke="#000000"/>')
    lines.append('<g stroke="#333333" stroke-width="0.5">')
    tiles = 0
    for v, g in enumerate(graph.generation):
        if g > max_gen:
            continue
        if color == "gen":
            fill = PALETTE[g % len(PALETTE)]
            label = f"gen {g}"
        else:
            prof = types.get(v)
            letter = prof.letter if prof else None
            fill = PALETTE[(order.get(letter, -1) + 1) % len(PALETTE)] if letter else UNTYPED
            label = str(letter) if letter else "untyped"
        poly = _disk(graph, graph.tile_polygon(v))
        lines.append(f'<path class="tile" data-tile="{v}" data-label="{label}" fill="{fill}" '
                     f'd="{_tile_path(frame, poly)}"/>')
        tiles += 1
    lines.append("</g>")
    edges = 0
    if tree is not None:
        centers = _disk(graph, graph.centers)
        lines.append('<g stroke="#000000" stroke-width="1.5">')
        for par, child in tree.edges():
            x1, y1 = frame.xy(centers[par])
            x2, y2 = frame.xy(centers[child])
            lines.append(f'<line class="tree" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                         f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
            edges += 1
        lines.append("</g>")
    lines.append("</svg>")
    return RenderResult("\n".join(lines) + "\n", tiles, edges)
