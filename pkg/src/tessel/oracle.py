"""Geometric model of the dual graph, built by reflecting the root tile.

The builder knows nothing about substitutions: it produces tile centres,
edge adjacency, BFS generations and the q-cycles around tiling vertices.
Everything the combinatorial side claims is checked against this model.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import PointIndex, make_geometry
from .params import TesselError, TilingParams

HYPERBOLIC_CEILING = 9
EUCLIDEAN_CEILING = 60


class ToleranceCollision(TesselError):
    pass


class CeilingExceeded(TesselError):
    pass


class UnclassifiableFace(TesselError):
    pass


def depth_ceiling(params: TilingParams) -> int:
    """Deepest ``max_gen`` allowed; ``TESSEL_CEILING`` overrides the default."""
    env = os.environ.get("TESSEL_CEILING")
    if env:
        return int(env)
    return HYPERBOLIC_CEILING if params.hyperbolic else EUCLIDEAN_CEILING


@dataclass(frozen=True, eq=False)
class DualGraph:
    """A finite ball of the dual graph.

    Tiles up to generation ``max_gen + 1`` are present. ``neighbors[v]`` and
    ``corners[v]`` are in counterclockwise order around the tile centre, with
    ``neighbors[v][i]`` sitting across the edge between ``corners[v][i]`` and
    ``corners[v][i + 1]``; a neighbour outside the ball is ``-1``.
    ``faces`` maps a tiling vertex (corner id) to the q tiles around it in
    counterclockwise order; only complete faces are recorded.
    """

    params: TilingParams
    max_gen: int
    centers: np.ndarray
    generation: tuple[int, ...]
    neighbors: tuple[tuple[int, ...], ...]
    corners: tuple[tuple[int, ...], ...]
    corner_points: np.ndarray
    faces: dict

    root = 0

    def __len__(self) -> int:
        return len(self.generation)

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v, row in enumerate(self.neighbors):
            out.extend((v, w) for w in row if w > v)
        return out

    def is_interior(self, v: int) -> bool:
        return self.generation[v] <= self.max_gen

    def face_list(self) -> list[tuple[int, ...]]:
        return [self.faces[c] for c in sorted(self.faces)]

    def tile_polygon(self, v: int) -> np.ndarray:
        return self.corner_points[list(self.corners[v])]

    def to_json(self) -> str:
        """The graph dump format: params, max_gen, vertices, edges, faces."""
        hyper = self.params.hyperbolic
        vertices = []
        for v, g in enumerate(self.generation):
            c = self.centers[v]
            item = {"id": v, "gen": g, "x": _num(c[0]), "y": _num(c[1])}
            if hyper:
                item["z"] = _num(c[2])
            vertices.append(item)
        doc = {
            "params": {"p": self.params.p, "q": self.params.q},
            "max_gen": self.max_gen,
            "vertices": vertices,
            "edges": [list(e) for e in self.edges],
            "faces": [list(f) for f in self.face_list()],
        }
        return _dump_json(doc)


class _Raw(str):
    pass


def _num(x: float) -> _Raw:
    return _Raw(repr(float(f"{x:.17g}")))


def _dump_json(doc) -> str:
    # floats are pre-formatted to 17 significant digits; keep them verbatim
    def enc(obj):
        if isinstance(obj, _Raw):
            return str(obj)
        if isinstance(obj, dict):
            return "{" + ", ".join(f"{json.dumps(k)}: {enc(v)}" for k, v in obj.items()) + "}"
        if isinstance(obj, (list, tuple)):
            return "[" + ", ".join(enc(v) for v in obj) + "]"
        return json.dumps(obj)

    return enc(doc)


def build_graph(params: TilingParams, max_gen: int) -> DualGraph:
    """Reflect the root tile outwards until every tile of generation ``max_gen + 1`` exists."""
    if max_gen < 0:
        raise ValueError("max_gen must be >= 0")
    ceiling = depth_ceiling(params)
    if max_gen > ceiling:
        raise CeilingExceeded(f"max_gen={max_gen} exceeds the depth ceiling {ceiling} for {params}")
    return _build(params, max_gen)


@lru_cache(maxsize=32)
def _build(params: TilingParams, max_gen: int) -> DualGraph:
    geo = make_geometry(params)
    p = params.p
    radius = max_gen + 1

    tiles = PointIndex(geo, geo.tile_separation)
    tiles.add(geo.origin)
    mats = [np.eye(3)]
    gens = [0]
    by_edge: list[list[int]] = [[-1] * p]

    frontier = [0]
    while frontier:
        nxt = []
        for t in frontier:
            for j, refl in enumerate(geo.reflections):
                m = mats[t] @ refl
                c = geo.renormalize(m @ geo.origin)
                if gens[t] < radius:
                    idx, new = tiles.find_or_add(c)
                    if new:
                        mats.append(m)
                        gens.append(gens[t] + 1)
                        by_edge.append([-1] * p)
                        nxt.append(idx)
                else:
                    idx = tiles.find(c)
                    if idx is None:
                        continue
                by_edge[t][j] = idx
        frontier = nxt

    corner_index = PointIndex(geo, geo.corner_separation)
    members: dict[int, list[int]] = {}
    neighbors, corners = [], []
    for t, m in enumerate(mats):
        pts = geo.root_corners @ m.T
        ids = []
        for pt in pts:
            cid, _ = corner_index.find_or_add(geo.renormalize(pt))
            ids.append(cid)
            members.setdefault(cid, []).append(t)
        row = by_edge[t]
        if np.linalg.det(m) > 0:
            corners.append(tuple(ids))
            neighbors.append(tuple(row))
        else:
            corners.append(tuple(reversed(ids)))
            neighbors.append(tuple(row[(p - 2 - i) % p] for i in range(p)))

    centers = np.array(tiles.points)
    corner_points = np.array(corner_index.points)
    faces = {}
    for cid, ts in members.items():
        if len(ts) != params.q:
            continue
        ang = geo.angles_around(corner_points[cid], centers[ts])
        faces[cid] = tuple(ts[i] for i in np.argsort(ang, kind="stable"))
    return DualGraph(params, max_gen, centers, tuple(gens), tuple(neighbors), tuple(corners),
                     corner_points, faces)


def generation_counts(graph: DualGraph) -> list[int]:
    counts = Counter(g for g in graph.generation if g <= graph.max_gen)
    return [counts[n] for n in range(graph.max_gen + 1)]


def same_generation_edges(graph: DualGraph) -> list[tuple[int, int]]:
    gen = graph.generation
    return [(u, w) for u, w in graph.edges
            if gen[u] == gen[w] and gen[u] <= graph.max_gen]
