"""Reflection geometry for regular tilings.

Hyperbolic tilings live on the hyperboloid ``x^2 + y^2 - z^2 = -1, z > 0`` where
every isometry is a 3x3 Lorentz matrix; Euclidean tilings use 3x3 affine
matrices acting on ``(x, y, 1)``. Both expose the same small interface so the
graph builder does not care which one it gets.
"""
from __future__ import annotations

import math
from collections import defaultdict

import numpy as np

from .params import TilingParams

_LORENTZ = np.diag([1.0, 1.0, -1.0])


class _Geometry:
    origin: np.ndarray
    root_corners: np.ndarray  # (p, 3), counterclockwise
    reflections: list[np.ndarray]  # reflection in the line through edge j = corners j, j+1
    tile_separation: float  # minimum distance between distinct tile centres
    corner_separation: float  # edge length

    def distance(self, u: np.ndarray, v: np.ndarray) -> float:
        raise NotImplementedError

    def to_local(self, center: np.ndarray, points: np.ndarray) -> np.ndarray:
        """Planar coordinates of ``points`` seen from ``center`` (moved to the origin).

        Uses an orientation-preserving isometry, so angles give the positive
        (counterclockwise) order around ``center``.
        """
        raise NotImplementedError

    def renormalize(self, point: np.ndarray) -> np.ndarray:
        return point

    def angles_around(self, center: np.ndarray, points: np.ndarray) -> np.ndarray:
        local = self.to_local(center, np.atleast_2d(points))
        return np.arctan2(local[:, 1], local[:, 0])


class HyperbolicGeometry(_Geometry):
    def __init__(self, params: TilingParams):
        p, q = params.p, params.q
        circum = math.acosh(1.0 / (math.tan(math.pi / p) * math.tan(math.pi / q)))
        inrad = math.acosh(math.cos(math.pi / q) / math.sin(math.pi / p))
        half_edge = math.acosh(math.cosh(circum) / math.cosh(inrad))
        self.origin = np.array([0.0, 0.0, 1.0])
        theta = 2 * math.pi * np.arange(p) / p
        self.root_corners = np.stack(
            [math.sinh(circum) * np.cos(theta), math.sinh(circum) * np.sin(theta),
             np.full(p, math.cosh(circum))], axis=1)
        self.reflections = []
        for j in range(p):
            phi = theta[j] + math.pi / p
            # unit spacelike normal of the edge's geodesic
            n = np.array([math.cosh(inrad) * math.cos(phi), math.cosh(inrad) * math.sin(phi),
                          math.sinh(inrad)])
            self.reflections.append(np.eye(3) - 2.0 * np.outer(n, _LORENTZ @ n))
        self.tile_separation = 2 * inrad
        self.corner_separation = 2 * half_edge
        self.inradius, self.circumradius = inrad, circum

    def distance(self, u, v):
        c = u[2] * v[2] - u[0] * v[0] - u[1] * v[1]
        return math.acosh(max(c, 1.0))

    def renormalize(self, point):
        x, y = point[0], point[1]
        return np.array([x, y, math.sqrt(1.0 + x * x + y * y)])

    def to_local(self, center, points):
        cs = center[:2]
        z = center[2]
        # inverse boost: the boost for (-x, -y, z)
        boost = np.empty((3, 3))
        boost[:2, :2] = np.eye(2) + np.outer(cs, cs) / (1.0 + z)
        boost[:2, 2] = -cs
        boost[2, :2] = -cs
        boost[2, 2] = z
        return points @ boost.T

    def to_disk(self, points: np.ndarray) -> np.ndarray:
        """Poincaré disk coordinates."""
        points = np.atleast_2d(points)
        return points[:, :2] / (1.0 + points[:, 2:3])


class EuclideanGeometry(_Geometry):
    def __init__(self, params: TilingParams):
        p = params.p
        inrad = math.cos(math.pi / p)
        self.origin = np.array([0.0, 0.0, 1.0])
        theta = 2 * math.pi * np.arange(p) / p
        self.root_corners = np.stack([np.cos(theta), np.sin(theta), np.ones(p)], axis=1)
        self.reflections = []
        for j in range(p):
            phi = theta[j] + math.pi / p
            u = np.array([math.cos(phi), math.sin(phi)])
            m = np.eye(3)
            m[:2, :2] -= 2.0 * np.outer(u, u)
            m[:2, 2] = 2.0 * inrad * u
            self.reflections.append(m)
        self.tile_separation = 2 * inrad
        self.corner_separation = 2 * math.sin(math.pi / p)
        self.inradius, self.circumradius = inrad, 1.0

    def distance(self, u, v):
        return math.hypot(u[0] - v[0], u[1] - v[1])

    def to_local(self, center, points):
        return points[:, :2] - center[:2]


def make_geometry(params: TilingParams) -> _Geometry:
    if params.hyperbolic:
        return HyperbolicGeometry(params)
    return EuclideanGeometry(params)


class PointIndex:
    """Deduplicating point store.

    Points are bucketed on a coarse grid of the ambient (x, y) coordinates and
    matched by true distance, so accumulated rounding in long reflection
    products cannot split one point into two.
    """

    def __init__(self, geometry: _Geometry, separation: float, cell: float = 0.25):
        self.geometry = geometry
        self.radius = separation / 2.0
        self.cell = cell
        self.points: list[np.ndarray] = []
        self._buckets: dict[tuple[int, int], list[int]] = defaultdict(list)

    def _key(self, point) -> tuple[int, int]:
        return (int(math.floor(point[0] / self.cell)), int(math.floor(point[1] / self.cell)))

    def find(self, point) -> int | None:
        kx, ky = self._key(point)
        hits = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for idx in self._buckets.get((kx + dx, ky + dy), ()):
                    if self.geometry.distance(point, self.points[idx]) < self.radius:
                        hits.append(idx)
        if len(hits) > 1:
            from .oracle import ToleranceCollision

            raise ToleranceCollision(f"point {point} matches {len(hits)} stored points")
        return hits[0] if hits else None

    def add(self, point) -> int:
        idx = len(self.points)
        self.points.append(point)
        self._buckets[self._key(point)].append(idx)
        return idx

    def find_or_add(self, point) -> tuple[int, bool]:
        found = self.find(point)
        if found is not None:
            return found, False
        return self.add(point), True
