"""Read vertex types and successor lists off the geometric dual graph.

A face (a q-cycle around a tiling vertex) labels each of its tiles by its
position relative to the face minimum: ``0``, ``il``/``ir`` along the two
sides, ``k`` at the top for even q; for odd q either two adjacent minima
``0l``/``0r`` with a single top ``k`` (first kind) or one minimum and two
adjacent maxima ``kL``/``kR`` (second kind). Lower-case ``l``/``L`` is the
counterclockwise side seen from the minimum.

The type of a tile is the word of its labels over its p faces, read
counterclockwise from a canonical first face.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .oracle import DualGraph, UnclassifiableFace
from .params import AXIOM, Family, Letter, TesselError, TilingParams, a, abar, b, bbar


class AmbiguousFirstElement(TesselError):
    pass


@dataclass(frozen=True)
class FaceProfile:
    face: tuple[int, ...]
    generation: int
    kind: str  # "even", "first" or "second"
    labels: dict


def _label_face(q: int, gens: list[int]) -> tuple[int, str, list[str]]:
    k = q // 2
    low = min(gens)
    mins = [i for i, g in enumerate(gens) if g == low]
    labels = []
    if q % 2 == 0 or len(mins) == 1:
        if len(mins) != 1:
            raise UnclassifiableFace(f"even face with {len(mins)} minima: {gens}")
        m = mins[0]
        kind = "even" if q % 2 == 0 else "second"
        for i in range(q):
            d = (i - m) % q
            if d == 0:
                labels.append("0")
            elif kind == "even":
                labels.append(str(k) if d == k else (f"{d}l" if d < k else f"{q - d}r"))
            else:
                labels.append(f"{d}L" if d <= k else f"{q - d}R")
        expected = [low + min(d, q - d) for d in ((i - m) % q for i in range(q))]
    else:
        if len(mins) != 2:
            raise UnclassifiableFace(f"odd face with {len(mins)} minima: {gens}")
        lo, hi = mins
        if (lo + 1) % q == hi:
            right, left = lo, hi
        elif (hi + 1) % q == lo:
            right, left = hi, lo
        else:
            raise UnclassifiableFace(f"odd face with non-adjacent minima: {gens}")
        kind = "first"
        expected = []
        for i in range(q):
            d = (i - left) % q
            e = (right - i) % q
            if d == k:
                labels.append(str(k))
                expected.append(low + k)
            elif d < k:
                labels.append(f"{d}l")
                expected.append(low + d)
            else:
                labels.append(f"{e}r")
                expected.append(low + e)
    if list(gens) != expected:
        raise UnclassifiableFace(f"{kind} face generations {gens} do not fit the profile {expected}")
    return low, kind, labels


def face_profile(graph: DualGraph, face: tuple[int, ...]) -> FaceProfile:
    gens = [graph.generation[t] for t in face]
    low, kind, labels = _label_face(graph.params.q, gens)
    return FaceProfile(face, low, kind, dict(zip(face, labels)))


def face_profiles(graph: DualGraph) -> list[FaceProfile]:
    return [face_profile(graph, f) for f in graph.face_list()]


def _word(*parts) -> tuple[str, ...]:
    out = []
    for part in parts:
        if isinstance(part, tuple):
            out.extend(part)
        else:
            out.append(part)
    return tuple(out)


def _zeros(n: int) -> tuple[str, ...]:
    return ("0",) * n


@lru_cache(maxsize=None)
def type_patterns(params: TilingParams) -> dict[tuple[str, ...], Letter]:
    """Label word -> letter for every vertex type of the family."""
    p, k, fam = params.p, params.k, params.family
    K = str(k)
    pats: dict[tuple[str, ...], Letter] = {_zeros(p): AXIOM}
    if fam in (Family.E1, Family.E2):
        for i in range(1, k):
            pats[_word(f"{i}l", "1r", _zeros(p - 2))] = a(i)
        pats[_word(K, "1r", _zeros(p - 3), "1l")] = a(k)
        for j in range(2, k):
            pats[_word(f"{j}r", _zeros(p - 2), "1l")] = abar(j)
    elif fam in (Family.E3, Family.E4):
        for i in range(1, k):
            pats[(f"{i}l", "1r", "0")] = a(i)
        pats[(K, "1r", "1l")] = a(k)
        pats[("2l", "2r", "0")] = a(k + 1)
        for j in range(2, k):
            pats[(f"{j}r", "0", "1l")] = abar(j)
    elif fam is Family.O1:
        for i in range(1, k):
            pats[_word(f"{i}l", "1R", _zeros(p - 2))] = a(i)
            pats[_word(f"{i}L", "1R", _zeros(p - 2))] = b(i)
            pats[_word(f"{i}r", _zeros(p - 2), "1L")] = abar(i)
        pats[_word(K, "1R", _zeros(p - 3), "1L")] = a(k)
        pats[_word(f"{k}L", "1R", _zeros(p - 3), "0l")] = b(k)
        for j in range(2, k):
            pats[_word(f"{j}R", _zeros(p - 2), "1L")] = bbar(j)
        pats[_word(f"{k}R", "0r", _zeros(p - 3), "1L")] = bbar(k)
    elif fam is Family.O2:
        pats[("2R", "0", "1l")] = a(1)
        for i in range(2, k):
            pats[(f"{i}l", "1R", "0")] = a(i)
        pats[(K, "1R", "1L")] = a(k)
        pats[("2L", "2R", "0")] = a(k + 1)
        for i in range(1, k):
            pats[(f"{i}L", "1R", "0")] = b(i)
        pats[(f"{k}L", "1R", "0l")] = b(k)
        pats[("2L", "1r", "0")] = abar(1)
        for j in range(2, k):
            pats[(f"{j}r", "0", "1L")] = abar(j)
            pats[(f"{j}R", "0", "1L")] = bbar(j)
        pats[(f"{k}R", "0r", "1L")] = bbar(k)
    else:
        pats[_word("1L", "1R", "0r", _zeros(p - 4), "0l")] = a(1)
        pats[_word("1L", "1", "1R", "0r", _zeros(p - 5), "0l")] = b(1)
    return pats


# which of two (or three) minimal faces comes first, keyed by the labels they give the vertex
_DESIGNATED = {
    frozenset(("1l", "1r")): "1l",
    frozenset(("2l", "2r")): "2l",
    frozenset(("1l", "1R")): "1l",
    frozenset(("1r", "1L")): "1r",
    frozenset(("1L", "1R")): "1L",
    frozenset(("2L", "2R")): "2L",
    frozenset(("1L", "1", "1R")): "1L",
}


@dataclass(frozen=True)
class VertexTypeProfile:
    vertex: int
    labels: tuple[str, ...]  # relative generations, counterclockwise from the first face
    first: int  # position of the first face in graph.corners[vertex]
    letter: Letter | None  # None when the word matches no known type


def _first_face(graph: DualGraph, v: int, rows: list[tuple[int, str]]) -> int:
    low = min(g for g, _ in rows)
    cand = [i for i, (g, _) in enumerate(rows) if g == low]
    if len(cand) == 1:
        return cand[0]
    if len(cand) == len(rows):
        if v != graph.root:
            raise AmbiguousFirstElement(f"non-root vertex {v} has all faces minimal")
        # the face whose direction from the root is closest to the positive x-axis
        pts = graph.corner_points[list(graph.corners[v])]
        ang = np.abs(np.arctan2(pts[:, 1], pts[:, 0]))
        return int(np.argmin(ang))
    key = frozenset(rows[i][1] for i in cand)
    target = _DESIGNATED.get(key)
    if target is None or len(key) != len(cand):
        raise AmbiguousFirstElement(
            f"vertex {v}: minimal faces with labels {sorted(key)} fit no known case")
    return next(i for i in cand if rows[i][1] == target)


def classify_vertex(graph: DualGraph, v: int) -> VertexTypeProfile | None:
    """Type of tile ``v``, or None when one of its faces leaves the built ball."""
    rows = []
    for c in graph.corners[v]:
        face = graph.faces.get(c)
        if face is None:
            return None
        prof = _profile_cached(graph, c)
        rows.append((prof.generation, prof.labels[v]))
    s = _first_face(graph, v, rows)
    labels = tuple(lab for _, lab in rows[s:] + rows[:s])
    return VertexTypeProfile(v, labels, s, type_patterns(graph.params).get(labels))


def _profile_cached(graph: DualGraph, corner: int) -> FaceProfile:
    cache = graph.__dict__.setdefault("_face_cache", {})
    prof = cache.get(corner)
    if prof is None:
        prof = cache[corner] = face_profile(graph, graph.faces[corner])
    return prof


def vertex_types(graph: DualGraph) -> dict[int, VertexTypeProfile]:
    """Types of every interior tile whose p faces all lie inside the ball."""
    cache = graph.__dict__.get("_type_cache")
    if cache is None:
        cache = {}
        for v in range(len(graph)):
            if graph.is_interior(v):
                prof = classify_vertex(graph, v)
                if prof is not None:
                    cache[v] = prof
        graph.__dict__["_type_cache"] = cache
    return cache


def successors_ccw(graph: DualGraph, v: int, first: int) -> list[int]:
    """Successors of ``v`` counterclockwise, starting just after its first face."""
    p = graph.params.p
    g = graph.generation[v]
    out = []
    for i in range(p):
        w = graph.neighbors[v][(first + i) % p]
        if w >= 0 and graph.generation[w] == g + 1:
            out.append(w)
    return out


@dataclass(frozen=True)
class SuccessorRecord:
    vertex: int
    letter: Letter
    successors: tuple[int, ...]
    letters: tuple[Letter, ...]


def successor_map(graph: DualGraph) -> list[SuccessorRecord]:
    """Observed successor letters of every classified vertex whose successors are classified."""
    types = vertex_types(graph)
    out = []
    for v, prof in sorted(types.items()):
        if prof.letter is None:
            continue
        succ = successors_ccw(graph, v, prof.first)
        letters = []
        for w in succ:
            wp = types.get(w)
            if wp is None or wp.letter is None:
                break
            letters.append(wp.letter)
        else:
            out.append(SuccessorRecord(v, prof.letter, tuple(succ), tuple(letters)))
    return out
