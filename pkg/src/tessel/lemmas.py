"""Geometric successor lists per vertex type, and the spanning tree they carry.

The substitution keeps every child exactly once. Geometrically a few children
have two parents, so the full successor list of a type can be one letter
longer than its image. Even q drops the last such child, odd q the first; the
image is then the leftmost (even q) or rightmost (odd q) embedding of the rule
into the observed successor list.
"""
from __future__ import annotations

from dataclasses import dataclass

from .classify import successors_ccw, vertex_types
from .oracle import DualGraph
from .params import AXIOM, Family, Letter, TesselError, TilingParams, a, abar, b, bbar
from .substitution import SubstitutionSystem, build_system

Word = tuple[Letter, ...]


class EmbeddingFailed(TesselError):
    pass


def _rep(x: Letter, n: int) -> Word:
    return (x,) * n


def successor_table(params: TilingParams) -> dict[Letter, Word]:
    """Every successor of a tile of each type, counterclockwise from the first face."""
    p, k, fam = params.p, params.k, params.family
    t: dict[Letter, Word] = {}
    if fam is Family.E1:
        t[AXIOM] = _rep(a(1), p)
        for i in range(1, k):
            t[a(i)] = (abar(2), *_rep(a(1), p - 3), a(i + 1))
        t[a(k)] = (abar(2), *_rep(a(1), p - 4), a(2))
        for j in range(2, k - 1):
            t[abar(j)] = (abar(j + 1), *_rep(a(1), p - 3), a(2))
        t[abar(k - 1)] = (a(k), *_rep(a(1), p - 3), a(2))
    elif fam is Family.E2:
        t = {AXIOM: _rep(a(1), 4), a(1): (a(2), a(1), a(2)), a(2): (a(2), a(2))}
    elif fam in (Family.E3, Family.E4):
        t[AXIOM] = _rep(a(1), 3)
        for i in range(1, k):
            t[a(i)] = (abar(2), a(i + 1))
        t[a(k)] = (a(k + 1),)
        t[a(k + 1)] = (abar(3), a(3)) if fam is Family.E3 else (a(3), a(3))
        for j in range(2, k - 1):
            t[abar(j)] = (abar(j + 1), a(2))
        t[abar(k - 1)] = (a(k), a(2))
    elif fam is Family.O1:
        ones3 = _rep(b(1), p - 3)
        ones4 = _rep(b(1), p - 4)
        t[AXIOM] = _rep(b(1), p)
        for i in range(1, k):
            t[a(i)] = (bbar(2), *ones3, a(i + 1))
            t[b(i)] = (bbar(2), *ones3, b(i + 1))
        t[a(k)] = (bbar(2), *ones4, b(2))
        t[b(k)] = (bbar(2), *ones4, a(1))
        for j in range(1, k - 1):
            t[abar(j)] = (abar(j + 1), *ones3, b(2))
        t[abar(k - 1)] = (a(k), *ones3, b(2))
        for j in range(2, k):
            t[bbar(j)] = (bbar(j + 1), *ones3, b(2))
        t[bbar(k)] = (abar(1), *ones4, b(2))
    elif fam is Family.O2:
        t[AXIOM] = _rep(b(1), 3)
        t[a(1)] = (bbar(3), a(2))
        for i in range(2, k):
            t[a(i)] = (bbar(2), a(i + 1))
        t[a(k)] = (a(k + 1),)
        t[a(k + 1)] = (bbar(3), b(3))
        for i in range(1, k):
            t[b(i)] = (bbar(2), b(i + 1))
        t[b(k)] = (a(1),)
        t[abar(1)] = (abar(2), b(3))
        for j in range(2, k - 1):
            t[abar(j)] = (abar(j + 1), b(2))
        t[abar(k - 1)] = (a(k), b(2))
        for j in range(2, k):
            t[bbar(j)] = (bbar(j + 1), b(2))
        t[bbar(k)] = (abar(1),)
    else:
        t = {AXIOM: _rep(a(1), p),
             a(1): (b(1), *_rep(a(1), p - 5), b(1)),
             b(1): (b(1), *_rep(a(1), p - 6), b(1))}
    return t


def embed(image: Word, observed: Word, from_right: bool) -> list[int] | None:
    """Positions of ``image`` as a subsequence of ``observed`` (greedy from one end)."""
    n = len(observed)
    order = range(n - 1, -1, -1) if from_right else range(n)
    want = list(reversed(image)) if from_right else list(image)
    pos: list[int] = []
    for i in order:
        if len(pos) < len(want) and observed[i] == want[len(pos)]:
            pos.append(i)
    if len(pos) < len(want):
        return None
    return sorted(pos)


@dataclass(frozen=True)
class SpanningTree:
    """Parent of every tile of generation 1..depth, as induced by the substitution."""

    depth: int
    parent: dict[int, int]
    letter: dict[int, Letter]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((par, child) for child, par in self.parent.items())


def spanning_tree(graph: DualGraph, depth: int | None = None,
                  system: SubstitutionSystem | None = None) -> SpanningTree:
    """Claim children parent by parent, generation by generation.

    Raises ``EmbeddingFailed`` when an image does not embed into the observed
    successors, or when a child is claimed twice or not at all.
    """
    params = graph.params
    system = system or build_system(params)
    if depth is None:
        depth = graph.max_gen
    types = vertex_types(graph)
    from_right = params.q % 2 == 1
    by_gen: dict[int, list[int]] = {}
    for v, g in enumerate(graph.generation):
        by_gen.setdefault(g, []).append(v)
    parent: dict[int, int] = {}
    letter: dict[int, Letter] = {}
    for n in range(depth):
        for v in by_gen.get(n, []):
            prof = types.get(v)
            if prof is None or prof.letter is None:
                raise EmbeddingFailed(f"tile {v} of generation {n} has no type")
            succ = successors_ccw(graph, v, prof.first)
            obs = []
            for w in succ:
                wp = types.get(w)
                if wp is None or wp.letter is None:
                    raise EmbeddingFailed(f"successor {w} of tile {v} has no type")
                obs.append(wp.letter)
            image = system.rules[prof.letter]
            pos = embed(image, tuple(obs), from_right)
            if pos is None:
                raise EmbeddingFailed(
                    f"tile {v} ({prof.letter}): image {' '.join(map(str, image))} does not embed "
                    f"into successors {' '.join(map(str, obs))}")
            for i in pos:
                w = succ[i]
                if w in parent:
                    raise EmbeddingFailed(f"tile {w} claimed by both {parent[w]} and {v}")
                parent[w] = v
                letter[w] = obs[i]
        missing = [w for w in by_gen.get(n + 1, []) if w not in parent]
        if missing:
            raise EmbeddingFailed(f"tile {missing[0]} of generation {n + 1} has no parent")
    return SpanningTree(depth, parent, letter)
