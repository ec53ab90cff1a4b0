"""Cross-checks of the substitution against the geometric model and the spectral data.

Each ``check_*`` function is a pure computation returning a :class:`ClaimReport`.
Invalid parameters raise; an unsupported family or a depth beyond the oracle
ceiling yields a skipped report.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .classify import AmbiguousFirstElement, face_profiles, successor_map, vertex_types
from .lemmas import EmbeddingFailed, embed, spanning_tree, successor_table
from .oracle import (CeilingExceeded, DualGraph, UnclassifiableFace, build_graph, depth_ceiling,
                     generation_counts, same_generation_edges)
from .params import Family, Letter, TilingParams, UnsupportedFamily, a, abar, b, bbar
from .polynomial import IntPolynomial
from .spectral import (char_poly, closed_form, equal_up_to_sign, nontrivial_factor, perron_root,
                       recurrence_coeffs, recurrence_violations, scc_analysis, transition_matrix,
                       unit_circle_residue)
from .substitution import build_system, iterate_counts, u_sequence, utilde_sequence

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

DEFAULT_TOL = Fraction(1, 10**10)
UNIT_CIRCLE_TOL = 1e-9
FIT_WINDOW = (10, 25)
FIT_TOL = 1e-3


@dataclass(frozen=True)
class ClaimReport:
    claim: str
    p: int
    q: int
    status: str
    evidence: str
    reason: str | None = None
    data: dict = field(default_factory=dict)
    parts: tuple["ClaimReport", ...] = ()

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "claim": self.claim,
            "params": {"p": self.p, "q": self.q},
            "status": self.status,
            "reason": self.reason,
            "evidence": self.evidence,
            "data": self.data,
        }
        if self.parts:
            out["parts"] = [r.to_dict() for r in self.parts]
        return out


ParamsLike = TilingParams | tuple[int, int]


def _split(params: ParamsLike) -> tuple[int, int]:
    if isinstance(params, TilingParams):
        return params.p, params.q
    p, q = params
    return p, q


def _resolve(claim: str, params: ParamsLike) -> TilingParams | ClaimReport:
    if isinstance(params, TilingParams):
        return params
    p, q = params
    try:
        return TilingParams(p, q)
    except UnsupportedFamily as exc:
        return ClaimReport(claim, p, q, SKIPPED, str(exc), reason="unsupported family")


def _report(claim: str, params: TilingParams, ok: bool, evidence: str, **data) -> ClaimReport:
    return ClaimReport(claim, params.p, params.q, PASS if ok else FAIL, evidence, data=data)


def _skip(claim: str, params: TilingParams, reason: str, evidence: str) -> ClaimReport:
    return ClaimReport(claim, params.p, params.q, SKIPPED, evidence, reason=reason)


def _guarded(claim: str, body: Callable[[TilingParams], ClaimReport]):
    def run(params: ParamsLike, *args, **kwargs) -> ClaimReport:
        resolved = _resolve(claim, params)
        if isinstance(resolved, ClaimReport):
            return resolved
        try:
            return body(resolved, *args, **kwargs)
        except CeilingExceeded as exc:
            return _skip(claim, resolved, "depth ceiling", str(exc))
    run.__name__ = body.__name__
    run.__doc__ = body.__doc__
    return run


def graph_depth(params: TilingParams, n_max: int) -> int:
    """Smallest ball in which every tile up to generation ``n_max`` has all its faces."""
    return n_max + params.k - 1 if params.k > 1 else n_max


def _graph(params: TilingParams, n_max: int) -> DualGraph:
    return build_graph(params, max(graph_depth(params, n_max), n_max))


def _fmt(seq: Sequence) -> str:
    return ",".join(str(x) for x in seq)


def _letters(xs) -> list[str]:
    return [str(x) for x in sorted(xs)]


# --- counts and types ----------------------------------------------------------------


def _check_counts(params: TilingParams, n_max: int) -> ClaimReport:
    """Generation sizes from the substitution against BFS shells of the model."""
    subst = u_sequence(build_system(params), n_max)
    oracle = generation_counts(build_graph(params, n_max))
    for n, (x, y) in enumerate(zip(subst, oracle)):
        if x != y:
            return _report("counts", params, False,
                           f"generation {n}: substitution gives {x}, model gives {y}",
                           substitution=subst, oracle=oracle)
    return _report("counts", params, True, f"u_0..u_{n_max} = {_fmt(subst)}", counts=subst)


check_counts = _guarded("counts", _check_counts)


def _check_type_census(params: TilingParams, n_max: int) -> ClaimReport:
    """Letters read off the model per generation against letter counts of the iterates."""
    graph = _graph(params, n_max)
    try:
        types = vertex_types(graph)
    except (AmbiguousFirstElement, UnclassifiableFace) as exc:
        return _report("type-census", params, False, str(exc))
    observed: list[Counter] = [Counter() for _ in range(n_max + 1)]
    for v, g in enumerate(graph.generation):
        if g > n_max:
            continue
        prof = types.get(v)
        if prof is None or prof.letter is None:
            labels = " ".join(prof.labels) if prof else "incomplete faces"
            return _report("type-census", params, False,
                           f"tile {v} of generation {g} has no type ({labels})")
        observed[g][prof.letter] += 1
    expected = iterate_counts(build_system(params), n_max)
    for n in range(n_max + 1):
        if dict(expected[n]) != dict(observed[n]):
            diff = {str(x): (expected[n][x], observed[n][x])
                    for x in sorted(set(expected[n]) | set(observed[n]))
                    if expected[n][x] != observed[n][x]}
            return _report("type-census", params, False,
                           f"generation {n}: (substitution, model) counts differ: {diff}")
    seen = set().union(*observed)
    return _report("type-census", params, True,
                   f"{len(seen)} distinct letters up to generation {n_max}: {' '.join(_letters(seen))}",
                   letters=_letters(seen), distinct=len(seen))


check_type_census = _guarded("type-census", _check_type_census)


def _check_successor_rules(params: TilingParams, n_max: int) -> ClaimReport:
    """Observed successor lists against the per-type table; the images must carve out a spanning tree."""
    graph = _graph(params, n_max)
    table = successor_table(params)
    system = build_system(params)
    from_right = params.q % 2 == 1
    for x, image in system.rules.items():
        if embed(image, table[x], from_right) is None:
            return _report("successor-rules", params, False,
                           f"rule {x} is not a subsequence of its successor list")
    try:
        records = successor_map(graph)
    except (AmbiguousFirstElement, UnclassifiableFace) as exc:
        return _report("successor-rules", params, False, str(exc))
    checked = Counter()
    for rec in records:
        if graph.generation[rec.vertex] >= n_max:
            continue
        if table[rec.letter] != rec.letters:
            return _report("successor-rules", params, False,
                           f"tile {rec.vertex} ({rec.letter}): successors "
                           f"{' '.join(map(str, rec.letters))}, expected "
                           f"{' '.join(map(str, table[rec.letter]))}")
        checked[rec.letter] += 1
    try:
        tree = spanning_tree(graph, n_max, system)
    except EmbeddingFailed as exc:
        return _report("successor-rules", params, False, str(exc))
    unseen = sorted(set(table) - set(checked))
    return _report("successor-rules", params, True,
                   f"{sum(checked.values())} tiles checked over {len(checked)} types; "
                   f"tree covers {len(tree.parent)} tiles"
                   + (f"; not reached: {' '.join(map(str, unseen))}" if unseen else ""),
                   checked=_letters(checked), unreached=[str(x) for x in unseen],
                   tree_edges=len(tree.parent))


check_successor_rules = _guarded("successor-rules", _check_successor_rules)


# --- structure -----------------------------------------------------------------------


def _same_gen_pairs(params: TilingParams) -> set[frozenset[Letter]] | None:
    """Allowed endpoint letter pairs of same-generation edges; None for O3 (any of its two letters)."""
    k = params.k
    if params.family in (Family.O1, Family.O2):
        return {frozenset((b(k), bbar(k)))}
    return None


def _check_same_generation(params: TilingParams, n_max: int) -> ClaimReport:
    graph = _graph(params, n_max)
    edges = [(u, w) for u, w in same_generation_edges(graph) if graph.generation[u] <= n_max]
    if params.q % 2 == 0:
        if edges:
            u, w = edges[0]
            return _report("same-generation-edges", params, False,
                           f"edge {u}-{w} joins two tiles of generation {graph.generation[u]}")
        return _report("same-generation-edges", params, True,
                       f"no same-generation edges up to generation {n_max}", count=0)
    if not edges:
        return _report("same-generation-edges", params, False,
                       f"odd q but no same-generation edge up to generation {n_max}")
    types = vertex_types(graph)
    allowed = _same_gen_pairs(params)
    pairs = Counter()
    for u, w in edges:
        lu, lw = types[u].letter, types[w].letter
        pair = frozenset((lu, lw))
        if allowed is not None and pair not in allowed:
            return _report("same-generation-edges", params, False,
                           f"edge {u}-{w} joins types {lu} and {lw}")
        pairs["-".join(sorted(str(x) for x in (lu, lw)))] += 1
    return _report("same-generation-edges", params, True,
                   f"{len(edges)} edges, type pairs {dict(sorted(pairs.items()))}",
                   count=len(edges), pairs=dict(sorted(pairs.items())))


def _check_faces(params: TilingParams, n_max: int) -> ClaimReport:
    graph = _graph(params, n_max)
    try:
        profs = face_profiles(graph)
    except UnclassifiableFace as exc:
        return _report("face-profiles", params, False, str(exc))
    kinds = Counter(p.kind for p in profs)
    return _report("face-profiles", params, True,
                   f"{len(profs)} faces fit their generation profile ({dict(sorted(kinds.items()))})",
                   kinds=dict(sorted(kinds.items())))


def expected_components(params: TilingParams) -> tuple[list[set[Letter]], set[Letter]]:
    """Nontrivial strongly connected components (each with h = 1 unless noted) and isolated letters."""
    letters = set(build_system(params).alphabet)
    fam = params.family
    if fam in (Family.E1, Family.O1):
        return [letters], set()
    if fam is Family.E2:
        return [{a(1)}, {a(2)}], set()
    if fam is Family.E3:
        return [letters - {a(1)}], {a(1)}
    if fam is Family.E4:
        return [{a(2), abar(2)}, {a(3), a(4)}], {a(1)}
    if fam is Family.O2:
        return [letters - {b(1)}], {b(1)}
    if params.p == 6:
        return [{a(1)}, {b(1)}], set()
    return [letters], set()


def _check_scc(params: TilingParams) -> ClaimReport:
    report = scc_analysis(transition_matrix(build_system(params)))
    nontrivial = [(set(c), h) for c, h in zip(report.components, report.imprimitivity) if h]
    isolated = {c[0] for c, h in zip(report.components, report.imprimitivity) if not h}
    comps, iso = expected_components(params)
    shown = "; ".join(f"{{{' '.join(_letters(c))}}} h={h}" for c, h in nontrivial)
    if sorted(map(sorted, comps)) != sorted(sorted(c) for c, _ in nontrivial) or iso != isolated:
        return _report("scc", params, False,
                       f"components {shown}, isolated {_letters(isolated)}; expected "
                       f"{[_letters(c) for c in comps]}, isolated {_letters(iso)}")
    # the periodic Euclidean components are the only ones with h > 1
    if params.family is not Family.E4 and any(h != 1 for _, h in nontrivial):
        return _report("scc", params, False, f"imprimitive component: {shown}")
    return _report("scc", params, True, shown + (f"; isolated {' '.join(_letters(isolated))}"
                                                  if isolated else ""),
                   components=[_letters(c) for c, _ in nontrivial],
                   imprimitivity=[h for _, h in nontrivial], isolated=_letters(isolated))


def _check_structure_lemmas(params: TilingParams, n_max: int) -> ClaimReport:
    """Same-generation edges, face profiles and the strongly connected components, bundled."""
    parts = (_check_same_generation(params, n_max), _check_faces(params, n_max), _check_scc(params))
    failed = [r.claim for r in parts if r.status == FAIL]
    status = FAIL if failed else PASS
    evidence = "failed: " + ", ".join(failed) if failed else "all parts pass"
    return ClaimReport("structure", params.p, params.q, status, evidence, parts=parts)


check_structure_lemmas = _guarded("structure", _check_structure_lemmas)


# --- spectral ------------------------------------------------------------------------


def _check_recurrence(params: TilingParams, n_max: int = 40) -> ClaimReport:
    """The seed-letter word lengths obey the recurrence read off the characteristic polynomial."""
    system = build_system(params)
    chi = char_poly(transition_matrix(system))
    lead, cs = recurrence_coeffs(chi)
    seq = utilde_sequence(system, n_max)
    if n_max < chi.degree:
        return _skip("recurrence", params, "depth", f"n_max={n_max} is below the order {chi.degree}")
    bad = recurrence_violations(seq, chi)
    if bad:
        m = bad[0]
        return _report("recurrence", params, False,
                       f"utilde_{m} = {seq[m]} but the recurrence gives "
                       f"{sum(c * seq[m - i - 1] for i, c in enumerate(cs))}",
                       l=lead, coeffs=cs)
    return _report("recurrence", params, True,
                   f"l={lead}, c={cs}; holds for n <= {n_max} from seeds utilde_0..utilde_{len(cs) - 1}",
                   l=lead, coeffs=cs, utilde_head=seq[:8])


check_recurrence = _guarded("recurrence", _check_recurrence)


def _check_closed_form(params: TilingParams) -> ClaimReport:
    """The computed characteristic polynomial against its family closed form, up to sign."""
    chi = char_poly(transition_matrix(build_system(params)))
    form = closed_form(params)
    expected = form.expand()
    data: dict[str, Any] = {"char_poly": list(chi.coeffs), "closed_form": list(expected.coeffs)}
    ok = equal_up_to_sign(chi, expected)
    if form.cyclic_degree >= 0:
        _, rem = chi.shift_down(chi.trailing_zeros()).divmod_monic(
            IntPolynomial.all_ones(form.cyclic_degree))
        data["all_ones_degree"] = form.cyclic_degree
        if rem.coeffs:
            ok = False
    evidence = f"chi = {chi}; closed form = {expected}"
    if not ok:
        evidence = "mismatch: " + evidence
    return _report("closed-form", params, ok, evidence, **data)


check_closed_form = _guarded("closed-form", _check_closed_form)


def _fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    sxx = sum((x - mx) ** 2 for x in xs)
    return sxy / sxx


def _check_growth(params: TilingParams, tol: float | Fraction = DEFAULT_TOL) -> ClaimReport:
    """Growth class, the Perron bracket bounds, and a log-linear fit of the word lengths."""
    system = build_system(params)
    matrix = transition_matrix(system)
    bracket = perron_root(matrix, tol)
    p = params.p
    lo, hi = FIT_WINDOW
    seq = utilde_sequence(system, max(hi, 40))
    data: dict[str, Any] = {"lo": str(bracket.lo), "hi": str(bracket.hi),
                            "r": float(f"{bracket.estimate:.12g}")}
    if bracket.hi <= 1:
        second = [seq[n + 2] - 2 * seq[n + 1] + seq[n] for n in range(2, len(seq) - 2)]
        ok = bracket.lo == 1 and not any(second)
        return _report("growth", params, ok,
                       "linear: r = 1, second differences of utilde vanish from n = 2" if ok else
                       f"linear case but r in [{bracket.lo}, {bracket.hi}] and second differences "
                       f"{second[:6]}", growth="linear", **data)
    ns = list(range(lo, hi + 1))
    slope = _fit_slope(ns, [math.log(seq[n]) for n in ns])
    log_r = math.log(bracket.estimate)
    rel = abs(slope - log_r) / log_r
    data.update(growth="exponential", fit_slope=float(f"{slope:.12g}"),
                fit_rel_error=float(f"{rel:.3g}"))
    notes = [f"exponential: r in [{float(bracket.lo):.12f}, {float(bracket.hi):.12f}]",
             f"log-fit slope {slope:.9f} vs log r {log_r:.9f} (rel {rel:.1e})"]
    ok = rel <= FIT_TOL and bracket.width <= Fraction(tol)
    if params.q >= 4:
        inside = p - 2 < bracket.lo and bracket.hi < p - 1
        data["bound"] = [p - 2, p - 1]
        data["interval_bound_applies"] = True
        ok = ok and inside
        notes.append(f"{'inside' if inside else 'outside'} ({p - 2}, {p - 1})")
    else:
        rows = [p - 5, p - 4]
        within = rows[0] <= bracket.lo and bracket.hi <= rows[1]
        data["bound"] = rows
        data["interval_bound_applies"] = False
        ok = ok and within
        notes.append(f"row-sum bound [{rows[0]}, {rows[1]}] {'holds' if within else 'fails'}; "
                     f"the bound ({p - 2}, {p - 1}) does not apply to q = 3")
    return _report("growth", params, ok, "; ".join(notes), **data)


check_growth = _guarded("growth", _check_growth)


def _check_unit_circle(params: TilingParams, tol: float | Fraction = DEFAULT_TOL) -> ClaimReport:
    """Roots of the nontrivial factor other than r and 1/r lie on the unit circle."""
    matrix = transition_matrix(build_system(params))
    bracket = perron_root(matrix, tol)
    if bracket.hi <= 1:
        return _skip("unit-circle", params, "linear growth", "no Perron root above 1")
    factor = nontrivial_factor(params, char_poly(matrix))
    res = unit_circle_residue(factor, bracket)
    ok = res.max_deviation <= UNIT_CIRCLE_TOL
    return _report("unit-circle", params, ok,
                   f"factor {factor}: {len(res.moduli)} other roots, max |modulus - 1| = "
                   f"{res.max_deviation:.2e}",
                   factor=list(factor.coeffs), max_deviation=float(f"{res.max_deviation:.3e}"),
                   moduli=[round(m, 12) for m in res.moduli])


check_unit_circle = _guarded("unit-circle", _check_unit_circle)


# --- suite ---------------------------------------------------------------------------


CLAIMS = ("counts", "type-census", "successor-rules", "structure", "recurrence",
          "closed-form", "growth", "unit-circle")


def run_suite(params: ParamsLike, n_max: int = 4, tol: float | Fraction = DEFAULT_TOL,
              recurrence_depth: int = 40) -> list[ClaimReport]:
    """Every check for one parameter pair, in the fixed order of ``CLAIMS``."""
    resolved = _resolve("suite", params)
    if isinstance(resolved, ClaimReport):
        p, q = _split(params)
        return [ClaimReport(c, p, q, SKIPPED, resolved.evidence, reason=resolved.reason)
                for c in CLAIMS]
    if n_max > depth_ceiling(resolved):
        raise CeilingExceeded(f"n_max={n_max} exceeds the depth ceiling for {resolved}")
    return [
        check_counts(resolved, n_max),
        check_type_census(resolved, n_max),
        check_successor_rules(resolved, n_max),
        check_structure_lemmas(resolved, n_max),
        check_recurrence(resolved, recurrence_depth),
        check_closed_form(resolved),
        check_growth(resolved, tol),
        check_unit_circle(resolved, tol),
    ]


def any_failed(reports: Sequence[ClaimReport]) -> bool:
    return any(r.status == FAIL or any(s.status == FAIL for s in r.parts) for r in reports)


def reports_to_json(reports: Sequence[ClaimReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False) + "\n"
