"""Transition matrix, characteristic polynomial and Perron root of a substitution.

All matrix and polynomial work is exact (Python integers and fractions). The
only floating point step is root finding for the unit-circle check, done with
mpmath at 50 significant digits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .params import Family, Letter, TesselError, TilingParams
from .polynomial import IntPolynomial, SturmChain
from .substitution import SubstitutionSystem, build_system


class Unavailable(TesselError):
    pass


class NotMonic(TesselError, ValueError):
    pass


class DegenerateMatrix(TesselError):
    pass


class RootFindingFailed(TesselError):
    pass


@dataclass(frozen=True)
class TransitionMatrix:
    """Letter multiplicities: ``entries[i][j]`` counts ``labels[j]`` in the image of ``labels[i]``."""

    labels: tuple[Letter, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.labels)

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.entries]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def submatrix(self, indices: Sequence[int]) -> "TransitionMatrix":
        idx = list(indices)
        return TransitionMatrix(tuple(self.labels[i] for i in idx),
                                tuple(tuple(self.entries[i][j] for j in idx) for i in idx))

    def power_row(self, n: int) -> list[int]:
        """First row of ``M^n`` (exact)."""
        row = [0] * self.order
        row[0] = 1
        for _ in range(n):
            nxt = [0] * self.order
            for i, c in enumerate(row):
                if c:
                    for j, m in enumerate(self.entries[i]):
                        if m:
                            nxt[j] += c * m
            row = nxt
        return row


def transition_matrix(system: SubstitutionSystem) -> TransitionMatrix:
    labels = system.alphabet
    pos = {x: i for i, x in enumerate(labels)}
    rows = []
    for x in labels:
        row = [0] * len(labels)
        for y in system.rules[x]:
            row[pos[y]] += 1
        rows.append(tuple(row))
    return TransitionMatrix(labels, tuple(rows))


def char_poly(matrix: TransitionMatrix | Sequence[Sequence[int]]) -> IntPolynomial:
    """Monic ``det(xI - M)`` by the Faddeev-LeVerrier recursion.

    Every division in the recursion is exact over the integers, so no
    fractions are needed.
    """
    a = [list(r) for r in (matrix.entries if isinstance(matrix, TransitionMatrix) else matrix)]
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = _matmul(a, m)
        for i in range(n):
            am[i][i] += coeffs[n - k + 1]
        m = am
        trace = sum(sum(a[i][j] * m[j][i] for j in range(n)) for i in range(n))
        if trace % k:
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[n - k] = -trace // k
    return IntPolynomial(coeffs)


def _matmul(a, b):
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            x = a[i][k]
            if x:
                bk = b[k]
                oi = out[i]
                for j in range(n):
                    oi[j] += x * bk[j]
    return out


@dataclass(frozen=True)
class ClosedForm:
    """``sign * x^shift * ones(cyclic_degree) * nontrivial``; ``cyclic_degree`` -1 means no such factor."""

    sign: int
    shift: int
    cyclic_degree: int
    nontrivial: IntPolynomial

    def expand(self) -> IntPolynomial:
        poly = self.nontrivial * IntPolynomial.monomial(self.shift, self.sign)
        if self.cyclic_degree >= 0:
            poly = poly * IntPolynomial.all_ones(self.cyclic_degree)
        return poly


def _palindromic_factor(half: int, mid: int, outer: int, middle: int) -> IntPolynomial:
    """``x^d - outer x^{d-1} - ... - outer x^{d-half+1} - middle x^{half} ... + 1`` of degree ``d = mid``."""
    desc = [1]
    for e in range(mid - 1, 0, -1):
        desc.append(-(middle if e == half else outer))
    desc.append(1)
    return IntPolynomial.from_descending(desc)


def closed_form(params: TilingParams) -> ClosedForm:
    """Closed form of the characteristic polynomial per family, in factored shape.

    For odd q the all-ones factor has degree 2k - 2, and at p = 3 the middle
    coefficient of the nontrivial factor is ``+1``.
    """
    p, k, fam = params.p, params.k, params.family
    x = IntPolynomial([0, 1])
    if fam is Family.E2:
        return ClosedForm(1, 0, -1, (x - 1) ** 2)
    if fam is Family.E4:
        return ClosedForm(-1, 3, -1, x * x - 1)
    if fam is Family.O3:
        return ClosedForm(1, 0, -1, IntPolynomial([1, -(p - 4), 1]))
    if fam is Family.E1:
        return ClosedForm(1, 0, k - 2, _palindromic_factor(0, k, p - 2, p - 2))
    if fam is Family.E3:
        return ClosedForm(-1, 1, k - 2, _palindromic_factor(0, k, 1, 1))
    if fam is Family.O1:
        return ClosedForm(1, 0, 2 * k - 2, _palindromic_factor(k, 2 * k, p - 2, p - 4))
    if fam is Family.O2:
        return ClosedForm(-1, 1, 2 * k - 2, _palindromic_factor(k, 2 * k, 1, -1))
    raise Unavailable(f"no closed form for {params}")


def closed_form_char_poly(params: TilingParams) -> IntPolynomial:
    return closed_form(params).expand()


def equal_up_to_sign(a: IntPolynomial, b: IntPolynomial) -> bool:
    return a == b or a == -b


def recurrence_coeffs(chi: IntPolynomial) -> tuple[int, list[int]]:
    """Split ``chi = x^N - c_1 x^{N-1} - ... - c_{N-l} x^l`` into ``(l, [c_1, ..., c_{N-l}])``."""
    if not chi.is_monic():
        raise NotMonic(f"{chi} is not monic")
    n = chi.degree
    lead = chi.trailing_zeros()
    return lead, [-chi.coeffs[n - i] for i in range(1, n - lead + 1)]


def recurrence_violations(seq: Sequence[int], chi: IntPolynomial, start: int | None = None) -> list[int]:
    """Indices m where ``seq[m] != sum_i c_i seq[m - i]``.

    The recurrence of order ``N - l`` is checked from ``m = start``, by default
    ``N - l`` (the first index the seeds ``seq[0 .. N - l - 1]`` determine).
    """
    lead, cs = recurrence_coeffs(chi)
    order = len(cs)
    if start is None:
        start = order
    bad = []
    for m in range(max(start, order), len(seq)):
        if seq[m] != sum(c * seq[m - i - 1] for i, c in enumerate(cs)):
            bad.append(m)
    return bad


# --- strongly connected components -------------------------------------------------


def _adjacency(matrix: TransitionMatrix) -> list[list[int]]:
    return [[j for j, m in enumerate(row) if m] for row in matrix.entries]


def strongly_connected_components(adj: list[list[int]]) -> list[list[int]]:
    """Tarjan's algorithm without recursion; components sorted by smallest member."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            while i < len(adj[v]):
                w = adj[v][i]
                i += 1
                if index[w] == -1:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return sorted(comps)


def imprimitivity_index(adj: list[list[int]], comp: Sequence[int]) -> int:
    """gcd of the cycle lengths inside ``comp``; 0 for a single vertex without a loop."""
    members = set(comp)
    start = comp[0]
    level = {start: 0}
    queue = [start]
    for v in queue:
        for w in adj[v]:
            if w in members and w not in level:
                level[w] = level[v] + 1
                queue.append(w)
    h = 0
    for v in comp:
        for w in adj[v]:
            if w in members:
                h = math.gcd(h, level[v] + 1 - level[w])
    return h


@dataclass(frozen=True)
class SCCReport:
    components: list[list[Letter]]
    imprimitivity: list[int]

    @property
    def strongly_connected(self) -> bool:
        return len(self.components) == 1

    def nontrivial(self) -> list[tuple[list[Letter], int]]:
        return [(c, h) for c, h in zip(self.components, self.imprimitivity) if h]


def scc_analysis(matrix: TransitionMatrix) -> SCCReport:
    adj = _adjacency(matrix)
    comps = strongly_connected_components(adj)
    return SCCReport([[matrix.labels[i] for i in c] for c in comps],
                     [imprimitivity_index(adj, c) for c in comps])


# --- Perron root -------------------------------------------------------------------


@dataclass(frozen=True)
class PerronBracket:
    lo: Fraction
    hi: Fraction
    component: tuple[Letter, ...]
    block_poly: IntPolynomial

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def estimate(self) -> float:
        return float((self.lo + self.hi) / 2)


def _refine(poly: IntPolynomial, lo: Fraction, hi: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink ``[lo, hi]`` around the largest real root of ``poly`` (assumed inside)."""
    if lo == hi:
        return lo, hi
    sturm = SturmChain(poly)
    if sturm.roots_above(hi) != 0 or sturm.roots_above(lo) == 0 and not sturm.is_root(lo):
        raise ArithmeticError(f"largest root of {poly} is not in [{lo}, {hi}]")
    if sturm.roots_above(lo) == 0:
        return lo, lo
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if sturm.roots_above(mid):
            lo = mid
        else:
            hi = mid
    if sturm.is_root(hi):
        lo = hi
    return lo, hi


def perron_root(matrix: TransitionMatrix, tol: float | Fraction = Fraction(1, 10**10)) -> PerronBracket:
    """Certified bracket of width <= ``tol`` around the spectral radius.

    Each strongly connected block gets the Perron-Frobenius row-sum bracket,
    refined by bisection on a Sturm sequence of the block's characteristic
    polynomial; the largest block root wins.
    """
    if not any(matrix.row_sums()):
        raise DegenerateMatrix("all row sums are zero")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    adj = _adjacency(matrix)
    best: PerronBracket | None = None
    for comp in strongly_connected_components(adj):
        if not imprimitivity_index(adj, comp):
            continue
        block = matrix.submatrix(comp)
        sums = block.row_sums()
        poly = char_poly(block)
        lo, hi = _refine(poly, Fraction(min(sums)), Fraction(max(sums)), tol)
        cand = PerronBracket(lo, hi, block.labels, poly)
        if best is None or cand.hi > best.hi:
            best = cand
    if best is None:
        raise DegenerateMatrix("the transition graph has no cycle (nilpotent matrix)")
    if best.lo < 1 < best.hi:
        # exponential vs linear must be decided exactly
        best = _split_at_one(best)
    return best


def _split_at_one(br: PerronBracket) -> PerronBracket:
    sturm = SturmChain(br.block_poly)
    if sturm.roots_above(Fraction(1)):
        return PerronBracket(Fraction(1), br.hi, br.component, br.block_poly)
    return PerronBracket(br.lo, Fraction(1), br.component, br.block_poly)


# --- unit circle -------------------------------------------------------------------


def nontrivial_factor(params: TilingParams, chi: IntPolynomial) -> IntPolynomial:
    """``chi`` with the root 0 and the family's all-ones factor divided out (when they divide)."""
    poly = chi.normalized()
    poly = poly.shift_down(poly.trailing_zeros())
    fam, k = params.family, params.k
    if fam in (Family.E1, Family.E3):
        deg = k - 2
    elif fam in (Family.O1, Family.O2):
        deg = 2 * k - 2
    else:
        return poly
    quot, rem = poly.divmod_monic(IntPolynomial.all_ones(deg))
    return quot if not rem.coeffs else poly


@dataclass(frozen=True)
class UnitCircleResidue:
    moduli: list[float]
    max_deviation: float
    roots: list[complex] = field(default_factory=list)


def unit_circle_residue(poly: IntPolynomial, bracket: PerronBracket, dps: int = 50) -> UnitCircleResidue:
    """Moduli of the roots of ``poly`` other than the Perron root and its reciprocal."""
    if poly.degree < 1:
        return UnitCircleResidue([], 0.0)
    with mpmath.workdps(dps):
        try:
            roots = mpmath.polyroots([int(c) for c in poly.descending()], maxsteps=500,
                                     extraprec=4 * dps)
        except mpmath.libmp.NoConvergence as exc:
            raise RootFindingFailed(str(exc)) from exc
        roots = [mpmath.mpc(z) for z in roots]
        r = mpmath.mpf(bracket.lo.numerator) / bracket.lo.denominator
        rest = list(roots)
        for target in (r, 1 / r):
            if not rest:
                break
            i = min(range(len(rest)), key=lambda j: abs(rest[j] - target))
            if abs(rest[i] - target) > mpmath.mpf(10) ** (-6):
                raise RootFindingFailed(f"no root of {poly} near {mpmath.nstr(target, 12)}")
            rest.pop(i)
        moduli = sorted(float(abs(z)) for z in rest)
        dev = max((abs(abs(z) - 1) for z in rest), default=mpmath.mpf(0))
        return UnitCircleResidue(moduli, float(dev), [complex(z) for z in rest])


# --- report ------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralReport:
    params: TilingParams
    matrix: TransitionMatrix
    char_poly: IntPolynomial
    scc: SCCReport
    perron: PerronBracket
    growth_class: str  # "exponential" or "linear"
    closed_form: IntPolynomial | None
    closed_form_match: bool | None
    other_root_moduli: list[float]
    unit_circle_deviation: float | None

    @property
    def perron_estimate(self) -> float:
        return self.perron.estimate


def spectral_report(params: TilingParams, tol: float | Fraction = Fraction(1, 10**10)) -> SpectralReport:
    system = build_system(params)
    matrix = transition_matrix(system)
    chi = char_poly(matrix)
    scc = scc_analysis(matrix)
    perron = perron_root(matrix, tol)
    linear = perron.exact and perron.lo == 1 or perron.hi <= 1
    try:
        cf = closed_form_char_poly(params)
        match = equal_up_to_sign(chi, cf)
    except Unavailable:
        cf, match = None, None
    moduli: list[float] = []
    dev = None
    if not linear:
        res = unit_circle_residue(nontrivial_factor(params, chi), perron)
        moduli, dev = res.moduli, res.max_deviation
    return SpectralReport(params, matrix, chi, scc, perron, "linear" if linear else "exponential",
                          cf, match, moduli, dev)
