"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

Run ``python tests/test_acceptance.py`` for the summary alone.
"""
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from tessel.oracle import build_graph, generation_counts
from tessel.params import TilingParams, UnsupportedFamily
from tessel.polynomial import IntPolynomial
from tessel.spectral import (char_poly, closed_form_char_poly, equal_up_to_sign, nontrivial_factor,
                             perron_root, recurrence_violations, transition_matrix, unit_circle_residue)
from tessel.substitution import build_system, u_sequence, utilde_sequence
from tessel.verify import (PASS, check_growth, check_structure_lemmas, check_successor_rules,
                           check_type_census)

ACCEPTANCE_MATRIX = [(4, 4), (6, 3), (3, 6), (4, 5), (5, 4), (5, 5), (4, 6), (6, 4), (3, 7), (7, 3),
                     (3, 8), (8, 3), (4, 7), (3, 9)]

RESULTS: dict[int, str] = {}


def supported():
    out = []
    for pq in ACCEPTANCE_MATRIX:
        try:
            out.append(TilingParams(*pq))
        except UnsupportedFamily:
            pass
    return out


def record(number: int, title: str, failures: list[str], detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number} [{status}] {title}"
    if failures:
        line += ": " + "; ".join(failures)
    elif detail:
        line += f" ({detail})"
    RESULTS[number] = line
    print(line)
    assert not failures, line


def test_criterion_1_count_equivalence():
    start = time.perf_counter()
    failures = []
    for params in supported():
        depth = 6 if params.hyperbolic else 30
        subst = u_sequence(build_system(params), depth)
        oracle = generation_counts(build_graph(params, depth))
        if subst != oracle:
            failures.append(f"{params}: {subst} vs {oracle}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"took {elapsed:.1f}s")
    record(1, "substitution counts equal model counts", failures,
           f"{len(supported())} pairs, (5,4) and (6,4) unsupported, {elapsed:.1f}s")


def test_criterion_2_characteristic_polynomials():
    failures = []
    for pq in [(4, 6), (5, 6), (4, 8), (3, 8), (3, 10), (7, 3), (8, 3)]:
        params = TilingParams(*pq)
        chi = char_poly(transition_matrix(build_system(params)))
        if not equal_up_to_sign(chi, closed_form_char_poly(params)):
            failures.append(f"{params}: {chi} != +-({closed_form_char_poly(params)})")
    for pq in [(4, 5), (5, 5), (4, 7), (3, 7), (3, 9)]:
        params = TilingParams(*pq)
        chi = char_poly(transition_matrix(build_system(params)))
        core = chi.shift_down(chi.trailing_zeros())
        _, rem = core.divmod_monic(IntPolynomial.all_ones(2 * params.k - 2))
        if rem.coeffs:
            failures.append(f"{params}: {chi} has no all-ones factor of degree {2 * params.k - 2}")
    specials = {(4, 4): IntPolynomial([1, -2, 1]),
                (3, 6): IntPolynomial([0, 0, 0, 1, 0, -1]),  # -x^3 (x^2 - 1)
                (6, 3): IntPolynomial([1, -2, 1])}
    for pq, expected in specials.items():
        chi = char_poly(transition_matrix(build_system(TilingParams(*pq))))
        if not equal_up_to_sign(chi, expected):
            failures.append(f"{{{pq[0]},{pq[1]}}}: computed {chi}, closed form {expected}")
    record(2, "characteristic polynomials equal the closed forms", failures)


def test_criterion_3_recurrence():
    failures = []
    for params in supported():
        system = build_system(params)
        bad = recurrence_violations(utilde_sequence(system, 40), char_poly(transition_matrix(system)))
        if bad:
            failures.append(f"{params}: fails at n={bad[0]}")
    record(3, "utilde obeys the characteristic recurrence up to n=40", failures)


def test_criterion_4_growth_bounds():
    failures = []
    width = Fraction(1, 10**9)
    for params in supported():
        br = perron_root(transition_matrix(build_system(params)), width)
        if br.width > width:
            failures.append(f"{params}: bracket width {float(br.width)}")
        if br.hi <= 1:
            continue
        p = params.p
        if params.q >= 4:
            if not (p - 2 < br.lo and br.hi < p - 1):
                failures.append(f"{params}: r in [{float(br.lo)}, {float(br.hi)}] not inside ({p - 2}, {p - 1})")
        else:
            rep = check_growth(params, width)
            if not (p - 5 <= br.lo and br.hi <= p - 4) or rep.data.get("interval_bound_applies") is not False:
                failures.append(f"{params}: q=3 bracket or flag wrong")
    record(4, "Perron bracket within the growth bounds", failures)


def test_criterion_5_unit_circle():
    failures = []
    worst = 0.0
    for pq in [(4, 6), (4, 8), (5, 6), (4, 5), (5, 5), (4, 7)]:
        params = TilingParams(*pq)
        m = transition_matrix(build_system(params))
        res = unit_circle_residue(nontrivial_factor(params, char_poly(m)), perron_root(m))
        worst = max(worst, res.max_deviation)
        if res.max_deviation > 1e-9:
            failures.append(f"{params}: deviation {res.max_deviation:.2e}")
    record(5, "other roots of the nontrivial factor lie on the unit circle", failures,
           f"max |modulus - 1| = {worst:.1e}")


def test_criterion_6_lemma_suite():
    failures = []
    for params in supported():
        n = 5
        for check in (check_structure_lemmas, check_type_census, check_successor_rules):
            rep = check(params, n)
            if rep.status != PASS:
                failures.append(f"{params} {rep.claim}: {rep.status} {rep.evidence}")
    scc = {pq: check_structure_lemmas(TilingParams(*pq), 4).parts[2].data for pq in [(3, 8), (4, 4), (6, 3)]}
    if scc[(3, 8)]["isolated"] != ["a1"]:
        failures.append("{3,8}: a1 is not isolated")
    if scc[(4, 4)]["components"] != [["a1"], ["a2"]]:
        failures.append("{4,4}: components differ")
    if scc[(6, 3)]["components"] != [["a1"], ["b1"]]:
        failures.append("{6,3}: components differ")
    record(6, "structure, type census and successor rules at depth 5", failures)


def test_criterion_7_spot_checks():
    failures = []
    if u_sequence(build_system(TilingParams(7, 3)), 4) != [1, 7, 21, 56, 147]:
        failures.append("{7,3} counts")
    if generation_counts(build_graph(TilingParams(7, 3), 4)) != [1, 7, 21, 56, 147]:
        failures.append("{7,3} model counts")
    sq = u_sequence(build_system(TilingParams(4, 4)), 30)
    if sq != [1] + [4 * n for n in range(1, 31)]:
        failures.append("{4,4} counts")
    for pq in [(3, 6), (6, 3)]:
        ut = utilde_sequence(build_system(TilingParams(*pq)), 40)
        second = [ut[n + 2] - 2 * ut[n + 1] + ut[n] for n in range(2, 39)]
        if any(second):
            failures.append(f"{pq}: second differences {second[:5]}")
    record(7, "sequence spot checks", failures)


def test_criterion_8_determinism(tmp_path):
    cmd = [sys.executable, "-m", "tessel.cli", "verify", "-p", "4", "-q", "5", "-n", "4"]
    first = subprocess.run(cmd, capture_output=True, check=False).stdout
    second = subprocess.run(cmd, capture_output=True, check=False).stdout
    failures = [] if first == second and first else ["outputs differ"]
    record(8, "verify output is byte-identical across runs", failures, f"{len(first)} bytes")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
