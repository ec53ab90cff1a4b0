from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from tessel.params import TilingParams, a, abar, b, bbar
from tessel.polynomial import IntPolynomial
from tessel.spectral import (DegenerateMatrix, NotMonic, TransitionMatrix, char_poly,
                             closed_form_char_poly, equal_up_to_sign, nontrivial_factor, perron_root,
                             recurrence_coeffs, recurrence_violations, scc_analysis, spectral_report,
                             transition_matrix, unit_circle_residue)
from tessel.substitution import build_system, utilde_sequence

SUPPORTED = [(p, q) for p in range(3, 9) for q in range(3, 11)
             if (p - 2) * (q - 2) >= 4 and not (q == 4 and p != 4)]


def matrix_of(pq):
    return transition_matrix(build_system(TilingParams(*pq)))


def test_transition_examples():
    m = matrix_of((4, 4))
    assert m.labels == (a(1), a(2)) and m.as_lists() == [[1, 1], [0, 1]]
    assert matrix_of((7, 3)).as_lists() == [[2, 1], [1, 1]]
    m = matrix_of((4, 5))
    assert m.labels == (a(1), a(2), b(1), b(2), abar(1), bbar(2))


@pytest.mark.parametrize("pq", SUPPORTED, ids=str)
def test_row_sums_are_image_lengths(pq):
    s = build_system(TilingParams(*pq))
    m = transition_matrix(s)
    assert m.row_sums() == [len(s.rules[x]) for x in m.labels]


@pytest.mark.parametrize("pq", SUPPORTED, ids=str)
def test_char_poly_against_sympy(pq):
    m = matrix_of(pq)
    ref = sympy.Matrix(m.as_lists()).charpoly().all_coeffs()
    assert char_poly(m).descending() == [int(c) for c in ref]


@pytest.mark.parametrize("pq", SUPPORTED, ids=str)
def test_cayley_hamilton(pq):
    m = matrix_of(pq)
    zero = char_poly(m).matrix_eval(m.as_lists())
    assert all(x == 0 for row in zero for x in row)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_faddeev_leverrier_random(rows):
    ref = sympy.Matrix(rows).charpoly().all_coeffs()
    assert char_poly(rows).descending() == [int(c) for c in ref]


def test_char_poly_examples():
    assert char_poly([[1, 1], [0, 1]]) == IntPolynomial([1, -2, 1])
    assert char_poly([[2, 1], [1, 1]]) == IntPolynomial([1, -3, 1])
    assert char_poly([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == IntPolynomial([-1, 1]) ** 3


def test_closed_form_examples():
    assert closed_form_char_poly(TilingParams(4, 6)) == IntPolynomial([1, 1]) * IntPolynomial([1, -2, -2, 1])
    assert closed_form_char_poly(TilingParams(7, 3)) == IntPolynomial([1, -3, 1])
    e4 = closed_form_char_poly(TilingParams(3, 6))
    assert e4.degree == 5 and equal_up_to_sign(e4, IntPolynomial([0, 0, 0, -1, 0, 1]))


@pytest.mark.parametrize("pq", [pq for pq in SUPPORTED if pq != (3, 6)], ids=str)
def test_closed_form_matches(pq):
    m = matrix_of(pq)
    assert equal_up_to_sign(char_poly(m), closed_form_char_poly(TilingParams(*pq)))


def test_scc_examples():
    rep = scc_analysis(matrix_of((4, 4)))
    assert rep.components == [[a(1)], [a(2)]]
    rep = scc_analysis(matrix_of((6, 3)))
    assert rep.components == [[a(1)], [b(1)]]
    rep = scc_analysis(matrix_of((5, 5)))
    assert rep.strongly_connected and rep.imprimitivity == [1]
    rep = scc_analysis(matrix_of((3, 8)))
    assert [a(1)] in rep.components
    assert dict(zip(map(tuple, rep.components), rep.imprimitivity))[(a(1),)] == 0


def test_imprimitive_cycle():
    m = TransitionMatrix((a(1), a(2), a(3)), ((0, 1, 0), (0, 0, 1), (1, 0, 0)))
    assert scc_analysis(m).imprimitivity == [3]


def test_perron_examples():
    br = perron_root(matrix_of((7, 3)), Fraction(1, 10**12))
    assert br.lo <= (3 + 5 ** 0.5) / 2 <= br.hi
    assert br.width <= Fraction(1, 10**12)
    br = perron_root(matrix_of((4, 4)))
    assert br.exact and br.lo == 1
    br = perron_root(matrix_of((4, 5)))
    assert 2 < br.lo and br.hi < 3


@pytest.mark.parametrize("pq", SUPPORTED, ids=str)
def test_perron_within_row_sums(pq):
    m = matrix_of(pq)
    br = perron_root(m, Fraction(1, 10**9))
    sums = m.submatrix([m.labels.index(x) for x in br.component]).row_sums()
    assert min(sums) <= br.lo <= br.hi <= max(sums)
    eig = max(abs(np.linalg.eigvals(np.array(m.as_lists(), dtype=float))))
    assert float(br.lo) - 1e-6 <= eig <= float(br.hi) + 1e-6


def test_perron_degenerate():
    with pytest.raises(DegenerateMatrix):
        perron_root(TransitionMatrix((a(1),), ((0,),)))
    with pytest.raises(DegenerateMatrix):
        perron_root(TransitionMatrix((a(1), a(2)), ((0, 1), (0, 0))))


def test_recurrence_coeffs_examples():
    assert recurrence_coeffs(IntPolynomial([1, -3, 1])) == (0, [3, -1])
    assert recurrence_coeffs(IntPolynomial([1, -2, 1])) == (0, [2, -1])
    assert recurrence_coeffs(IntPolynomial([0, 0, 0, -1, 0, 1])) == (3, [0, 1])
    with pytest.raises(NotMonic):
        recurrence_coeffs(IntPolynomial([1, 0, 2]))


@pytest.mark.parametrize("pq", SUPPORTED, ids=str)
def test_recurrence_holds(pq):
    s = build_system(TilingParams(*pq))
    assert recurrence_violations(utilde_sequence(s, 40), char_poly(transition_matrix(s))) == []


def test_unit_circle_examples():
    br = perron_root(matrix_of((7, 3)))
    assert unit_circle_residue(IntPolynomial([1, -3, 1]), br).moduli == []
    params = TilingParams(4, 6)
    m = transition_matrix(build_system(params))
    factor = nontrivial_factor(params, char_poly(m))
    assert factor == IntPolynomial([1, -2, -2, 1])
    res = unit_circle_residue(factor, perron_root(m))
    assert res.moduli == pytest.approx([1.0], abs=1e-12)
    params = TilingParams(4, 8)
    m = transition_matrix(build_system(params))
    factor = nontrivial_factor(params, char_poly(m))
    assert factor == IntPolynomial([1, -2, -2, -2, 1])
    res = unit_circle_residue(factor, perron_root(m))
    assert len(res.moduli) == 2 and res.max_deviation <= 1e-9


def test_report_growth_classes():
    assert spectral_report(TilingParams(4, 4)).growth_class == "linear"
    assert spectral_report(TilingParams(3, 6)).growth_class == "linear"
    assert spectral_report(TilingParams(6, 3)).growth_class == "linear"
    rep = spectral_report(TilingParams(4, 6))
    assert rep.growth_class == "exponential" and rep.closed_form_match
    assert rep.perron_estimate == pytest.approx((3 + 5 ** 0.5) / 2, abs=1e-10)
