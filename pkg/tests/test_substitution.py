import pytest
from hypothesis import given, settings, strategies as st

from tessel.params import AXIOM, TilingParams, a, abar, b, bbar
from tessel.substitution import (ForeignLetter, LetterCountVector, WordTooLarge, apply, build_system,
                                 generation_word, iterate_counts, u_sequence, utilde_sequence)

SUPPORTED = [(p, q) for p in range(3, 10) for q in range(3, 12)
             if (p - 2) * (q - 2) >= 4 and not (q == 4 and p != 4)]


def test_square_rules():
    s = build_system(TilingParams(4, 4))
    assert s.alphabet == (a(1), a(2))
    assert s.rules[AXIOM] == (a(1),) * 4
    assert u_sequence(s, 5) == [1, 4, 8, 12, 16, 20]


def test_trivalent_rules():
    s = build_system(TilingParams(7, 3))
    assert s.rules[a(1)] == (a(1), a(1), b(1))
    assert s.rules[b(1)] == (a(1), b(1))
    assert u_sequence(s, 5) == [1, 7, 21, 56, 147, 385]
    assert utilde_sequence(s, 4) == [1, 3, 8, 21, 55]


def test_odd_rule_six():
    # b_k -> bbar_2 b_1^{p-4} a_1 at q=5, p=4
    s = build_system(TilingParams(4, 5))
    assert s.rules[b(2)] == (bbar(2), a(1))
    assert s.rules[abar(1)] == (b(1), b(2))


@pytest.mark.parametrize("pq", SUPPORTED, ids=str)
def test_closed_alphabet_and_axiom(pq):
    s = build_system(TilingParams(*pq))
    assert s.rules[AXIOM] == (s.seed,) * pq[0]
    for x in s.alphabet:
        assert x in s.rules and all(y in s.rules and y != AXIOM for y in s.rules[x])


@pytest.mark.parametrize("pq", SUPPORTED, ids=str)
def test_u_is_p_times_utilde(pq):
    s = build_system(TilingParams(*pq))
    u = u_sequence(s, 12)
    ut = utilde_sequence(s, 11)
    assert all(u[n + 1] == pq[0] * ut[n] for n in range(12))


def test_word_matches_counts():
    s = build_system(TilingParams(4, 6))
    for n, vec in enumerate(iterate_counts(s, 5)):
        assert LetterCountVector.of_word(generation_word(s, n)) == vec


def test_word_cap():
    s = build_system(TilingParams(7, 3))
    with pytest.raises(WordTooLarge) as info:
        generation_word(s, 6, cap=500)
    assert info.value.length == 1008
    assert len(generation_word(s, 4, cap=147)) == 147


def test_foreign_letter():
    s = build_system(TilingParams(7, 3))
    with pytest.raises(ForeignLetter):
        apply(s, [abar(2)])


def test_count_vector_mapping():
    v = LetterCountVector({a(1): 2, b(1): 0})
    assert v[b(1)] == 0 and len(v) == 1 and v.total() == 2
    with pytest.raises(ValueError):
        LetterCountVector({a(1): -1})


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SUPPORTED), st.integers(0, 6), st.integers(0, 6))
def test_iteration_is_a_semigroup(pq, m, n):
    s = build_system(TilingParams(*pq))
    vm = iterate_counts(s, m)[m]
    v = vm
    for _ in range(n):
        v = v.push(s)
    assert v == iterate_counts(s, m + n)[m + n]
