import pytest

from tessel.params import (AXIOM, Curvature, Family, InvalidParams, Kind, Letter, TilingParams,
                           UnsupportedFamily, a, abar, b, bbar)


@pytest.mark.parametrize("p,q,curv", [(4, 4, Curvature.EUCLIDEAN), (3, 6, Curvature.EUCLIDEAN),
                                      (6, 3, Curvature.EUCLIDEAN), (7, 3, Curvature.HYPERBOLIC),
                                      (4, 5, Curvature.HYPERBOLIC)])
def test_curvature(p, q, curv):
    assert TilingParams(p, q).curvature is curv


@pytest.mark.parametrize("p,q,fam", [
    (4, 6, Family.E1), (5, 8, Family.E1), (4, 4, Family.E2), (3, 8, Family.E3), (3, 10, Family.E3),
    (3, 6, Family.E4), (4, 5, Family.O1), (5, 7, Family.O1), (3, 7, Family.O2), (3, 9, Family.O2),
    (6, 3, Family.O3), (7, 3, Family.O3), (9, 3, Family.O3),
])
def test_family(p, q, fam):
    assert TilingParams(p, q).family is fam


@pytest.mark.parametrize("p,q", [(3, 3), (3, 4), (4, 3), (3, 5), (5, 3), (2, 7), (7, 2)])
def test_spherical_or_degenerate_rejected(p, q):
    with pytest.raises(InvalidParams):
        TilingParams(p, q)


@pytest.mark.parametrize("p", [5, 6, 9])
def test_q4_unsupported(p):
    with pytest.raises(UnsupportedFamily, match="q=4 with p≥5"):
        TilingParams(p, 4)


@pytest.mark.parametrize("bad", [4.0, "4", True])
def test_non_integer_rejected(bad):
    with pytest.raises(InvalidParams):
        TilingParams(bad, 6)


def test_k_and_str():
    t = TilingParams(4, 7)
    assert t.k == 3
    assert str(t) == "{4,7}"
    assert t == TilingParams(4, 7) and hash(t) == hash(TilingParams(4, 7))


def test_letter_order_and_text():
    letters = [bbar(2), abar(1), b(2), a(3), a(1), AXIOM]
    assert sorted(letters) == [a(1), a(3), b(2), abar(1), bbar(2), AXIOM]
    for x in letters:
        assert Letter.parse(str(x)) == x
    assert str(abar(2)) == "abar2"
    assert AXIOM.kind is Kind.AXIOM
    with pytest.raises(ValueError):
        Letter.parse("c1")
