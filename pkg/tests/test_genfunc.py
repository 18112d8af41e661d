import itertools

import pytest
from hypothesis import given, strategies as st

from rgfins.automaton import build_dfa, counts_up_to, minimize
from rgfins.core import generate_cayley
from rgfins.errors import NotNormalizable, NotNormalized
from rgfins.genfunc import (
    IntPolynomial,
    RationalGF,
    det_one_minus_x,
    gf_from_dfa,
    normalize,
    poly_gcd,
    series,
)
from rgfins.regularity import classify

big = st.integers(-(2**256), 2**256)
polys = st.lists(big, max_size=6).map(IntPolynomial)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == IntPolynomial()


@given(polys, polys)
def test_exact_div_and_gcd(a, b):
    if a and b:
        assert (a * b).exact_div(b) == a
        g = poly_gcd(a, b)
        a.exact_div(g.primitive())
        b.exact_div(g.primitive())


def test_gcd_example():
    a = IntPolynomial([1, -1]) * IntPolynomial([2, 3])
    b = IntPolynomial([1, -1]) * IntPolynomial([5, 0, 1])
    assert poly_gcd(a, b).primitive() == IntPolynomial([-1, 1])


def test_normalize():
    g = normalize(IntPolynomial([0, 2]), IntPolynomial([2, -4]))
    assert (g.num, g.den) == (IntPolynomial([0, 1]), IntPolynomial([1, -2]))
    g = normalize([0, 1], [1])
    assert g.pretty() == "x/1"
    assert normalize(g.num, g.den) == g
    with pytest.raises(NotNormalizable):
        normalize([1], [0, 1])
    # common factor (1 - x) cancels
    g = normalize(IntPolynomial([0, 1]) * IntPolynomial([1, -1]), IntPolynomial([1, -1]) * IntPolynomial([1, -2]))
    assert g.coefficient_text() == "num_coeffs=[0,1]; den_coeffs=[1,-2]"


def test_series():
    assert series(normalize([0, 1], [1, -2]), 5) == [0, 1, 2, 4, 8, 16]
    assert series(normalize([0, 1], [1, -1]), 4) == [0, 1, 1, 1, 1]
    with pytest.raises(NotNormalized):
        series(RationalGF(IntPolynomial([1]), IntPolynomial([2, 1])), 3)


def test_text_forms():
    g = normalize([0, 0, 1], [1, 0, -1])
    assert g.pretty() == "x^2/(1-x^2)"
    assert RationalGF.parse(g.coefficient_text()) == g
    assert normalize([1, 1], [1, -3, 2]).pretty() == "(1+x)/(1-3*x+2*x^2)"


def test_det_one_minus_x():
    # det(I - xA) for A = [[1,1],[1,0]] is 1 - x - x^2
    assert det_one_minus_x([[1, 1], [1, 0]]) == IntPolynomial([1, -1, -1])


def test_gf_examples():
    assert gf_from_dfa(build_dfa("121", "v")).pretty() == "x/(1-2*x)"
    assert gf_from_dfa(build_dfa("12", "v")).pretty() == "x/(1-x)"
    assert gf_from_dfa(build_dfa("12", "h")).pretty() == "x/(1-x)"
    assert gf_from_dfa(build_dfa("121", "h", "matching")).pretty() == "x^2/(1-x^2)"


def test_gf_matches_counts_and_encodings_agree():
    size3 = [str(p) for p in generate_cayley(3)]
    for r in (1, 2):
        for basis in itertools.combinations(size3, r):
            gfs = []
            for enc in "vh":
                if classify(basis, enc).regular:
                    d = minimize(build_dfa(basis, enc))
                    g = gf_from_dfa(d)
                    assert series(g, 12) == counts_up_to(d, 12)
                    gfs.append(g)
            assert len(set(gfs)) <= 1, basis
