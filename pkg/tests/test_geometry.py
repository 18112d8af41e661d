import itertools
import random

import pytest

from rgfins.core import CayleyPermutation, contains, generate_cayley, standardise
from rgfins.errors import InvalidInput
from rgfins.geometry import (
    HORIZONTAL_FAMILIES,
    VERTICAL_FAMILIES,
    CellKind,
    ClassTag,
    GridMatrix,
    alternation,
    concatenation,
    find_gridding,
    g_alternation,
    in_class,
    is_gridding,
    is_juxtaposition,
    monotone_or_constant_subsequence,
    tag,
    vertical_alternation,
    window,
)

ALL_TAGS = [tag(f"H({a},{b})") for a in "ID" for b in "ID"] + [
    tag(f"V({a},{b})") for a in "IDC" for b in "IDC"
] + [tag(f"G({a},{b})") for a in "ID" for b in "IDC"]


def members(t, max_size):
    return [p for n in range(1, max_size + 1) for p in generate_cayley(n) if in_class(p, t)]


def test_window():
    assert window("135641742", (3, 7), (1, 4)) == (4, 1)
    assert window("1213214", (1, 7), (1, 4)) == (1, 2, 1, 3, 2, 1, 4)
    assert window("1213214", (1, 3), (1, 1)) == (1, 1)
    with pytest.raises(InvalidInput):
        window("121", (1, 4), (1, 2))


def test_juxtaposition():
    assert is_juxtaposition("14242534", "1323", "1423", "horizontal")
    assert is_juxtaposition("51521443", "1213", "2211", "vertical")
    assert is_juxtaposition("11", "1", "1", "horizontal")
    assert not is_juxtaposition("14242534", "1423", "1323", "horizontal")
    with pytest.raises(InvalidInput):
        is_juxtaposition("121", "1", "1", "horizontal")


def test_in_class_examples():
    assert in_class("12344321", tag("H(I,D)"))
    assert in_class("121314", tag("V(C,I)"))
    assert in_class("123142536", tag("G(I,I)"))
    assert not in_class("111", tag("H(I,I)"))


def test_size3_in_both_horizontal_families():
    both = [str(p) for p in generate_cayley(3) if all(in_class(p, t) for t in HORIZONTAL_FAMILIES)]
    assert both == ["121", "122", "123", "132", "231"]


def test_find_gridding():
    m = GridMatrix.parse("0,I;I,I")
    g = find_gridding("121", m)
    assert (g.columns, g.rows) == ((1, 2, 4), (1, 2, 3))
    assert find_gridding("211", m) is None
    one = GridMatrix(((CellKind.I,),))
    for p in generate_cayley(4):
        strict = all(a < b for a, b in zip(p, p[1:]))
        assert (find_gridding(p, one) is not None) == strict


def test_grid_matrix_text():
    m = GridMatrix.parse("0,D;I,I")
    assert m == tag("G(I,D)").matrix
    assert str(m) == "0,D;I,I"
    assert str(ClassTag.parse("V(C, D)")) == "V(C,D)"
    with pytest.raises(InvalidInput):
        ClassTag.parse("H(C,I)")


def test_returned_griddings_verify():
    for t in VERTICAL_FAMILIES:
        for p in generate_cayley(4):
            g = find_gridding(p, t.matrix)
            if g is not None:
                assert is_gridding(p, t.matrix, g)


def test_concatenation():
    assert concatenation(tag("H(I,D)"), 4) == CayleyPermutation("12344321")
    assert concatenation(tag("H(I,I)"), 1) == CayleyPermutation("11")
    assert concatenation(tag("H(I,I)"), 3) == CayleyPermutation("123123")
    with pytest.raises(InvalidInput):
        concatenation(tag("H(D,I)"), 2)


def test_alternations():
    assert vertical_alternation(tag("V(C,I)"), 3) == CayleyPermutation("121314")
    assert vertical_alternation(tag("V(C,C)"), 3) == CayleyPermutation("121212")
    assert vertical_alternation(tag("V(C,D)"), 2) == CayleyPermutation("1312")
    assert g_alternation(tag("G(I,I)"), 3) == CayleyPermutation("123142536")
    assert g_alternation(tag("G(D,I)"), 2) == CayleyPermutation("122314")
    assert g_alternation(tag("G(I,C)"), 2) == CayleyPermutation("121323")


def test_alternations_lie_in_their_family():
    for t in VERTICAL_FAMILIES:
        for n in range(1, 4):
            assert in_class(alternation(t, n), t)


@pytest.mark.parametrize("t", ALL_TAGS, ids=str)
def test_pattern_closure(t):
    for p in members(t, 5):
        for k in range(1, len(p)):
            for idx in itertools.combinations(range(len(p)), k):
                assert in_class(standardise([p[i] for i in idx]), t)


@pytest.mark.parametrize("t", HORIZONTAL_FAMILIES, ids=str)
def test_concatenation_contains_members(t):
    for n in range(1, 5):
        big = concatenation(t, n)
        for p in members(t, n):
            assert contains(big, p) is not None, (t, n, p)


@pytest.mark.parametrize("t", [x for x in ALL_TAGS if x.family == "V"], ids=str)
def test_vertical_alternation_contains_members(t):
    for n in range(1, 5):
        big = vertical_alternation(t, n)
        for p in members(t, n):
            assert contains(big, p) is not None, (t, n, p)


@pytest.mark.parametrize("t", [x for x in ALL_TAGS if x.family == "G"], ids=str)
def test_g_alternation_contains_members(t):
    for n in range(1, 4):
        big = g_alternation(t, n)
        for p in members(t, n):
            assert contains(big, p) is not None, (t, n, p)


def _is_strict_or_constant(values):
    pairs = list(zip(values, values[1:]))
    return (
        all(a < b for a, b in pairs) or all(a > b for a, b in pairs) or all(a == b for a, b in pairs)
    )


def test_monotone_or_constant_subsequence():
    assert monotone_or_constant_subsequence([2, 2, 2, 2], 4) == (0, 1, 2, 3)
    idx = monotone_or_constant_subsequence([3, 1, 4, 2], 2)
    assert idx is not None and len(idx) == 2
    rng = random.Random(3)
    for _ in range(300):
        w = [rng.randint(1, 9) for _ in range(27)]
        idx = monotone_or_constant_subsequence(w, 3)
        assert idx is not None and len(idx) == 3
        assert list(idx) == sorted(set(idx))
        assert _is_strict_or_constant([w[i] for i in idx])
