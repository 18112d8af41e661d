import itertools
import json
import random

import pytest

from rgfins.core import Basis, CayleyPermutation, avoids_basis, contains, generate_cayley, generate_rgfs, is_rgf
from rgfins.encoding_h import max_slots_h
from rgfins.encoding_v import max_slots_v
from rgfins.errors import InvalidInput
from rgfins.regularity import (
    IRREGULAR,
    REGULAR,
    avoided_by_class,
    classify,
    classify_h,
    classify_v,
    refuting_rgf,
    rgf_extensions,
    sb_h_basis,
    sb_v_basis,
    slot_probe,
)

SIZE3 = [str(p) for p in generate_cayley(3)]


def test_classify_h_examples():
    assert classify_h("121").verdict == REGULAR
    assert classify_h("111").verdict == IRREGULAR
    assert classify_h("").verdict == IRREGULAR
    assert sum(classify_h(p).regular for p in SIZE3) == 5
    assert sum(classify_h(b).regular for b in itertools.combinations(SIZE3, 2)) == 58


def test_classify_h_matching_same_rule():
    for p in SIZE3:
        assert classify_h(p, "matching").verdict == classify_h(p).verdict
    with pytest.raises(InvalidInput):
        classify_h("121", "cayley")


def test_classify_v_examples():
    r = classify_v("112")
    assert r.verdict == REGULAR
    assert all(avoided_by_class(w, "112") for w in r.witnesses.values())
    assert classify_v("123").verdict == IRREGULAR
    assert "V(C,C)" in classify_v("123").reasons
    assert [p for p in SIZE3 if classify_v(p).regular] == ["112", "121"]
    assert classify_v("").verdict == IRREGULAR


def test_report_json():
    data = json.loads(classify("121", "v").to_json())
    assert set(data) >= {"encoding", "mode", "verdict", "witnesses", "search_bound"}
    assert data["verdict"] == "Regular" and data["search_bound"] == 4
    assert len(data["witnesses"]) == 9
    with pytest.raises(InvalidInput):
        classify("121", "v", "matching")


def test_report_invariants():
    for b in itertools.combinations(SIZE3, 2):
        for enc in "vh":
            r = classify(b, enc)
            if r.regular:
                assert all(w is not None for w in r.witnesses.values())
            else:
                assert r.verdict == IRREGULAR and r.reasons


def test_verdicts_ignore_redundant_elements():
    rng = random.Random(11)
    bigger = list(generate_cayley(4))
    for _ in range(40):
        base = rng.sample(SIZE3, rng.randint(1, 3))
        extra = [p for p in rng.sample(bigger, 6) if any(contains(p, b) for b in base)]
        for enc in "vh":
            assert classify(base + [str(p) for p in extra], enc).verdict == classify(base, enc).verdict


def test_avoided_by_class_golden():
    assert avoided_by_class("21", "121")
    assert not avoided_by_class("121", "112")
    assert refuting_rgf("121", "112") == CayleyPermutation("121")
    assert avoided_by_class("1312", "112")


def test_avoided_by_class_against_brute_force():
    # gamma is avoided iff no RGF of size <= |gamma| + height(gamma) avoiding the basis contains it
    rng = random.Random(5)
    gammas = [p for n in (2, 3, 4) for p in generate_cayley(n)]
    for _ in range(60):
        basis = Basis(rng.sample(SIZE3, rng.randint(1, 3)))
        gamma = rng.choice(gammas)
        limit = len(gamma) + gamma.height
        found = any(
            contains(r, gamma) is not None
            for n in range(len(gamma), limit + 1)
            for r in generate_rgfs(n, basis)
        )
        assert avoided_by_class(gamma, basis) == (not found), (gamma, basis)


def test_rgf_extensions_are_rgfs_containing_gamma():
    for gamma in ("1312", "2213", "321"):
        for w in rgf_extensions(tuple(CayleyPermutation(gamma))):
            assert contains(w, gamma) is not None
            assert len(w) <= len(gamma) + CayleyPermutation(gamma).height


def test_basis_elements_are_avoided():
    rng = random.Random(2)
    pool = [p for n in (2, 3, 4) for p in generate_cayley(n)]
    for _ in range(30):
        basis = Basis(rng.sample(pool, 3))
        assert all(avoided_by_class(b, basis) for b in basis)


def test_sb_bases():
    assert [str(p) for p in sb_h_basis(1)] == ["112", "121"]
    assert len(sb_h_basis(2)) == 6
    assert {"12123", "12321"} <= {str(p) for p in sb_h_basis(2)}
    assert [str(p) for p in sb_v_basis(1)] == ["1211", "1212", "1213"]
    assert CayleyPermutation("121314") in sb_v_basis(2)
    assert all(is_rgf(p) for k in (1, 2) for p in sb_v_basis(k))


@pytest.mark.parametrize("k", [1, 2])
def test_sb_h_equivalence(k):
    basis = sb_h_basis(k)
    for n in range(1, 7):
        for p in generate_rgfs(n):
            assert (max_slots_h(p) <= k) == avoids_basis(p, basis), p


@pytest.mark.parametrize("k", [1, 2])
def test_sb_v_equivalence(k):
    basis = sb_v_basis(k)
    for n in range(1, 8):
        for p in generate_rgfs(n):
            assert (max_slots_v(p) <= k) == avoids_basis(p, basis), p


def test_slot_probe():
    assert slot_probe("", "v", 6) >= 3
    assert slot_probe("12", "h", 6) == 1
    assert len({slot_probe("121", "v", n) for n in range(4, 9)}) == 1


def test_irregular_classes_grow():
    assert slot_probe("123", "v", 8) > slot_probe("123", "v", 5)
    assert slot_probe("111", "h", 8) > slot_probe("111", "h", 5)
