import itertools
from collections import deque

import pytest

from rgfins.automaton import (
    Dfa,
    build_dfa,
    check_state_soundness,
    count_accepted,
    counts_up_to,
    minimize,
)
from rgfins.core import generate_cayley, generate_matching_rgfs, generate_rgfs
from rgfins.encoding_h import decode_h, encode_h
from rgfins.encoding_v import decode_v, encode_v
from rgfins.errors import CapExceeded, NotSlotBounded
from rgfins.regularity import classify

SIZE3 = [str(p) for p in generate_cayley(3)]


def brute(basis, n, mode="rgf"):
    gen = generate_matching_rgfs if mode == "matching" else generate_rgfs
    return [0] + [sum(1 for _ in gen(k, basis)) for k in range(1, n + 1)]


def accepted_words(d, n):
    out = []

    def go(state, word):
        if len(word) == n:
            if state in d.accepting:
                out.append(word)
            return
        for a, t in d.successors(state):
            go(t, word + (a,))

    go(d.start, ())
    return out


def test_examples():
    d = build_dfa("121", "v", "rgf", 10**4)
    assert counts_up_to(d, 5)[1:] == [1, 2, 4, 8, 16]
    assert count_accepted(d, 10) == 512
    assert count_accepted(d, 0) == 0
    d = build_dfa("121", "h", "matching", 10**4)
    assert counts_up_to(d, 10) == [0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]
    assert counts_up_to(build_dfa("112", "v"), 8) == brute("112", 8)


def test_empty_basis_refused():
    for enc in "vh":
        with pytest.raises(NotSlotBounded):
            build_dfa("", enc)


def test_cap():
    with pytest.raises(CapExceeded):
        build_dfa("112", "v", state_cap=3)


def test_empty_class():
    d = build_dfa("1", "h")
    assert counts_up_to(d, 4) == [0] * 5


@pytest.mark.parametrize("basis,enc", [("121", "v"), ("112", "v"), ("121", "h"), ("213 221", "v")])
def test_minimize(basis, enc):
    d = build_dfa(basis, enc)
    m = minimize(d)
    assert m.n_states <= d.n_states
    assert minimize(m).n_states == m.n_states
    assert counts_up_to(m, 12) == counts_up_to(d, 12)


@pytest.mark.parametrize("basis,enc", [("121", "v"), ("121", "h"), ("122 123", "v"), ("213 221", "h")])
def test_accepted_words_are_exactly_the_encodings(basis, enc):
    d = minimize(build_dfa(basis, enc))
    encode, decode = (encode_v, decode_v) if enc == "v" else (encode_h, decode_h)
    for n in range(1, 8):
        words = accepted_words(d, n)
        assert sorted(map(decode, words)) == list(generate_rgfs(n, basis))
        assert all(d.accepts(encode(p)) for p in generate_rgfs(n, basis))


def test_no_dead_states_and_slot_bound():
    for basis in ("121", "112", "213 221", "111 122"):
        for enc in "vh":
            if not classify(basis, enc).regular:
                continue
            d = build_dfa(basis, enc)
            reverse = {}
            for (s, _), t in d.transitions.items():
                reverse.setdefault(t, set()).add(s)
            live, queue = set(d.accepting), deque(d.accepting)
            while queue:
                for s in reverse.get(queue.popleft(), ()):
                    if s not in live:
                        live.add(s)
                        queue.append(s)
            assert live == set(range(d.n_states))
            assert all(a.slot <= d.slot_bound for _, a in d.transitions)


def test_json_round_trip():
    d = minimize(build_dfa("213 221", "v"))
    text = d.to_json()
    back = Dfa.from_json(text)
    assert back.to_json() == text
    assert counts_up_to(back, 10) == counts_up_to(d, 10)


def test_oracle_all_regular_pairs():
    for r in (1, 2):
        for basis in itertools.combinations(SIZE3, r):
            for enc in "vh":
                if classify(basis, enc).regular:
                    assert counts_up_to(minimize(build_dfa(basis, enc)), 8) == brute(basis, 8), (basis, enc)
            if classify(basis, "h", "matching").regular:
                d = build_dfa(basis, "h", "matching")
                assert counts_up_to(d, 10) == brute(basis, 10, "matching"), basis


@pytest.mark.parametrize("basis,enc", [("121", "v"), ("112", "v"), ("121", "h"), ("213 221", "v")])
def test_state_soundness(basis, enc):
    assert check_state_soundness(basis, enc, "rgf", 4).sound


def test_state_soundness_depth_zero():
    report = check_state_soundness("121", "v", "rgf", 0)
    assert report.sound and report.checked_groups == 0
