"""Finite automata accepting the insertion encodings of a slot-bounded class.

States are abstract signatures of configurations. A signature keeps the slot
structure plus, for every partial occurrence of a basis pattern among the
placed points, the pattern those points form and where each slot sits
relative to them. Two configurations with the same signature have the same
future: legality depends only on the slot structure, and whether a
continuation completes an occurrence depends only on the partial occurrences
and the slot positions relative to them.

Only live signatures (ones with at least one completion avoiding the basis)
are explored. For a slot-bounded class every live configuration is visited by
some class member, so the exploration is finite.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .core import Basis, avoids_basis, standardise
from .encoding_h import KINDS as KINDS_H
from .encoding_h import _mode_allows
from .encoding_h import INITIAL as INITIAL_H
from .encoding_h import legal_letters_h, step_h
from .encoding_v import KINDS as KINDS_V
from .encoding_v import INITIAL as INITIAL_V
from .encoding_v import REWRITE, SLOT, check_letter_v, legal_letters_v, step_v
from .errors import CapExceeded, IllegalLetter, InvalidInput, NotSlotBounded
from .letters import Letter, parse_letters
from .regularity import DEFAULT_M_MAX, IRREGULAR, classify

DEFAULT_STATE_CAP = 100_000
_ENCODINGS = {"h": "horizontal", "horizontal": "horizontal", "v": "vertical", "vertical": "vertical"}
_MODES = {"horizontal": ("rgf", "matching"), "vertical": ("rgf",)}


def _encoding_name(encoding: str) -> str:
    try:
        return _ENCODINGS[encoding]
    except KeyError:
        raise InvalidInput(f"unknown encoding {encoding!r}") from None


def _std(word) -> tuple[int, ...]:
    return tuple(standardise(word)) if word else ()


class _Horizontal:
    """Signatures ``(kinds, projections)``.

    ``kinds`` lists slots bottom to top as ``"n"`` (new) or ``"r"`` (repeat).
    A projection ``(S, codes)`` is a partial occurrence: ``S`` is the pattern
    of the matched placed points (a prefix of some basis element) and
    ``codes[j]`` places slot ``j`` relative to ``S``: ``2k`` for the gap above
    ``k`` values of ``S``, ``2j - 1`` for level ``j`` of ``S``.
    """

    def __init__(self, basis: Basis, mode: str):
        self.mode = mode
        self.full = {tuple(b) for b in basis}
        self.prefixes = {_std(b[:t]) for b in self.full for t in range(len(b))}

    def start(self):
        return (("n",), frozenset({((), (0,))}))

    def slot_count(self, sig) -> int:
        return len(sig[0])

    def accepting(self, sig) -> bool:
        return not sig[0]

    def budget(self, sig) -> int:
        kinds = sig[0]
        if self.mode == "matching":
            return len(kinds) + kinds.count("n")
        return len(kinds)

    def letters(self, sig) -> Iterator[Letter]:
        for i, kind in enumerate(sig[0], start=1):
            for k in KINDS_H:
                if kind == "r" and k != "f":
                    continue
                for flag in (0, 1):
                    if _mode_allows(k, flag, kind == "n", self.mode):
                        yield Letter(k, i, flag)

    def step(self, sig, letter: Letter):
        kinds, projections = sig
        kind, i, flag = letter
        j = i - 1
        if kinds[j] == "n":
            children = ("n",) * (kind in "um") + ("r",) * flag + ("n",) * (kind in "md")
        else:
            children = ("r",) * flag
        new_kinds = kinds[:j] + children + kinds[i:]
        out = set()
        for s, codes in projections:
            c = codes[j]
            out.add((s, codes[:j] + (c,) * len(children) + codes[i:]))
            if c % 2:
                grown = s + ((c + 1) // 2,)
                new_codes = codes[:j] + (c,) * len(children) + codes[i:]
            else:
                k = c // 2
                grown = tuple(v + 1 if v > k else v for v in s) + (k + 1,)
                kids = []
                if kinds[j] == "n" and kind in "um":
                    kids.append(c)
                if flag:
                    kids.append(c + 1)
                if kinds[j] == "n" and kind in "md":
                    kids.append(c + 2)
                below = tuple(d + 2 if d > c else d for d in codes[:j])
                above = tuple(d + 2 if d >= c else d for d in codes[i:])
                new_codes = below + tuple(kids) + above
            if grown in self.full:
                return None
            if grown in self.prefixes:
                out.add((grown, new_codes))
        return (new_kinds, frozenset(out))


class _Vertical:
    """Signatures ``(slots, threshold, first, projections)``.

    A projection ``(S, gaps, fragile)`` is a partial occurrence whose matched
    points form ``S``, the start of some basis element in the order values are
    placed (by value, then left to right). ``gaps[j]`` counts the points of
    ``S`` left of slot ``j``; ``fragile`` says the largest value of ``S`` is the
    current maximum, so a later point may still equal it.
    """

    def __init__(self, basis: Basis, mode: str):
        self.mode = mode
        self.full = {tuple(b) for b in basis}
        self.prefixes = set()
        for b in self.full:
            order = sorted(range(len(b)), key=lambda p: (b[p], p))
            for t in range(len(b)):
                chosen = sorted(order[:t])
                self.prefixes.add(_std([b[p] for p in chosen]))

    def start(self):
        return (1, 1, True, frozenset({((), (0,), False)}))

    def slot_count(self, sig) -> int:
        return sig[0]

    def accepting(self, sig) -> bool:
        return sig[0] == 0 and not sig[2]

    def budget(self, sig) -> int:
        # an RGF completion may need a first occurrence for each kept point
        return 2 * sig[0] if self.mode == "rgf" else sig[0]

    def letters(self, sig) -> Iterator[Letter]:
        slots, threshold, first, _ = sig
        for i in range(1, slots + 1):
            for kind in KINDS_V:
                for inc in (0, 1):
                    letter = Letter(kind, i, inc)
                    try:
                        check_letter_v(slots, threshold, first, letter, self.mode)
                    except IllegalLetter:
                        continue
                    yield letter

    def step(self, sig, letter: Letter):
        slots, _, _, projections = sig
        kind, i, inc = letter
        j = i - 1
        pieces, offset = REWRITE[kind]
        n_children = pieces.count(0)
        out = set()
        for s, gaps, fragile in projections:
            c = gaps[j]
            out.add((s, gaps[:j] + (c,) * n_children + gaps[i:], bool(s) and fragile and not inc))
            top = max(s, default=0)
            x = top if (fragile and not inc) else top + 1
            grown = s[:c] + (x,) + s[c:]
            kids = _kid_gaps(pieces, c)
            new_gaps = gaps[:j] + tuple(kids) + tuple(d + 1 if d >= c else d for d in gaps[i:])
            if grown in self.full:
                return None
            if grown in self.prefixes:
                out.add((grown, new_gaps, True))
        return (slots - 1 + n_children, i + offset, False, frozenset(out))


def _kid_gaps(pieces, c: int) -> list[int]:
    # slots left of the new point keep gap c, slots right of it move to c + 1
    out = []
    seen_point = False
    for p in pieces:
        if p is None:
            seen_point = True
        else:
            out.append(c + 1 if seen_point else c)
    return out


def _model(basis: Basis, encoding: str, mode: str):
    name = _encoding_name(encoding)
    if mode not in _MODES[name]:
        raise InvalidInput(f"{name} automata support modes {_MODES[name]}, not {mode!r}")
    return (_Horizontal if name == "horizontal" else _Vertical)(basis, mode)


class _Explorer:
    """Abstract stepping plus a memoized liveness test."""

    def __init__(self, model):
        self.model = model
        self._alive: dict = {}

    def alive(self, sig) -> bool:
        # Any completion avoiding the basis contains a short one that also
        # avoids it: keep one future point per slot (and, for RGFs, the first
        # occurrences of their values). So a bounded search is exact.
        cached = self._alive.get(sig)
        if cached is None:
            cached = self._search(sig, self.model.budget(sig))
            self._alive[sig] = cached
        return cached

    def _search(self, sig, budget: int) -> bool:
        model = self.model
        if model.accepting(sig):
            return True
        if model.slot_count(sig) > budget:
            return False
        for letter in model.letters(sig):
            nxt = model.step(sig, letter)
            if nxt is not None and self._search(nxt, budget - 1):
                return True
        return False


@dataclass
class Dfa:
    """States are ``0..n-1`` with ``start == 0``; missing transitions reject."""

    n_states: int
    accepting: frozenset[int]
    transitions: dict[tuple[int, Letter], int]
    encoding: str
    mode: str
    basis: str
    slot_bound: int
    start: int = 0
    letters: tuple[Letter, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if not self.letters:
            self.letters = tuple(sorted({a for _, a in self.transitions}, key=_letter_key))

    def successors(self, state: int) -> Iterator[tuple[Letter, int]]:
        for a in self.letters:
            t = self.transitions.get((state, a))
            if t is not None:
                yield a, t

    def accepts(self, word: Iterable[Letter]) -> bool:
        state = self.start
        for a in word:
            state = self.transitions.get((state, a))
            if state is None:
                return False
        return state in self.accepting

    def to_dict(self) -> dict:
        return {
            "metadata": {
                "encoding": self.encoding,
                "mode": self.mode,
                "basis": self.basis,
                "slot_bound": self.slot_bound,
            },
            "states": self.n_states,
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [
                [s, str(a), t]
                for (s, a), t in sorted(self.transitions.items(), key=lambda kv: (kv[0][0], _letter_key(kv[0][1])))
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> Dfa:
        meta = data["metadata"]
        kinds = KINDS_H if meta["encoding"] == "horizontal" else KINDS_V
        transitions = {}
        for s, text, t in data["transitions"]:
            (letter,) = parse_letters(text, kinds)
            transitions[(s, letter)] = t
        return cls(
            data["states"],
            frozenset(data["accepting"]),
            transitions,
            meta["encoding"],
            meta["mode"],
            meta["basis"],
            meta["slot_bound"],
            data.get("start", 0),
        )

    @classmethod
    def from_json(cls, text: str) -> Dfa:
        return cls.from_dict(json.loads(text))


def _letter_key(a: Letter):
    return (a.slot, a.kind, a.flag)


def build_dfa(
    basis,
    encoding: str,
    mode: str = "rgf",
    state_cap: int = DEFAULT_STATE_CAP,
    m_max: int = DEFAULT_M_MAX,
) -> Dfa:
    """Trimmed automaton whose length-n words encode the size-n class members."""
    basis = Basis(basis)
    name = _encoding_name(encoding)
    model = _model(basis, name, mode)
    report = classify(basis, name, mode, m_max)
    if report.verdict == IRREGULAR:
        raise NotSlotBounded(report)

    explorer = _Explorer(model)
    start = model.start()
    ids = {start: 0}
    order = [start]
    transitions: dict[tuple[int, Letter], int] = {}
    queue = deque([start]) if explorer.alive(start) else deque()
    while queue:
        sig = queue.popleft()
        src = ids[sig]
        for letter in model.letters(sig):
            nxt = model.step(sig, letter)
            if nxt is None or not explorer.alive(nxt):
                continue
            if nxt not in ids:
                if len(ids) >= state_cap:
                    raise CapExceeded(state_cap)
                ids[nxt] = len(ids)
                order.append(nxt)
                queue.append(nxt)
            transitions[(src, letter)] = ids[nxt]
    accepting = frozenset(ids[s] for s in order if model.accepting(s))
    slot_bound = max(model.slot_count(s) for s in order)
    return Dfa(len(order), accepting, transitions, name, mode, basis.text(), slot_bound)


def count_accepted(d: Dfa, n: int) -> int:
    if n < 0:
        raise InvalidInput("length must be non-negative")
    return counts_up_to(d, n)[n]


def counts_up_to(d: Dfa, n: int) -> list[int]:
    """Accepted word counts for lengths ``0..n``."""
    out = []
    current = {d.start: 1}
    for length in range(n + 1):
        out.append(sum(c for s, c in current.items() if s in d.accepting))
        if length == n:
            break
        nxt: dict[int, int] = {}
        for s, c in current.items():
            for _, t in d.successors(s):
                nxt[t] = nxt.get(t, 0) + c
        current = nxt
    return out


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement, then renumbering in breadth-first letter order."""
    letters = d.letters
    block = [1 if s in d.accepting else 0 for s in range(d.n_states)]
    while True:
        keys = {}
        refined = []
        for s in range(d.n_states):
            key = (block[s],) + tuple(
                block[t] if (t := d.transitions.get((s, a))) is not None else -1 for a in letters
            )
            refined.append(keys.setdefault(key, len(keys)))
        if len(keys) == len(set(block)):
            block = refined
            break
        block = refined

    ids = {block[d.start]: 0}
    queue = deque([d.start])
    reps = {block[d.start]: d.start}
    transitions = {}
    while queue:
        s = queue.popleft()
        for a, t in d.successors(s):
            b = block[t]
            if b not in ids:
                ids[b] = len(ids)
                reps[b] = t
                queue.append(t)
            transitions[(ids[block[s]], a)] = ids[b]
    accepting = frozenset(ids[b] for b, s in reps.items() if s in d.accepting)
    return Dfa(len(ids), accepting, transitions, d.encoding, d.mode, d.basis, d.slot_bound)


@dataclass
class SoundnessReport:
    checked_groups: int
    counterexample: tuple | None = None

    @property
    def sound(self) -> bool:
        return self.counterexample is None


def check_state_soundness(
    basis, encoding: str, mode: str = "rgf", depth: int = 5, prefix_len: int | None = None
) -> SoundnessReport:
    """Compare concrete configurations that share a signature.

    Configurations are reached by every word of length ``<= prefix_len``
    (default ``depth``) that keeps a live signature. Within each signature the
    concrete legal letters and the accepted continuations of length
    ``<= depth`` must agree. The continuations are judged on the concrete
    configurations alone, independently of the signature machinery.
    """
    basis = Basis(basis)
    name = _encoding_name(encoding)
    model = _model(basis, name, mode)
    prefix_len = depth if prefix_len is None else prefix_len
    if depth <= 0:
        return SoundnessReport(0)
    if name == "horizontal":
        step, legal, start = step_h, legal_letters_h, INITIAL_H

        def finished(c):
            return None if c.slots else c.word

        def placed(c):
            return c.word
    else:
        step, legal, start = step_v, legal_letters_v, INITIAL_V

        def finished(c):
            return None if c.slot_count else c.items

        def placed(c):
            return [v for v in c.items if v != SLOT]

    groups: dict = {}

    def walk(sig, config, length):
        groups.setdefault(sig, set()).add(config)
        if length == prefix_len:
            return
        for letter in model.letters(sig):
            nxt = model.step(sig, letter)
            if nxt is not None:
                walk(nxt, step(config, letter, mode), length + 1)

    walk(model.start(), start, 0)

    def future(config):
        found = set()

        def go(c, suffix):
            perm = finished(c)
            if perm is not None:
                if suffix and avoids_basis(perm, basis):
                    found.add(suffix)
                return
            # placed points survive later insertions, so an occurrence is final
            if len(suffix) == depth or not avoids_basis(placed(c), basis):
                return
            for letter in legal(c, mode):
                go(step(c, letter, mode), suffix + (letter,))

        go(config, ())
        return frozenset(found)

    checked = 0
    for sig, configs in groups.items():
        if len(configs) < 2:
            continue
        checked += 1
        ordered = sorted(configs, key=str)
        ref = ordered[0]
        ref_legal, ref_future = set(legal(ref, mode)), future(ref)
        for other in ordered[1:]:
            if set(legal(other, mode)) != ref_legal or future(other) != ref_future:
                return SoundnessReport(checked, (str(ref), str(other)))
    return SoundnessReport(checked)
