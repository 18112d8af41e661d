"""Horizontal insertion encoding: points are placed left to right.

A configuration keeps the standardised prefix and, bottom to top, the gaps
between placed values (each may hold one new slot) interleaved with the
placed levels (each may hold one repeating slot). Letters ``u, m, d, f`` say
which new slots survive around the inserted point and the flag says whether
its value occurs again.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import CayleyPermutation, as_word, is_matching_rgf, is_rgf
from .errors import DanglingSlots, IllegalLetter, InvalidInput
from .letters import Letter, format_letters, parse_letters

KINDS = "umdf"
MODES = ("cayley", "rgf", "matching")
NEW = "new"


@dataclass(frozen=True)
class ConfigH:
    word: tuple[int, ...] = ()
    new_gaps: tuple[bool, ...] = (True,)
    repeats: tuple[bool, ...] = ()

    @property
    def slots(self) -> tuple:
        """Bottom-to-top slots: ``"new"`` or the level of a repeating slot."""
        out: list = []
        for g, open_ in enumerate(self.new_gaps):
            if open_:
                out.append(NEW)
            if g < len(self.repeats) and self.repeats[g]:
                out.append(g + 1)
        return tuple(out)

    def __str__(self) -> str:
        marks = "".join("◊" if s == NEW else f"◊̄{s}" for s in self.slots)
        return f"{''.join(map(str, self.word))}|{marks}"


INITIAL = ConfigH()


def _mode_allows(kind: str, flag: int, into_new: bool, mode: str) -> bool:
    if mode == "cayley":
        return into_new or kind == "f"
    if mode == "rgf":
        return kind in "df" and (into_new or kind == "f")
    if mode == "matching":
        if into_new:
            return kind in "df" and flag == 1
        return kind == "f" and flag == 0
    raise InvalidInput(f"unknown mode {mode!r}")


def legal_letters_h(config: ConfigH, mode: str = "cayley") -> list[Letter]:
    out = []
    for i, slot in enumerate(config.slots, start=1):
        for kind in KINDS:
            for flag in (0, 1):
                if _mode_allows(kind, flag, slot == NEW, mode):
                    out.append(Letter(kind, i, flag))
    return out


def step_h(config: ConfigH, letter: Letter, mode: str | None = None) -> ConfigH:
    kind, i, flag = letter
    slots = config.slots
    if kind not in KINDS or flag not in (0, 1):
        raise IllegalLetter("unknown letter", f"{letter} is not a horizontal letter")
    if not 1 <= i <= len(slots):
        raise IllegalLetter("index out of range", f"{letter}: only {len(slots)} slot(s)")
    slot = slots[i - 1]
    if slot != NEW and kind != "f":
        raise IllegalLetter("u/m/d on repeating slot", f"{letter} targets a repeating slot")
    if mode is not None and not _mode_allows(kind, flag, slot == NEW, mode):
        raise IllegalLetter("mode violation", f"{letter} is not allowed in {mode} mode")

    if slot != NEW:
        repeats = list(config.repeats)
        repeats[slot - 1] = bool(flag)
        return ConfigH(config.word + (slot,), config.new_gaps, tuple(repeats))

    # new slot in gap g: the inserted value becomes level g + 1
    rank = slots[:i].count(NEW) - 1
    g = [k for k, open_ in enumerate(config.new_gaps) if open_][rank]
    value = g + 1
    word = tuple(v + 1 if v >= value else v for v in config.word) + (value,)
    below, above = kind in "um", kind in "md"
    new_gaps = config.new_gaps[:g] + (below, above) + config.new_gaps[g + 1 :]
    repeats = config.repeats[:g] + (bool(flag),) + config.repeats[g:]
    return ConfigH(word, new_gaps, repeats)


def _slot_keys(seen: set[int], pending_new: set[int], pending_repeat: set[int]) -> list[float]:
    # a new slot sits in the gap above its lower seen level; use level + 0.5 as key
    levels = sorted(seen)
    keys = {float(h) for h in pending_repeat}
    for v in pending_new:
        lower = max((h for h in levels if h < v), default=0)
        keys.add(lower + 0.5)
    return sorted(keys)


def encode_h(perm) -> tuple[Letter, ...]:
    perm = as_word(perm)
    CayleyPermutation(perm)
    seen: set[int] = set()
    remaining: dict[int, int] = {}
    for v in perm:
        remaining[v] = remaining.get(v, 0) + 1
    word = []
    for v in perm:
        unseen = set(remaining) - seen
        pending_repeat = {h for h in seen if remaining[h] > 0}
        keys = _slot_keys(seen, unseen, pending_repeat)
        remaining[v] -= 1
        flag = int(remaining[v] > 0)
        if v in seen:
            word.append(Letter("f", keys.index(float(v)) + 1, flag))
            continue
        lower = max((h for h in seen if h < v), default=0)
        upper = min((h for h in seen if h > v), default=float("inf"))
        below = any(lower < u < v for u in unseen)
        above = any(v < u < upper for u in unseen)
        kind = {(False, False): "f", (True, False): "u", (True, True): "m", (False, True): "d"}[
            (below, above)
        ]
        word.append(Letter(kind, keys.index(lower + 0.5) + 1, flag))
        seen.add(v)
    return tuple(word)


def replay_h(word: Iterable[Letter], mode: str | None = None) -> list[ConfigH]:
    """All configurations of the evolution, starting with the initial one."""
    configs = [INITIAL]
    for letter in word:
        configs.append(step_h(configs[-1], letter, mode))
    return configs


def decode_h(word: Sequence[Letter], mode: str = "cayley") -> CayleyPermutation:
    final = replay_h(word, mode)[-1]
    if final.slots:
        raise DanglingSlots(len(final.slots))
    return CayleyPermutation(final.word)


def conforms_h(word: Sequence[Letter], mode: str = "rgf") -> bool:
    """True iff every letter belongs to the restricted alphabet of ``mode``."""
    if mode == "rgf":
        return all(a.kind in "df" for a in word)
    if mode == "matching":
        return all((a.kind == "d" and a.flag == 1) or a.kind == "f" for a in word)
    if mode == "cayley":
        return True
    raise InvalidInput(f"unknown mode {mode!r}")


def max_slots_h(perm) -> int:
    return max(len(c.slots) for c in replay_h(encode_h(perm)))


def mode_of(perm) -> str:
    if is_matching_rgf(perm):
        return "matching"
    return "rgf" if is_rgf(perm) else "cayley"


def parse_word_h(text: str) -> tuple[Letter, ...]:
    return parse_letters(text, KINDS)


format_word_h = format_letters
