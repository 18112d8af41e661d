"""Vertical insertion encoding: values are placed smallest first.

Occurrences of one value go in left to right, which is what the run threshold
enforces: an ``a_{i,0}`` letter must use a slot at index ``>= threshold``,
i.e. strictly right of the previous point with the same value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import CayleyPermutation, as_word
from .errors import DanglingSlots, IllegalLetter, InvalidInput
from .letters import Letter, format_letters, parse_letters

KINDS = "lmrf"
MODES = ("cayley", "rgf")
SLOT = 0


@dataclass(frozen=True)
class ConfigV:
    """``items`` holds placed values and ``SLOT`` (0) markers, left to right."""

    items: tuple[int, ...] = (SLOT,)
    current_max: int = 0
    threshold: int = 1

    @property
    def slot_count(self) -> int:
        return self.items.count(SLOT)

    def __str__(self) -> str:
        return "".join("◊" if v == SLOT else str(v) for v in self.items)


INITIAL = ConfigV()

# slot pieces that replace the filled slot, and the threshold offset after it
REWRITE = {
    "l": ((None, SLOT), 0),
    "m": ((SLOT, None, SLOT), 1),
    "r": ((SLOT, None), 1),
    "f": ((None,), 0),
}


def check_letter_v(slot_count: int, threshold: int, first: bool, letter: Letter, mode: str | None) -> None:
    """Raise IllegalLetter unless ``letter`` may be applied; ``first`` means nothing is placed yet."""
    kind, i, inc = letter
    if kind not in KINDS or inc not in (0, 1):
        raise IllegalLetter("unknown letter", f"{letter} is not a vertical letter")
    if not 1 <= i <= slot_count:
        raise IllegalLetter("index out of range", f"{letter}: only {slot_count} slot(s)")
    if first and inc == 0:
        raise IllegalLetter("first-letter flag", "the first insertion is an increase")
    if inc == 0 and i < threshold:
        raise IllegalLetter(
            "run-order violation",
            f"{letter}: same-value points must go right of slot {threshold - 1}",
        )
    if mode == "rgf" and inc == 1 and (kind not in "lf" or i != 1):
        raise IllegalLetter("mode violation", f"{letter} is not allowed in rgf mode")
    if mode not in (None, "cayley", "rgf"):
        raise InvalidInput(f"unknown mode {mode!r}")


def _check(config: ConfigV, letter: Letter, mode: str | None) -> None:
    check_letter_v(config.slot_count, config.threshold, config.current_max == 0, letter, mode)


def legal_letters_v(config: ConfigV, mode: str = "cayley") -> list[Letter]:
    out = []
    for i in range(1, config.slot_count + 1):
        for kind in KINDS:
            for inc in (0, 1):
                letter = Letter(kind, i, inc)
                try:
                    _check(config, letter, mode)
                except IllegalLetter:
                    continue
                out.append(letter)
    return out


def step_v(config: ConfigV, letter: Letter, mode: str | None = None) -> ConfigV:
    _check(config, letter, mode)
    kind, i, inc = letter
    value = config.current_max + inc
    pieces, offset = REWRITE[kind]
    seen = 0
    for pos, v in enumerate(config.items):
        if v == SLOT:
            seen += 1
            if seen == i:
                break
    replacement = tuple(value if p is None else SLOT for p in pieces)
    items = config.items[:pos] + replacement + config.items[pos + 1 :]
    return ConfigV(items, value, i + offset)


def encode_v(perm) -> tuple[Letter, ...]:
    perm = as_word(perm)
    CayleyPermutation(perm)
    n = len(perm)
    placed = [False] * n
    word = []
    previous = 0
    for value in range(1, max(perm) + 1):
        for p in (k for k in range(n) if perm[k] == value):
            # slot = maximal run of unplaced positions; find the run holding p
            slot = 0
            k = 0
            while k <= p:
                if not placed[k] and (k == 0 or placed[k - 1]):
                    slot += 1
                k += 1
            left = p > 0 and not placed[p - 1]
            right = p < n - 1 and not placed[p + 1]
            kind = {(False, False): "f", (False, True): "l", (True, True): "m", (True, False): "r"}[
                (left, right)
            ]
            word.append(Letter(kind, slot, int(value > previous)))
            previous = value
            placed[p] = True
    return tuple(word)


def replay_v(word: Iterable[Letter], mode: str | None = None) -> list[ConfigV]:
    configs = [INITIAL]
    for letter in word:
        configs.append(step_v(configs[-1], letter, mode))
    return configs


def decode_v(word: Sequence[Letter], mode: str = "cayley") -> CayleyPermutation:
    final = replay_v(word, mode)[-1]
    if final.slot_count:
        raise DanglingSlots(final.slot_count)
    return CayleyPermutation(final.items)


def conforms_v(word: Sequence[Letter]) -> bool:
    """True iff every increase letter is ``f{1,1}`` or ``l{1,1}``."""
    return all(a.flag == 0 or (a.kind in "lf" and a.slot == 1) for a in word)


def max_slots_v(perm) -> int:
    return max(c.slot_count for c in replay_v(encode_v(perm)))


def parse_word_v(text: str) -> tuple[Letter, ...]:
    return parse_letters(text, KINDS)


format_word_v = format_letters
