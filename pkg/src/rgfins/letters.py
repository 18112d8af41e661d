"""Letters ``a_{i,j}`` shared by both insertion encodings, and their text form."""
from __future__ import annotations

import re
from typing import NamedTuple, Sequence

from .errors import InvalidInput

_LETTER = re.compile(r"([a-zℓ])_?\{(\d+),([01])\}")


class Letter(NamedTuple):
    kind: str
    slot: int
    flag: int

    def __str__(self) -> str:
        return f"{self.kind}{{{self.slot},{self.flag}}}"


def parse_letters(text: str, kinds: str) -> tuple[Letter, ...]:
    """Parse ``"m{1,1}u{3,1}f{2,0}"``; whitespace is ignored, ``ℓ`` reads as ``l``."""
    compact = "".join(text.split())
    letters = []
    pos = 0
    while pos < len(compact):
        match = _LETTER.match(compact, pos)
        if not match:
            raise InvalidInput(f"cannot parse letter at {compact[pos:]!r}")
        kind = "l" if match.group(1) == "ℓ" else match.group(1)
        if kind not in kinds:
            raise InvalidInput(f"letter kind {kind!r} is not one of {kinds!r}")
        slot = int(match.group(2))
        if slot < 1:
            raise InvalidInput("slot indices start at 1")
        letters.append(Letter(kind, slot, int(match.group(3))))
        pos = match.end()
    return tuple(letters)


def format_letters(word: Sequence[Letter]) -> str:
    return "".join(str(a) for a in word)
