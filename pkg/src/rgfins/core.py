"""Cayley permutations, restricted growth functions and pattern containment.

A Cayley permutation is stored as a tuple of positive ints. The brute-force
generators at the bottom of this module are the oracles the rest of the
package is tested against, so they are kept deliberately simple.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInput


class CayleyPermutation(tuple):
    """A word over the positive integers using every value in ``1..max``."""

    __slots__ = ()

    def __new__(cls, values: Iterable[int] = ()):
        if isinstance(values, str):
            values = parse_word(values)
        obj = super().__new__(cls, values)
        if not obj:
            raise InvalidInput("Cayley permutations have size at least 1")
        if any(not isinstance(v, int) or v < 1 for v in obj):
            raise InvalidInput(f"values must be positive integers: {tuple(obj)}")
        if set(obj) != set(range(1, max(obj) + 1)):
            raise InvalidInput(f"{format_word(obj)} skips a value below its maximum")
        return obj

    @property
    def height(self) -> int:
        return max(self)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"CayleyPermutation('{self}')"


def parse_word(text: str) -> tuple[int, ...]:
    """Parse ``"121331"`` or ``"1,2,10,3"`` into a tuple of ints."""
    text = text.strip()
    if not text:
        raise InvalidInput("empty word")
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        return tuple(int(ch) for ch in text)
    except ValueError:
        raise InvalidInput(f"cannot parse word {text!r}") from None


def format_word(word: Sequence[int]) -> str:
    if word and max(word) > 9:
        return ",".join(map(str, word))
    return "".join(map(str, word))


def standardise(word) -> CayleyPermutation:
    word = as_word(word)
    if len(word) == 0:
        raise InvalidInput("cannot standardise the empty word")
    rank = {v: i for i, v in enumerate(sorted(set(word)), start=1)}
    return CayleyPermutation(rank[v] for v in word)


def _std(word: Sequence[int]) -> tuple[int, ...]:
    rank = {v: i for i, v in enumerate(sorted(set(word)), start=1)}
    return tuple(rank[v] for v in word)


def is_rgf(perm) -> bool:
    """True iff first occurrences appear in increasing value order."""
    top = 0
    for v in as_word(perm):
        if v > top + 1:
            return False
        top = max(top, v)
    return True


def is_matching_rgf(perm) -> bool:
    perm = as_word(perm)
    if len(perm) % 2 or not is_rgf(perm):
        return False
    counts: dict[int, int] = {}
    for v in perm:
        counts[v] = counts.get(v, 0) + 1
    return all(c == 2 for c in counts.values())


@lru_cache(maxsize=1 << 20)
def _occurrence(perm: tuple[int, ...], patt: tuple[int, ...]) -> tuple[int, ...] | None:
    n, k = len(perm), len(patt)
    if k > n:
        return None
    if k == 0:
        return ()
    height = max(patt)
    image = [0] * (height + 1)  # image[s] = value of perm matched to pattern value s
    chosen: list[int] = []

    def consistent(s: int, v: int) -> bool:
        if image[s]:
            return image[s] == v
        # nearest assigned pattern values below and above s bound v strictly
        for t in range(s - 1, 0, -1):
            if image[t]:
                if image[t] >= v:
                    return False
                break
        for t in range(s + 1, height + 1):
            if image[t]:
                if image[t] <= v:
                    return False
                break
        return True

    def search(j: int, start: int) -> bool:
        if j == k:
            return True
        s = patt[j]
        fresh = not image[s]
        for i in range(start, n - (k - j) + 1):
            v = perm[i]
            if consistent(s, v):
                if fresh:
                    image[s] = v
                chosen.append(i)
                if search(j + 1, i + 1):
                    return True
                chosen.pop()
                if fresh:
                    image[s] = 0
        return False

    return tuple(chosen) if search(0, 0) else None


def as_word(word) -> tuple[int, ...]:
    """Accept a tuple/list of ints or the textual form."""
    if isinstance(word, str):
        return parse_word(word)
    return tuple(word)


def contains(perm, patt) -> tuple[int, ...] | None:
    """Return 0-based indices of an occurrence of ``patt`` in ``perm``, or None.

    Equal pattern values must map to equal values and strict inequalities to
    strict inequalities, so ``11`` does not contain ``12``.
    """
    return _occurrence(as_word(perm), as_word(patt))


def contains_brute(perm: Sequence[int], patt: Sequence[int]) -> bool:
    """Oracle: standardise every subsequence of the right size."""
    patt = tuple(patt)
    return any(_std(sub) == patt for sub in combinations(perm, len(patt)))


class Basis(tuple):
    """A canonical, non-redundant avoiding set.

    Elements are sorted by ``(size, values)``; any element containing another
    element is dropped, which leaves the avoided class unchanged.
    """

    __slots__ = ()

    def __new__(cls, patterns: Iterable = ()):
        if isinstance(patterns, str):
            patterns = parse_basis(patterns)
        perms = sorted({CayleyPermutation(p) for p in patterns}, key=lambda p: (len(p), p))
        kept: list[CayleyPermutation] = []
        for p in perms:
            if not any(contains(p, q) is not None for q in kept):
                kept.append(p)
        return super().__new__(cls, kept)

    @property
    def max_size(self) -> int:
        return max((len(p) for p in self), default=0)

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self) + "}"

    def __repr__(self) -> str:
        return f"Basis('{self.text()}')"

    def text(self) -> str:
        """Separator-safe form used on the command line and as store keys."""
        return " ".join(str(p) if p.height <= 9 else format_word(p) for p in self)


def parse_basis(text: str) -> list[CayleyPermutation]:
    """Patterns separated by whitespace, ``;`` or ``/``; braces are ignored.

    A single comma-joined token is read as several patterns when every part
    has more than one digit ("121,221"), otherwise as one pattern whose values
    are comma separated ("1,2,10").
    """
    text = text.strip().strip("{}").strip()
    if not text:
        return []
    for sep in (";", "/"):
        text = text.replace(sep, " ")
    tokens = text.split()
    if len(tokens) == 1 and "," in tokens[0]:
        parts = tokens[0].split(",")
        # "121,221" is two patterns; "1,2,10" is one pattern with big values
        if all(len(p) > 1 for p in parts):
            tokens = parts
    return [CayleyPermutation(parse_word(t)) for t in tokens]


def avoids_basis(perm, basis: Iterable) -> bool:
    perm = as_word(perm)
    return all(_occurrence(perm, tuple(b)) is None for b in Basis(basis))


def generate_cayley(n: int) -> Iterator[CayleyPermutation]:
    """All Cayley permutations of size ``n`` in lexicographic order."""
    if n < 1:
        raise InvalidInput("size must be at least 1")
    word: list[int] = []

    def extend(top: int, used: frozenset) -> Iterator[CayleyPermutation]:
        left = n - len(word)
        if left == 0:
            if len(used) == top:
                yield CayleyPermutation(word)
            return
        for v in range(1, n + 1):
            new_top = max(top, v)
            new_used = used | {v}
            if new_top - len(new_used) > left - 1:
                continue
            word.append(v)
            yield from extend(new_top, new_used)
            word.pop()

    yield from extend(0, frozenset())


def _extends_cleanly(prefix: tuple[int, ...], basis: Sequence[tuple[int, ...]]) -> bool:
    # callers only extend prefixes that already avoid the basis
    return all(_occurrence(prefix, b) is None for b in basis)


def generate_rgfs(n: int, basis: Iterable[Sequence[int]] = ()) -> Iterator[CayleyPermutation]:
    """All size-``n`` RGFs avoiding ``basis``, in lexicographic order."""
    if n < 1:
        raise InvalidInput("size must be at least 1")
    basis = [tuple(b) for b in Basis(basis)]
    word: list[int] = []

    def extend(top: int) -> Iterator[CayleyPermutation]:
        if len(word) == n:
            yield CayleyPermutation(word)
            return
        for v in range(1, top + 2):
            word.append(v)
            if _extends_cleanly(tuple(word), basis):
                yield from extend(max(top, v))
            word.pop()

    yield from extend(0)


def generate_matching_rgfs(n: int, basis: Iterable[Sequence[int]] = ()) -> Iterator[CayleyPermutation]:
    """All size-``n`` matching RGFs (each value exactly twice) avoiding ``basis``."""
    if n < 1:
        raise InvalidInput("size must be at least 1")
    if n % 2:
        return
    basis = [tuple(b) for b in Basis(basis)]
    word: list[int] = []
    counts = [0] * (n // 2 + 2)

    def extend(top: int, open_: int) -> Iterator[CayleyPermutation]:
        left = n - len(word)
        if left == 0:
            yield CayleyPermutation(word)
            return
        if open_ > left:
            return
        for v in range(1, min(top + 1, n // 2) + 1):
            if counts[v] == 2:
                continue
            counts[v] += 1
            word.append(v)
            if _extends_cleanly(tuple(word), basis):
                yield from extend(max(top, v), open_ + (1 if counts[v] == 1 else -1))
            word.pop()
            counts[v] -= 1

    yield from extend(0, 0)
