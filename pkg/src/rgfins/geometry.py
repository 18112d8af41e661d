"""Juxtapositions, alternations and griddings.

Cell kinds are strict: ``I`` and ``D`` mean strictly increasing/decreasing and
``C`` means all values equal. Empty cells satisfy every kind, and the parts of
a juxtaposition may be empty.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from itertools import combinations_with_replacement, product
from typing import Sequence

from .core import CayleyPermutation, as_word, standardise
from .errors import InvalidInput


class CellKind(str, Enum):
    I = "I"
    D = "D"
    C = "C"
    ZERO = "0"

    def accepts(self, values: Sequence[int]) -> bool:
        if not values:
            return True
        if self is CellKind.ZERO:
            return False
        pairs = zip(values, values[1:])
        if self is CellKind.I:
            return all(a < b for a, b in pairs)
        if self is CellKind.D:
            return all(a > b for a, b in pairs)
        return all(a == b for a, b in pairs)


@dataclass(frozen=True)
class GridMatrix:
    """``cells[col][row]`` with column 0 on the left and row 0 at the bottom."""

    cells: tuple[tuple[CellKind, ...], ...]

    def __post_init__(self):
        if not self.cells or not self.cells[0]:
            raise InvalidInput("grid matrices need at least one row and one column")
        if len({len(col) for col in self.cells}) != 1:
            raise InvalidInput("ragged grid matrix")

    @property
    def columns(self) -> int:
        return len(self.cells)

    @property
    def rows(self) -> int:
        return len(self.cells[0])

    def __getitem__(self, kl: tuple[int, int]) -> CellKind:
        return self.cells[kl[0]][kl[1]]

    @classmethod
    def parse(cls, text: str) -> GridMatrix:
        """Rows top-to-bottom separated by ``;``, cells by ``,``: ``"0,D;I,I"``."""
        try:
            rows = [[CellKind(c.strip()) for c in row.split(",")] for row in text.split(";")]
        except ValueError:
            raise InvalidInput(f"bad grid matrix {text!r}") from None
        rows.reverse()
        if len({len(r) for r in rows}) != 1:
            raise InvalidInput("ragged grid matrix")
        return cls(tuple(tuple(r[k] for r in rows) for k in range(len(rows[0]))))

    def __str__(self) -> str:
        return ";".join(
            ",".join(self[k, l].value for k in range(self.columns))
            for l in reversed(range(self.rows))
        )


@dataclass(frozen=True)
class Gridding:
    """1-based cut positions: columns ``c[0]=1 .. c[t]=n+1``, rows likewise."""

    columns: tuple[int, ...]
    rows: tuple[int, ...]


@dataclass(frozen=True)
class ClassTag:
    """``H(A,B)``, ``V(A,B)`` or ``G(A,B)``.

    ``G(A,B)`` is the grid class of ``(0 B / I A)``: an increasing bottom-left
    cell, kind ``A`` bottom-right, kind ``B`` top-right and an empty top-left.
    """

    family: str
    a: CellKind
    b: CellKind

    def __post_init__(self):
        allowed = {
            "H": ("ID", "ID"),
            "V": ("IDC", "IDC"),
            "G": ("ID", "IDC"),
        }
        if self.family not in allowed:
            raise InvalidInput(f"unknown family {self.family!r}")
        left, right = allowed[self.family]
        if self.a.value not in left or self.b.value not in right:
            raise InvalidInput(f"{self.family}({self.a.value},{self.b.value}) is not a valid tag")

    @classmethod
    def parse(cls, text: str) -> ClassTag:
        text = text.replace(" ", "")
        if len(text) != 6 or text[1] != "(" or text[3] != "," or text[5] != ")":
            raise InvalidInput(f"bad class tag {text!r}")
        return cls(text[0], CellKind(text[2]), CellKind(text[4]))

    def __str__(self) -> str:
        return f"{self.family}({self.a.value},{self.b.value})"

    @property
    def matrix(self) -> GridMatrix:
        if self.family == "G":
            return GridMatrix(((CellKind.I, CellKind.ZERO), (self.a, self.b)))
        if self.family == "V":
            return GridMatrix(((self.a, self.b),))
        return GridMatrix(((self.a,), (self.b,)))


def tag(text: str) -> ClassTag:
    return ClassTag.parse(text)


HORIZONTAL_FAMILIES = (tag("H(I,I)"), tag("H(I,D)"))
# alternations of these six are RGFs, so basis-level membership decides them
EXACT_VERTICAL_FAMILIES = tuple(
    tag(t) for t in ("G(I,I)", "G(D,I)", "G(I,C)", "G(D,C)", "V(C,I)", "V(C,C)")
)
DECREASING_TOP_FAMILIES = tuple(tag(t) for t in ("G(I,D)", "G(D,D)", "V(C,D)"))
VERTICAL_FAMILIES = EXACT_VERTICAL_FAMILIES + DECREASING_TOP_FAMILIES


def window(perm, indices: tuple[int, int], values: tuple[int, int]) -> tuple[int, ...]:
    """Values of the points with 1-based index in ``indices`` and value in ``values``.

    Both ranges are inclusive ``(lo, hi)`` pairs.
    """
    perm = as_word(perm)
    (i0, i1), (v0, v1) = indices, values
    if not (1 <= i0 and i1 <= len(perm) and 1 <= v0 and v1 <= max(perm)):
        raise InvalidInput("window lies outside the plot")
    return tuple(v for v in perm[i0 - 1 : i1] if v0 <= v <= v1)


def is_juxtaposition(perm, left, right, axis: str = "horizontal") -> bool:
    perm, left, right = as_word(perm), as_word(left), as_word(right)
    if axis == "horizontal":
        if len(left) + len(right) != len(perm):
            raise InvalidInput("sizes of the parts do not add up")
        cut = len(left)
        return _std_or_empty(perm[:cut]) == left and _std_or_empty(perm[cut:]) == right
    if axis == "vertical":
        if max(left) + max(right) != max(perm):
            raise InvalidInput("heights of the parts do not add up")
        cut = max(left)
        low = tuple(v for v in perm if v <= cut)
        high = tuple(v for v in perm if v > cut)
        return _std_or_empty(low) == left and _std_or_empty(high) == right
    raise InvalidInput(f"unknown axis {axis!r}")


def _std_or_empty(word):
    return tuple(standardise(word)) if word else ()


def find_gridding(perm, matrix: GridMatrix) -> Gridding | None:
    """First gridding in lexicographic (column cuts, row cuts) order, or None."""
    perm = as_word(perm)
    n, m = len(perm), max(perm)
    for inner_c in combinations_with_replacement(range(1, n + 2), matrix.columns - 1):
        cols = (1, *inner_c, n + 1)
        for inner_r in combinations_with_replacement(range(1, m + 2), matrix.rows - 1):
            rows = (1, *inner_r, m + 1)
            if is_gridding(perm, matrix, Gridding(cols, rows)):
                return Gridding(cols, rows)
    return None


def is_gridding(perm, matrix: GridMatrix, gridding: Gridding) -> bool:
    perm = as_word(perm)
    cols, rows = gridding.columns, gridding.rows
    for k, l in product(range(matrix.columns), range(matrix.rows)):
        cell = [v for v in perm[cols[k] - 1 : cols[k + 1] - 1] if rows[l] <= v < rows[l + 1]]
        if not matrix[k, l].accepts(cell):
            return False
    return True


def in_class(perm, tag: ClassTag) -> bool:
    perm = as_word(perm)
    a, b = tag.a, tag.b
    if tag.family == "H":
        return any(a.accepts(perm[:cut]) and b.accepts(perm[cut:]) for cut in range(len(perm) + 1))
    if tag.family == "V":
        for cut in range(max(perm) + 1):
            low = [v for v in perm if v <= cut]
            high = [v for v in perm if v > cut]
            if a.accepts(low) and b.accepts(high):
                return True
        return False
    return find_gridding(perm, tag.matrix) is not None


def concatenation(tag: ClassTag, n: int) -> CayleyPermutation:
    if n < 1:
        raise InvalidInput("half-size must be at least 1")
    up = tuple(range(1, n + 1))
    if tag == ClassTag("H", CellKind.I, CellKind.I):
        return CayleyPermutation(up + up)
    if tag == ClassTag("H", CellKind.I, CellKind.D):
        return CayleyPermutation(up + up[::-1])
    raise InvalidInput("concatenations are defined for H(I,I) and H(I,D) only")


def _run(kind: CellKind, n: int, base: int) -> list[int]:
    if kind is CellKind.I:
        return list(range(base + 1, base + n + 1))
    if kind is CellKind.D:
        return list(range(base + n, base, -1))
    return [base + 1] * n


def _interleave(a: list[int], b: list[int]) -> list[int]:
    return [v for pair in zip(a, b) for v in pair]


def vertical_alternation(tag: ClassTag, n: int) -> CayleyPermutation:
    if tag.family != "V" or n < 1:
        raise InvalidInput("vertical alternations need a V tag and n >= 1")
    low = _run(tag.a, n, 0)
    return CayleyPermutation(_interleave(low, _run(tag.b, n, max(low))))


def g_alternation(tag: ClassTag, n: int) -> CayleyPermutation:
    if tag.family != "G" or n < 1:
        raise InvalidInput("G-alternations need a G tag and n >= 1")
    return CayleyPermutation(list(range(1, n + 1)) + _interleave(_run(tag.a, n, 0), _run(tag.b, n, n)))


def alternation(tag: ClassTag, n: int) -> CayleyPermutation:
    """The size-``2n`` (V) or size-``3n`` (G) alternation of a vertical family."""
    return g_alternation(tag, n) if tag.family == "G" else vertical_alternation(tag, n)


def _longest_strict(w: Sequence[int], sign: int) -> list[int]:
    # patience sorting on sign*value; bisect_left keeps the run strict
    tails: list[int] = []
    tail_idx: list[int] = []
    prev = [-1] * len(w)
    for i, v in enumerate(w):
        key = sign * v
        pos = bisect_left(tails, key)
        if pos == len(tails):
            tails.append(key)
            tail_idx.append(i)
        else:
            tails[pos] = key
            tail_idx[pos] = i
        prev[i] = tail_idx[pos - 1] if pos else -1
    out = []
    i = tail_idx[-1] if tail_idx else -1
    while i >= 0:
        out.append(i)
        i = prev[i]
    return out[::-1]


def monotone_or_constant_subsequence(w: Sequence[int], target: int) -> tuple[int, ...] | None:
    """0-based indices of a strictly monotone or constant subsequence of length ``target``.

    Always succeeds when ``len(w) >= target**3``.
    """
    w = list(w)
    if target <= 0:
        return ()
    positions: dict[int, list[int]] = {}
    for i, v in enumerate(w):
        positions.setdefault(v, []).append(i)
    best = max(positions.values(), key=len, default=[])
    if len(best) >= target:
        return tuple(best[:target])
    for sign in (1, -1):
        run = _longest_strict(w, sign)
        if len(run) >= target:
            return tuple(run[:target])
    return None
