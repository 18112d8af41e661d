"""Decide whether a class has a regular horizontal or vertical insertion encoding.

Horizontal (RGFs and matchings): regular iff the basis has an element in
``H(I,I)`` and an element in ``H(I,D)``.

Vertical (RGFs): regular iff, for each of nine families, the class avoids
some member of the family. For six families the alternations are RGFs, so
this collapses to "some basis element lies in the family". For the three
families with a decreasing top cell the alternations are not RGFs and we
search for an alternation avoided by the class, up to ``m_max``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .core import (
    Basis,
    CayleyPermutation,
    as_word,
    contains,
    generate_cayley,
    generate_matching_rgfs,
    generate_rgfs,
    is_rgf,
)
from .encoding_h import max_slots_h
from .encoding_v import max_slots_v
from .geometry import (
    DECREASING_TOP_FAMILIES,
    EXACT_VERTICAL_FAMILIES,
    HORIZONTAL_FAMILIES,
    ClassTag,
    alternation,
    in_class,
)
from .errors import InvalidInput

REGULAR = "Regular"
IRREGULAR = "Irregular"
UNDECIDED = "Undecided"
DEFAULT_M_MAX = 4


@dataclass
class ClassificationReport:
    encoding: str
    mode: str
    verdict: str
    witnesses: dict[str, str | None]
    search_bound: int | None = None
    reasons: dict[str, str] = field(default_factory=dict)
    basis: str = ""

    @property
    def regular(self) -> bool:
        return self.verdict == REGULAR

    def reason(self) -> str:
        if not self.reasons:
            return "all families witnessed"
        return "; ".join(f"{fam}: {why}" for fam, why in self.reasons.items())

    def to_dict(self) -> dict:
        return {
            "basis": self.basis,
            "encoding": self.encoding,
            "mode": self.mode,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "reasons": self.reasons,
            "search_bound": self.search_bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _basis_witness(basis: Basis, family: ClassTag) -> CayleyPermutation | None:
    return next((b for b in basis if _member(tuple(b), family)), None)


@lru_cache(maxsize=None)
def _member(perm: tuple[int, ...], family: ClassTag) -> bool:
    return in_class(perm, family)


def classify_h(basis, mode: str = "rgf") -> ClassificationReport:
    basis = Basis(basis)
    if mode not in ("rgf", "matching"):
        raise InvalidInput(f"horizontal classification supports rgf and matching, not {mode!r}")
    witnesses: dict[str, str | None] = {}
    reasons = {}
    for family in HORIZONTAL_FAMILIES:
        w = _basis_witness(basis, family)
        witnesses[str(family)] = str(w) if w else None
        if w is None:
            reasons[str(family)] = "no basis element lies in this family"
    verdict = REGULAR if not reasons else IRREGULAR
    return ClassificationReport("horizontal", mode, verdict, witnesses, None, reasons, basis.text())


def classify_v(basis, m_max: int = DEFAULT_M_MAX) -> ClassificationReport:
    basis = Basis(basis)
    witnesses: dict[str, str | None] = {}
    reasons = {}
    if not basis:
        for family in EXACT_VERTICAL_FAMILIES + DECREASING_TOP_FAMILIES:
            witnesses[str(family)] = None
        reasons["*"] = "empty basis: the class contains every alternation"
        return ClassificationReport("vertical", "rgf", IRREGULAR, witnesses, m_max, reasons, "")

    for family in EXACT_VERTICAL_FAMILIES:
        w = _basis_witness(basis, family)
        witnesses[str(family)] = str(w) if w else None
        if w is None:
            reasons[str(family)] = "no basis element lies in this family"
    exact_failed = bool(reasons)

    for family in DECREASING_TOP_FAMILIES:
        name = str(family)
        if exact_failed:
            witnesses[name] = None
            reasons[name] = "not searched: an exact family already fails"
            continue
        w = _basis_witness(basis, family)
        if w is None:
            w = _avoided_alternation(basis, family, m_max)
        witnesses[name] = str(w) if w else None
        if w is None:
            reasons[name] = f"no avoided alternation with at most {m_max} blocks"

    if exact_failed:
        verdict = IRREGULAR
    elif reasons:
        verdict = UNDECIDED
    else:
        verdict = REGULAR
    return ClassificationReport("vertical", "rgf", verdict, witnesses, m_max, reasons, basis.text())


def classify(basis, encoding: str, mode: str = "rgf", m_max: int = DEFAULT_M_MAX) -> ClassificationReport:
    if encoding in ("h", "horizontal"):
        return classify_h(basis, mode)
    if encoding in ("v", "vertical"):
        if mode != "rgf":
            raise InvalidInput("the vertical encoding is defined for rgf mode only")
        return classify_v(basis, m_max)
    raise InvalidInput(f"unknown encoding {encoding!r}")


def _avoided_alternation(basis: Basis, family: ClassTag, m_max: int) -> CayleyPermutation | None:
    # alternation m contains alternation m-1, so the first hit is the smallest
    for m in range(1, m_max + 1):
        alt = alternation(family, m)
        if avoided_by_class(alt, basis):
            return alt
    return None


@lru_cache(maxsize=4096)
def rgf_extensions(gamma: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """RGFs obtained from ``gamma`` by inserting at most one new first occurrence per value.

    Any RGF containing ``gamma`` contains one of these, so they decide
    whether ``gamma`` is avoided by an RGF class.
    """
    n = len(gamma)
    height = max(gamma)
    first = {}
    for i, v in enumerate(gamma):
        first.setdefault(v, i)
    out = set()
    inserts: list[tuple[int, int]] = []  # (gap, value); gap g means before gamma[g]

    def build() -> tuple[int, ...]:
        word = []
        by_gap: dict[int, list[int]] = {}
        for g, v in inserts:
            by_gap.setdefault(g, []).append(v)
        for g in range(n + 1):
            word.extend(by_gap.get(g, ()))
            if g < n:
                word.append(gamma[g])
        return tuple(word)

    def extend(v: int, last_first: float) -> None:
        if v > height:
            result = build()
            if is_rgf(result):
                out.add(result)
            return
        if first[v] > last_first:
            extend(v + 1, first[v])
        # inserted copy at gap g sits at position g - 0.5
        for g in range(0, first[v] + 1):
            if g - 0.5 > last_first:
                inserts.append((g, v))
                extend(v + 1, g - 0.5)
                inserts.pop()

    extend(1, -1.0)
    return tuple(sorted(out))


def avoided_by_class(gamma, basis) -> bool:
    """True iff no RGF avoiding ``basis`` contains ``gamma``."""
    basis = [as_word(b) for b in Basis(basis)]
    for rgf in rgf_extensions(as_word(gamma)):
        if not any(contains(rgf, b) is not None for b in basis):
            return False
    return True


def refuting_rgf(gamma, basis) -> CayleyPermutation | None:
    """An RGF avoiding ``basis`` that contains ``gamma``, if one exists."""
    basis = [as_word(b) for b in Basis(basis)]
    for rgf in rgf_extensions(as_word(gamma)):
        if not any(contains(rgf, b) is not None for b in basis):
            return CayleyPermutation(rgf)
    return None


def sb_h_basis(k: int) -> list[CayleyPermutation]:
    """Minimal RGFs whose horizontal evolution reaches ``k + 1`` slots."""
    if k < 1:
        raise InvalidInput("k must be at least 1")
    prefix = tuple(range(1, k + 1))
    return [CayleyPermutation(prefix + p) for p in itertools.permutations(range(1, k + 2))]


def _cayley_words(n: int) -> Iterable[tuple[int, ...]]:
    return (tuple(p) for p in generate_cayley(n))


def sb_v_basis(k: int) -> list[CayleyPermutation]:
    """Minimal RGF derivations of ``1..n ◊ a1 ◊ ... ◊ ak ◊`` with one point per slot.

    A slot may be filled by a later point of a row already present, so the
    filler values range over everything that keeps the word an RGF.  Only
    fillings whose evolution really needs ``k + 1`` slots are kept.
    """
    if k < 1:
        raise InvalidInput("k must be at least 1")
    found = set()
    for a in _cayley_words(k):
        n = max(a)
        for b in itertools.product(range(1, n + k + 2), repeat=k + 1):
            word = list(range(1, n + 1)) + [b[0]]
            for ai, bi in zip(a, b[1:]):
                word += [ai, bi]
            if is_rgf(word) and max_slots_v(word) > k:
                found.add(CayleyPermutation(word))
    ordered = sorted(found, key=lambda p: (len(p), p))
    return [p for p in ordered if not any(q != p and contains(p, q) is not None for q in ordered)]


def slot_probe(basis, encoding: str, n_max: int, mode: str = "rgf") -> int:
    """Largest slot count seen in the evolutions of class members up to size ``n_max``."""
    basis = Basis(basis)
    max_slots = max_slots_h if encoding in ("h", "horizontal") else max_slots_v
    gen = generate_matching_rgfs if mode == "matching" else generate_rgfs
    best = 0
    for n in range(1, n_max + 1):
        for perm in gen(n, basis):
            best = max(best, max_slots(perm))
    return best
