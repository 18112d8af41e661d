"""Exact rational generating functions of automata.

For a DFA with integer transition matrix ``A`` (every letter weighs ``x``) the
series of accepted words is ``e_start (I - xA)^{-1} acc``. Its denominator is
``det(I - xA)``, obtained from the characteristic polynomial of ``A`` by the
Faddeev-LeVerrier recurrence, and the numerator is the truncation of
``det(I - xA)`` times the series, since its degree is below the state count.
Everything is integer arithmetic.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .automaton import Dfa, counts_up_to
from .errors import InvalidInput, NotNormalizable, NotNormalized


class IntPolynomial:
    """Integer polynomial with ascending coefficients and no trailing zeros."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        """``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial.constant(other)
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        return format_poly(self)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, value):
        out = 0
        for c in reversed(self.coeffs):
            out = out * value + c
        return out

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other) -> IntPolynomial:
        other = _poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> IntPolynomial:
        return self + (-_poly(other))

    def __rsub__(self, other) -> IntPolynomial:
        return _poly(other) - self

    def __mul__(self, other) -> IntPolynomial:
        other = _poly(other)
        if not self or not other:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def truncate(self, n: int) -> IntPolynomial:
        """Terms of degree below ``n``."""
        return IntPolynomial(self.coeffs[:n])

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        if not self:
            return self
        c = self.content()
        if self.coeffs[-1] < 0:
            c = -c
        return IntPolynomial(v // c for v in self.coeffs)

    def pseudo_rem(self, other: IntPolynomial) -> IntPolynomial:
        if not other:
            raise ZeroDivisionError("pseudo-remainder by the zero polynomial")
        r = list(self.coeffs)
        lead, d = other.coeffs[-1], other.degree
        while len(r) - 1 >= d and any(r):
            shift = len(r) - 1 - d
            top = r[-1]
            r = [lead * v for v in r]
            for k, c in enumerate(other.coeffs):
                r[k + shift] -= top * c
            while r and r[-1] == 0:
                r.pop()
        return IntPolynomial(r)

    def exact_div(self, other: IntPolynomial) -> IntPolynomial:
        """Quotient when ``other`` divides ``self`` over the integers."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        d, lead = other.degree, other.coeffs[-1]
        q = [0] * max(len(r) - d, 0)
        while r and len(r) - 1 >= d:
            shift = len(r) - 1 - d
            c, rem = divmod(r[-1], lead)
            if rem:
                raise ArithmeticError("polynomial division is not exact")
            q[shift] = c
            for k, b in enumerate(other.coeffs):
                r[k + shift] -= c * b
            while r and r[-1] == 0:
                r.pop()
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return IntPolynomial(q)


def _poly(value) -> IntPolynomial:
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial.constant(value)
    return IntPolynomial(value)


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor in Z[x] via primitive remainder sequences."""
    a, b = _poly(a), _poly(b)
    if not a:
        return b.primitive() * b.content() if b else b
    if not b:
        return a.primitive() * a.content()
    c = math.gcd(a.content(), b.content())
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        a, b = b, a.pseudo_rem(b).primitive()
    return a * c


def format_poly(p: IntPolynomial, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    return text + "".join(f"{s}{b}" for s, b in parts[1:])


@dataclass(frozen=True)
class RationalGF:
    num: IntPolynomial
    den: IntPolynomial

    def coefficient_text(self) -> str:
        return f"num_coeffs={_list(self.num)}; den_coeffs={_list(self.den)}"

    def pretty(self) -> str:
        num, den = format_poly(self.num), format_poly(self.den)
        if len([c for c in self.num.coeffs if c]) > 1:
            num = f"({num})"
        if len([c for c in self.den.coeffs if c]) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __str__(self) -> str:
        return self.pretty()

    def series(self, order: int) -> list[int]:
        return series(self, order)

    @classmethod
    def parse(cls, text: str) -> RationalGF:
        """Read the ``num_coeffs=[..]; den_coeffs=[..]`` form."""
        m = re.fullmatch(r"\s*num_coeffs=\[([^\]]*)\];\s*den_coeffs=\[([^\]]*)\]\s*", text)
        if not m:
            raise InvalidInput(f"bad generating function text {text!r}")
        try:
            num, den = ([int(v) for v in g.split(",") if v.strip()] for g in m.groups())
        except ValueError:
            raise InvalidInput(f"bad generating function text {text!r}") from None
        return cls(IntPolynomial(num), IntPolynomial(den))


def _list(p: IntPolynomial) -> str:
    return "[" + ",".join(map(str, p.coeffs or (0,))) + "]"


def normalize(num, den) -> RationalGF:
    """Reduce ``num/den`` and scale so that ``den(0)`` is positive, ideally 1."""
    num, den = _poly(num), _poly(den)
    if not den or den[0] == 0:
        raise NotNormalizable("the denominator must have a nonzero constant term")
    if not num:
        return RationalGF(IntPolynomial(), IntPolynomial.constant(1))
    g = poly_gcd(num, den).primitive()
    num, den = num.exact_div(g), den.exact_div(g)
    c = math.gcd(num.content(), den.content())
    if den[0] < 0:
        c = -c
    return RationalGF(IntPolynomial(v // c for v in num.coeffs), IntPolynomial(v // c for v in den.coeffs))


def series(g: RationalGF, order: int) -> list[int]:
    """Coefficients ``a_0..a_order``."""
    if g.den[0] != 1:
        raise NotNormalized("series needs den(0) = 1")
    den = g.den.coeffs
    out: list[int] = []
    for n in range(order + 1):
        out.append(g.num[n] - sum(den[i] * out[n - i] for i in range(1, min(n, len(den) - 1) + 1)))
    return out


def transfer_matrix(d: Dfa) -> list[list[int]]:
    a = [[0] * d.n_states for _ in range(d.n_states)]
    for (s, _), t in d.transitions.items():
        a[s][t] += 1
    return a


def det_one_minus_x(a: Sequence[Sequence[int]]) -> IntPolynomial:
    """``det(I - xA)`` by the Faddeev-LeVerrier recurrence; the divisions are exact."""
    n = len(a)
    coeffs = [1]
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        am = _matmul(a, m)
        c = -sum(am[i][i] for i in range(n))
        if c % k:
            raise ArithmeticError("non-integer characteristic polynomial coefficient")
        c //= k
        coeffs.append(c)
        m = am
        for i in range(n):
            m[i][i] += c
    return IntPolynomial(coeffs)


def _matmul(a, b):
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def gf_from_dfa(d: Dfa) -> RationalGF:
    den = det_one_minus_x(transfer_matrix(d))
    counts = counts_up_to(d, d.n_states)
    num = (den * IntPolynomial(counts)).truncate(d.n_states)
    return normalize(num, den)
