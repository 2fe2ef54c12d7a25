"""Integer polynomials: parsing, arithmetic, characteristic polynomials,
and factorisation over the integers for small degrees."""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError


def _trim(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Polynomial with integer coefficients, stored low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        c = _trim(int(x) for x in coeffs)
        self.coeffs = c

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        return parse_polynomial(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(_mul(self.coeffs, other.coeffs))

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def to_list(self) -> list[int]:
        return list(self.coeffs)


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divmod(num: Sequence, den: Sequence) -> tuple[list, list]:
    """Division with remainder over the rationals; coefficients low first."""
    num = [Fraction(x) for x in _trim(num)]
    den = [Fraction(x) for x in _trim(den)]
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(den):
        return [], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        coef = num[shift + len(den) - 1] / lead
        q[shift] = coef
        if coef:
            for j, d in enumerate(den):
                num[shift + j] -= coef * d
    return list(_trim(q)), list(_trim(num[: len(den) - 1]))


_TERM = re.compile(r"([+-]?)(\d*)(?:\*?(x)(?:\^(\d+))?)?")


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse ``"x^3-x-1"`` or the coefficient list ``"[-1,-1,0,1]"``."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial", 0)
    if s.startswith("["):
        if not s.endswith("]"):
            raise ParseError("unterminated coefficient list", len(text))
        body = s[1:-1]
        try:
            coeffs = [int(t) for t in body.split(",")] if body else []
        except ValueError as exc:
            raise ParseError(f"bad coefficient list: {exc}", 1) from None
        return IntPolynomial(coeffs)
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ParseError(f"unexpected character {s[pos]!r}", pos)
        if pos > 0 and not m.group(1):
            raise ParseError("missing operator between terms", pos)
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            power = int(m.group(4)) if m.group(4) else 1
        else:
            power = 0
        terms[power] = terms.get(power, 0) + sign * coef
        pos = m.end()
    deg = max(terms)
    return IntPolynomial(terms.get(i, 0) for i in range(deg + 1))


def format_polynomial(p: IntPolynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            var = "x" if i == 1 else f"x^{i}"
            body = var if mag == 1 else f"{mag}{var}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += sign + body
    return out


def charpoly(matrix: Sequence[Sequence[int]]) -> IntPolynomial:
    """det(xI - M) by the Faddeev-LeVerrier recursion, exact over the integers."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(m[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        mk = [[prod[i][j] + coeffs[n - k + 1] * ident[i][j] for j in range(n)] for i in range(n)]
        am = [[sum(m[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return IntPolynomial(int(c) for c in coeffs)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: IntPolynomial) -> list[Fraction]:
    if p.is_zero():
        raise ValueError("zero polynomial")
    coeffs = list(p.coeffs)
    roots = []
    if coeffs[0] == 0:
        roots.append(Fraction(0))
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
    if len(coeffs) <= 1:
        return roots
    q = IntPolynomial(coeffs)
    for num in _divisors(q.coeffs[0]):
        for den in _divisors(q.leading):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and q(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Lagrange interpolation, coefficients low first."""
    out = [Fraction(0)] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = _mul(basis, [Fraction(-xj), Fraction(1)])
                denom *= xi - xj
        for t, b in enumerate(basis):
            out[t] += yi * b / denom
    return out


def find_factor(p: IntPolynomial) -> IntPolynomial | None:
    """Return a nontrivial integer factor of ``p`` or None if irreducible.

    Rational roots first, then Kronecker's method for factors of degree
    up to half the degree of ``p``.
    """
    if p.degree < 1:
        return None
    for r in rational_roots(p):
        return IntPolynomial([-r.numerator, r.denominator])
    if p.degree <= 3:
        return None
    for deg in range(2, p.degree // 2 + 1):
        # evaluation points with few divisors keep the search small
        pts = sorted(range(-12, 13), key=lambda x: len(_divisors(p(x))))[: deg + 1]
        choices = []
        for i, x in enumerate(pts):
            ds = _divisors(p(x))
            choices.append(ds if i == 0 else ds + [-d for d in ds])
        for ys in itertools.product(*choices):
            g = _interpolate(pts, ys)
            if any(c.denominator != 1 for c in g):
                continue
            gi = _trim(int(c) for c in g)
            if len(gi) - 1 != deg:
                continue
            _, rem = poly_divmod(p.coeffs, gi)
            if not rem:
                return IntPolynomial(gi)
    return None


def is_irreducible(p: IntPolynomial) -> bool:
    return p.degree >= 1 and find_factor(p) is None


def matrix_power_poly(p: IntPolynomial, n: int) -> IntPolynomial:
    """Polynomial whose roots are the n-th powers of the roots of monic ``p``."""
    d = p.degree
    comp = [[0] * d for _ in range(d)]
    for i in range(1, d):
        comp[i][i - 1] = 1
    for i in range(d):
        comp[i][d - 1] = -p.coeffs[i]
    result = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(n):
        result = [[sum(result[i][t] * comp[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
    return charpoly(result)
