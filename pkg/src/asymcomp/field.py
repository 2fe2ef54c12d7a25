"""Exact arithmetic in the real number field Q(lambda).

Elements are residue polynomials in the designated real root ``lambda``
with rational coordinates.  Equality is syntactic; strict order is decided
by interval evaluation over a rational root enclosure which is bisected on
demand.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FieldMismatch, NoRealRootAboveOne, NotMonic, Reducible
from .poly import IntPolynomial, find_factor, parse_polynomial, poly_divmod

_INITIAL_WIDTH = Fraction(1, 2**32)


def _sturm_chain(p: IntPolynomial) -> list[list[Fraction]]:
    chain = [[Fraction(c) for c in p.coeffs], [Fraction(c) for c in p.derivative().coeffs]]
    while chain[-1] and len(chain[-1]) > 1:
        _, r = poly_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _sign_changes(chain, x: Fraction) -> int:
    signs = [v for v in (_eval(c, x) for c in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


class NumberField:
    """Q(lambda) for the largest real root lambda of an irreducible monic polynomial."""

    def __init__(self, minpoly: IntPolynomial | str | Sequence[int]):
        if isinstance(minpoly, str):
            minpoly = parse_polynomial(minpoly)
        elif not isinstance(minpoly, IntPolynomial):
            minpoly = IntPolynomial(minpoly)
        if minpoly.degree < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        if not minpoly.is_monic():
            raise NotMonic(f"{minpoly} is not monic")
        factor = find_factor(minpoly)
        if factor is not None and factor.degree < minpoly.degree:
            raise Reducible(minpoly, factor)
        self.minpoly = minpoly
        self.degree = minpoly.degree
        self._lock = threading.Lock()
        self._chain = _sturm_chain(minpoly)
        self._enclosure = self._isolate_largest_root()
        # lambda^(d+j) expressed in the power basis, for fast reduction
        d = self.degree
        low = [Fraction(-c) for c in minpoly.coeffs[:-1]]
        table = [low]
        for _ in range(d - 2):
            prev = table[-1]
            nxt = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, low)]
            table.append(nxt)
        self._reduction = table
        while self._enclosure[1] - self._enclosure[0] > Fraction(1, 2**64):
            self.refine()
        self._lam_float = float(sum(self._enclosure) / 2)

    def _count_roots(self, lo: Fraction, hi: Fraction) -> int:
        """Distinct real roots in (lo, hi]."""
        return _sign_changes(self._chain, lo) - _sign_changes(self._chain, hi)

    def _isolate_largest_root(self) -> tuple[Fraction, Fraction]:
        bound = 1 + max(abs(Fraction(c)) for c in self.minpoly.coeffs[:-1])
        lo, hi = Fraction(1), Fraction(bound)
        if self._count_roots(lo, hi) == 0:
            raise NoRealRootAboveOne(f"{self.minpoly} has no real root above 1")
        if self.degree == 1:
            r = Fraction(-self.minpoly.coeffs[0])
            return r, r
        while self._count_roots(lo, hi) > 1 or hi - lo > _INITIAL_WIDTH:
            mid = (lo + hi) / 2
            if self._count_roots(mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
        return lo, hi

    @property
    def root_enclosure(self) -> tuple[Fraction, Fraction]:
        return self._enclosure

    def refine(self) -> tuple[Fraction, Fraction]:
        """Halve the root enclosure; returns the new enclosure."""
        with self._lock:
            lo, hi = self._enclosure
            if lo == hi:
                return self._enclosure
            mid = (lo + hi) / 2
            vm = self.minpoly(mid)
            if vm == 0:
                self._enclosure = (mid, mid)
            elif (vm > 0) == (self.minpoly(hi) > 0):
                self._enclosure = (lo, mid)
            else:
                self._enclosure = (mid, hi)
            return self._enclosure

    def __repr__(self) -> str:
        return f"NumberField({self.minpoly})"

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self) -> int:
        return hash(self.minpoly)

    def element(self, coords: Iterable) -> "FieldElement":
        c = [Fraction(x) for x in coords]
        if len(c) > self.degree:
            return FieldElement(self, self._reduce(c))
        c += [Fraction(0)] * (self.degree - len(c))
        return FieldElement(self, tuple(c))

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        return self.element([value])

    @property
    def zero(self) -> "FieldElement":
        return self.element([])

    @property
    def one(self) -> "FieldElement":
        return self.element([1])

    @property
    def gen(self) -> "FieldElement":
        """The designated root lambda."""
        if self.degree == 1:
            return self.element([-self.minpoly.coeffs[0]])
        return self.element([0, 1])

    def _reduce(self, coeffs: list) -> tuple:
        d = self.degree
        out = list(coeffs[:d]) + [Fraction(0)] * max(0, d - len(coeffs))
        for j, c in enumerate(coeffs[d:]):
            if c:
                row = self._reduction[j] if j < len(self._reduction) else None
                if row is None:
                    # high powers beyond the table: fall back to long division
                    _, r = poly_divmod(coeffs, self.minpoly.coeffs)
                    r = list(r) + [Fraction(0)] * (d - len(r))
                    return tuple(r)
                for i, v in enumerate(row):
                    out[i] += c * v
        return tuple(out)

    def interval(self, x: "FieldElement") -> tuple[Fraction, Fraction]:
        """Rational interval containing the real value of ``x`` over the current enclosure."""
        lo, hi = self._enclosure
        vlo = vhi = Fraction(0)
        plo = phi = Fraction(1)
        for c in x.coords:
            if c > 0:
                vlo += c * plo
                vhi += c * phi
            elif c < 0:
                vlo += c * phi
                vhi += c * plo
            plo *= lo
            phi *= hi
        return vlo, vhi

    def sign(self, x: "FieldElement") -> int:
        if x.is_zero():
            return 0
        # fast path: double evaluation with a generous relative error margin
        lam = self._lam_float
        approx = 0.0
        scale = 0.0
        power = 1.0
        for c in x.coords:
            fc = float(c)
            approx += fc * power
            scale += abs(fc) * power
            power *= lam
        if abs(approx) > 1e-9 * scale:
            return 1 if approx > 0 else -1
        while True:
            vlo, vhi = self.interval(x)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            self.refine()

    def approx(self, x: "FieldElement", digits: int = 6) -> str:
        """Decimal string of ``x`` from a certified enclosure."""
        tol = Fraction(1, 10 ** (digits + 2))
        vlo, vhi = self.interval(x)
        while vhi - vlo > tol:
            if self._enclosure[0] == self._enclosure[1]:
                break
            self.refine()
            vlo, vhi = self.interval(x)
        return f"{float((vlo + vhi) / 2):.{digits}f}"


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords

    def _check(self, other) -> "FieldElement":
        if not isinstance(other, FieldElement):
            return self.field(other)
        if other.field is not self.field and other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._check(other)
        a, b = self.coords, other.coords
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        # extended Euclid: s*self + t*minpoly = 1
        r0 = [Fraction(c) for c in self.field.minpoly.coeffs]
        r1 = list(self.coords)
        while r1 and r1[-1] == 0:
            r1.pop()
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            qs = _polymul(q, s1)
            s_new = _polysub(s0, qs)
            r0, r1, s0, s1 = r1, r, s1, s_new
        # r1 is a nonzero constant (minpoly irreducible)
        c = r1[0]
        return self.field.element([x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in number field")
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def sign(self) -> int:
        return self.field.sign(self)

    def compare(self, other) -> int:
        return (self - self._check(other)).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __float__(self) -> float:
        return float(self.field.approx(self, 12))

    def approx(self, digits: int = 6) -> str:
        return self.field.approx(self, digits)

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" + ("" if i == 0 else "*L" if i == 1 else f"*L^{i}"))
        return " + ".join(terms) if terms else "0"


def _polymul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def compare(x: FieldElement, y: FieldElement) -> str:
    """'less', 'equal' or 'greater'."""
    c = x.compare(y)
    return "less" if c < 0 else "greater" if c > 0 else "equal"


def embed_power(x: FieldElement, target: NumberField, n: int) -> FieldElement:
    """Map ``x`` in Q(mu) into ``target`` = Q(lambda), given mu = lambda**n."""
    mu = target.gen ** n
    acc = target.zero
    p = target.one
    for c in x.coords:
        if c:
            acc = acc + p * c
        p = p * mu
    return acc
