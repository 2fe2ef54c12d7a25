"""Inflation rules as word morphisms: parsing, count matrices, Perron-Frobenius
data, legal factors and the composition algebra."""

from __future__ import annotations

import functools
import re
import string
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AlphabetMismatch,
    EmptyImage,
    NotPrimitive,
    ParseError,
    ReducibleSpectrum,
    UnknownLetter,
)
from .field import FieldElement, NumberField
from .poly import IntPolynomial, charpoly, find_factor

CountMatrix = tuple  # tuple of row tuples; entry [i][j] = #letter i in image of letter j


@dataclass(frozen=True)
class InflationRule:
    alphabet: str
    images: tuple

    def __post_init__(self):
        if not 1 <= len(self.alphabet) <= 26 or len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError(f"bad alphabet {self.alphabet!r}")
        if len(self.images) != len(self.alphabet):
            raise ValueError("one image per letter required")
        letters = set(self.alphabet)
        for img in self.images:
            if not img:
                raise EmptyImage("empty image")
            bad = set(img) - letters
            if bad:
                raise UnknownLetter(f"letter {sorted(bad)[0]!r} not in alphabet", 0)

    @classmethod
    def parse(cls, text: str) -> "InflationRule":
        return parse_rule(text)

    @functools.cached_property
    def table(self) -> dict:
        return dict(zip(self.alphabet, self.images))

    def __getitem__(self, letter: str) -> str:
        return self.table[letter]

    def __call__(self, word: str) -> str:
        return inflate(self, word)

    def __str__(self) -> str:
        return "[" + ",".join(self.images) + "]"

    def __repr__(self) -> str:
        return f"InflationRule({str(self)!r})"


_RULE = re.compile(r"\s*\[(.*)\]\s*$", re.S)


def parse_rule(text: str) -> InflationRule:
    """Parse ``"[ab,a]"``; images use the first n lowercase letters."""
    m = _RULE.match(text)
    if m is None:
        stripped = text.strip()
        if not stripped.startswith("["):
            raise ParseError("rule must start with '['", len(text) - len(text.lstrip()))
        raise ParseError("rule must end with ']'", len(text))
    body_start = m.start(1)
    parts = m.group(1).split(",")
    n = len(parts)
    if n > 26:
        raise ParseError("at most 26 letters", body_start)
    alphabet = string.ascii_lowercase[:n]
    images = []
    pos = body_start
    for part in parts:
        word = part.strip()
        lead = len(part) - len(part.lstrip())
        if not word:
            raise EmptyImage("empty image", pos)
        for i, ch in enumerate(word):
            if ch.isspace() or ch not in string.ascii_lowercase:
                raise ParseError(f"unexpected character {ch!r}", pos + lead + i)
            if ch not in alphabet:
                raise UnknownLetter(f"letter {ch!r} outside alphabet {alphabet!r}", pos + lead + i)
        images.append(word)
        pos += len(part) + 1
    return InflationRule(alphabet, tuple(images))


def identity_rule(alphabet: str) -> InflationRule:
    return InflationRule(alphabet, tuple(alphabet))


def count_matrix(rule: InflationRule) -> CountMatrix:
    return tuple(
        tuple(img.count(x) for img in rule.images) for x in rule.alphabet
    )


def _bool_mul(a, b):
    n = len(a)
    return tuple(
        tuple(any(a[i][t] and b[t][j] for t in range(n)) for j in range(n)) for i in range(n)
    )


def is_primitive(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    base = tuple(tuple(bool(x) for x in row) for row in m)
    power = base
    for _ in range((n - 1) * n + 1):
        if all(all(row) for row in power):
            return True
        power = _bool_mul(power, base)
    return False


def matmul(a, b):
    n, p = len(a), len(b[0])
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(p)) for i in range(n))


def inflate(rule: InflationRule, word: str, times: int = 1) -> str:
    table = rule.table
    for _ in range(times):
        word = "".join(table[x] for x in word)
    return word


def reverse_rule(rule: InflationRule) -> InflationRule:
    return InflationRule(rule.alphabet, tuple(img[::-1] for img in rule.images))


def compose_rules(outer: InflationRule, inner: InflationRule) -> InflationRule:
    """outer o inner: first apply ``inner``, then ``outer`` letterwise."""
    if outer.alphabet != inner.alphabet:
        raise AlphabetMismatch(f"{outer.alphabet!r} vs {inner.alphabet!r}")
    return InflationRule(inner.alphabet, tuple(inflate(outer, img) for img in inner.images))


def power_rule(rule: InflationRule, n: int) -> InflationRule:
    if n < 1:
        raise ValueError("power must be >= 1")
    result = rule
    for _ in range(n - 1):
        result = compose_rules(rule, result)
    return result


def legal_factors(rule: InflationRule, k: int) -> frozenset:
    """All legal words of length ``k``, by closure under inflation."""
    if k < 1:
        raise ValueError("k must be positive")
    words = list(rule.alphabet)
    while min(len(w) for w in words) < k:
        words = [inflate(rule, w) for w in words]
    found = set()
    for w in words:
        found.update(w[i : i + k] for i in range(len(w) - k + 1))
    frontier = set(found)
    while frontier:
        new = set()
        for f in frontier:
            w = inflate(rule, f)
            for i in range(len(w) - k + 1):
                u = w[i : i + k]
                if u not in found:
                    new.add(u)
        found |= new
        frontier = new
    return frozenset(found)


@dataclass(frozen=True, eq=False)
class PerronData:
    field: NumberField
    lam: FieldElement
    lengths: dict
    charpoly: IntPolynomial

    def length(self, word: str) -> FieldElement:
        lengths = self.lengths
        acc = self.field.zero
        counts = {}
        for x in word:
            counts[x] = counts.get(x, 0) + 1
        for x, c in counts.items():
            acc = acc + lengths[x] * c
        return acc

    @functools.cached_property
    def min_length(self) -> FieldElement:
        return min(self.lengths.values(), key=lambda v: _SortKey(v))

    @functools.cached_property
    def max_length(self) -> FieldElement:
        return max(self.lengths.values(), key=lambda v: _SortKey(v))


class _SortKey:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v


def _nullvector(rows: list[list[FieldElement]], field: NumberField) -> list[FieldElement]:
    """A nonzero kernel vector of a corank-1 square matrix, last free coordinate scaled to 1."""
    n = len(rows)
    a = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ReducibleSpectrum("eigenspace is not one-dimensional")
    fc = free[0]
    v = [field.zero] * n
    v[fc] = field.one
    for row, c in enumerate(pivots):
        v[c] = -a[row][fc]
    return v


@functools.lru_cache(maxsize=256)
def _perron_from_matrix(m: CountMatrix, letters: str) -> PerronData:
    cp = charpoly(m)
    if len(m) == 1:
        raise ReducibleSpectrum("single tile: rational inflation factor, periodic tilings")
    factor = find_factor(cp)
    if factor is not None:
        raise ReducibleSpectrum(f"characteristic polynomial {cp} is reducible (factor {factor})")
    field = NumberField(cp)
    lam = field.gen
    n = len(m)
    # left eigenvector: sum_i l_i M[i][j] = lam l_j
    rows = [[field(m[i][j]) - (lam if i == j else field.zero) for i in range(n)] for j in range(n)]
    v = _nullvector(rows, field)
    v0 = v[0]
    lengths = {x: vi / v0 for x, vi in zip(letters, v)}
    for x, ell in lengths.items():
        if ell.sign() <= 0:
            raise ReducibleSpectrum(f"non-positive length for tile {x}")
    return PerronData(field, lam, lengths, cp)


def perron_data(rule: InflationRule) -> PerronData:
    """Inflation factor and tile lengths, normalised so the first tile has length 1."""
    m = count_matrix(rule)
    if not is_primitive(m):
        raise NotPrimitive(f"{rule} is not primitive")
    return _perron_from_matrix(m, rule.alphabet)


def relabel_rule(rule: InflationRule, perm: Iterable[str]) -> InflationRule:
    """Rename letter ``rule.alphabet[i]`` to ``perm[i]`` and reorder to alphabet order."""
    perm = list(perm)
    tr = dict(zip(rule.alphabet, perm))
    images = {tr[x]: "".join(tr[c] for c in rule[x]) for x in rule.alphabet}
    return InflationRule(rule.alphabet, tuple(images[x] for x in rule.alphabet))
