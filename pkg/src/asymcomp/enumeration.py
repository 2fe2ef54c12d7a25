"""Enumerate count matrices with a prescribed characteristic polynomial, the
rules realising each matrix, and group rules by canonical signature."""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass, field

from .composants import signature
from .errors import AsymcompError, DegreeUnsupported
from .invariants import canonicalize, mirror_structure
from .poly import IntPolynomial, charpoly, rational_roots
from .rules import InflationRule, count_matrix, is_primitive


@dataclass(frozen=True)
class MatrixClass:
    representative: tuple  # canonical under simultaneous row/column permutation
    charpoly: IntPolynomial

    def __str__(self) -> str:
        return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in self.representative) + "]"


def canonical_matrix(m) -> tuple:
    """Lexicographically minimal flattening over simultaneous permutations."""
    n = len(m)
    best = None
    for p in itertools.permutations(range(n)):
        flat = tuple(m[p[i]][p[j]] for i in range(n) for j in range(n))
        if best is None or flat < best:
            best = flat
    return tuple(best[i * n : (i + 1) * n] for i in range(n))


def default_max_entry(poly: IntPolynomial) -> int:
    d = poly.degree
    return abs(poly.coeffs[0]) + abs(poly.coeffs[d - 1]) + 3


def _factor_pairs(p: int, bound: int):
    """Ordered (x, y) with x*y == p and 0 <= x, y <= bound."""
    if p == 0:
        yield (0, 0)
        for v in range(1, bound + 1):
            yield (0, v)
            yield (v, 0)
        return
    for x in range(1, min(p, bound) + 1):
        if p % x == 0 and p // x <= bound:
            yield (x, p // x)


def _compositions(total: int, parts: int, bound: int):
    if parts == 1:
        if 0 <= total <= bound:
            yield (total,)
        return
    for first in range(0, min(total, bound) + 1):
        for rest in _compositions(total - first, parts - 1, bound):
            yield (first,) + rest


def _candidates(poly: IntPolynomial, bound: int):
    """Matrices with the trace and second coefficient of ``poly``; the
    determinant is checked afterwards through the full characteristic polynomial."""
    d = poly.degree
    trace = -poly.coeffs[d - 1]
    e2 = poly.coeffs[d - 2]
    offdiag = [(i, j) for i in range(d) for j in range(i + 1, d)]
    for diag in _compositions(trace, d, bound):
        minors = sum(diag[i] * diag[j] for i, j in offdiag)
        cross = minors - e2  # sum over i<j of m_ij * m_ji
        if cross < 0:
            continue
        for prods in _compositions(cross, len(offdiag), bound * bound):
            choices = [list(_factor_pairs(p, bound)) for p in prods]
            if any(not c for c in choices):
                continue
            for picks in itertools.product(*choices):
                m = [[0] * d for _ in range(d)]
                for i in range(d):
                    m[i][i] = diag[i]
                for (i, j), (x, y) in zip(offdiag, picks):
                    m[i][j], m[j][i] = x, y
                yield tuple(tuple(r) for r in m)


def matrices_with_charpoly(poly: IntPolynomial, max_entry: int | None = None) -> list[MatrixClass]:
    """Primitive nonnegative integer matrices with characteristic polynomial
    ``poly`` and entries at most ``max_entry``, one per permutation class."""
    d = poly.degree
    if d not in (2, 3):
        raise DegreeUnsupported(f"degree {d} not supported (only 2 and 3)")
    if not poly.is_monic():
        raise ValueError("polynomial must be monic")
    if max_entry is None:
        max_entry = default_max_entry(poly)
    if max_entry < 1:
        raise ValueError("max_entry must be at least 1")
    found = set()
    for m in _candidates(poly, max_entry):
        canon = canonical_matrix(m)
        if canon in found:
            continue
        if charpoly(m) == poly and is_primitive(m):
            found.add(canon)
    return [MatrixClass(m, poly) for m in sorted(found)]


def _arrangements(counts: dict) -> list[str]:
    letters = "".join(x * n for x, n in sorted(counts.items()))
    return sorted(set("".join(p) for p in itertools.permutations(letters)))


def rules_from_matrix(m) -> list[InflationRule]:
    """Every rule whose count matrix is ``m`` (entry [i][j] = copies of letter i in image j)."""
    n = len(m)
    alphabet = string.ascii_lowercase[:n]
    columns = []
    for j in range(n):
        counts = {alphabet[i]: m[i][j] for i in range(n) if m[i][j]}
        if not counts:
            raise ValueError(f"column {j} is zero; images must be nonempty")
        columns.append(_arrangements(counts))
    return [InflationRule(alphabet, imgs) for imgs in itertools.product(*columns)]


def is_aperiodic(rule: InflationRule) -> bool:
    """False when the inflation factor is rational (an integer, since the
    characteristic polynomial is monic)."""
    m = count_matrix(rule)
    cp = charpoly(m)
    ints = [int(r) for r in rational_roots(cp) if r.denominator == 1 and r > 0]
    if not ints:
        return True
    # PF eigenvalue estimate by power iteration on the primitive matrix
    n = len(m)
    v = [1.0] * n
    est = 0.0
    for _ in range(200):
        w = [sum(m[i][j] * v[j] for j in range(n)) for i in range(n)]
        est = max(w) / max(v)
        top = max(w)
        v = [x / top for x in w]
    return all(abs(est - r) > 1e-6 for r in ints)


@dataclass
class SignatureClass:
    key: str
    members: list = field(default_factory=list)
    mirror_partner_key: str = ""

    @property
    def self_mirror(self) -> bool:
        return self.key == self.mirror_partner_key


@dataclass
class Classification:
    classes: list
    failures: list  # (rule, reason)

    def class_of(self, rule: InflationRule) -> SignatureClass | None:
        for c in self.classes:
            if rule in c.members:
                return c
        return None


def classify_rules(rules, k_init: int = 4, k_max: int = 256) -> Classification:
    groups: dict[str, SignatureClass] = {}
    failures = []
    for rule in rules:
        if not is_primitive(count_matrix(rule)):
            failures.append((rule, "not primitive"))
            continue
        if not is_aperiodic(rule):
            failures.append((rule, "rational inflation factor (periodic)"))
            continue
        try:
            sig = signature(rule, k_init=k_init, k_max=k_max)
        except AsymcompError as exc:
            failures.append((rule, f"{type(exc).__name__}: {exc}"))
            continue
        key = canonicalize(sig).encoding
        cls = groups.get(key)
        if cls is None:
            cls = groups[key] = SignatureClass(key, [], canonicalize(mirror_structure(sig)).encoding)
        cls.members.append(rule)
    classes = [groups[k] for k in sorted(groups)]
    return Classification(classes, failures)


def classify(rules, k_init: int = 4, k_max: int = 256) -> list[SignatureClass]:
    """Group rules by canonical signature; failing rules are dropped (see classify_rules)."""
    return classify_rules(rules, k_init, k_max).classes
