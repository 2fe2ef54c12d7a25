"""Reproduction of the bundled classification tables.

Each fixture row gives a representative rule and its asymptotic data in
table notation.  A row passes when the representative's computed signature
is strongly isomorphic to the printed data.  Rows that do not pass are
adjudicated:

* the representative computes, but its structure differs from the printed
  one: the brute-force oracle recomputes the structure of the computed point
  set.  If the oracle agrees with the algorithm, the printed row is a
  "paper-typo candidate".
* the representative lies outside the table's family (its count matrix has
  the wrong spectrum): rules one edit away are searched for ones inside the
  family whose structure matches the printed row; each hit is checked by
  the oracle.  Hits make the row a "representative-typo candidate".

Nothing is silently corrected: the printed fixture is never modified.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .composants import signature
from .errors import AsymcompError, ParseError
from .invariants import (
    Structure,
    canonicalize,
    isomorphic_strong,
    structure_from_table,
)
from .oracle import oracle_check, verify_signature
from .poly import charpoly, matrix_power_poly, parse_polynomial
from .rules import InflationRule, count_matrix, is_primitive, parse_rule

PASS = "PASS"
FAIL = "FAIL"
PAPER_TYPO = "paper-typo candidate"
REPR_TYPO = "representative-typo candidate"

FAMILY_POWERS = (1, 2, 3)


@dataclass(frozen=True)
class FixtureRow:
    table: str
    nr: int
    repr: str
    rank: int
    osd: str
    ac_left: str
    ac_right: str
    perm: str

    @property
    def label(self) -> str:
        return f"T{self.table}.{self.nr}"

    def structure(self) -> Structure:
        return structure_from_table(self.ac_left, self.ac_right, self.perm)


@dataclass(frozen=True)
class TableFixture:
    id: str
    title: str
    base_polynomials: tuple
    rows: tuple

    def family(self) -> dict:
        """Characteristic polynomial -> (base polynomial, power)."""
        out = {}
        for b in self.base_polynomials:
            p = parse_polynomial(b)
            for n in FAMILY_POWERS:
                out.setdefault(matrix_power_poly(p, n), (b, n))
        return out


def default_fixture_path():
    return resources.files("asymcomp").joinpath("data/tables.json")


def load_fixtures(path=None) -> list[TableFixture]:
    """Parse and validate the fixture file; any defect raises ParseError."""
    src = default_fixture_path() if path is None else Path(path)
    try:
        data = json.loads(src.read_text())
        tables = []
        for t in data["tables"]:
            rows = tuple(
                FixtureRow(str(t["id"]), int(r["nr"]), r["repr"], int(r["rank"]), str(r["osd"]),
                           r["ac_left"], r["ac_right"], r["perm"])
                for r in t["rows"]
            )
            tables.append(TableFixture(str(t["id"]), t.get("title", ""), tuple(t["base_polynomials"]), rows))
    except (OSError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad fixture file {src}: {exc}", 0) from exc
    for t in tables:
        for r in t.rows:
            parse_rule(r.repr)
            s = r.structure()
            if sorted(s.perm) != list(range(s.size)):
                raise ParseError(f"{r.label}: permutation is not a bijection", 0)
    return tables


def adjudicated_polynomial(table: TableFixture) -> str:
    """The base polynomial whose family contains the representatives' spectra."""
    votes = {b: 0 for b in table.base_polynomials}
    for b in table.base_polynomials:
        p = parse_polynomial(b)
        fam = {matrix_power_poly(p, n) for n in FAMILY_POWERS}
        for r in table.rows:
            if charpoly(count_matrix(parse_rule(r.repr))) in fam:
                votes[b] += 1
    return max(table.base_polynomials, key=lambda b: votes[b])


@dataclass
class RowResult:
    row: FixtureRow
    status: str
    detail: str = ""
    computed: str = ""  # canonical encoding of the computed signature
    printed: str = ""  # canonical encoding of the printed row
    candidates: list = field(default_factory=list)
    oracle_confirmed: bool = False
    seconds: float = 0.0

    @property
    def explained(self) -> bool:
        return self.status != FAIL


def _neighbours(rule: InflationRule):
    """Rules one edit away: substitute, delete, insert, swap adjacent letters,
    or exchange two letters throughout a single image."""
    alpha = rule.alphabet
    for j, img in enumerate(rule.images):
        variants = set()
        for i in range(len(img)):
            for c in alpha:
                if c != img[i]:
                    variants.add(img[:i] + c + img[i + 1 :])
            if len(img) > 1:
                variants.add(img[:i] + img[i + 1 :])
        for i in range(len(img) + 1):
            for c in alpha:
                variants.add(img[:i] + c + img[i:])
        for i in range(len(img) - 1):
            variants.add(img[:i] + img[i + 1] + img[i] + img[i + 2 :])
        for x, y in itertools.combinations(alpha, 2):
            variants.add(img.translate(str.maketrans(x + y, y + x)))
        variants.discard(img)
        for v in sorted(variants):
            yield InflationRule(alpha, rule.images[:j] + (v,) + rule.images[j + 1 :])


def nearest_consistent_rules(rule: InflationRule, family: dict, target: Structure) -> list[InflationRule]:
    hits = []
    for cand in _neighbours(rule):
        m = count_matrix(cand)
        if charpoly(m) not in family or not is_primitive(m):
            continue
        try:
            sig = signature(cand)
        except AsymcompError:
            continue
        if isomorphic_strong(sig, target):
            hits.append(cand)
    return sorted(set(hits), key=str)


def check_row(row: FixtureRow, table: TableFixture, adjudicate: bool = True) -> RowResult:
    import time

    t0 = time.perf_counter()
    printed = row.structure()
    res = RowResult(row, FAIL, printed=canonicalize(printed).encoding)
    rule = parse_rule(row.repr)
    family = table.family()
    cp = charpoly(count_matrix(rule))
    try:
        if cp not in family:
            raise AsymcompError(f"characteristic polynomial {cp} is outside the table family")
        sig = signature(rule)
    except AsymcompError as exc:
        res.detail = f"representative not computable: {exc}"
        if adjudicate:
            hits = nearest_consistent_rules(rule, family, printed)
            confirmed = []
            for h in hits:
                rep = oracle_check(h, signature(h).points)
                if rep.ok and isomorphic_strong(rep.structure(), printed):
                    confirmed.append(str(h))
            if confirmed:
                res.status = REPR_TYPO
                res.candidates = confirmed
                res.oracle_confirmed = True
                res.detail += "; one-edit rules in the family matching the printed data: " + ", ".join(confirmed)
        res.seconds = time.perf_counter() - t0
        return res
    res.computed = canonicalize(sig).encoding
    verdict = isomorphic_strong(sig, printed)
    if verdict:
        res.status = PASS
    else:
        res.detail = f"computed structure differs ({verdict.failed})"
        if adjudicate:
            rep, same = verify_signature(sig)
            if same:
                res.status = PAPER_TYPO
                res.oracle_confirmed = True
                res.detail += "; oracle confirms the computed structure"
            else:
                res.detail += "; oracle disagrees with the computed structure"
    res.seconds = time.perf_counter() - t0
    return res


def run_tables(tables: list[TableFixture], only: str | None = None, adjudicate: bool = True) -> list[RowResult]:
    out = []
    for t in tables:
        if only is not None and t.id != str(only):
            continue
        for row in t.rows:
            out.append(check_row(row, t, adjudicate))
    return out
