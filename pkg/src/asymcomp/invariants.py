"""Comparison of asymptotic-composant structures up to relabelling.

A structure is a finite set {0..n-1} with two partitions (left/right
asymptotic classes) and a permutation (the inflation action).  Two
structures are strongly isomorphic when a bijection intertwines the
permutations and carries both partitions over; weak isomorphism only
compares the partitions as abstract set partitions.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ParseError

STRONG = "strong"
WEAK = "weak"

OBSTRUCTION = "obstruction_found"
NO_OBSTRUCTION = "no_obstruction"

MIRROR_CAUTION = (
    "no obstruction found; this does not prove that the space is MLD to its mirror image"
)


@dataclass(frozen=True)
class Structure:
    size: int
    left: tuple  # complete partition, blocks of 0-based indices
    right: tuple
    perm: tuple  # perm[i] = image of i

    def __post_init__(self):
        for part in (self.left, self.right):
            flat = sorted(i for b in part for i in b)
            if flat != list(range(self.size)):
                raise ValueError(f"not a partition of {self.size} points: {part}")
        if sorted(self.perm) != list(range(self.size)):
            raise ValueError(f"not a permutation: {self.perm}")

    @classmethod
    def build(cls, size: int, left, right, perm) -> "Structure":
        return cls(size, _complete(left, size), _complete(right, size), tuple(perm))

    def mirrored(self) -> "Structure":
        return Structure(self.size, self.right, self.left, self.perm)

    def cycles(self) -> list[tuple]:
        return cycles_of(self.perm)

    def relabeled(self, phi: Sequence[int]) -> "Structure":
        """Image under the bijection i -> phi[i]."""
        perm = [0] * self.size
        for i, j in enumerate(self.perm):
            perm[phi[i]] = phi[j]
        return Structure.build(
            self.size,
            [[phi[i] for i in b] for b in self.left],
            [[phi[i] for i in b] for b in self.right],
            perm,
        )


def _complete(blocks, n: int) -> tuple:
    seen = set()
    out = []
    for b in blocks:
        b = tuple(sorted(b))
        if not b:
            continue
        seen.update(b)
        out.append(b)
    out += [(i,) for i in range(n) if i not in seen]
    return tuple(sorted(out))


def cycles_of(perm: Sequence[int]) -> list[tuple]:
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append(tuple(cyc))
    return out


def as_structure(obj) -> Structure:
    if isinstance(obj, Structure):
        return obj
    return Structure.build(obj.size, obj.left_partition, obj.right_partition, obj.permutation)


_BLOCK = re.compile(r"\[([\d,\s]*)\]")
_CYCLE = re.compile(r"\(([\d,\s]*)\)")


def _parse_groups(text: str, pattern: re.Pattern, what: str) -> list[list[int]]:
    text = text.strip()
    if text in ("", "-", "()", "[]"):
        return []
    groups = []
    pos = 0
    for m in pattern.finditer(text):
        gap = text[pos : m.start()].strip().strip(",")
        if gap:
            raise ParseError(f"bad {what} list {text!r}", pos)
        groups.append([int(x) for x in m.group(1).replace(" ", "").split(",") if x])
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"bad {what} list {text!r}", pos)
    return groups


def structure_from_table(ac_left: str, ac_right: str, perm: str) -> Structure:
    """Table notation: 1-based blocks ``[1,2],[3,4]`` and cycles ``(1,3)(2,4)``;
    singletons and fixed points are omitted, the size is the largest index."""
    lb = _parse_groups(ac_left, _BLOCK, "block")
    rb = _parse_groups(ac_right, _BLOCK, "block")
    cyc = _parse_groups(perm, _CYCLE, "cycle")
    n = max([i for g in lb + rb + cyc for i in g], default=0)
    seen = [i for c in cyc for i in c]
    if len(seen) != len(set(seen)) or 0 in seen:
        raise ParseError(f"bad cycle list {perm!r}: indices must be distinct and positive", 0)
    p = list(range(n))
    for c in cyc:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a - 1] = b - 1
    return Structure.build(n, [[i - 1 for i in g] for g in lb], [[i - 1 for i in g] for g in rb], p)


def format_blocks(blocks, one_based: bool = True) -> str:
    off = 1 if one_based else 0
    return ",".join("[" + ",".join(str(i + off) for i in b) + "]" for b in blocks if len(b) > 1)


def format_cycles(perm: Sequence[int], one_based: bool = True) -> str:
    off = 1 if one_based else 0
    out = []
    for c in cycles_of(perm):
        if len(c) > 1:
            k = c.index(min(c))
            c = c[k:] + c[:k]
            out.append("(" + ",".join(str(i + off) for i in c) + ")")
    return "".join(out)


# canonical form


@dataclass(frozen=True)
class CanonicalSignature:
    size: int
    left_blocks: tuple
    right_blocks: tuple
    perm_cycles: tuple
    orbit_blocks: tuple
    encoding: str
    labeling: tuple = field(compare=False, default=())  # original index -> canonical index

    def __str__(self) -> str:
        return self.encoding


def _cycle_invariant(s: Structure, cyc: tuple, lsize: dict, rsize: dict) -> tuple:
    return (len(cyc), tuple(sorted((lsize[i], rsize[i]) for i in cyc)))


def _candidate_labelings(s: Structure):
    lsize = {i: len(b) for b in s.left for i in b}
    rsize = {i: len(b) for b in s.right for i in b}
    groups: dict = {}
    for cyc in s.cycles():
        groups.setdefault(_cycle_invariant(s, cyc, lsize, rsize), []).append(cyc)
    ordered = [groups[k] for k in sorted(groups)]

    def arrangements(group):
        for order in itertools.permutations(group):
            for rots in itertools.product(*(range(len(c)) for c in order)):
                yield [c[r:] + c[:r] for c, r in zip(order, rots)]

    for combo in itertools.product(*(list(arrangements(g)) for g in ordered)):
        seq = [i for arr in combo for cyc in arr for i in cyc]
        phi = [0] * s.size
        for label, i in enumerate(seq):
            phi[i] = label
        yield phi


def _blocks_under(blocks, phi) -> tuple:
    return tuple(sorted(tuple(sorted(phi[i] for i in b)) for b in blocks if len(b) > 1))


def canonicalize(sig) -> CanonicalSignature:
    """Relabelling-invariant form; minimal over cycle-respecting labellings."""
    s = as_structure(sig)
    best = None
    best_phi = None
    for phi in _candidate_labelings(s):
        cand = (_blocks_under(s.left, phi), _blocks_under(s.right, phi))
        if best is None or cand < best:
            best, best_phi = cand, phi
    if best_phi is None:  # empty structure
        best, best_phi = ((), ()), []
    relabeled = s.relabeled(best_phi) if s.size else s
    cycles = tuple(c for c in (_rot_min(c) for c in relabeled.cycles()) if len(c) > 1)
    orbits = tuple(sorted(_rot_min(c) for c in relabeled.cycles()))
    enc = "n={}|L={}|R={}|P={}".format(
        s.size,
        format_blocks(best[0]),
        format_blocks(best[1]),
        format_cycles(relabeled.perm),
    )
    return CanonicalSignature(s.size, best[0], best[1], cycles, orbits, enc, tuple(best_phi))


def _rot_min(c: tuple) -> tuple:
    k = c.index(min(c))
    return c[k:] + c[:k]


# comparators


@dataclass
class Verdict:
    outcome: str
    mode: str
    witness: tuple | None = None  # index bijection a -> b for no_obstruction
    failed: str | None = None  # first failed condition
    detail: str = ""
    notes: list = field(default_factory=list)

    @property
    def obstruction(self) -> bool:
        return self.outcome == OBSTRUCTION

    def __bool__(self) -> bool:
        return self.outcome == NO_OBSTRUCTION


def _block_of(part) -> dict:
    return {i: bi for bi, b in enumerate(part) for i in b}


def _profile(part) -> tuple:
    return tuple(sorted(len(b) for b in part))


def _orbit_profiles(s: Structure, part) -> Counter:
    bl = _block_of(part)
    out = Counter()
    for orb in s.cycles():
        sizes = Counter(bl[i] for i in orb)
        out[(len(orb), tuple(sorted(sizes.values())))] += 1
    return out


def check_witness(a, b, phi: Sequence[int]) -> str | None:
    """Name of the first violated condition for ``phi``, or None."""
    a, b = as_structure(a), as_structure(b)
    if a.size != b.size or sorted(phi) != list(range(b.size)):
        return "S"
    if any(phi[a.perm[i]] != b.perm[phi[i]] for i in range(a.size)):
        return "permutation"
    for name, pa, pb in (("P_L", a.left, b.left), ("P_R", a.right, b.right)):
        target = {tuple(sorted(x)) for x in pb}
        if {tuple(sorted(phi[i] for i in blk)) for blk in pa} != target:
            return name
        # per-orbit restrictions follow, but are checked on their own as well
        for orb in a.cycles():
            img = {phi[i] for i in orb}
            ra = {frozenset(phi[i] for i in blk if i in orb) for blk in pa} - {frozenset()}
            rb = {frozenset(j for j in blk if j in img) for blk in pb} - {frozenset()}
            if ra != rb:
                return name.replace("_", "^j_")
    return None


def _search(a: Structure, b: Structure) -> list | None:
    la, ra = _block_of(a.left), _block_of(a.right)
    lb, rb = _block_of(b.left), _block_of(b.right)
    ca = sorted(a.cycles(), key=len, reverse=True)
    cb = b.cycles()
    phi: dict[int, int] = {}
    used = set()

    def consistent(pairs) -> bool:
        for x, y in pairs:
            for x2, y2 in phi.items():
                if (la[x] == la[x2]) != (lb[y] == lb[y2]):
                    return False
                if (ra[x] == ra[x2]) != (rb[y] == rb[y2]):
                    return False
        return True

    def extend(idx: int) -> bool:
        if idx == len(ca):
            return True
        cyc = ca[idx]
        for ci, target in enumerate(cb):
            if ci in used or len(target) != len(cyc):
                continue
            for r in range(len(target)):
                rot = target[r:] + target[:r]
                pairs = list(zip(cyc, rot))
                # check within the new cycle as well as against assigned points
                ok = True
                added = []
                for x, y in pairs:
                    if not consistent([(x, y)]):
                        ok = False
                        break
                    phi[x] = y
                    added.append(x)
                if ok:
                    used.add(ci)
                    if extend(idx + 1):
                        return True
                    used.discard(ci)
                for x in added:
                    del phi[x]
        return False

    if extend(0):
        return [phi[i] for i in range(a.size)]
    return None


def isomorphic_strong(a, b) -> Verdict:
    """Search for a bijection intertwining the inflation permutations and
    carrying left and right partitions onto each other."""
    a, b = as_structure(a), as_structure(b)
    if a.size != b.size:
        return Verdict(OBSTRUCTION, STRONG, failed="S", detail=f"|S| = {a.size} vs {b.size}")
    ta = sorted(len(c) for c in a.cycles())
    tb = sorted(len(c) for c in b.cycles())
    if ta != tb:
        return Verdict(OBSTRUCTION, STRONG, failed="permutation", detail=f"cycle types {ta} vs {tb}")
    checks = (
        ("P_L", _profile(a.left), _profile(b.left)),
        ("P^j_L", _orbit_profiles(a, a.left), _orbit_profiles(b, b.left)),
        ("P_R", _profile(a.right), _profile(b.right)),
        ("P^j_R", _orbit_profiles(a, a.right), _orbit_profiles(b, b.right)),
    )
    for name, x, y in checks:
        if x != y:
            return Verdict(OBSTRUCTION, STRONG, failed=name, detail=f"{name} profiles differ")
    phi = _search(a, b)
    if phi is None:
        return Verdict(
            OBSTRUCTION,
            STRONG,
            failed="joint",
            detail="no bijection respects the permutation and both partitions simultaneously",
        )
    bad = check_witness(a, b, phi)
    if bad is not None:  # pragma: no cover - search and check disagree
        raise AssertionError(f"witness fails {bad}")
    return Verdict(NO_OBSTRUCTION, STRONG, witness=tuple(phi))


def isomorphic_weak(a, b) -> Verdict:
    """Compare only P_L with P_L and P_R with P_R as abstract partitions."""
    a, b = as_structure(a), as_structure(b)
    if a.size != b.size:
        return Verdict(OBSTRUCTION, WEAK, failed="S", detail=f"|S| = {a.size} vs {b.size}")
    for name, pa, pb in (("P_L", a.left, b.left), ("P_R", a.right, b.right)):
        if _profile(pa) != _profile(pb):
            return Verdict(OBSTRUCTION, WEAK, failed=name, detail=f"{name} block sizes {_profile(pa)} vs {_profile(pb)}")
    return Verdict(NO_OBSTRUCTION, WEAK)


def compare(a, b, mode: str = STRONG) -> Verdict:
    if mode == STRONG:
        return isomorphic_strong(a, b)
    if mode == WEAK:
        return isomorphic_weak(a, b)
    raise ValueError(f"unknown mode {mode!r}")


def mirror_structure(sig) -> Structure:
    return as_structure(sig).mirrored()


def mirror_test(rule, mode: str = STRONG, **kwargs) -> Verdict:
    """Compare a rule's structure with its reflection."""
    from .composants import signature
    from .rules import parse_rule

    if isinstance(rule, str):
        rule = parse_rule(rule)
    s = as_structure(signature(rule, **kwargs))
    v = compare(s, s.mirrored(), mode)
    if not v.obstruction:
        v.notes.append(MIRROR_CAUTION)
    if mode == STRONG:
        v.notes.append("strong mode assumes pure-point spectrum; use weak mode otherwise")
    return v
