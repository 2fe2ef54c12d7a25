"""Asymptotic inflation fixed points of a primitive inflation rule.

Left asymptotic pairs are found from pairs of legal k-patches that share the
first tile and differ on the second.  Inflating a pair and cutting out the
k-patches around the new left splitting point gives a self-map on such pairs;
its periodic part holds the seeds.  Seeds are placed relative to the scaling
centre (the origin) by solving the return map of each cycle.  The right side
is the left side of the reversed rule, mirrored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InconsistentPermutation, KExhausted, KTooSmall, NoSplit, PositivePosition
from .field import FieldElement
from .rules import InflationRule, PerronData, inflate, legal_factors, perron_data, reverse_rule

log = logging.getLogger(__name__)

DEFAULT_K_INIT = 4
DEFAULT_K_MAX = 256


@dataclass(frozen=True, order=True)
class SeedPair:
    p: str
    q: str

    @property
    def k(self) -> int:
        return len(self.p)

    def swapped(self) -> "SeedPair":
        return SeedPair(self.q, self.p)

    def normalized(self) -> "SeedPair":
        return self if self.p <= self.q else self.swapped()

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


@dataclass(frozen=True)
class SplitStep:
    source: SeedPair
    target: SeedPair
    delta: FieldElement
    common: int  # letters shared by the inflated words left of the new split
    right_tiles: tuple  # tiles right of the new split in each inflated word


@dataclass(frozen=True)
class PositionedPatch:
    """A word whose left edge sits at ``left``."""

    word: str
    left: FieldElement

    def vertices(self, pd: PerronData) -> list[FieldElement]:
        out = [self.left]
        x = self.left
        for c in self.word:
            x = x + pd.lengths[c]
            out.append(x)
        return out

    def right(self, pd: PerronData) -> FieldElement:
        return self.left + pd.length(self.word)

    def inflated(self, rule: InflationRule, pd: PerronData, times: int = 1) -> "PositionedPatch":
        return PositionedPatch(inflate(rule, self.word, times), self.left * pd.lam**times)

    def window(self, pd: PerronData, lo: FieldElement, hi: FieldElement) -> "PositionedPatch":
        """Tiles meeting the open interval (lo, hi)."""
        verts = self.vertices(pd)
        first = last = None
        for i, c in enumerate(self.word):
            if verts[i] < hi and verts[i + 1] > lo:
                if first is None:
                    first = i
                last = i
        if first is None:
            return PositionedPatch("", lo)
        return PositionedPatch(self.word[first : last + 1], verts[first])

    def mirrored(self, pd: PerronData) -> "PositionedPatch":
        return PositionedPatch(self.word[::-1], -self.right(pd))

    def key(self) -> tuple:
        return (self.word, self.left.coords)


@dataclass(frozen=True)
class PositionedTiling:
    """A tiling fixed by ``rule**period``, given by a seed around the origin.

    ``origin_offset`` is the distance from the seed's left edge to the
    scaling centre; it is strictly between 0 and the seed length.
    """

    seed: str
    origin_offset: FieldElement
    period: int

    @property
    def left(self) -> FieldElement:
        return -self.origin_offset

    @property
    def patch(self) -> PositionedPatch:
        return PositionedPatch(self.seed, -self.origin_offset)

    def mirrored(self, pd: PerronData) -> "PositionedTiling":
        return PositionedTiling(self.seed[::-1], pd.length(self.seed) - self.origin_offset, self.period)


def initial_pairs(rule: InflationRule, k: int) -> list[SeedPair]:
    """Unordered pairs of legal k-patches agreeing on tile 1 and differing on tile 2."""
    if k < 2:
        raise ValueError("k must be at least 2")
    by_first: dict[str, list[str]] = {}
    for w in sorted(legal_factors(rule, k)):
        by_first.setdefault(w[0], []).append(w)
    pairs = []
    for words in by_first.values():
        for i, p in enumerate(words):
            for q in words[i + 1 :]:
                if p[1] != q[1]:
                    pairs.append(SeedPair(p, q))
    return pairs


def step_pair(
    rule: InflationRule, pd: PerronData, pair: SeedPair, require: int | None = None
) -> SplitStep:
    """Inflate a pair and cut out the pair around the new left splitting point.

    Raises KTooSmall when either inflated word has fewer than ``require``
    (default k) tiles right of the new splitting point.
    """
    k = pair.k
    if require is None:
        require = k
    rp, rq = inflate(rule, pair.p), inflate(rule, pair.q)
    if rp == rq:
        raise NoSplit(f"inflated words of {pair} coincide")
    c = 0
    limit = min(len(rp), len(rq))
    while c < limit and rp[c] == rq[c]:
        c += 1
    right = (len(rp) - c, len(rq) - c)
    if min(right) < max(require, k - 1) or c == 0:
        raise KTooSmall(k, pair)
    target = SeedPair(rp[c - 1 : c - 1 + k], rq[c - 1 : c - 1 + k])
    head = len(rule[pair.p[0]])
    delta = pd.length(rp[head:c])
    return SplitStep(pair, target, delta, c, right)


@dataclass
class StableSeeds:
    k: int
    pairs: list  # oriented SeedPairs in the periodic part
    steps: dict  # SeedPair -> SplitStep
    history: list = field(default_factory=list)  # k values tried


def _stable_at(rule: InflationRule, pd: PerronData, k: int) -> tuple[list, dict]:
    oriented = []
    for pr in initial_pairs(rule, k):
        oriented += [pr, pr.swapped()]
    steps = {}
    # extraction only needs k-1 tiles; growth (k tiles) is demanded on the periodic part
    for pr in oriented:
        steps[pr] = step_pair(rule, pd, pr, require=k - 1)
    current = set(oriented)
    for _ in range(len(oriented) + 1):
        image = {steps[pr].target for pr in current}
        if image == current:
            break
        current = image
    for pr in current:
        if min(steps[pr].right_tiles) < k:
            raise KTooSmall(k, pr)
    return sorted(current), steps


def _next_k(k: int) -> int:
    return k + 1 if k < 8 else 2 * k


def stable_pairs(
    rule: InflationRule,
    pd: PerronData | None = None,
    k_init: int = DEFAULT_K_INIT,
    k_max: int = DEFAULT_K_MAX,
) -> StableSeeds:
    """Escalate k until the induced pair map has a periodic part whose seeds grow."""
    if pd is None:
        pd = perron_data(rule)
    if k_init < 2:
        raise ValueError("k_init must be at least 2")
    k = k_init
    tried = []
    while k <= k_max:
        tried.append(k)
        try:
            pairs, steps = _stable_at(rule, pd, k)
        except KTooSmall as exc:
            log.debug("k=%d too small for %s (%s)", k, rule, exc.pair)
            k = _next_k(k)
            continue
        return StableSeeds(k, pairs, {p: steps[p] for p in pairs}, tried)
    raise KExhausted(tried[-1] if tried else k_init)


def pair_cycles(stable: StableSeeds) -> list[list[SplitStep]]:
    """Decompose the periodic part into cycles of steps, deterministically ordered."""
    seen = set()
    cycles = []
    for start in stable.pairs:
        if start in seen:
            continue
        cyc = []
        pr = start
        while pr not in seen:
            seen.add(pr)
            cyc.append(stable.steps[pr])
            pr = stable.steps[pr].target
        cycles.append(cyc)
    return cycles


def position_orbit(pd: PerronData, orbit: list[SplitStep]) -> list[FieldElement]:
    """Splitting positions s_i with s_{i+1} = lam*s_i + delta_i around the cycle."""
    lam = pd.lam
    m = len(orbit)
    acc = pd.field.zero
    for step in orbit:
        acc = acc * lam + step.delta
    s = [acc / (pd.field.one - lam**m)]
    for step in orbit[:-1]:
        s.append(lam * s[-1] + step.delta)
    for x in s:
        if x.sign() > 0:
            raise PositivePosition(f"splitting point at {x.approx()} > 0")
    return s


def grow_tiling(rule: InflationRule, pd: PerronData, t: PositionedTiling, radius) -> PositionedPatch:
    """Inflate the seed by rule**period until it covers [-radius, radius]."""
    patch = t.patch
    radius = pd.field(radius)
    while not (patch.left <= -radius and patch.right(pd) >= radius):
        patch = patch.inflated(rule, pd, t.period)
    return patch


def central_patch(rule: InflationRule, pd: PerronData, t: PositionedTiling) -> PositionedPatch:
    """Tiles meeting (-r, r), r the smallest tile length; identifies the tiling."""
    r = pd.min_length
    return grow_tiling(rule, pd, t, r).window(pd, -r, r)


def equal_tilings(rule: InflationRule, pd: PerronData, t1: PositionedTiling, t2: PositionedTiling) -> bool:
    return central_patch(rule, pd, t1).key() == central_patch(rule, pd, t2).key()


@dataclass
class AsymptoticSet:
    """One side's asymptotic fixed points: deduplicated tilings, the partition
    of mutually asymptotic ones, and the inflation permutation."""

    tilings: list
    partition: list  # blocks of indices
    permutation: list  # index -> index of the inflated tiling
    k_used: int
    positions: list  # splitting positions of every seed pair
    stable: StableSeeds
    keys: list


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def blocks(self) -> list[tuple]:
        groups: dict[int, list] = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), []).append(i)
        return sorted(tuple(g) for g in groups.values())


def left_asymptotic_set(
    rule: InflationRule,
    pd: PerronData | None = None,
    k_init: int = DEFAULT_K_INIT,
    k_max: int = DEFAULT_K_MAX,
) -> AsymptoticSet:
    if pd is None:
        pd = perron_data(rule)
    stable = stable_pairs(rule, pd, k_init, k_max)
    cycles = pair_cycles(stable)
    placed = {}  # oriented pair -> (tiling, split position)
    positions = []
    for cyc in cycles:
        s = position_orbit(pd, cyc)
        positions += s
        for step, si in zip(cyc, s):
            pr = step.source
            offset = pd.lengths[pr.p[0]] - si  # left edge sits at s - len(first tile)
            placed[pr] = PositionedTiling(pr.p, offset, len(cyc))
    key_index: dict = {}
    raw_keys = {}
    for pr, t in placed.items():
        key = central_patch(rule, pd, t).key()
        raw_keys[pr] = key
        if key not in key_index:
            key_index[key] = t
    keys = sorted(key_index, key=_key_order)
    index = {key: i for i, key in enumerate(keys)}
    uf = _UnionFind(len(keys))
    perm: dict[int, int] = {}
    for pr in placed:
        i = index[raw_keys[pr]]
        uf.union(i, index[raw_keys[pr.swapped()]])
        j = index[raw_keys[stable.steps[pr].target]]
        if perm.setdefault(i, j) != j:
            raise InconsistentPermutation(f"tiling {i} inflates to both {perm[i]} and {j}")
    tilings = [key_index[key] for key in keys]
    periods = _cycle_lengths([perm[i] for i in range(len(keys))])
    tilings = [PositionedTiling(t.seed, t.origin_offset, periods[i]) for i, t in enumerate(tilings)]
    return AsymptoticSet(
        tilings,
        uf.blocks(),
        [perm[i] for i in range(len(keys))],
        stable.k,
        positions,
        stable,
        keys,
    )


def _key_order(key: tuple):
    word, coords = key
    return (word, coords)


def _cycle_lengths(perm: list[int]) -> list[int]:
    out = [0] * len(perm)
    for i in range(len(perm)):
        n, j = 1, perm[i]
        while j != i:
            j = perm[j]
            n += 1
        out[i] = n
    return out


def cycles_of(perm: list[int]) -> list[tuple]:
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


@dataclass
class AsymptoticSignature:
    rule: InflationRule
    pd: PerronData
    points: list  # PositionedTiling, canonically ordered
    left_partition: list  # blocks (tuples of indices), singletons included
    right_partition: list
    permutation: list
    orbits: list
    k_left: int
    k_right: int
    positions: list  # splitting positions from both runs, each in its own frame
    keys: list

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def k_used(self) -> int:
        return max(self.k_left, self.k_right)

    def per_orbit(self) -> list[dict]:
        out = []
        for orb in self.orbits:
            members = set(orb)
            out.append(
                {
                    "orbit": orb,
                    "left": [tuple(i for i in b if i in members) for b in self.left_partition if members & set(b)],
                    "right": [tuple(i for i in b if i in members) for b in self.right_partition if members & set(b)],
                }
            )
        return out


def _complete(blocks: Iterable[Iterable[int]], n: int) -> list[tuple]:
    seen = set()
    out = []
    for b in blocks:
        b = tuple(sorted(b))
        seen.update(b)
        out.append(b)
    out += [(i,) for i in range(n) if i not in seen]
    return sorted(out)


def signature(
    rule: InflationRule,
    k_init: int = DEFAULT_K_INIT,
    k_max: int = DEFAULT_K_MAX,
) -> AsymptoticSignature:
    """All asymptotic inflation fixed points with both partitions and the inflation action."""
    pd = perron_data(rule)
    left = left_asymptotic_set(rule, pd, k_init, k_max)
    rev = reverse_rule(rule)
    right_raw = left_asymptotic_set(rev, pd, k_init, k_max)
    right_tilings = [t.mirrored(pd) for t in right_raw.tilings]
    right_keys = [PositionedPatch(w, pd.field.element(c)).mirrored(pd).key() for w, c in right_raw.keys]

    table: dict = {}
    for key, t in zip(left.keys, left.tilings):
        table[key] = t
    for key, t in zip(right_keys, right_tilings):
        table.setdefault(key, t)
    keys = sorted(table, key=_key_order)
    index = {key: i for i, key in enumerate(keys)}
    n = len(keys)
    lmap = [index[key] for key in left.keys]
    rmap = [index[key] for key in right_keys]

    perm: dict[int, int] = {}
    for i, j in enumerate(left.permutation):
        perm[lmap[i]] = lmap[j]
    for i, j in enumerate(right_raw.permutation):
        a, b = rmap[i], rmap[j]
        if perm.setdefault(a, b) != b:
            raise InconsistentPermutation(f"left and right actions disagree on point {a}")
    permutation = [perm[i] for i in range(n)]
    periods = _cycle_lengths(permutation)
    points = [PositionedTiling(table[key].seed, table[key].origin_offset, periods[i]) for i, key in enumerate(keys)]

    left_part = _complete(([lmap[i] for i in b] for b in left.partition), n)
    right_part = _complete(([rmap[i] for i in b] for b in right_raw.partition), n)
    positions = list(left.positions) + list(right_raw.positions)
    return AsymptoticSignature(
        rule=rule,
        pd=pd,
        points=points,
        left_partition=left_part,
        right_partition=right_part,
        permutation=permutation,
        orbits=sorted(cycles_of(permutation)),
        k_left=left.k_used,
        k_right=right_raw.k_used,
        positions=positions,
        keys=keys,
    )
