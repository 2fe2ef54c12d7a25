"""Brute-force half-line oracle.

Independent check of an asymptotic signature.  It starts from a list of
candidate tilings, each a seed fixed by some power of the inflation, and
grows them to large patches.  Every relation is then read off those patches
directly:

* left (right) asymptoticity of two tilings fixed by rho**N holds iff they
  agree on every tile meeting [-lam**N * L, -L] (resp. [L, lam**N * L]).
  Agreement there propagates to the whole half-line (-inf, -L] under rho**N,
  so a positive answer is a proof.  A negative answer means the tilings do not
  agree beyond distance L from the origin.
* the inflation action is found by inflating a grown patch once and
  looking it up among the candidates on [-L, L].

Nothing here uses seed pairs, splitting points or the pair map.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field

from .composants import AsymptoticSignature, PositionedTiling, cycles_of
from .field import FieldElement
from .rules import InflationRule, PerronData, inflate, legal_factors, perron_data

DEFAULT_TILE_LENGTHS = 50
# skip completeness search over rho**n fixed points once lam**n exceeds this
COMPLETENESS_SCALE_CAP = 150.0


class GrownPatch:
    """A long positioned word with float vertex positions and exact lookups."""

    def __init__(self, pd: PerronData, word: str, left: FieldElement):
        self.pd = pd
        self.word = word
        self.left = left
        lens = {x: float(v) for x, v in pd.lengths.items()}
        self.cum = list(itertools.accumulate((lens[c] for c in word), initial=float(left)))

    def vertex(self, i: int) -> FieldElement:
        prefix = self.word[:i]
        acc = self.left
        for x, ell in self.pd.lengths.items():
            n = prefix.count(x)
            if n:
                acc = acc + ell * n
        return acc

    def covers(self, lo: float, hi: float) -> bool:
        return self.cum[0] < lo and self.cum[-1] > hi

    def _last_at_most(self, x: FieldElement, strict: bool) -> int:
        """Largest vertex index i with v_i <= x (or < x when ``strict``)."""
        xf = float(x)
        tol = 1e-7 * max(1.0, abs(xf))
        i = bisect.bisect_right(self.cum, xf + tol) - 1
        # walk back over vertices that float cannot separate from x
        while i >= 0 and self.cum[i] > xf - tol:
            v = self.vertex(i)
            if v < x or (not strict and v == x):
                break
            i -= 1
        return i

    def window(self, lo: FieldElement, hi: FieldElement) -> tuple:
        """Exact key of the tiles meeting the open interval (lo, hi)."""
        first = self._last_at_most(lo, strict=False)
        last = self._last_at_most(hi, strict=True)
        if first < 0 or last >= len(self.word):
            raise ValueError("patch does not cover the window")
        return (self.word[first : last + 1], self.vertex(first).coords)


def _trim(pd: PerronData, word: str, left: FieldElement, lo: float, hi: float) -> tuple[str, FieldElement]:
    lens = {x: float(v) for x, v in pd.lengths.items()}
    x = float(left)
    first, last = 0, len(word)
    for i, c in enumerate(word):
        nxt = x + lens[c]
        if nxt < lo:
            first = i + 1
        if x > hi:
            last = i
            break
        x = nxt
    if first:
        left = left + pd.length(word[:first])
    return word[first:last], left


def grow(rule: InflationRule, pd: PerronData, t: PositionedTiling, radius: float) -> GrownPatch:
    """Patch of the rho**period fixed point ``t`` covering [-radius, radius].

    Inflation runs one rho at a time; after each step the patch is cut down to
    the tiles that can still reach the target window, so its size stays
    proportional to ``radius``.
    """
    lam = float(pd.lam)
    margin = 2 * float(pd.max_length)
    word, left = t.seed, -t.origin_offset
    lo, hi = float(left), float(left + pd.length(word))
    while not (lo < -radius - margin and hi > radius + margin):
        for j in range(t.period):
            word = inflate(rule, word)
            left = left * pd.lam
            # window needed now so that the remaining steps still cover the target
            reach = (radius + margin) / lam ** (t.period - 1 - j) + margin
            word, left = _trim(pd, word, left, -reach, reach)
        lo, hi = float(left), float(left + pd.length(word))
    return GrownPatch(pd, word, left)


def is_fixed(rule: InflationRule, pd: PerronData, t: PositionedTiling) -> bool:
    """Does rho**period reproduce the seed on its own span?"""
    left = -t.origin_offset
    big = GrownPatch(pd, inflate(rule, t.seed, t.period), left * pd.lam**t.period)
    i = big._last_at_most(left, strict=False)
    if i < 0 or big.vertex(i) != left:
        return False
    return big.word[i : i + len(t.seed)] == t.seed


def fixed_points(rule: InflationRule, pd: PerronData, n: int) -> list[PositionedTiling]:
    """Every tiling fixed by rho**n, as a seed around the origin.

    Either the origin is a vertex between legal neighbours x|y with rho**n
    keeping x last and y first, or it lies inside a tile a that reappears
    inside rho**n(a) at the same relative position.
    """
    out = []
    power = {x: inflate(rule, x, n) for x in rule.alphabet}
    for w in sorted(legal_factors(rule, 2)):
        x, y = w
        if power[x][-1] == x and power[y][0] == y:
            out.append(PositionedTiling(w, pd.lengths[x], n))
    scale = pd.lam**n - 1
    for a in rule.alphabet:
        img = power[a]
        for i, c in enumerate(img):
            if c != a:
                continue
            offset = pd.length(img[:i]) / scale
            if offset.sign() > 0 and offset < pd.lengths[a]:
                out.append(PositionedTiling(a, offset, n))
    return out


@dataclass
class OracleReport:
    size: int
    left_blocks: list  # non-singleton blocks, 0-based
    right_blocks: list
    permutation: list
    fixed: list  # per point: rho**period reproduces the seed
    distinct: bool
    missing: list = field(default_factory=list)  # asymptotic fixed points absent from the input
    completeness_powers: list = field(default_factory=list)
    tile_lengths: int = DEFAULT_TILE_LENGTHS

    @property
    def closed(self) -> bool:
        return None not in self.permutation and sorted(self.permutation) == list(range(self.size))

    @property
    def ok(self) -> bool:
        return all(self.fixed) and self.distinct and self.closed and not self.missing

    def structure(self):
        from .invariants import Structure

        return Structure.build(self.size, self.left_blocks, self.right_blocks, self.permutation)


def _blocks(n: int, related) -> list:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, j in related:
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(g) for g in groups.values() if len(g) > 1)


def _side_keys(patch: GrownPatch, pd: PerronData, n: int, base: FieldElement) -> tuple:
    far = base * pd.lam**n
    return patch.window(-far, -base), patch.window(base, far)


def half_line_relations(
    rule: InflationRule,
    pd: PerronData,
    points: list,
    tile_lengths: int = DEFAULT_TILE_LENGTHS,
) -> tuple[list, list]:
    """Pairs (i, j) that are left, resp. right, asymptotic."""
    base = pd.max_length * tile_lengths
    lam = float(pd.lam)
    n_max = math.lcm(*(t.period for t in points)) if points else 1
    patches = [grow(rule, pd, t, float(base) * lam**n_max) for t in points]
    left, right = [], []
    for i, j in itertools.combinations(range(len(points)), 2):
        n = math.lcm(points[i].period, points[j].period)
        li, ri = _side_keys(patches[i], pd, n, base)
        lj, rj = _side_keys(patches[j], pd, n, base)
        if li == lj:
            left.append((i, j))
        if ri == rj:
            right.append((i, j))
    return left, right


def inflation_action(
    rule: InflationRule, pd: PerronData, points: list, tile_lengths: int = DEFAULT_TILE_LENGTHS
) -> list:
    """Index of rho(t) among ``points`` for each t, by direct inflation
    (None where the image is missing)."""
    base = pd.max_length * tile_lengths
    radius = float(base) * float(pd.lam)
    patches = [grow(rule, pd, t, radius) for t in points]
    central = [p.window(-base, base) for p in patches]
    lookup: dict = {}
    for i, key in enumerate(central):
        lookup.setdefault(key, []).append(i)
    perm = []
    for p in patches:
        img = GrownPatch(pd, inflate(rule, p.word), p.left * pd.lam)
        hits = lookup.get(img.window(-base, base), [])
        # None: the inflated tiling is not among the candidates
        perm.append(hits[0] if len(hits) == 1 else None)
    return perm


def _completeness(rule, pd, points, tile_lengths) -> tuple[list, list]:
    """Search small-power fixed points for asymptotic tilings not in ``points``."""
    lam = float(pd.lam)
    n_all = math.lcm(*(t.period for t in points)) if points else 1
    powers = [n for n in range(1, n_all + 1) if n_all % n == 0 and lam**n <= COMPLETENESS_SCALE_CAP]
    if not powers:
        return [], []
    n = max(powers)
    covered = [m for m in powers if n % m == 0]
    base = pd.max_length * tile_lengths
    r_small = pd.min_length
    known = set()
    for t in points:
        if n % t.period == 0:
            known.add(grow(rule, pd, t, float(r_small)).window(-r_small, r_small))
    cands = fixed_points(rule, pd, n)
    by_left: dict = {}
    by_right: dict = {}
    central = []
    for t in cands:
        g = grow(rule, pd, t, float(base) * lam**n)
        c = g.window(-r_small, r_small)
        central.append(c)
        lk, rk = _side_keys(g, pd, n, base)
        by_left.setdefault(lk, set()).add(c)
        by_right.setdefault(rk, set()).add(c)
    asymptotic = set()
    for group in itertools.chain(by_left.values(), by_right.values()):
        if len(group) > 1:
            asymptotic |= group
    missing = [t for t, c in zip(cands, central) if c in asymptotic and c not in known]
    uniq, seen = [], set()
    for t, c in zip(cands, central):
        if t in missing and c not in seen:
            seen.add(c)
            uniq.append(t)
    return uniq, covered


def oracle_check(
    rule: InflationRule,
    points: list,
    tile_lengths: int = DEFAULT_TILE_LENGTHS,
    completeness: bool = True,
) -> OracleReport:
    """Rebuild partitions and permutation of ``points`` from grown patches."""
    pd = perron_data(rule)
    fixed = [is_fixed(rule, pd, t) for t in points]
    r = pd.min_length
    centres = [grow(rule, pd, t, float(r)).window(-r, r) for t in points]
    distinct = len(set(centres)) == len(centres)
    left, right = half_line_relations(rule, pd, points, tile_lengths)
    perm = inflation_action(rule, pd, points, tile_lengths)
    missing, powers = _completeness(rule, pd, points, tile_lengths) if completeness else ([], [])
    n = len(points)
    return OracleReport(
        size=n,
        left_blocks=_blocks(n, left),
        right_blocks=_blocks(n, right),
        permutation=perm,
        fixed=fixed,
        distinct=distinct,
        missing=missing,
        completeness_powers=powers,
        tile_lengths=tile_lengths,
    )


def verify_signature(sig: AsymptoticSignature, tile_lengths: int = DEFAULT_TILE_LENGTHS, completeness: bool = True):
    """Oracle report for the points of ``sig``, plus whether it matches exactly
    (same indices, no relabelling)."""
    rep = oracle_check(sig.rule, sig.points, tile_lengths, completeness)
    left = [b for b in sig.left_partition if len(b) > 1]
    right = [b for b in sig.right_partition if len(b) > 1]
    same = rep.left_blocks == left and rep.right_blocks == right and rep.permutation == list(sig.permutation)
    return rep, same and rep.ok


def oracle_cycles(rep: OracleReport) -> list:
    return sorted(cycles_of(rep.permutation))
