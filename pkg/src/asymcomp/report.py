"""Serializable analysis reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .composants import AsymptoticSignature
from .invariants import canonicalize, format_cycles

DIGITS = 6


def _one_based(blocks) -> list:
    return [[i + 1 for i in b] for b in blocks]


@dataclass
class SeedRecord:
    seed: str
    period: int
    origin_offset: tuple  # Fraction coordinates in the power basis of lambda
    approx: str = field(default="", compare=False)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "period": self.period,
            "origin_offset": [str(c) for c in self.origin_offset],
            "origin_offset_approx": self.approx,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SeedRecord":
        return cls(d["seed"], int(d["period"]), tuple(Fraction(c) for c in d["origin_offset"]), d.get("origin_offset_approx", ""))


@dataclass
class Report:
    rule: str
    minpoly: str
    lam_approx: str
    n_points: int
    left_blocks: list  # non-singleton blocks, 1-based
    right_blocks: list
    perm_cycles: list  # nontrivial cycles, 1-based
    orbits: list  # all cycles including fixed points
    per_orbit: list
    k_used: int
    seeds: list
    canonical_key: str
    timing: float = field(default=0.0, compare=False)

    @classmethod
    def from_signature(cls, sig: AsymptoticSignature, timing: float = 0.0) -> "Report":
        pd = sig.pd
        seeds = [
            SeedRecord(t.seed, t.period, tuple(t.origin_offset.coords), t.origin_offset.approx(DIGITS))
            for t in sig.points
        ]
        per_orbit = [
            {"orbit": [i + 1 for i in o["orbit"]], "left": _one_based(b for b in o["left"] if len(b) > 1),
             "right": _one_based(b for b in o["right"] if len(b) > 1)}
            for o in sig.per_orbit()
        ]
        return cls(
            rule=str(sig.rule),
            minpoly=str(pd.field.minpoly),
            lam_approx=pd.lam.approx(DIGITS),
            n_points=sig.size,
            left_blocks=_one_based(b for b in sig.left_partition if len(b) > 1),
            right_blocks=_one_based(b for b in sig.right_partition if len(b) > 1),
            perm_cycles=[[i + 1 for i in c] for c in sig.orbits if len(c) > 1],
            orbits=[[i + 1 for i in c] for c in sig.orbits],
            per_orbit=per_orbit,
            k_used=sig.k_used,
            seeds=seeds,
            canonical_key=canonicalize(sig).encoding,
            timing=timing,
        )

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "minpoly": self.minpoly,
            "lambda_approx": self.lam_approx,
            "n_points": self.n_points,
            "left_blocks": self.left_blocks,
            "right_blocks": self.right_blocks,
            "perm_cycles": self.perm_cycles,
            "orbits": self.orbits,
            "per_orbit": self.per_orbit,
            "k_used": self.k_used,
            "seeds": [s.to_dict() for s in self.seeds],
            "canonical_key": self.canonical_key,
            "timing": round(self.timing, 4),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(
            rule=d["rule"],
            minpoly=d["minpoly"],
            lam_approx=d.get("lambda_approx", ""),
            n_points=int(d["n_points"]),
            left_blocks=d["left_blocks"],
            right_blocks=d["right_blocks"],
            perm_cycles=d["perm_cycles"],
            orbits=d["orbits"],
            per_orbit=d["per_orbit"],
            k_used=int(d["k_used"]),
            seeds=[SeedRecord.from_dict(s) for s in d["seeds"]],
            canonical_key=d["canonical_key"],
            timing=float(d.get("timing", 0.0)),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        blocks = lambda bs: ",".join("[" + ",".join(map(str, b)) + "]" for b in bs) or "-"
        cycles = "".join("(" + ",".join(map(str, c)) + ")" for c in self.perm_cycles) or "()"
        lines = [
            f"rule        {self.rule}",
            f"lambda      {self.lam_approx}  (root of {self.minpoly})",
            f"points      {self.n_points}",
            f"AC left     {blocks(self.left_blocks)}",
            f"AC right    {blocks(self.right_blocks)}",
            f"perm        {cycles}",
            f"k used      {self.k_used}",
            f"canonical   {self.canonical_key}",
            "seeds:",
        ]
        for i, s in enumerate(self.seeds, 1):
            lines.append(f"  {i:>2}  {s.seed:<12} period {s.period:<3} origin at {s.approx} from left edge")
        return "\n".join(lines)


def cycles_text(perm) -> str:
    return format_cycles(perm) or "()"
