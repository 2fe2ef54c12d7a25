"""Static SVG pictures of asymptotic seed pairs and their inflations."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .composants import left_asymptotic_set, pair_cycles, position_orbit
from .rules import InflationRule, inflate, perron_data, reverse_rule

PALETTE = ["#f4c542", "#5fa8d3", "#e07a5f", "#81b29a", "#b388eb", "#f2a65a"]
ROW_H = 26
GAP = 8
BLOCK_GAP = 26
MARGIN = 20


def seed_rows(rule: InflationRule, side: str = "left") -> list[dict]:
    """Seed pairs with exact geometry, mirrored for the right side.

    Each entry holds the two seeds and their inflations as (word, left edge)
    plus the splitting points before and after inflation.
    """
    pd = perron_data(rule)
    base = rule if side == "left" else reverse_rule(rule)
    aset = left_asymptotic_set(base, pd)
    out = []
    for cyc in pair_cycles(aset.stable):
        pos = position_orbit(pd, cyc)
        m = len(cyc)
        for i, step in enumerate(cyc):
            pr = step.source
            if pr.p > pr.q:
                continue
            s = pos[i]
            s_next = pos[(i + 1) % m]
            left = s - pd.lengths[pr.p[0]]
            rows = [(pr.p, left), (pr.q, left)]
            infl = [(inflate(base, w), x * pd.lam) for w, x in rows]
            entry = {"pair": (pr.p, pr.q), "split": s, "rows": rows, "inflated": infl, "split_after": s_next}
            if side == "right":
                entry = {
                    "pair": (pr.p[::-1], pr.q[::-1]),
                    "split": -s,
                    "rows": [(w[::-1], -(x + pd.length(w))) for w, x in rows],
                    "inflated": [(w[::-1], -(x + pd.length(w))) for w, x in infl],
                    "split_after": -s_next,
                }
            out.append(entry)
    return out


def render_svg(rule: InflationRule, side: str = "left", unit: float = 40.0) -> str:
    pd = perron_data(rule)
    data = seed_rows(rule, side)
    colours = {x: PALETTE[i % len(PALETTE)] for i, x in enumerate(rule.alphabet)}
    lens = {x: float(v) for x, v in pd.lengths.items()}
    lo = min(float(x) for e in data for _, x in e["rows"] + e["inflated"]) if data else -1.0
    hi = max(float(x) + sum(lens[c] for c in w) for e in data for w, x in e["rows"] + e["inflated"]) if data else 1.0
    width = (hi - lo) * unit + 2 * MARGIN
    block_h = 4 * ROW_H + 3 * GAP
    height = len(data) * (block_h + BLOCK_GAP) + 2 * MARGIN + 20

    def px(x: float) -> float:
        return MARGIN + (x - lo) * unit

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
        f'<title>{escape(str(rule))} {side} asymptotic seeds</title>',
        f'<text x="{MARGIN}" y="{MARGIN}" font-family="monospace" font-size="13">'
        f'{escape(str(rule))}, {side} side, lambda = {pd.lam.approx(6)}</text>',
    ]
    y = MARGIN + 20
    for e in data:
        top = y
        for word, x0 in e["rows"] + e["inflated"]:
            x = float(x0)
            for c in word:
                w = lens[c] * unit
                parts.append(
                    f'<rect x="{px(x):.2f}" y="{y}" width="{w:.2f}" height="{ROW_H}" '
                    f'fill="{colours[c]}" stroke="black" stroke-width="1"/>'
                )
                parts.append(
                    f'<text x="{px(x) + w / 2:.2f}" y="{y + ROW_H * 0.68:.1f}" text-anchor="middle" '
                    f'font-family="monospace" font-size="13">{c}</text>'
                )
                x += lens[c]
            y += ROW_H + GAP
        bottom = y - GAP
        mid = top + 2 * (ROW_H + GAP) - GAP / 2
        parts.append(
            f'<line x1="{px(0.0):.2f}" y1="{top - 4}" x2="{px(0.0):.2f}" y2="{bottom + 4}" stroke="black" stroke-width="2"/>'
        )
        for s, y1, y2 in ((e["split"], top - 4, mid), (e["split_after"], mid, bottom + 4)):
            parts.append(
                f'<line x1="{px(float(s)):.2f}" y1="{y1}" x2="{px(float(s)):.2f}" y2="{y2}" '
                f'stroke="#c00" stroke-width="2" stroke-dasharray="6,4"/>'
            )
        y += BLOCK_GAP
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
