"""
Fibonacci: one asymptotic pair, step by step
=============================================

Seeds, splitting points, the return map and the final signature for [ab,a].
"""

from asymcomp import parse_rule, perron_data, signature
from asymcomp.composants import initial_pairs, left_asymptotic_set, pair_cycles, position_orbit
from asymcomp.errors import KExhausted
from asymcomp.oracle import verify_signature

rule = parse_rule("[ab,a]")
pd = perron_data(rule)
print("lambda =", pd.lam.approx(8), "  lengths:", {x: v.approx(6) for x, v in pd.lengths.items()})

# patches of three tiles are too short to see the pair
print("k=3 seed pairs:", [(p.p, p.q) for p in initial_pairs(rule, 3)])
try:
    left_asymptotic_set(rule, pd, k_init=3, k_max=3)
except KExhausted as exc:
    print("k=3 alone:", exc)

# with four tiles the pair closes up under inflation
aset = left_asymptotic_set(rule, pd, k_init=4, k_max=4)
for cyc in pair_cycles(aset.stable):
    pos = position_orbit(pd, cyc)
    for step, s in zip(cyc, pos):
        print(f"  {step.source.p} / {step.source.q}  split at {s}  (~{s.approx(6)})")

sig = signature(rule)
print("points:", [(t.seed, t.origin_offset.approx(4)) for t in sig.points])
print("left:", sig.left_partition, " right:", sig.right_partition, " perm:", sig.permutation)

# cross-check against patches grown to 50 tile lengths per side
rep, same = verify_signature(sig)
print("oracle agrees:", same)
