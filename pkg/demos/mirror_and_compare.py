"""
Telling rules apart
===================

Three rules with the same matrix but different composant structure, and
which of them look the same as their reflection.
"""

from asymcomp import compare, mirror_test, parse_rule, signature
from asymcomp.invariants import canonicalize

trio = ["[aca,a,b]", "[caa,a,b]", "[aac,a,b]"]
sigs = {t: signature(parse_rule(t)) for t in trio}
for t, s in sigs.items():
    print(t, canonicalize(s).encoding)

for i, a in enumerate(trio):
    for b in trio[i + 1 :]:
        v = compare(sigs[a], sigs[b])
        print(f"{a} vs {b}: {v.outcome} ({v.failed})")

for t in trio + ["[bc,a,b]"]:
    print(t, "mirror:", mirror_test(t).outcome)
