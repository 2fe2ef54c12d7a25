"""
From a polynomial to signature classes
=======================================

Matrices with characteristic polynomial x^3-x^2-x-1, the rules realising
them, and how those rules group by asymptotic signature.
"""

from asymcomp import classify_rules, matrices_with_charpoly, parse_polynomial, rules_from_matrix

poly = parse_polynomial("x^3-x^2-x-1")
mats = matrices_with_charpoly(poly)
print(len(mats), "matrix classes")

all_rules = []
for mc in mats:
    rules = rules_from_matrix(mc.representative)
    print(mc, len(rules), "rules")
    all_rules += rules

res = classify_rules(all_rules)
for c in res.classes:
    mirror = "self" if c.self_mirror else "partner " + c.mirror_partner_key
    print(f"{len(c.members):3}  {c.key}  [{mirror}]  e.g. {c.members[0]}")
print(len(res.failures), "rules skipped")
