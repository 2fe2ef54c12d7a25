"""
Reproducing the classification tables
======================================

Runs all 66 bundled rows; rows that do not match are adjudicated by the
half-line oracle.  Takes a couple of minutes.
"""

from collections import Counter

from asymcomp.tables import PASS, load_fixtures, run_tables

tables = load_fixtures()
results = run_tables(tables)
for r in results:
    if r.status != PASS:
        print(f"{r.row.label:6} {r.row.repr:12} {r.status}")
        print("       ", r.detail)

print(Counter(r.status for r in results))
print("total time %.1f s" % sum(r.seconds for r in results))
