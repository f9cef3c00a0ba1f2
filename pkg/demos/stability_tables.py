"""Regenerate a slice of the stability tables and cross-check every row.

For each variety X(r, s, a) with r + s <= 4 and a_i <= 2, and each divisor with
one or two components, the exact region is printed next to a spot check at
a few rationals. Algebraic endpoints are shown as their defining polynomial
with a short isolating interval.
"""

from fractions import Fraction

from logstab import build_rank2, check_at, stability_region
from logstab.cli import table_rows

rows = table_rows(None, max_rs=4, max_a=2)
print(f"{len(rows)} rows")
current = None
for row in rows:
    key = (row["table"], row["r"], row["s"], tuple(row["a"]))
    if key != current:
        current = key
        print(f"\ntable {row['table']}  r={row['r']} s={row['s']} a={row['a']}")
    stable = " u ".join(i["text"] for i in row["stable"]) or "empty"
    semi = " u ".join(i["text"] for i in row["semistable"]) or "empty"
    print(f"  {'+'.join(row['delta']):8} stable {stable:40} semistable {semi}")

# spot check: the region and the point criterion agree at a handful of ratios
disagreements = 0
for row in rows:
    x = build_rank2(row["r"], row["s"], row["a"])
    region = stability_region(x, row["delta"])
    for nu in (Fraction(1, 3), Fraction(1), Fraction(5, 2)):
        disagreements += region.kind_at(nu) is not check_at(x, row["delta"], nu).kind
print(f"\nspot-check disagreements: {disagreements}")
