"""Compare the finite candidate criterion with exhaustive search.

The criterion only looks at a short list of sub-sheaves; the oracle looks at
every span of ray generators plus a generic line. Here both are run on a
single variety, printing the sub-sheaf that attains the maximal slope, and
then on the full default grid.
"""

import time
from fractions import Fraction

from logstab import brute_force_at, build_rank2, check_at
from logstab.cli import run_sweep
from logstab.stability import witness_summary

x = build_rank2(2, 2, [1, 2])
nu = Fraction(3, 2)
print(f"{x}, nu = {nu}")
for delta in (["v0"], ["v0", "v1"], ["w1"], ["v2", "w0"]):
    fast, slow = check_at(x, delta, nu), brute_force_at(x, delta, nu)
    print(f"  D = {'+'.join(delta):6} criterion: {fast.kind.value:20} oracle: {slow.kind.value}")
    for c in fast.witnesses:
        print(f"      max slope {c.value} at {witness_summary(x, c)}")

start = time.perf_counter()
cells, mismatches = run_sweep()
print(f"\ngrid: {cells} cells, {len(mismatches)} mismatches, {time.perf_counter() - start:.1f}s")
