"""Walk through the first Hirzebruch surface F1 = X(1, 1, (1)).

Prints the fan, the degree polynomials in nu, and then asks for which
polarizations the sheaf T(-log D) is stable, for D = D_{v1} and D = D_{v0}.
Run with ``python3 demos/hirzebruch_walkthrough.py``.
"""

from fractions import Fraction

from logstab import build_rank2, case_polynomials, check_at, facet_degree_polys, stability_region

f1 = build_rank2(1, 1, [1])
print("rays of F1:")
for name, vec in f1.rays.items():
    print(f"  {name:3} {vec}")

deg = facet_degree_polys(f1)
print("\ndegrees against L = nu D_w0 + D_v0:")
print(f"  W  = {deg.W}")
for i, v in enumerate(deg.V):
    print(f"  V{i} = {v}")

for delta in (["v1"], ["v0"]):
    cat = case_polynomials(f1, delta)
    region = stability_region(f1, delta)
    print(f"\nD = {'+'.join(delta)}")
    for entry in cat.displayed.values():
        print(f"  {entry.name} = {entry.poly}   ({entry.relation}, factor {entry.factor})")
    print(f"  stable for nu in     {' u '.join(map(str, region.stable)) or 'nothing'}")
    print(f"  semistable for nu in {' u '.join(map(str, region.semistable)) or 'nothing'}")
    for nu in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)):
        v = check_at(f1, delta, nu)
        print(f"    nu = {str(nu):4} {v.kind.value:20} mu = {v.mu}")
