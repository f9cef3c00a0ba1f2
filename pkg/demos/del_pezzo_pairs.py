"""Log del Pezzo pairs on P^2 and on the Hirzebruch surfaces F0 to F3.

For every reduced invariant divisor D we say whether -(K + D) is ample, and if
so how T(-log D) behaves with respect to it. On P^2 the polarization is a
multiple of the hyperplane class, so there is no ratio nu to report.
"""

from logstab.delpezzo import P2, hirzebruch, surface_reports, to_labels

for kind in [P2] + [hirzebruch(r) for r in range(4)]:
    print(f"\n{kind}")
    for rep in surface_reports(kind):
        label = "+".join(to_labels(kind, rep.divisor)) or "0"
        if not rep.ample:
            print(f"  {label:8} -(K+D) not ample")
            continue
        nu = "-" if rep.nu is None else str(rep.nu)
        v = rep.verdict
        print(f"  {label:8} nu = {nu:4} {v.kind.value:20} polystable: {v.polystable.value}")
