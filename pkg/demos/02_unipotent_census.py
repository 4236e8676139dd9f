"""
Counting unipotent elements by brute force
==========================================

Every element of GL(3,2) and U(3,2) is enumerated, its Jordan type at
eigenvalue 1 read off from the kernel chain of (alpha - I)^j, and the
tallies compared with closed forms.
"""

from glq.oracle import UNIPOTENT_PARTITION, census, compare, fixed_dim_of_unipotents
from glq.partition import enumerate_partitions
from glq.theorems import (GL, U, GroupSpec, lusztig_unitary_unipotent,
                          unipotent_class_count)

for kind in (GL, U):
    spec = GroupSpec(kind, 3, 2)
    table = census(spec, UNIPOTENT_PARTITION)
    print(f"{kind}(3,2): |G| = {spec.order}, unipotents = {table.total} = 2^6")
    predicted = {lam: unipotent_class_count(lam, 3, 2, kind)
                 for lam in enumerate_partitions(3, size=3)}
    for lam, count in table.sorted_items():
        print(f"   type {str(lam):6s} census {count:4d}   formula {predicted[lam]:4d}")
    print("   per-class check:", compare(table, predicted).passed)

# unitary: regroup by fixed-space dimension (number of Jordan blocks)
table = census(GroupSpec(U, 3, 2), UNIPOTENT_PARTITION)
by_dim = fixed_dim_of_unipotents(table)
print("U(3,2) unipotents by fixed dimension:", dict(sorted(by_dim.items())))
print("closed form:                         ",
      {k: lusztig_unitary_unipotent(3, k, 2) for k in range(1, 4)})
