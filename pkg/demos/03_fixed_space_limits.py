"""
Fixed spaces of random matrices
===============================

The chance that a uniform element of GL(n,q) fixes exactly a k-dimensional
subspace settles down quickly as n grows.  Finite-n values are exact
rationals; the limits are rational enclosures of an infinite product.
"""

from fractions import Fraction

from glq.oracle import census
from glq.theorems import GL, GroupSpec, p_gl_inf, p_gl_n, p_u_inf, p_u_n

q = 2
eps = Fraction(1, 10**12)

print(" k   n=2        n=4        n=8        n=30       limit")
for k in range(4):
    row = [float(p_gl_n(k, n, q)) if k <= n else 0.0 for n in (2, 4, 8, 30)]
    lim = float(p_gl_inf(k, q, eps).midpoint)
    print(f"{k:2d}   " + "   ".join(f"{x:.6f}" for x in row) + f"   {lim:.6f}")

print("\nunitary groups U(n,2):")
for k in range(4):
    print(f"{k:2d}   n=30 {float(p_u_n(k, 30, q)):.8f}   limit {float(p_u_inf(k, q, eps).midpoint):.8f}")

# the finite formula is an exact count: check one case against enumeration
spec = GroupSpec(GL, 3, 3)
table = census(spec)
print("\nGL(3,3) census:", dict(sorted(table.counts.items())))
print("formula:       ", {k: int(spec.order * p_gl_n(k, 3, 3)) for k in range(4)})
