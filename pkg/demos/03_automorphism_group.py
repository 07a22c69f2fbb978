#!/usr/bin/env python3
"""The extraspecial group of automorphisms fixing infinity.

Every translation constant c in W lifts to p automorphisms
(x, y) -> (x + c, y + b + B_c(x)); together they form a group P of order
p^{2h+1} and exponent p whose commutators live in the center <rho>,
rho: (x, y) -> (x, y + 1).  The commutator pairing eps(c1, c2) =
B_{c1}(c2) - B_{c2}(c1) is symplectic on W, and a maximal isotropic
subspace produces the abelian subgroup calA that drives the Jacobian
decomposition.  Products below compose left to right.
"""

import warnings

from aszeta import (build_group_p, commutator, epsilon, isotropic_decomposition,
                    make_curve, subgroup_h_order, symplectic_basis)

C = make_curve(3, 1, [0, 1])   # R = X^3: h = 1
with warnings.catch_warnings():
    warnings.simplefilter("ignore")   # R = X^p has extra automorphisms beyond P
    G = build_group_p(C)
print(f"|P| = {G.order()} = 3^{2 * C.h + 1}, extraspecial: {G.is_extraspecial()}")
print(f"center: {len(G.center())} elements (the rho powers)")

s1, s2 = G.generators()
k = commutator(s1, s2)
print(f"[s1, s2] = rho^{list(k.b.coeffs)[0]}, "
      f"eps(c1, c2) = {epsilon(C, s1.c, s2.c)} (commutator = rho^-eps)")

cs, cps = symplectic_basis(C)
print(f"symplectic basis: c = {list(cs[0].coeffs)}, c' = {list(cps[0].coeffs)}, "
      f"eps(c, c') = {epsilon(C, cs[0], cps[0])}")

dec = isotropic_decomposition(C)
sizes = sorted(len(A) for A in dec.subgroups)
print(f"calA of order {len(dec.cal_a)} splits as Z(P) plus {len(dec.subgroups)} "
      f"subgroups of sizes {sizes}, pairwise meeting in 1")

# The prime-to-p part: maps (x, y) -> (ax, dy) with a R(aX) = d R(X).
for coeffs, label in ([1], "X"), ([0, 1], "X^p"), ([1, 1], "X + X^p"):
    o = subgroup_h_order(make_curve(3, 1, coeffs))
    print(f"R = {label}: |H| = {o}")

# Order 3^5 at h = 2 works the same way.
C2 = make_curve(3, 1, [0, 0, 1])
G2 = build_group_p(C2)
print(f"\nR = X^9: |P| = {G2.order()}, extraspecial: {G2.is_extraspecial()}, "
      f"W has dimension {len(C2.w_basis)}")
