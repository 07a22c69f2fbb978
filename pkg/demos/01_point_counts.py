#!/usr/bin/env python3
"""Counting points on Y^p - Y = X R(X), two independent ways.

The brute-force oracle enumerates every x in F_{p^s} and checks whether the
trace of x R(x) vanishes (each such x carries p affine points, plus the one
point at infinity).  The quadratic-form route projects the trace form onto
F_{p^s}/W and applies the closed zero-count formula for nondegenerate
quadrics over F_p.  They must always agree.
"""

from aszeta import count_points_oracle, count_points_quadric, make_curve

# The simplest member of the family: R(X) = X, so the curve is y^3 - y = x^2
# over F_3, an elliptic curve.
C = make_curve(3, 1, [1])
print(f"curve {C}")
for s in (1, 2, 3, 4):
    n_oracle = count_points_oracle(C, s)
    n_quadric = count_points_quadric(C, s)
    hw = 2 * C.genus * 3 ** (s // 2) if s % 2 == 0 else None
    print(f"  s={s}: oracle {n_oracle}, quadric {n_quadric}")
    assert n_oracle == n_quadric

# A degree-p^1 example: R(X) = X^3 over F_3.  Over F_81 this curve attains
# the LOWER Hasse-Weil bound: 81 + 1 - 2*3*9 = 28.
C = make_curve(3, 1, [0, 1])
print(f"\ncurve {C} (genus {C.genus})")
for s in (1, 2, 3, 4):
    n = count_points_oracle(C, s)
    print(f"  s={s}: {n} points "
          f"(Hasse-Weil window {3**s + 1} +- {2 * C.genus} * 3^({s}/2))")
assert count_points_oracle(C, 4) == 28

# The quotient-of-Hermite shape: y^p - y = x^{p+1}.  Over F_{p^2} only the
# x = 0 fibre contributes, so the count is 1 + p, far below the Hermite
# curve's 1 + p^3; the two are genuinely non-isomorphic over F_{p^2}.
print("\ny^p - y = x^{p+1} over F_{p^2}:")
for p in (3, 5, 7):
    C = make_curve(p, 1, [0, 1])
    print(f"  p={p}: {count_points_oracle(C, 2)} points (1 + p = {1 + p})")
