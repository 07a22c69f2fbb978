#!/usr/bin/env python3
"""The kernel space W and the B_c polynomials.

For R of degree p^h the companion polynomial E = R^{p^h} + sum (a_i X)^{p^{h-i}}
is separable of degree p^{2h}; its root space W is an F_p-vector space of
dimension 2h, and c lies in W exactly when the Artin-Schreier equation
B^p - B = c R(X) + R(c) X has a polynomial solution B_c.
"""

from aszeta import (NotInKernelError, b_poly, make_curve, trace_to_prime,
                    w_space)

C = make_curve(3, 1, [0, 1])   # R = X^3
print(f"curve {C}")
print(f"E coefficients (low to high, as p-power indices): "
      f"{[c.coeffs[0] for c in C.E.coeffs]}")       # X^9 + X
print(f"splitting field degree: {C.q_degree}")      # F_81
print(f"W basis over F_81: {[list(b.coeffs) for b in C.w_basis]}")

# W(F_{p^s}) grows with s: trivial inside F_3 and F_9, full inside F_81.
for s in (1, 2, 4):
    basis = w_space(C, s)
    print(f"dim W(F_3^{s}) = {len(basis)}")

# Each c in W carries its B_c; the recursion residual is the membership
# certificate, and a c outside W raises with the residual attached.
R = C.R.embed_into(C.field_q)
for c in C.w_elements():
    bp = b_poly(C, c)
    assert trace_to_prime(c * R(c)) == 0
    if not c.is_zero:
        print(f"c={list(c.coeffs)}: B_c has degree 3^{bp.B.h}, "
              f"b = B_c(c)/2 = {list(bp.b.coeffs)}")

try:
    b_poly(C, C.field_q.one)
except NotInKernelError as err:
    print(f"c=1 is rejected; residual = {list(err.residual.coeffs)}")
