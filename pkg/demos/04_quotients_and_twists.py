#!/usr/bin/env python3
"""Reducing C_R to the genus-(p-1)/2 curve Y^p - Y = a X^2.

A single order-p automorphism sigma_{b,c} has the invariant coordinates
U = X^p - c^{p-1} X and V = -Y + gamma X^2 + (X/c) B_c(X); in them the
quotient is again a curve of the same family with h dropped by one.
Iterating along a maximal isotropic basis of W lands at h = 0, and the
final constant agrees, up to squares times prime-subfield units, with the
closed-form twist constant a_A = (a_h / 2) * prod of the nonzero isotropic
elements.
"""

from aszeta import (a_constant, embed, is_square, iterated_quotient,
                    make_curve, quotient_step, twist_equivalent)

C = make_curve(3, 1, [0, 1])
print(f"start: {C} (genus {C.genus})")

c = C.w_basis[0]
step = quotient_step(C, c)
print(f"one quotient at c={list(c.coeffs)}:")
print(f"  U = X^3 - c^2 X, gamma = {list(step.gamma.coeffs)}")
print(f"  new polynomial degree 3^{step.R_new.h}, genus {step.curve.genus}")
lead = step.R_new.coeffs[0]
a_h = embed(C.R.coeffs[1], c.field)
assert lead == a_h / (2 * c**2)      # the h = 1 leading coefficient halves
print(f"  leading coefficient equals a_h/(2 c^2): {list(lead.coeffs)}")

final, exact = iterated_quotient(C)
ac = a_constant(C)
print(f"\niterated quotient constant: {list(final.coeffs)}")
print(f"closed-form twist constant:  {list(ac.coeffs)}")
print(f"same twist class: {twist_equivalent(embed(final, C.field_q), ac)}, "
      f"literally equal: {exact}")
print(f"a_A is a square in F_81: {is_square(ac)}  (squares mean a minimal curve here)")

# Two quotient steps for h = 2.
C2 = make_curve(3, 1, [0, 0, 1])
final2, _ = iterated_quotient(C2)
ac2 = a_constant(C2)
print(f"\nR = X^9: twist classes agree after two steps: "
      f"{twist_equivalent(embed(final2, C2.field_q), ac2)}")
