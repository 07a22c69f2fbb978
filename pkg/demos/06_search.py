#!/usr/bin/env python3
"""Sweeping a coefficient space for maximal curves.

Enumerates every additive R of degree p^h over F_{p^r} (deduplicated by the
twist class of the quotient constant, which pins the L-polynomial over the
splitting field) and keeps the ones attaining the upper Hasse-Weil bound.
"""

from aszeta import search_curves

print("additive R of degree 3 over F_9, judged over F_9:")
for rec in search_curves(3, 2, 1, 2, filter_tag="maximal"):
    print(f"  R = {rec['spec']['R']}: genus {rec['genus']}, "
          f"q = 3^{rec['q_degree']}, {rec['classification']}, "
          f"L sign {rec['l_polynomial']['sign']:+d}")

print("\nh = 0 twists Y^5 - Y = aX^2 over F_25 (a in F_25):")
for rec in search_curves(5, 2, 0, 2, filter_tag="all"):
    print(f"  a = {rec['spec']['R'][0]}: {rec['classification']}")
