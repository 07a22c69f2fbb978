"""Exact invariants of the Artin-Schreier curves Y^p - Y = X R(X), R additive.

The public surface, bottom to top: finite fields (gf), additive polynomials
(linpoly), the curve with its two point counts (curve), the extraspecial
automorphism group (autgrp), L-polynomials and maximality (zeta), and the
report pipeline behind the command line (report, cli).
"""

from .errors import (AszetaError, DivisibilityError, DomainError,
                     EmbeddingError, FieldMismatchError, InvariantViolation,
                     NotInKernelError, ParseError, ResourceBudgetError,
                     UndecidableError)
from .gf import (FieldDesc, FieldElem, embed, enumerate_field, fp_linear_kernel,
                 frobenius, is_square, least_nonsquare, make_field,
                 trace_to_prime)
from .linpoly import (LinearizedPoly, build_E, kernel_basis, left_decompose,
                      splitting_degree)
from .curve import (BPoly, Curve, affine_points, b_poly, count_points_oracle,
                    count_points_quadric, diagonalize_form, make_curve, w_space)
from .autgrp import (Aut, GroupP, PAut, apply_aut, build_group_p, commutator,
                     epsilon, isotropic_decomposition, rho, s_membership,
                     sigma_for, subgroup_h_order, symplectic_basis)
from .zeta import (MAXIMAL, MINIMAL, NEITHER, LPolynomial, a_constant, classify,
                   is_supersingular, iterated_quotient, kani_rosen_check,
                   l_polynomial, lpoly_from_counts, maximality_table_h0,
                   predicted_count, quotient_step, reconstruct_lpoly,
                   twist_equivalent)
from .report import analyze, parse_curve_spec, run_verify, search_curves

__version__ = "0.1.0"
