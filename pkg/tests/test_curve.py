"""Curve model: genus and splitting data, W spaces, B polynomials, and the
oracle/quadric point-count agreement across the whole desk-scale matrix."""

import random

import numpy as np
import pytest

from aszeta.curve import (b_poly, count_points_oracle, count_points_quadric,
                          diagonalize_form, gram_matrix, make_curve,
                          quadric_zero_count, w_space)
from aszeta.errors import DomainError, NotInKernelError, ResourceBudgetError
from aszeta.gf import (frobenius, least_nonsquare, make_field,
                       trace_to_prime)
from aszeta.linpoly import LinearizedPoly


def test_make_curve_h0():
    C = make_curve(3, 1, [1])
    assert (C.genus, C.q_degree, len(C.w_basis)) == (1, 1, 0)


def test_make_curve_cubic():
    C = make_curve(3, 1, [0, 1])
    assert (C.genus, C.q_degree, len(C.w_basis)) == (3, 4, 2)


def test_make_curve_manypoints_genus():
    F = make_field(11, 4)
    C = make_curve(11, 4, [least_nonsquare(F)])
    assert C.genus == 5


def test_make_curve_rejections():
    with pytest.raises(DomainError):
        make_curve(2, 1, [1])
    with pytest.raises(DomainError):
        make_curve(3, 1, [0])


def test_w_space_dimensions():
    C = make_curve(3, 1, [0, 1])
    assert len(w_space(C, 4)) == 2
    assert len(w_space(C, 1)) == 0  # evaluate E on all 3 elements: only 0
    assert len(w_space(C, 2)) == 0
    C0 = make_curve(5, 1, [2])
    assert w_space(C0, 3) == []
    with pytest.raises(DomainError):
        w_space(make_curve(3, 2, [[1, 1]]), 3)


def test_b_poly_zero_and_degree():
    C = make_curve(3, 1, [0, 1])
    z = C.field_q.zero
    bp = b_poly(C, z)
    assert bp.B.is_zero and bp.b.is_zero
    for c in C.w_elements():
        if c.is_zero:
            continue
        assert b_poly(C, c).B.h == C.h - 1  # degree p^{h-1}


def test_b_poly_defining_identity_coefficientwise():
    # B^p - B = c R(X) + R(c) X as additive polynomials
    for p, r, coeffs in ((3, 1, [0, 1]), (5, 1, [0, 1]), (3, 1, [1, 1]),
                         (3, 1, [0, 0, 1])):
        C = make_curve(p, r, coeffs)
        F = C.field_q
        R = C.R.embed_into(F)
        for c in C.w_elements():
            B = b_poly(C, c).B
            lhs = B.frobenius_twist() - B
            rhs = R.scale(c) + LinearizedPoly(F, [R(c)])
            assert lhs == rhs


def test_b_poly_eq_b4_and_b_identity():
    C = make_curve(3, 1, [0, 0, 1])
    F = C.field_q
    R = C.R.embed_into(F)
    a_h = R.coeffs[C.h]
    for c in C.w_elements():
        bp = b_poly(C, c)
        if not c.is_zero:
            assert bp.B.coeffs[C.h - 1] ** C.p == c * a_h  # leading-coeff relation
        assert bp.b ** C.p - bp.b == c * R(c)


def test_b_poly_additive_in_c():
    rng = random.Random(9)
    C = make_curve(5, 1, [0, 1])
    ws = C.w_elements()
    for _ in range(20):
        c1, c2 = rng.choice(ws), rng.choice(ws)
        assert b_poly(C, c1 + c2).B == b_poly(C, c1).B + b_poly(C, c2).B


def test_b_poly_hermite_closed_form():
    # R = X^{p^h}: B_c = -sum c^{p^{h+i}} X^{p^i}
    C = make_curve(3, 1, [0, 0, 1])
    for c in C.w_elements():
        if c.is_zero:
            continue
        B = b_poly(C, c).B
        want = [-frobenius(c, C.h + i) for i in range(C.h)]
        assert list(B.coeffs) == want


def test_b_poly_not_in_kernel_carries_residual():
    C = make_curve(3, 1, [0, 1])
    bad = C.field_q.one  # E(1) = 2 != 0
    with pytest.raises(NotInKernelError) as err:
        b_poly(C, bad)
    res = err.value.residual
    a_h = C.R.embed_into(C.field_q).coeffs[1]
    b0 = -(bad * C.R.embed_into(C.field_q).coeffs[0]) - C.R.embed_into(C.field_q)(bad)
    assert res == b0**3 - bad * a_h


def test_trace_condition_on_w():
    rng = random.Random(13)
    for p, coeffs in ((3, [0, 1]), (5, [0, 1]), (3, [0, 0, 1])):
        C = make_curve(p, 1, coeffs)
        R = C.R.embed_into(C.field_q)
        for c in C.w_elements():
            assert trace_to_prime(c * R(c)) == 0


def test_oracle_hand_enumeration():
    assert count_points_oracle(make_curve(3, 1, [1]), 1) == 4
    assert count_points_oracle(make_curve(3, 1, [0, 1]), 4) == 28


def test_oracle_budget():
    C = make_curve(3, 1, [1])
    with pytest.raises(ResourceBudgetError):
        count_points_oracle(C, 13, budget=10**4)


def test_oracle_jobs_partition_independent():
    C = make_curve(3, 1, [0, 1])
    assert count_points_oracle(C, 4, jobs=2) == count_points_oracle(C, 4)


def test_oracle_vs_quadric_matrix():
    # p in {3,5,7}, h in {0,1}, every s with p^s <= 1e5
    rng = random.Random(5)
    for p in (3, 5, 7):
        F = make_field(p, 1)
        picks = [[1], [int(least_nonsquare(F).coeffs[0])], [0, 1], [1, 1],
                 [2, 1]]
        for coeffs in picks:
            C = make_curve(p, 1, coeffs)
            s = 1
            while p**s <= 10**5:
                a = count_points_oracle(C, s)
                b = count_points_quadric(C, s)
                assert a == b, (p, coeffs, s)
                # Hasse-Weil, exactly: (N - p^s - 1)^2 <= 4 g^2 p^s
                assert (a - p**s - 1) ** 2 <= 4 * C.genus**2 * p**s
                s += 1


def test_quadric_odd_ns_gives_ps_plus_1():
    C = make_curve(3, 1, [0, 1])
    for s in (1, 3):  # w_s = 0 there, so n_s odd
        assert count_points_quadric(C, s) == 3**s + 1


def test_quadric_even_s_over_splitting_field_shape():
    # s even with F_{p^s} containing F_q: N = p^s + 1 +- (p-1) p^{(s+2h)/2}
    C = make_curve(3, 1, [0, 1])
    for s in (4, 8):
        n = count_points_quadric(C, s)
        bump = (3 - 1) * 3 ** ((s + 2) // 2)
        assert n in (3**s + 1 + bump, 3**s + 1 - bump)


def test_gram_rank_is_ns():
    for p, coeffs, s_list in ((3, [0, 1], (1, 2, 3, 4)), (5, [1], (1, 2)),
                              (3, [1, 1], (1, 2, 3, 4))):
        C = make_curve(p, 1, coeffs)
        for s in s_list:
            wb, G = gram_matrix(C, s)
            diag = diagonalize_form(G, p)
            assert all(d != 0 for d in diag)  # nondegenerate on V_s
            assert len(diag) == s - len(wb)


def test_diagonalize_form_basics():
    eye = np.eye(3, dtype=np.int64)
    assert diagonalize_form(eye, 5) == [1, 1, 1]
    assert diagonalize_form(np.diag([2, 0, 3]).astype(np.int64), 5) == [2, 0, 3]
    anti = np.array([[0, 1], [1, 0]], dtype=np.int64)
    diag = diagonalize_form(anti, 3)
    # congruence preserves the square class of the determinant (-1 here)
    prod = diag[0] * diag[1] % 3
    assert pow(prod, 1, 3) != 0
    assert pow(prod, (3 - 1) // 2, 3) == pow(-1 % 3, (3 - 1) // 2, 3)


def test_diagonalize_random_congruence_invariant():
    rng = random.Random(21)
    for _ in range(30):
        p = rng.choice([3, 5, 7])
        n = rng.randrange(1, 5)
        A = np.array([[rng.randrange(p) for _ in range(n)] for _ in range(n)],
                     dtype=np.int64)
        A = (A + A.T) % p
        diag = diagonalize_form(A, p)
        # rank and determinant square class are congruence invariants
        from aszeta.gf import fp_row_space
        assert sum(1 for d in diag if d) == len(fp_row_space(A, p))
        det = int(round(np.linalg.det(A.astype(float))))
        nz = [d for d in diag if d]
        if len(nz) == n:
            prod = 1
            for d in nz:
                prod = prod * d % p
            assert pow(det % p, (p - 1) // 2, p) == pow(prod, (p - 1) // 2, p)


def test_quadric_zero_count_closed_forms():
    # n odd: p^{n-1}; n = 0: the empty zero locus is the single origin
    assert quadric_zero_count([], 3) == 1
    assert quadric_zero_count([1, 1, 1], 3) == 9
    # n = 2 over F_3: x^2 + y^2 = 0 only at origin (disc -1 nonsquare)
    brute = sum(1 for x in range(3) for y in range(3) if (x * x + y * y) % 3 == 0)
    assert quadric_zero_count([1, 1], 3) == brute == 1
    # x^2 - y^2 = 0 has 2p - 1 zeros
    brute = sum(1 for x in range(3) for y in range(3) if (x * x - y * y) % 3 == 0)
    assert quadric_zero_count([1, -1 % 3], 3) == brute == 5
