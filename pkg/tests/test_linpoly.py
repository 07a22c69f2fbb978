"""Additive polynomial algebra: evaluation, twisted composition, the E
construction, kernels against brute force, splitting degrees, and left
decomposition."""

import random

import pytest

from aszeta.errors import DivisibilityError, DomainError
from aszeta.gf import enumerate_field, make_field
from aszeta.linpoly import (LinearizedPoly, build_E, kernel_basis,
                            left_decompose, splitting_degree)


def rand_linpoly(F, terms, rng):
    return LinearizedPoly(F, [F.from_index(rng.randrange(F.order))
                              for _ in range(terms)])


def test_eval_basics():
    F3 = make_field(3, 1)
    L = LinearizedPoly.from_ints(F3, [0, 1])  # X^3
    assert L(F3.zero).is_zero
    assert L(F3.from_int(2)) == F3.from_int(2)  # Fermat


def test_eval_additive_random():
    rng = random.Random(1)
    F = make_field(3, 4)
    for _ in range(25):
        L = rand_linpoly(F, 3, rng)
        x = F.from_index(rng.randrange(F.order))
        y = F.from_index(rng.randrange(F.order))
        assert L(x + y) == L(x) + L(y)


def test_compose_identity_and_monomials():
    F9 = make_field(3, 2)
    X = LinearizedPoly.x(F9)
    M = LinearizedPoly(F9, [F9.from_index(4), F9.from_index(7)])
    assert X.compose(M) == M and M.compose(X) == M
    Xp = LinearizedPoly.monomial(F9, 1)
    assert Xp.compose(Xp) == LinearizedPoly.monomial(F9, 2)
    a, b = F9.from_index(5), F9.from_index(7)
    lhs = LinearizedPoly.monomial(F9, 1, a).compose(LinearizedPoly(F9, [b]))
    assert lhs == LinearizedPoly(F9, [F9.zero, a * b**3])  # a b^p X^p


def test_compose_soundness_random():
    rng = random.Random(2)
    F = make_field(5, 2)
    for _ in range(25):
        L = rand_linpoly(F, 3, rng)
        M = rand_linpoly(F, 2, rng)
        x = F.from_index(rng.randrange(F.order))
        if L.is_zero or M.is_zero:
            continue
        assert L.compose(M)(x) == L(M(x))
    assert rand_linpoly(F, 2, rng).compose(LinearizedPoly(F, [])).is_zero


def test_build_e_h0():
    F3 = make_field(3, 1)
    a0 = F3.from_int(2)
    E = build_E(LinearizedPoly(F3, [a0]))
    assert E == LinearizedPoly(F3, [2 * a0])


def test_build_e_hermite_shape():
    # R = X^{p^h} gives E = X^{p^{2h}} + X
    for p, h in ((3, 1), (5, 1), (3, 2)):
        F = make_field(p, 1)
        E = build_E(LinearizedPoly.from_ints(F, [0] * h + [1]))
        want = [1] + [0] * (2 * h - 1) + [1]
        assert [c.coeffs[0] for c in E.coeffs] == want


def test_build_e_twisted_hermite():
    # a_1 in F_9 with a_1^2 = -1: E = a_1^p (X^{p^2} - X)
    F9 = make_field(3, 2)
    a1 = next(x for x in enumerate_field(F9) if x * x == -F9.one)
    E = build_E(LinearizedPoly(F9, [F9.zero, a1]))
    a1p = a1**3
    assert a1p == -a1
    x9_minus_x = LinearizedPoly(F9, [-F9.one, F9.zero, F9.one])
    assert E == x9_minus_x.scale(a1p)


def test_build_e_rejects_zero():
    with pytest.raises(DomainError):
        build_E(LinearizedPoly(make_field(3, 1), []))


def test_kernel_h0_trivial():
    F3 = make_field(3, 1)
    L = LinearizedPoly.from_ints(F3, [1])
    assert kernel_basis(L, make_field(3, 4)) == []


def test_kernel_matches_bruteforce():
    F3 = make_field(3, 1)
    E = build_E(LinearizedPoly.from_ints(F3, [0, 1]))  # X^9 + X
    F81 = make_field(3, 4)
    basis = kernel_basis(E, F81)
    assert len(basis) == 2
    spanned = set()
    for t1 in range(3):
        for t2 in range(3):
            spanned.add(t1 * basis[0] + t2 * basis[1])
    brute = {x for x in enumerate_field(F81) if E(x).is_zero}
    assert spanned == brute
    assert kernel_basis(E, F81) == basis  # determinism


def test_kernel_full_space():
    F9 = make_field(3, 2)
    L = LinearizedPoly(F9, [-F9.one, F9.zero, F9.one])  # X^{p^2} - X
    assert len(kernel_basis(L, F9)) == 2


def test_splitting_degrees():
    F3 = make_field(3, 1)
    assert splitting_degree(build_E(LinearizedPoly.from_ints(F3, [2]))) == 1
    assert splitting_degree(build_E(LinearizedPoly.from_ints(F3, [0, 1]))) == 4
    F9 = make_field(3, 2)
    a1 = next(x for x in enumerate_field(F9) if x * x == -F9.one)
    assert splitting_degree(build_E(LinearizedPoly(F9, [F9.zero, a1]))) == 2
    with pytest.raises(DomainError):
        splitting_degree(LinearizedPoly.from_ints(F3, [0, 1]))  # X^p: not separable


def test_left_decompose_round_trips():
    rng = random.Random(4)
    F81 = make_field(3, 4)
    c = next(x for x in enumerate_field(F81)
             if not x.is_zero)
    U = LinearizedPoly(F81, [-(c**2), F81.one])  # X^p - c^{p-1} X
    assert left_decompose(U, U) == LinearizedPoly.x(F81)
    for _ in range(10):
        M = rand_linpoly(F81, 3, rng)
        if M.is_zero:
            continue
        assert left_decompose(M.compose(U), U) == M


def test_left_decompose_remainder_raises():
    F81 = make_field(3, 4)
    U = LinearizedPoly(F81, [-F81.one, F81.one])         # ker = F_3
    theta = LinearizedPoly(F81, [F81.zero, F81.one])     # X^3 does not kill F_3
    with pytest.raises(DivisibilityError):
        left_decompose(theta, U)


def test_eval_rejects_incompatible_field():
    from aszeta.errors import FieldMismatchError
    F9 = make_field(3, 2)
    F27 = make_field(3, 3)
    L = LinearizedPoly(F9, [F9.one])
    with pytest.raises(FieldMismatchError):
        L(F27.one)


def test_splitting_degree_cap_is_a_resource_error():
    from aszeta.errors import ResourceBudgetError
    F3 = make_field(3, 1)
    E = build_E(LinearizedPoly.from_ints(F3, [0, 1]))  # splits at degree 4
    with pytest.raises(ResourceBudgetError):
        splitting_degree(E, cap=2)
