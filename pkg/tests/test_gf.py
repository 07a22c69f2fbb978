"""Field substrate: construction determinism, arithmetic axioms, trace,
embeddings, squares, and the F_p linear algebra helpers."""

import itertools
import random

import numpy as np
import pytest

from aszeta.errors import DomainError, EmbeddingError, FieldMismatchError, ResourceBudgetError
from aszeta.gf import (embed, enumerate_field, fp_linear_kernel,
                       fp_row_space, frobenius, is_square, least_nonsquare,
                       make_field, trace_to_prime)


def naive_irreducible(poly, p):
    """Independent check: no factor of degree <= deg/2 by trial division."""
    deg = len(poly) - 1

    def divides(d, f):
        f = list(f)
        while len(f) - 1 >= len(d) - 1 and any(f):
            while f and f[-1] == 0:
                f.pop()
            if len(f) < len(d):
                break
            c = f[-1]
            shift = len(f) - len(d)
            for i, dv in enumerate(d):
                f[shift + i] = (f[shift + i] - c * dv) % p
        return not any(f)

    for dd in range(1, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=dd):
            if divides(list(tail) + [1], poly):
                return False
    return True


def test_prime_field_is_x():
    F = make_field(3, 1)
    assert F.poly == (0, 1)
    assert [x.coeffs for x in enumerate_field(F)] == [(0,), (1,), (2,)]


def test_f9_smallest_irreducible_quadratic():
    # oracle: enumerate monic quadratics over F_3, irreducible iff no root
    best = None
    for a0 in range(3):
        for a1 in range(3):
            if all((x * x + a1 * x + a0) % 3 for x in range(3)):
                best = (a0, a1, 1)
                break
        if best:
            break
    F9 = make_field(3, 2)
    assert F9.poly == best == (1, 0, 1)


def test_f11_4_deterministic_and_irreducible():
    F = make_field(11, 4)
    assert F.order == 14641
    assert naive_irreducible(list(F.poly), 11)
    assert make_field(11, 4) is F  # referential determinism through the cache
    assert make_field(11, 4).poly == F.poly


def test_make_field_rejects_bad_p():
    with pytest.raises(DomainError):
        make_field(2, 3)
    with pytest.raises(DomainError):
        make_field(9, 1)


def test_field_axioms_random():
    rng = random.Random(7)
    F = make_field(5, 3)
    for _ in range(50):
        x = F.from_index(rng.randrange(F.order))
        y = F.from_index(rng.randrange(F.order))
        z = F.from_index(rng.randrange(F.order))
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        assert x * y == y * x
        if not x.is_zero:
            assert x.inverse() * x == F.one
            assert x ** (F.order - 1) == F.one


def test_pow_p_matches_frobenius_on_f9():
    F9 = make_field(3, 2)
    for x in enumerate_field(F9):
        assert x**3 == frobenius(x, 1)
        assert frobenius(x, 0) == x
        assert frobenius(x, 2) == x


def test_inv_zero_and_mixed_fields():
    F = make_field(3, 2)
    with pytest.raises(ZeroDivisionError):
        F.zero.inverse()
    with pytest.raises(FieldMismatchError):
        F.one + make_field(3, 3).one


def test_frobenius_of_i_in_f9():
    F9 = make_field(3, 2)
    i = next(x for x in enumerate_field(F9) if x * x == -F9.one)
    assert frobenius(i, 1) == -i  # i^3 = i^2 * i = -i


def test_trace_linear_and_values():
    F9 = make_field(3, 2)
    i = next(x for x in enumerate_field(F9) if x * x == -F9.one)
    assert trace_to_prime(F9.zero) == 0
    assert trace_to_prime(i) == 0
    for p, m in ((3, 2), (5, 3), (7, 2)):
        F = make_field(p, m)
        assert trace_to_prime(F.one) == m % p
        rng = random.Random(11)
        for _ in range(20):
            x = F.from_index(rng.randrange(F.order))
            y = F.from_index(rng.randrange(F.order))
            assert trace_to_prime(x + y) == (trace_to_prime(x) + trace_to_prime(y)) % p
        # surjectivity onto F_p
        assert {trace_to_prime(x) for x in enumerate_field(F)} == set(range(p))


def test_square_counts_exhaustive():
    for p, m in ((3, 2), (5, 2), (7, 2), (3, 4), (11, 2)):
        F = make_field(p, m)
        n = sum(1 for x in enumerate_field(F) if not x.is_zero and is_square(x))
        assert n == (F.order - 1) // 2
    with pytest.raises(DomainError):
        is_square(make_field(3, 2).zero)


def test_minus_one_square_iff_p_mod_4():
    F5 = make_field(5, 1)
    F7 = make_field(7, 1)
    assert is_square(-F5.one)
    assert not is_square(-F7.one)


def test_embed_is_injective_ring_map():
    F9 = make_field(3, 2)
    F81 = make_field(3, 4)
    images = {}
    for x in enumerate_field(F9):
        images[x] = embed(x, F81)
    assert len(set(images.values())) == 9
    for x in enumerate_field(F9):
        for y in enumerate_field(F9):
            assert embed(x, F81) * embed(y, F81) == images[x * y]
            assert embed(x, F81) + embed(y, F81) == images[x + y]
    assert embed(F9.zero, F81) == F81.zero
    assert embed(F9.one, F81) == F81.one


def test_embed_prime_subfield_is_constant():
    F3 = make_field(3, 1)
    F9 = make_field(3, 2)
    assert embed(F3.from_int(2), F9).coeffs == (2, 0)


def test_embed_commutes_with_source_frobenius():
    F9 = make_field(3, 2)
    F81 = make_field(3, 4)
    for x in enumerate_field(F9):
        assert embed(frobenius(x, 1), F81) == frobenius(embed(x, F81), 1)


def test_embed_trace_transitivity():
    # Tr_{F81/F3} = Tr_{F9/F3} o Tr_{F81/F9}; check through the embedding
    F9 = make_field(3, 2)
    F81 = make_field(3, 4)
    for x in enumerate_field(F9):
        ex = embed(x, F81)
        # relative trace of an F9 element from F81 is 2x (degree-2 extension)
        assert trace_to_prime(ex) == (2 * trace_to_prime(x)) % 3


def test_embed_rejects_non_divisible():
    with pytest.raises(EmbeddingError):
        embed(make_field(3, 2).one, make_field(3, 3))


def test_enumeration_order_and_budget():
    F = make_field(3, 2)
    xs = list(enumerate_field(F))
    assert len(xs) == len(set(xs)) == 9
    assert [x.index() for x in xs] == list(range(9))
    assert xs[1].coeffs == (1, 0) and xs[3].coeffs == (0, 1)
    big = make_field(11, 4)
    assert sum(1 for _ in enumerate_field(big)) == 14641
    with pytest.raises(ResourceBudgetError) as err:
        list(enumerate_field(big, budget=100))
    assert err.value.required == 14641


def test_least_nonsquare():
    F = make_field(7, 1)
    ns = least_nonsquare(F)
    assert not is_square(ns)
    assert all(is_square(F.from_index(i)) for i in range(1, ns.index()))


def test_kernel_identity_zero_and_rank1():
    assert fp_linear_kernel(np.eye(4, dtype=np.int64), 3) == []
    z = fp_linear_kernel(np.zeros((4, 4), dtype=np.int64), 3)
    assert len(z) == 4
    m = np.array([[1, 2], [2, 4]], dtype=np.int64)  # rank 1 over F_3
    basis = fp_linear_kernel(m, 3)
    assert len(basis) == 1
    # exhaustive oracle over F_3^2
    true_kernel = {(x, y) for x in range(3) for y in range(3)
                   if (x + 2 * y) % 3 == 0 and (2 * x + 4 * y) % 3 == 0}
    spanned = {tuple(int(v) for v in (t * basis[0]) % 3) for t in range(3)}
    assert spanned == true_kernel


def test_kernel_vectors_annihilate_random():
    rng = random.Random(3)
    for _ in range(20):
        p = rng.choice([3, 5, 7])
        a = np.array([[rng.randrange(p) for _ in range(4)] for _ in range(3)],
                     dtype=np.int64)
        for v in fp_linear_kernel(a, p):
            assert not ((a @ v) % p).any()
        rank = len(fp_row_space(a, p))
        assert rank + len(fp_linear_kernel(a, p)) == 4


def test_field_elem_immutable_and_hashable():
    F = make_field(3, 2)
    x = F.from_index(5)
    with pytest.raises(AttributeError):
        x.coeffs = (0, 0)
    assert len({x, F.from_index(5), F.from_index(6)}) == 2
