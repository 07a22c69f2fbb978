"""Automorphisms of C_R fixing the point at infinity.

The p-part is the group of maps (x, y) -> (x + c, y + b + B_c(x)) indexed by
c in W and a prime-subfield offset; it is extraspecial of order p^{2h+1} and
exponent p once h >= 1.  Products here compose left to right: (s * t) acts
by s first, then t.  Under that convention the commutator s t s^-1 t^-1
equals the central translation by -eps(c_s, c_t), where eps is the
symplectic pairing B_{c1}(c2) - B_{c2}(c1) on W.
"""

from __future__ import annotations

import itertools
import math
import warnings

import numpy as np

from . import curve as curve_mod
from . import gf, linpoly
from .errors import DomainError, InvariantViolation, ResourceBudgetError
from .gf import make_field
from .linpoly import LinearizedPoly


# ---------------------------------------------------------------------------
# sparse ordinary polynomials over one field ({exponent: coefficient})

def _sp_trim(d):
    return {e: c for e, c in d.items() if not c.is_zero}

def _sp_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out[e] + c if e in out else c
    return _sp_trim(out)

def _sp_neg(a):
    return {e: -c for e, c in a.items()}

def _sp_scale(a, s):
    return _sp_trim({e: s * c for e, c in a.items()})

def _sp_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            t = c1 * c2
            out[e] = out[e] + t if e in out else t
    return _sp_trim(out)

def _sp_pow_p(a, p):
    """a(X)^p in characteristic p: coefficients to the p, exponents times p."""
    return {e * p: c**p for e, c in a.items()}

def _sp_from_linearized(L, field, scale_arg=None):
    """Sparse form of L(aX) (or L(X) when scale_arg is None)."""
    p = field.p
    out = {}
    for i, c in enumerate(L.embed_into(field).coeffs):
        if c.is_zero:
            continue
        if scale_arg is None:
            out[p**i] = c
        else:
            out[p**i] = c * scale_arg ** (p**i)
    return out


# ---------------------------------------------------------------------------
# membership in S(X R(X)) and general automorphisms

def s_membership(C, a, c, d):
    """Decide (a, c, d) in S(X R(X)) and hand back the p witnesses g.

    Membership needs c in W and a R(aX) = d R(X) coefficient-wise; the
    witnesses are g(X) = B_c(aX) + B_c(c)/2 + i for i in F_p, each of which
    satisfies f(aX + c) - d f(X) = g^p - g as an exact polynomial identity.
    Returns (ok, witnesses) where witnesses is a list of sparse polynomials.
    """
    F = a.field
    if c.field != F:
        raise DomainError("a and c must live in one field")
    d = int(d) % C.p
    if a.is_zero or d == 0:
        raise DomainError("need a != 0 and d in F_p*")
    if not C.E.embed_into(F)(c).is_zero:
        return False, []
    R = C.R.embed_into(F)
    # a R(aX) = d R(X)  <=>  a^{p^i + 1} a_i = d a_i for every i
    for i, ai in enumerate(R.coeffs):
        if ai.is_zero:
            continue
        if a ** (C.p**i + 1) != F.from_int(d):
            return False, []
    B = curve_mod.b_poly(C, c).B
    base = _sp_from_linearized(B, F, scale_arg=a)
    b0 = B(c) / 2
    witnesses = []
    for i in range(C.p):
        g = _sp_add(base, {0: b0 + i})
        witnesses.append(_sp_trim(g))
    return True, witnesses


def s_identity_holds(C, a, c, d, g):
    """Exact check of f(aX + c) - d f(X) = g(X)^p - g(X) with f = X R(X)."""
    F = a.field
    R = C.R.embed_into(F)
    RaX = _sp_from_linearized(R, F, scale_arg=a)
    Rc = {0: R(c)} if not R(c).is_zero else {}
    lin = {1: a}
    if not c.is_zero:
        lin[0] = c
    lhs = _sp_mul(lin, _sp_add(RaX, Rc))                      # (aX+c) R(aX+c)
    fX = _sp_mul({1: F.one}, _sp_from_linearized(R, F))       # X R(X)
    lhs = _sp_add(lhs, _sp_neg(_sp_scale(fX, F.from_int(d))))
    rhs = _sp_add(_sp_pow_p(g, C.p), _sp_neg(dict(g)))
    return _sp_trim(_sp_add(lhs, _sp_neg(rhs))) == {}


class Aut:
    """A general automorphism sigma_{a,b,c,d}: (x, y) -> (ax + c, dy + b + B_c(ax)).

    Construction enforces the membership conditions: c must lie in W (the
    B_c recursion raises otherwise), a R(aX) = d R(X), and b^p - b = c R(c).
    """

    __slots__ = ("curve", "a", "b", "c", "d", "B")

    def __init__(self, C, a, b, c, d):
        d = int(d) % C.p
        if a.is_zero or d == 0:
            raise DomainError("need a != 0 and d in F_p*")
        B = curve_mod.b_poly(C, c).B
        R = C.R.embed_into(a.field)
        for i, ai in enumerate(R.coeffs):
            if not ai.is_zero and a ** (C.p**i + 1) != a.field.from_int(d):
                raise DomainError("a R(aX) != d R(X): not an automorphism")
        if b ** C.p - b != c * R(c):
            raise DomainError("b^p - b != c R(c): not an automorphism")
        object.__setattr__(self, "curve", C)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "B", B)

    def __setattr__(self, *_):
        raise AttributeError("Aut is immutable")

    def apply(self, point):
        x, y = point
        C = self.curve
        R = C.R.embed_into(x.field)
        if y**C.p - y != x * R(x):
            raise DomainError("point does not satisfy the curve equation")
        a = gf.embed(self.a, x.field) if self.a.field != x.field else self.a
        b = gf.embed(self.b, x.field) if self.b.field != x.field else self.b
        c = gf.embed(self.c, x.field) if self.c.field != x.field else self.c
        ax = a * x
        return (ax + c, self.d * y + b + self.B(ax))


def apply_aut(sigma, point):
    return sigma.apply(point)


# ---------------------------------------------------------------------------
# the p-group P

class PAut:
    """Element of P: the map (x, y) -> (x + c, y + b + B_c(x)) with c in W."""

    __slots__ = ("curve", "c", "b", "B")

    def __init__(self, C, c, b, B=None):
        object.__setattr__(self, "curve", C)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "B", B if B is not None else curve_mod.b_poly(C, c).B)

    def __setattr__(self, *_):
        raise AttributeError("PAut is immutable")

    def __repr__(self):
        return f"PAut(c={list(self.c.coeffs)}, b={list(self.b.coeffs)})"

    def key(self):
        return (self.c.coeffs, self.b.coeffs)

    def __eq__(self, other):
        if not isinstance(other, PAut):
            return NotImplemented
        return self.curve is other.curve and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def is_identity(self):
        return self.c.is_zero and self.b.is_zero

    def __mul__(self, other):
        """Left-to-right product: (self * other) acts by self first."""
        if other.curve is not self.curve:
            raise DomainError("elements of different groups")
        C = self.curve
        c = self.c + other.c
        b = self.b + other.b + other.B(self.c)
        return PAut(C, c, b, self.B + other.B)

    def inverse(self):
        return PAut(self.curve, -self.c, self.B(self.c) - self.b, -self.B)

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            return self.inverse() ** (-n)
        acc = identity(self.curve)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def conjugate_by(self, t):
        """t sigma t^{-1} read left to right: apply t, then self, then t^{-1}."""
        return t * self * t.inverse()

    def order(self):
        k = 1
        acc = self
        while not acc.is_identity:
            acc = acc * self
            k += 1
            if k > self.curve.p + 1:  # pragma: no cover
                raise InvariantViolation("order exceeded p; group law is broken")
        return k

    def apply(self, point):
        x, y = point
        C = self.curve
        R = C.R.embed_into(x.field)
        if y**C.p - y != x * R(x):
            raise DomainError("point does not satisfy the curve equation")
        b = gf.embed(self.b, x.field) if self.b.field != x.field else self.b
        c = gf.embed(self.c, x.field) if self.c.field != x.field else self.c
        return (x + c, y + b + self.B(x))


def identity(C):
    z = C.field_q.zero
    return PAut(C, z, z, LinearizedPoly(C.field_q, []))


def rho(C):
    """The Artin-Schreier translation (x, y) -> (x, y + 1)."""
    return PAut(C, C.field_q.zero, C.field_q.one, LinearizedPoly(C.field_q, []))


def sigma_for(C, c, offset=0):
    """The canonical element above c: b = B_c(c)/2 + offset."""
    bp = curve_mod.b_poly(C, c)
    return PAut(C, c, bp.b + offset, bp.B)


def epsilon(C, c1, c2):
    """The pairing B_{c1}(c2) - B_{c2}(c1), as an integer mod p."""
    val = curve_mod.b_poly(C, c1).B(c2) - curve_mod.b_poly(C, c2).B(c1)
    if any(val.coeffs[1:]):
        raise InvariantViolation("pairing value landed outside F_p")
    return val.coeffs[0]


def commutator(s1, s2):
    """s1 s2 s1^-1 s2^-1, composed left to right (s1 acts first)."""
    return s1 * s2 * s1.inverse() * s2.inverse()


def commutator_rho_power(s1, s2):
    """The integer k with [s1, s2] = rho^k; raises if the commutator is not central."""
    g = commutator(s1, s2)
    if not g.c.is_zero or any(g.b.coeffs[1:]):
        raise InvariantViolation("commutator left the center")
    return g.b.coeffs[0]


class GroupP:
    """The materialised group P with its symplectic pairing on W.

    Verified at build time: cardinality p^{2h+1}, exponent p, agreement of
    the commutator formula with composed maps on every basis pair, and for
    h >= 1 nondegeneracy of the pairing (which pins Z(P) = [P, P] = <rho>).
    """

    def __init__(self, C):
        self.curve = C
        self.rho = rho(C)
        self.w_basis = C.w_basis
        p, h = C.p, C.h
        sigmas = {}
        for c in C.w_elements():
            bp = curve_mod.b_poly(C, c)
            sigmas[c.coeffs] = (c, bp)
        elements = []
        for str_c, (c, bp) in sigmas.items():
            for i in range(p):
                elements.append(PAut(C, c, bp.b + i, bp.B))
        self.elements = elements
        n = len(self.w_basis)
        G = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                G[i, j] = epsilon(C, self.w_basis[i], self.w_basis[j])
        self.gram = G
        self._verify()

    def order(self):
        return len(self.elements)

    def generators(self):
        return [sigma_for(self.curve, c) for c in self.w_basis]

    def center(self):
        """<rho> once the pairing is nondegenerate (h >= 1), all of P at h = 0."""
        if self.curve.h == 0:
            return list(self.elements)
        return [self.rho**i for i in range(self.curve.p)]

    def epsilon_coords(self, u, v):
        """Pairing through the Gram matrix for coordinate vectors over F_p."""
        return int(np.dot(u, self.gram @ v) % self.curve.p)

    def is_extraspecial(self):
        C = self.curve
        if C.h == 0:
            return False
        rank = len(self.gram) - len(gf.fp_linear_kernel(self.gram, C.p))
        return rank == 2 * C.h

    def _verify(self):
        C = self.curve
        p, h = C.p, C.h
        if len(set(self.elements)) != p ** (2 * h + 1):
            raise InvariantViolation("group cardinality is not p^(2h+1)")
        for g in self.elements:
            if not g.is_identity and g.order() != p:
                raise InvariantViolation("element of order != p found")
        gens = self.generators()
        for s1, s2 in itertools.product(gens, repeat=2):
            k = commutator_rho_power(s1, s2)
            e = epsilon(C, s1.c, s2.c)
            if k != (-e) % p:
                raise InvariantViolation("commutator disagrees with the pairing")
        for g in gens:
            if commutator_rho_power(self.rho, g) or commutator_rho_power(g, self.rho):
                raise InvariantViolation("rho is not central")
        if h >= 1 and not self.is_extraspecial():
            raise InvariantViolation("pairing is degenerate on W")


def build_group_p(C):
    """Materialise P; warns when the full automorphism group is strictly larger
    (monic R in {X, X^p}, where it is PGU_3(p) resp. SL_2(p))."""
    if is_special_full_aut(C):
        warnings.warn("R in {X, X^p}: Aut(C_R) strictly exceeds the stabiliser "
                      "of infinity; only the latter is computed", stacklevel=2)
    return GroupP(C)


def is_special_full_aut(C):
    one = C.base.one
    coeffs = C.R.coeffs
    if C.h == 0 and coeffs[0] == one:
        return True
    return C.h == 1 and coeffs[1] == one and coeffs[0].is_zero


# ---------------------------------------------------------------------------
# the prime-to-p part H

def subgroup_h_order(C, budget=None):
    """Order of the cyclic group of maps (x, y) -> (ax, dy).

    Closed form e (p-1)/2 gcd(p^i + 1) over indices with a_i != 0 (e = 2 when
    those indices share a parity); cross-checked by enumerating the solutions
    of a R(aX) = d R(X) in the smallest field that contains them all.
    """
    p = C.p
    active = [i for i, a in enumerate(C.R.coeffs) if not a.is_zero]
    g = 0
    for i in active:
        g = math.gcd(g, p**i + 1)
    parities = {i % 2 for i in active}
    e = 2 if len(parities) == 1 else 1
    order = e * (p - 1) // 2 * g
    # every solution satisfies a^{(p^i+1)(p-1)} = 1, so it lives in mu_M
    M = 0
    for i in active:
        M = math.gcd(M, (p**i + 1) * (p - 1))
    t = 1
    while (p**t - 1) % M:
        t += 1
        if t > linpoly.SPLITTING_DEGREE_CAP:  # pragma: no cover
            raise ResourceBudgetError("solution field for H out of reach")
    limit = gf.enumeration_budget(budget)
    if p**t <= limit:
        F = make_field(p, t)
        R = C.R.embed_into(F)
        count = 0
        for a in gf.enumerate_field(F, budget=budget):
            if a.is_zero:
                continue
            vals = {a ** (p**i + 1) for i in active}
            if len(vals) != 1:
                continue
            d = vals.pop()
            if any(d.coeffs[1:]) or d.coeffs[0] == 0:
                continue
            count += 1
        if count != order:
            raise InvariantViolation(
                f"H order: closed form {order} != enumerated {count}")
    return order


# ---------------------------------------------------------------------------
# symplectic structure on W

def symplectic_basis(C):
    """Basis (c_1..c_h, c'_1..c'_h) of W with eps(c_i, c'_j) the Kronecker
    delta and each half isotropic.

    Symplectic Gram-Schmidt over basis coordinates: always pick the first
    candidate in odometer order, scale partners by the inverse pairing value,
    and restrict to the pairing-complement of the pair just chosen.
    """
    if C.h == 0:
        return [], []
    p = C.p
    n = 2 * C.h
    G = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            G[i, j] = epsilon(C, C.w_basis[i], C.w_basis[j])
    vectors = []
    for idx in range(1, p**n):
        v = np.zeros(n, dtype=np.int64)
        k = idx
        for i in range(n):
            v[i] = k % p
            k //= p
        vectors.append(v)

    def pair(u, v):
        return int(np.dot(u, G @ v) % p)

    constraints = []

    def in_complement(v):
        return all(pair(v, w) == 0 and pair(w, v) == 0 for w in constraints)

    es, fs = [], []
    for _ in range(C.h):
        e = next(v for v in vectors if v.any() and in_complement(v))
        f0 = next(v for v in vectors if in_complement(v) and pair(e, v) != 0)
        scale = pow(pair(e, f0), p - 2, p)
        f = f0 * scale % p
        es.append(e)
        fs.append(f)
        constraints.extend([e, f])

    def to_elem(v):
        acc = C.field_q.zero
        for t, b in zip(v, C.w_basis):
            if t:
                acc = acc + int(t) * b
        return acc

    cs = [to_elem(v) for v in es]
    cps = [to_elem(v) for v in fs]
    for i, ci in enumerate(cs):
        for j, cj in enumerate(cps):
            if epsilon(C, ci, cj) % p != (1 if i == j else 0):
                raise InvariantViolation("symplectic basis failed its Gram check")
        for j, cj in enumerate(cs):
            if epsilon(C, ci, cj) % p:
                raise InvariantViolation("first half is not isotropic")
    for i, ci in enumerate(cps):
        for j, cj in enumerate(cps):
            if epsilon(C, ci, cj) % p:
                raise InvariantViolation("second half is not isotropic")
    return cs, cps


class IsotropicDecomposition:
    """The maximal abelian subgroup calA = <rho, sigma_1..sigma_h> together
    with its partition Z(P) u A_1 u ... u A_p into conjugates of A_p."""

    def __init__(self, group, a_bar_basis, tau, subgroups, cal_a):
        self.group = group
        self.a_bar_basis = a_bar_basis
        self.tau = tau
        self.subgroups = subgroups      # [A_1, ..., A_p], each a frozenset of PAut
        self.cal_a = cal_a              # frozenset, order p^{h+1}


def _span_subgroup(C, gens):
    p = C.p
    out = [identity(C)]
    for g in gens:
        powers = [g**t for t in range(p)]
        out = [x * gp for gp in powers for x in out]
    return frozenset(out)


def isotropic_decomposition(C):
    """Materialise calA and the A_i, and verify the partition plus the
    conjugation relation tau sigma_i tau^{-1} = rho sigma_i."""
    group = GroupP(C)
    if C.h == 0:
        z = frozenset(group.center())
        return IsotropicDecomposition(group, [], identity(C), [], z)
    cs, cps = symplectic_basis(C)
    p = C.p
    sigmas = [sigma_for(C, c) for c in cs]
    a_p = _span_subgroup(C, sigmas)
    c_sum = cps[0]
    for c in cps[1:]:
        c_sum = c_sum + c
    tau = sigma_for(C, c_sum)
    r = rho(C)
    for s in sigmas:
        if s.conjugate_by(tau) != r * s:
            raise InvariantViolation("tau conjugation does not shift by rho")
    subgroups = []
    for i in range(1, p + 1):
        ti = tau**i
        subgroups.append(frozenset(s.conjugate_by(ti) for s in a_p))
    cal_a = frozenset(x * r**j for x in a_p for j in range(p))
    if len(cal_a) != p ** (C.h + 1):
        raise InvariantViolation("calA has the wrong cardinality")
    center = frozenset(group.center())
    union = set(center)
    seen = [center] + subgroups
    ident = identity(C)
    for i, A in enumerate(subgroups):
        if len(A) != p**C.h or not A <= cal_a:
            raise InvariantViolation("A_i is not a p^h subset of calA")
        for Bset in seen[:i + 1]:
            if Bset is A:
                continue
            if A & Bset != {ident}:
                raise InvariantViolation("A_i intersections are not trivial")
        union |= A
    if union != cal_a:
        raise InvariantViolation("partition does not cover calA")
    return IsotropicDecomposition(group, cs, tau, subgroups, cal_a)
