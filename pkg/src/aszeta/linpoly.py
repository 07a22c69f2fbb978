"""Additive (linearized) polynomials sum a_i X^{p^i} over a finite field.

These induce F_p-linear maps on every extension, which is what makes the
whole pipeline exact: kernels are linear algebra over F_p, and composition
is a twisted convolution of coefficient vectors.
"""

from __future__ import annotations

import numpy as np

from .errors import (DivisibilityError, DomainError, FieldMismatchError,
                     InvariantViolation, ResourceBudgetError)
from . import gf

SPLITTING_DEGREE_CAP = 64


class LinearizedPoly:
    """sum a_i X^{p^i} with coefficients in one field; the zero polynomial
    has an empty coefficient tuple.  Instances are immutable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = tuple(coeffs)
        while coeffs and coeffs[-1].is_zero:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("LinearizedPoly is immutable")

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(v) for v in ints])

    @classmethod
    def x(cls, field):
        return cls(field, [field.one])

    @classmethod
    def monomial(cls, field, i, coeff=None):
        """coeff * X^{p^i}."""
        c = field.one if coeff is None else coeff
        return cls(field, [field.zero] * i + [c])

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def h(self):
        """Index of the top nonzero coefficient; the degree is p^h."""
        if self.is_zero:
            raise DomainError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def degree(self):
        return self.field.p ** self.h

    def __repr__(self):
        if self.is_zero:
            return "LinearizedPoly(0)"
        parts = [f"({list(c.coeffs)})X^{self.field.p}^{i}" for i, c in enumerate(self.coeffs)]
        return "LinearizedPoly(" + " + ".join(parts) + ")"

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    # -- algebra -----------------------------------------------------------
    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if self.field != other.field:
            raise FieldMismatchError("additive polynomials over different fields")
        if len(a) < len(b):
            a, b = b, a
        z = self.field.zero
        out = [ai + (b[i] if i < len(b) else z) for i, ai in enumerate(a)]
        return LinearizedPoly(self.field, out)

    def __neg__(self):
        return LinearizedPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Left multiplication by a constant: c * L(X)."""
        return LinearizedPoly(self.field, [c * a for a in self.coeffs])

    def __call__(self, x):
        """Evaluate at x, embedding the coefficients into x's field if needed."""
        fx = x.field
        if fx == self.field:
            cs = self.coeffs
        else:
            if fx.p != self.field.p or fx.m % self.field.m:
                raise FieldMismatchError(
                    "argument field does not contain the coefficient field")
            cs = [gf.embed(c, fx) for c in self.coeffs]
        acc = fx.zero
        t = x
        for i, c in enumerate(cs):
            if i:
                t = t ** fx.p
            if not c.is_zero:
                acc = acc + c * t
        return acc

    def compose(self, other):
        """L(M(X)): twisted convolution c_k = sum a_i * b_j^{p^i} over i+j=k."""
        if self.field != other.field:
            raise FieldMismatchError("compose needs a common coefficient field")
        if self.is_zero or other.is_zero:
            return LinearizedPoly(self.field, [])
        p = self.field.p
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ai in enumerate(self.coeffs):
            if ai.is_zero:
                continue
            for j, bj in enumerate(other.coeffs):
                if bj.is_zero:
                    continue
                out[i + j] = out[i + j] + ai * bj.frobenius(i)
        return LinearizedPoly(self.field, out)

    def frobenius_twist(self):
        """L(X)^p as a linearized polynomial: coefficients to the p, indices + 1."""
        if self.is_zero:
            return self
        z = self.field.zero
        return LinearizedPoly(self.field, [z] + [c ** self.field.p for c in self.coeffs])

    def embed_into(self, target):
        """The same polynomial with coefficients pushed into a larger field."""
        if target == self.field:
            return self
        return LinearizedPoly(target, [gf.embed(c, target) for c in self.coeffs])

    def linmap_matrix(self, ambient):
        """Integer matrix of x -> L(x) on ambient coordinates (row convention:
        coords(L(x)) = coords(x) @ A)."""
        m = ambient.m
        rows = []
        for i in range(m):
            e = ambient.from_index(ambient.p**i if i else 1)
            rows.append(self(e).coeffs)
        return np.array(rows, dtype=np.int64)


def build_E(R):
    """The separable companion of R: R(X)^{p^h} plus sum (a_i X)^{p^{h-i}}.

    Degree p^{2h}; its formal derivative is the constant a_h, which is the
    separability witness checked here.
    """
    if R.is_zero:
        raise DomainError("R must be a nonzero additive polynomial")
    h = R.h
    z = R.field.zero
    out = [z] * (2 * h + 1)
    p = R.field.p
    for i, a in enumerate(R.coeffs):
        if a.is_zero:
            continue
        out[h + i] = out[h + i] + a.frobenius(h)          # from R^{p^h}
        out[h - i] = out[h - i] + a.frobenius(h - i)      # from (a_i X)^{p^{h-i}}
    E = LinearizedPoly(R.field, out)
    # derivative of E is a_h for h >= 1 (both summands land there for h = 0)
    expected = R.coeffs[h] if h >= 1 else 2 * R.coeffs[0]
    if E.is_zero or E.coeffs[0] != expected:
        raise InvariantViolation("E is not separable: unexpected derivative")
    return E


def kernel_basis(L, ambient):
    """Deterministic F_p-basis of { x in ambient : L(x) = 0 }.

    The map is expressed on the ambient coordinate space and handed to the
    F_p kernel routine; every returned element is re-checked against L.
    """
    if L.is_zero:
        raise DomainError("kernel of the zero map is the whole field")
    Lx = L.embed_into(ambient) if ambient != L.field else L
    A = Lx.linmap_matrix(ambient)
    vecs = gf.fp_linear_kernel(A.T, ambient.p)
    out = []
    for v in vecs:
        x = ambient.element(v)
        if not Lx(x).is_zero:  # pragma: no cover
            raise InvariantViolation("kernel vector fails to annihilate")
        out.append(x)
    return out


def splitting_degree(L, cap=SPLITTING_DEGREE_CAP):
    """Minimal m (multiple of the coefficient degree r) with full kernel.

    Walks m = r, 2r, 3r, ... computing the kernel dimension in F_{p^m} until
    it reaches log_p(deg L); a hard cap turns a runaway search into an
    explicit resource error.
    """
    if L.is_zero:
        raise DomainError("zero polynomial has no splitting field")
    if L.coeffs[0].is_zero:
        raise DomainError("polynomial is not separable (derivative vanishes)")
    p = L.field.p
    r = L.field.m
    want = L.h
    m = r
    while m <= cap:
        F = gf.make_field(p, m)
        if len(kernel_basis(L, F)) == want:
            return m
        m += r
    raise ResourceBudgetError(
        f"splitting degree exceeds cap {cap}", required=None, budget=cap)


def left_decompose(theta_target, U):
    """theta with theta(U(X)) = Theta(X), for U of degree p.

    Peels the top coefficient of Theta against the top of U and recurses;
    a nonzero remainder means ker U was not inside ker Theta and raises a
    divisibility error (the upstream constant was not in W).
    """
    if U.is_zero or U.h != 1:
        raise DomainError("U must have degree p")
    if theta_target.is_zero:
        return LinearizedPoly(theta_target.field, [])
    field = theta_target.field
    Uc = U.embed_into(field) if U.field != field else U
    u0, u1 = Uc.coeffs[0], Uc.coeffs[1]
    n = theta_target.h
    if n < 1:
        raise DivisibilityError("Theta has smaller degree than U",
                                remainder=theta_target)
    rem = list(theta_target.coeffs)
    z = field.zero
    mu = [z] * n
    for k in range(n, 0, -1):
        m_k = rem[k] / u1.frobenius(k - 1)
        mu[k - 1] = m_k
        rem[k] = z
        rem[k - 1] = rem[k - 1] - m_k * u0.frobenius(k - 1)
    if any(not c.is_zero for c in rem):
        raise DivisibilityError("left decomposition has a nonzero remainder",
                                remainder=LinearizedPoly(field, rem))
    theta = LinearizedPoly(field, mu)
    if theta.compose(Uc) != theta_target:  # pragma: no cover
        raise InvariantViolation("left decomposition failed to round-trip")
    return theta
