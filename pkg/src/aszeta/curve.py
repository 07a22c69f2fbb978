"""The curve Y^p - Y = X R(X): genus, the kernel space W, the B_c family,
and two independent point counts (brute-force oracle and quadratic-form).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import gf, linpoly
from .errors import DomainError, InvariantViolation, NotInKernelError, ResourceBudgetError
from .gf import make_field, trace_to_prime
from .linpoly import LinearizedPoly

_CHUNK = 1 << 15


class Curve:
    """Immutable model of C_R over F_{p^r}, with the splitting-field data
    of its companion polynomial E precomputed.

    Attributes: p, r, base, R, h, genus, E, q_degree, field_q (the splitting
    field of E), R_q / E_q (coefficients pushed into field_q), w_basis (a
    deterministic F_p-basis of W inside field_q).
    """

    __slots__ = ("p", "r", "base", "R", "h", "genus", "E", "q_degree",
                 "field_q", "R_q", "E_q", "w_basis")

    def __init__(self, base, R):
        p = base.p
        if p < 3:
            raise DomainError("only odd characteristic is supported")
        if R.is_zero:
            raise DomainError("R must be nonzero")
        h = R.h
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "r", base.m)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "genus", p**h * (p - 1) // 2)
        E = linpoly.build_E(R)
        object.__setattr__(self, "E", E)
        qd = linpoly.splitting_degree(E)
        object.__setattr__(self, "q_degree", qd)
        Fq = make_field(p, qd)
        object.__setattr__(self, "field_q", Fq)
        object.__setattr__(self, "R_q", R.embed_into(Fq))
        object.__setattr__(self, "E_q", E.embed_into(Fq))
        wb = tuple(linpoly.kernel_basis(E, Fq))
        if len(wb) != 2 * h:
            raise InvariantViolation(
                f"dim W = {len(wb)} in the splitting field, expected {2 * h}")
        object.__setattr__(self, "w_basis", wb)

    def __setattr__(self, *_):
        raise AttributeError("Curve is immutable")

    def __repr__(self):
        return (f"Curve(p={self.p}, r={self.r}, h={self.h}, genus={self.genus}, "
                f"q=p^{self.q_degree})")

    def coeff_field_for(self, s):
        if s % self.r:
            raise DomainError(f"s={s} is not a multiple of r={self.r}")
        return make_field(self.p, s)

    def w_elements(self):
        """All p^{2h} elements of W in basis-odometer order (first basis
        coefficient moves fastest)."""
        p = self.p
        vals = []
        for idx in range(p ** len(self.w_basis)):
            acc = self.field_q.zero
            k = idx
            for b in self.w_basis:
                t = k % p
                if t:
                    acc = acc + t * b
                k //= p
            vals.append(acc)
        return vals


def make_curve(p, r, coeffs):
    """Build a Curve from plain data.

    coeffs lists a_0..a_h; each entry is an int (prime subfield) or a
    length-r residue vector in the power basis of F_{p^r}.
    """
    base = make_field(p, r)
    lifted = []
    for a in coeffs:
        if isinstance(a, int):
            lifted.append(base.from_int(a))
        elif isinstance(a, gf.FieldElem):
            if a.field != base:
                raise DomainError("coefficient belongs to a different field")
            lifted.append(a)
        else:
            lifted.append(base.element(a))
    R = LinearizedPoly(base, lifted)
    if R.is_zero:
        raise DomainError("R must be nonzero")
    return Curve(base, R)


# ---------------------------------------------------------------------------
# the B_c polynomials (existence certifies c in W)

class BPoly:
    """B_c with B^p - B = c R(X) + R(c) X, built by the coefficient recursion
    b_0 = -c a_0 - R(c), b_i = -c a_i + b_{i-1}^p; the residual
    b_{h-1}^p - c a_h must vanish exactly when c lies in W."""

    __slots__ = ("c", "B", "b")

    def __init__(self, c, B, b):
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "b", b)

    def __setattr__(self, *_):
        raise AttributeError("BPoly is immutable")

    def __repr__(self):
        return f"BPoly(c={list(self.c.coeffs)})"


def b_poly(C, c):
    """The BPoly for a translation constant c (raises if c is not in W)."""
    F = c.field
    if F.p != C.p or F.m % C.r:
        raise DomainError("c must live in an extension of the coefficient field")
    R = C.R.embed_into(F)
    zero_B = LinearizedPoly(F, [])
    if C.h == 0:
        if not c.is_zero:
            raise NotInKernelError("W = {0} when h = 0", residual=C.E.embed_into(F)(c))
        return BPoly(c, zero_B, F.zero)
    coeffs = list(R.coeffs) + [F.zero] * (C.h + 1 - len(R.coeffs))
    p = C.p
    Rc = R(c)
    b = [-(c * coeffs[0]) - Rc]
    for i in range(1, C.h):
        b.append(-(c * coeffs[i]) + b[i - 1] ** p)
    residual = b[C.h - 1] ** p - c * coeffs[C.h]
    if not residual.is_zero:
        raise NotInKernelError("c is not in W (nonzero recursion residual)",
                               residual=residual)
    B = LinearizedPoly(F, b)
    b_canonical = B(c) / 2
    return BPoly(c, B, b_canonical)


def w_space(C, s):
    """Basis of W(F_{p^s}) computed two independent ways.

    (i) kernel of the symmetrised trace condition Tr(c R(y) + y R(c)) = 0
    for all y, as an F_p-linear system; (ii) roots of E in F_{p^s}.  The two
    spans must agree; the basis from (ii) is returned.
    """
    F = C.coeff_field_for(s)
    R = C.R.embed_into(F)
    p, m = F.p, F.m
    basis_elems = [F.from_index(p**i if i else 1) for i in range(m)]
    R_of_basis = [R(e) for e in basis_elems]
    # rows: condition for y = e_j; cols: coordinates of c
    mat = np.zeros((m, m), dtype=np.int64)
    for j, (ej, Rej) in enumerate(zip(basis_elems, R_of_basis)):
        for i, (ei, Rei) in enumerate(zip(basis_elems, R_of_basis)):
            mat[j, i] = trace_to_prime(ei * Rej + ej * Rei)
    bilinear_vecs = gf.fp_linear_kernel(mat, p)
    kern = linpoly.kernel_basis(C.E, F)
    span_a = gf.fp_row_space([v for v in bilinear_vecs], p) if bilinear_vecs else ()
    span_b = gf.fp_row_space([list(x.coeffs) for x in kern], p) if kern else ()
    if span_a != span_b:
        raise InvariantViolation("bilinear-form kernel disagrees with roots of E")
    return kern


# ---------------------------------------------------------------------------
# brute-force point counting (the oracle)

def _linmap_matrix_ints(L, F):
    return L.embed_into(F).linmap_matrix(F) if L.field != F else L.linmap_matrix(F)


def _trace_zero_chunk(p, m, conv, trvec, Amat, lo, hi):
    n = hi - lo
    idx = np.arange(lo, hi, dtype=np.int64)
    X = np.empty((n, m), dtype=np.int64)
    q = idx
    for i in range(m):
        X[:, i] = q % p
        q = q // p
    RX = X @ Amat % p
    Z = np.einsum("ni,nj->nij", X, RX).reshape(n, m * m) @ conv % p
    tr = Z @ trvec % p
    return int(np.count_nonzero(tr == 0))


def _oracle_worker(args):
    p, m, coeff_vectors, lo, hi = args
    F = make_field(p, m)
    L = LinearizedPoly(F, [F.element(v) for v in coeff_vectors])
    A = L.linmap_matrix(F)
    return _trace_zero_chunk(p, m, F.np_conv, F.np_trace, A, lo, hi)


def count_points_oracle(C, s, budget=None, jobs=None):
    """#C_R(F_{p^s}) by enumerating every x and solving in y.

    Each x with Tr(x R(x)) = 0 contributes p affine points, and the single
    point at infinity is defined over every extension.  The enumeration is
    vectorised in chunks; partial counts are summed, so any partitioning of
    the range gives the same answer.
    """
    F = C.coeff_field_for(s)
    limit = gf.enumeration_budget(budget)
    if F.order > limit:
        raise ResourceBudgetError(
            f"oracle over {F.order} elements exceeds budget {limit}",
            required=F.order, budget=limit)
    R = C.R.embed_into(F)
    A = R.linmap_matrix(F)
    p, m = F.p, F.m
    ranges = [(lo, min(lo + _CHUNK, F.order)) for lo in range(0, F.order, _CHUNK)]
    if jobs and jobs > 1 and len(ranges) > 1:
        coeff_vectors = [list(c.coeffs) for c in R.coeffs]
        work = [(p, m, coeff_vectors, lo, hi) for lo, hi in ranges]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            zeros = sum(pool.map(_oracle_worker, work))
    else:
        zeros = sum(_trace_zero_chunk(p, m, F.np_conv, F.np_trace, A, lo, hi)
                    for lo, hi in ranges)
    return 1 + p * zeros


def affine_points(C, s, limit=None):
    """Yield affine points (x, y) of C_R over F_{p^s} in enumeration order."""
    F = C.coeff_field_for(s)
    R = C.R.embed_into(F)
    count = 0
    for x in gf.enumerate_field(F):
        rhs = x * R(x)
        if trace_to_prime(rhs) != 0:
            continue
        for y in gf.enumerate_field(F):
            if y**C.p - y == rhs:
                yield (x, y)
                count += 1
                if limit is not None and count >= limit:
                    return


# ---------------------------------------------------------------------------
# quadratic-form point counting

def diagonalize_form(gram, p):
    """Congruent diagonalisation of a symmetric matrix over F_p (p odd).

    Symmetric row/column elimination; rank deficiency is allowed and shows
    up as zero diagonal entries.  Returns the list of diagonal residues.
    """
    A = np.array(gram, dtype=np.int64) % p
    n = A.shape[0]
    if A.shape != (n, n) or ((A - A.T) % p).any():
        raise DomainError("expected a symmetric square matrix")
    for k in range(n):
        if A[k, k] % p == 0:
            nz = [j for j in range(k + 1, n) if A[k, j] % p]
            if not nz:
                continue  # the whole cross at k is zero; zero rows pass through
            j = nz[0]
            if A[j, j] % p:
                A[[k, j]] = A[[j, k]]
                A[:, [k, j]] = A[:, [j, k]]
            else:
                # row/col addition creates the pivot 2 A[k, j] (p is odd)
                A[k] = (A[k] + A[j]) % p
                A[:, k] = (A[:, k] + A[:, j]) % p
        inv = pow(int(A[k, k]), p - 2, p)
        for i in range(k + 1, n):
            f = int(A[i, k]) * inv % p
            if f:
                A[i] = (A[i] - f * A[k]) % p
                A[:, i] = (A[:, i] - f * A[:, k]) % p
    return [int(A[i, i]) % p for i in range(n)]


def quadric_zero_count(diag, p):
    """Cardinality of the zero locus of a nondegenerate diagonal quadric
    over F_p in n variables (n = len(diag); every entry must be nonzero).

    n odd gives p^{n-1}; n even corrects by p^{n/2} - p^{n/2-1}, with the
    sign read off the square class of (-1)^{n/2} times the entry product."""
    n = len(diag)
    if n == 0:
        return 1
    if any(d % p == 0 for d in diag):
        raise DomainError("the closed zero count needs a nondegenerate form")
    if n % 2 == 1:
        return p ** (n - 1)
    prod = 1
    for d in diag:
        prod = prod * d % p
    disc = (-1) ** (n // 2) * prod % p
    square = pow(disc, (p - 1) // 2, p) == 1
    bump = p ** (n // 2) - p ** (n // 2 - 1)
    return p ** (n - 1) + (bump if square else -bump)


def v_space_representatives(C, s):
    """Deterministic coordinate representatives of V_s = F_{p^s}/W(F_{p^s}).

    The W basis is completed to a full basis by taking the standard basis
    vectors on non-pivot columns in increasing order (Gaussian completion).
    """
    F = C.coeff_field_for(s)
    wb = w_space(C, s)
    p, m = F.p, F.m
    if wb:
        _, pivots = gf.fp_rref([list(x.coeffs) for x in wb], p)
    else:
        pivots = []
    reps = []
    for j in range(m):
        if j not in pivots:
            v = [0] * m
            v[j] = 1
            reps.append(F.element(v))
    return wb, reps


def gram_matrix(C, s):
    """Gram matrix of Q_s on the chosen V_s representatives (entries in F_p)."""
    F = C.coeff_field_for(s)
    wb, reps = v_space_representatives(C, s)
    R = C.R.embed_into(F)
    inv2 = pow(2, C.p - 2, C.p)
    n = len(reps)
    G = np.zeros((n, n), dtype=np.int64)
    Rv = [R(v) for v in reps]
    for i in range(n):
        for j in range(i, n):
            t = trace_to_prime(reps[i] * Rv[j] + reps[j] * Rv[i]) * inv2 % C.p
            G[i, j] = t
            G[j, i] = t
    return wb, G


def count_points_quadric(C, s):
    """#C_R(F_{p^s}) through the nondegenerate quadric on V_s:
    p^{w_s + 1} * N0 + 1 with N0 the closed-form zero count."""
    wb, G = gram_matrix(C, s)
    w_s = len(wb)
    n_s = G.shape[0]
    diag = diagonalize_form(G, C.p)
    if any(d == 0 for d in diag):
        raise InvariantViolation("Q_s degenerated on V_s; this is a bug")
    n0 = quadric_zero_count(diag, C.p)
    return C.p ** (w_s + 1) * n0 + 1
