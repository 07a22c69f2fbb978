"""Exact arithmetic in finite fields F_{p^m} for odd primes p.

Elements are dense coefficient vectors in the power basis of a deterministic
defining polynomial (the lexicographically smallest monic irreducible, with
coefficients compared low degree first).  Everything is integer arithmetic;
no floating point appears anywhere.  Cross-field compatibility is only ever
obtained through an explicit embedding, never by representation coincidence.
"""

from __future__ import annotations

import functools
import itertools
import os

import numpy as np

from .errors import (DomainError, EmbeddingError, FieldMismatchError,
                     InvariantViolation, ResourceBudgetError)

DEFAULT_BUDGET = 10**6


def enumeration_budget(budget=None):
    """Resolve the element-enumeration budget (argument, then env, then default)."""
    if budget is not None:
        return int(budget)
    env = os.environ.get("ASZETA_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


# ---------------------------------------------------------------------------
# dense polynomial arithmetic over F_p (internal; coefficients low to high)

def _pm_trim(a):
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _pm_mulmod(a, b, f, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _pm_mod(out, f, p)


def _pm_mod(a, f, p):
    a = [v % p for v in a]
    df = len(f) - 1
    for k in range(len(a) - 1, df - 1, -1):
        c = a[k]
        if c:
            a[k] = 0
            for t in range(df):
                a[k - df + t] = (a[k - df + t] - c * f[t]) % p
    return _pm_trim(a)


def _pm_powmod(base, e, f, p):
    result = [1]
    acc = _pm_mod(list(base), f, p)
    while e:
        if e & 1:
            result = _pm_mulmod(result, acc, f, p)
        acc = _pm_mulmod(acc, acc, f, p)
        e >>= 1
    return result


def _pm_gcd(a, b, p):
    a, b = _pm_trim([v % p for v in a]), _pm_trim([v % p for v in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [v * inv % p for v in b]
        r = list(a)
        db, da = len(b) - 1, len(r) - 1
        while len(r) - 1 >= db and r:
            c = r[-1]
            shift = len(r) - 1 - db
            if c:
                for t in range(len(b)):
                    r[shift + t] = (r[shift + t] - c * b[t]) % p
            r = _pm_trim(r)
            if not r:
                break
        a, b = b, r
    return a


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_is_irreducible(f, p):
    """Distinct-degree style test: x^{p^m} = x mod f and proper-degree gcds trivial."""
    m = len(f) - 1
    if m == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    t = list(x)
    powers = {}
    for j in range(1, m + 1):
        t = _pm_powmod(t, p, f, p)
        powers[j] = t
    if _pm_trim([(a - b) % p for a, b in itertools.zip_longest(powers[m], x, fillvalue=0)]):
        return False
    for ell in _prime_factors(m):
        d = m // ell
        diff = [(a - b) % p for a, b in itertools.zip_longest(powers[d], x, fillvalue=0)]
        g = _pm_gcd(f, diff, p)
        if len(g) - 1 != 0:
            return False
    return True


def is_probable_prime(n):
    """Deterministic Miller-Rabin for the integer sizes used here (< 3.3e24)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# field descriptors and elements

class FieldDesc:
    """A concrete finite field F_{p^m} with a fixed defining polynomial.

    Construct through :func:`make_field`, which guarantees determinism and
    caches descriptors so equal inputs share one object.
    """

    __slots__ = ("p", "m", "poly", "order", "_red_rows", "_np_conv",
                 "_np_trace", "_zero", "_one")

    def __init__(self, p, m, poly):
        self.p = p
        self.m = m
        self.poly = poly          # monic, length m+1, low degree first
        self.order = p**m
        # coordinates of alpha^k for k in [m, 2m-2]
        rows = []
        prev = tuple((-poly[t]) % p for t in range(m))
        rows.append(prev)
        for _ in range(m - 2):
            shifted = (0,) + prev[: m - 1]
            top = prev[m - 1]
            prev = tuple((shifted[t] + top * rows[0][t]) % p for t in range(m))
            rows.append(prev)
        self._red_rows = tuple(rows)
        self._np_conv = None
        self._np_trace = None
        self._zero = FieldElem(self, (0,) * m)
        self._one = FieldElem(self, (1,) + (0,) * (m - 1))

    def __repr__(self):
        return f"FieldDesc(p={self.p}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, FieldDesc):
            return NotImplemented
        return self.p == other.p and self.m == other.m and self.poly == other.poly

    def __hash__(self):
        return hash((self.p, self.m, self.poly))

    def __reduce__(self):
        # unpickle through make_field so workers share the cached descriptor
        return (make_field, (self.p, self.m))

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def element(self, coeffs):
        """Element from a coefficient sequence (low degree first, mod p)."""
        coeffs = tuple(int(v) % self.p for v in coeffs)
        if len(coeffs) != self.m:
            raise DomainError(f"expected {self.m} coefficients, got {len(coeffs)}")
        return FieldElem(self, coeffs)

    def from_int(self, k):
        """The prime-subfield element k mod p."""
        return FieldElem(self, (int(k) % self.p,) + (0,) * (self.m - 1))

    def from_index(self, n):
        """The n-th element in canonical enumeration order (base-p odometer)."""
        p = self.p
        return FieldElem(self, tuple((n // p**i) % p for i in range(self.m)))

    # lazily built integer tables used by the vectorised point counter
    @property
    def np_conv(self):
        if self._np_conv is None:
            m = self.m
            red = np.zeros((2 * m - 1, m), dtype=np.int64)
            for k in range(m):
                red[k, k] = 1
            for k in range(m, 2 * m - 1):
                red[k] = self._red_rows[k - m]
            conv = np.zeros((m * m, m), dtype=np.int64)
            for i in range(m):
                for j in range(m):
                    conv[i * m + j] = red[i + j]
            self._np_conv = conv
        return self._np_conv

    @property
    def np_trace(self):
        if self._np_trace is None:
            vec = [trace_to_prime(self.from_index(self.p**i if i else 1))
                   for i in range(self.m)]
            # from_index(p**i) is alpha^i
            self._np_trace = np.array(vec, dtype=np.int64)
        return self._np_trace


class FieldElem:
    """An element of a :class:`FieldDesc`, immutable and hashable.

    Supports ``+ - * / **`` against elements of the same field and against
    plain integers (interpreted in the prime subfield).
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("FieldElem is immutable")

    # -- basic protocol ----------------------------------------------------
    def __repr__(self):
        return f"FieldElem({list(self.coeffs)} over p={self.field.p}, m={self.field.m})"

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    @property
    def is_zero(self):
        return not any(self.coeffs)

    def index(self):
        """Position in the canonical enumeration order."""
        p = self.field.p
        return sum(c * p**i for i, c in enumerate(self.coeffs))

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"mixed fields: {self.field!r} vs {other.field!r}; embed explicitly")
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElem(self.field,
                         tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElem(self.field,
                         tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        f = self.field
        p, m = f.p, f.m
        full = [0] * (2 * m - 1)
        for i, ai in enumerate(self.coeffs):
            if ai:
                for j, bj in enumerate(o.coeffs):
                    if bj:
                        full[i + j] += ai * bj
        out = full[:m]
        for k in range(m, 2 * m - 1):
            ck = full[k]
            if ck:
                row = f._red_rows[k - m]
                for t in range(m):
                    if row[t]:
                        out[t] += ck * row[t]
        return FieldElem(f, tuple(v % p for v in out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        acc = self.field.one
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def frobenius(self, j=1):
        """x^{p^j}; j = m is the identity."""
        out = self
        for _ in range(j % self.field.m):
            out = out ** self.field.p
        return out


@functools.lru_cache(maxsize=None)
def make_field(p, m):
    """Deterministic F_{p^m}: lexicographically smallest monic irreducible.

    Low-order coefficients weigh most in the comparison, so the search
    enumerates (a_0, a_1, ..., a_{m-1}) with a_0 varying slowest.  For m >= 2
    any polynomial with a_0 = 0 is divisible by X, so the scan starts at
    a_0 = 1.
    """
    p, m = int(p), int(m)
    if p < 3 or not is_probable_prime(p):
        raise DomainError(f"p must be an odd prime, got {p}")
    if m < 1:
        raise DomainError(f"extension degree must be >= 1, got {m}")
    if m == 1:
        return FieldDesc(p, 1, (0, 1))
    for lead in itertools.product(range(1, p), *([range(p)] * (m - 1))):
        f = tuple(lead) + (1,)
        if _poly_is_irreducible(list(f), p):
            return FieldDesc(p, m, f)
    raise InvariantViolation(f"no irreducible of degree {m} over F_{p}")  # pragma: no cover


def frobenius(x, j):
    """x^{p^j} for a nonnegative integer j."""
    if j < 0:
        raise DomainError("frobenius exponent must be nonnegative")
    out = x
    for _ in range(j):
        out = out ** x.field.p
    return out


def trace_to_prime(x):
    """Trace down to F_p, returned as an integer residue in [0, p)."""
    acc = x
    t = x
    for _ in range(x.field.m - 1):
        t = t ** x.field.p
        acc = acc + t
    if any(acc.coeffs[1:]):
        raise InvariantViolation("trace landed outside the prime subfield")
    return acc.coeffs[0]


def is_square(x):
    """Quadratic residue test x^{(p^m - 1)/2} == 1; zero is rejected."""
    if x.is_zero:
        raise DomainError("is_square is undefined at zero")
    return x ** ((x.field.order - 1) // 2) == x.field.one


def enumerate_field(field, budget=None):
    """Yield every element once, as a base-p odometer with the low digit fastest."""
    limit = enumeration_budget(budget)
    if field.order > limit:
        raise ResourceBudgetError(
            f"enumeration of {field.order} elements exceeds budget {limit}",
            required=field.order, budget=limit)
    p, m = field.p, field.m
    coeffs = [0] * m
    for _ in range(field.order):
        yield FieldElem(field, tuple(coeffs))
        for i in range(m):
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0


def least_nonsquare(field):
    """The first nonsquare in canonical enumeration order."""
    for i in range(1, field.order):
        x = field.from_index(i)
        if not is_square(x):
            return x
    raise DomainError("field of order <= 2 has no nonsquare")  # pragma: no cover


# ---------------------------------------------------------------------------
# F_p linear algebra

def fp_rref(matrix, p):
    """Row-reduced echelon form over F_p. Returns (array, pivot column list)."""
    a = np.array(matrix, dtype=np.int64).reshape(len(matrix), -1) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def fp_linear_kernel(matrix, p):
    """Deterministic basis of the right kernel of an F_p matrix.

    Returns a list of integer vectors of length ncols; dimension equals
    ncols - rank.  Free columns are taken in increasing order, so equal
    inputs give identical bases.
    """
    a = np.array(matrix, dtype=np.int64)
    if a.ndim != 2:
        raise DomainError("kernel expects a 2-d matrix")
    rref, pivots = fp_rref(a, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = np.zeros(cols, dtype=np.int64)
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-rref[i, fc]) % p
        basis.append(v)
    return basis


def fp_row_space(matrix, p):
    """Canonical form of the row space: RREF rows with zero rows dropped."""
    if len(matrix) == 0:
        return ()
    rref, pivots = fp_rref(matrix, p)
    return tuple(tuple(int(v) for v in rref[i]) for i in range(len(pivots)))


# ---------------------------------------------------------------------------
# subfield embeddings

_EMBED_CACHE = {}


def _embedding_powers(src, dst):
    key = (src, dst)
    cached = _EMBED_CACHE.get(key)
    if cached is not None:
        return cached
    if src.p != dst.p:
        raise EmbeddingError("embeddings only exist in equal characteristic")
    if dst.m % src.m:
        raise EmbeddingError(f"F_{src.p}^{src.m} does not embed in F_{dst.p}^{dst.m}")
    p, a, m = src.p, src.m, dst.m
    if a == 1:
        powers = (dst.one,)
        _EMBED_CACHE[key] = powers
        return powers
    # the subfield of size p^a is the kernel of x -> x^{p^a} - x
    rows = []
    for i in range(m):
        e = dst.from_index(p**i if i else 1)
        img = frobenius(e, a) - e
        rows.append(img.coeffs)
    mat = np.array(rows, dtype=np.int64).T
    basis = fp_linear_kernel(mat, p)
    if len(basis) != a:  # pragma: no cover
        raise InvariantViolation("subfield dimension mismatch")
    roots = []
    for combo in itertools.product(range(p), repeat=a):
        vec = np.zeros(m, dtype=np.int64)
        for t, bv in zip(combo, basis):
            vec = (vec + t * bv) % p
        x = dst.element(vec)
        # Horner evaluation of the source defining polynomial
        acc = dst.from_int(src.poly[a])
        for k in range(a - 1, -1, -1):
            acc = acc * x + src.poly[k]
        if acc.is_zero:
            roots.append(x)
    if len(roots) != a:  # pragma: no cover
        raise InvariantViolation("defining polynomial did not split in the subfield")
    rho = min(roots, key=lambda e: e.index())
    powers = [dst.one]
    for _ in range(a - 1):
        powers.append(powers[-1] * rho)
    powers = tuple(powers)
    _EMBED_CACHE[key] = powers
    return powers


def embed(x, target):
    """Deterministic ring embedding of x into a field of degree divisible by its own.

    The image of the source generator is the enumeration-least root of the
    source defining polynomial inside the target.  Tower compatibility across
    chained embeddings is deliberately not promised; route computations
    through one ambient field.
    """
    if x.field == target:
        return x
    powers = _embedding_powers(x.field, target)
    acc = target.zero
    for c, w in zip(x.coeffs, powers):
        if c:
            acc = acc + c * w
    return acc
