"""Exact arithmetic in GF(p^n) for odd p, plus the quadratic-character gadgets.

Elements are fully reduced polynomial residues over GF(p).  Every (p, n) pair
gets one canonical modulus, the lexicographically least monic irreducible, so
field descriptors and element encodings are reproducible across runs.

Subfields of a finite field are unique as subsets, so trace, norm, sgn and the
Lang map are computed intrinsically: an argument "lives in GF(p^m)" exactly
when it is fixed by the m-th power Frobenius, no explicit embedding needed.
Embeddings between distinct descriptors exist (``embed``) for moving parsed
small-field constants into a scenario's ambient field.
"""

from __future__ import annotations

import functools
from typing import Optional

from .errors import (
    FieldMismatch,
    NotNormOne,
    NotQuadratic,
    TooLarge,
    ZeroInput,
    ZeroInversion,
)

# Exhaustive searches (Lang map, subfield listing) are only attempted below
# this many field elements.
EXHAUSTION_CAP = 5000


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(p, a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    q = [0] * max(0, len(a) - db)
    while len(_poly_trim(a)) - 1 >= db and a:
        a = list(_poly_trim(a))
        if len(a) - 1 < db:
            break
        coef = (a[-1] * inv_lb) % p
        shift = len(a) - 1 - db
        q[shift] = coef
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - coef * b[i]) % p
    return _poly_trim(q), _poly_trim(a)


def _poly_mod(p, a, m):
    return _poly_divmod(p, a, m)[1]


@functools.lru_cache(maxsize=1 << 20)
def _mulmod(p, mod, a, b):
    return _poly_mod(p, _poly_mul(p, a, b), mod)


@functools.lru_cache(maxsize=1 << 20)
def _addmod(p, a, b):
    n = max(len(a), len(b))
    return _poly_trim(
        [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
    )


def _powmod(p, mod, a, e):
    result = (1,)
    base = a
    while e:
        if e & 1:
            result = _mulmod(p, mod, result, base)
        base = _mulmod(p, mod, base, base)
        e >>= 1
    return result


def _poly_sub(p, a, b):
    n = max(len(a), len(b))
    return _poly_trim(
        [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    )


def _is_irreducible(p, f):
    """Rabin test: f monic of degree n over GF(p)."""
    n = len(f) - 1
    x = (0, 1)
    xq = _powmod(p, f, x, p**n)
    if _poly_sub(p, xq, x):
        return False
    for ell in sorted({d for d in range(2, n + 1) if d <= n and n % d == 0 and _is_prime(d)}):
        xe = _powmod(p, f, x, p ** (n // ell))
        g = _poly_gcd(p, _poly_sub(p, xe, x), f)
        if len(g) - 1 != 0:
            return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_gcd(p, a, b):
    while b:
        a, b = b, _poly_mod(p, a, b)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple((c * inv) % p for c in a)
    return a


@functools.lru_cache(maxsize=None)
def canonical_modulus(p, n):
    """Lexicographically least monic irreducible of degree n over GF(p).

    Low coefficients are the least significant digits of the search counter,
    so the order is by c_0, then c_1, and so on.
    """
    if n == 1:
        return (0, 1)
    for code in range(p**n):
        coeffs = []
        c = code
        for _ in range(n):
            coeffs.append(c % p)
            c //= p
        f = tuple(coeffs) + (1,)
        if _is_irreducible(p, f):
            return f
    raise AssertionError("no irreducible polynomial found")


class FieldDesc:
    """Descriptor of GF(p^degree) with its canonical defining modulus."""

    __slots__ = ("p", "degree", "modulus", "order")

    def __init__(self, p, degree, modulus):
        self.p = p
        self.degree = degree
        self.modulus = modulus
        self.order = p**degree

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.degree) if self.degree > 1 else "GF(%d)" % self.p

    def __eq__(self, other):
        return (
            isinstance(other, FieldDesc)
            and self.p == other.p
            and self.degree == other.degree
        )

    def __hash__(self):
        return hash((self.p, self.degree))

    # -- constructors -----------------------------------------------------

    def zero(self):
        return FqElem(self, ())

    def one(self):
        return FqElem(self, (1,))

    def elem(self, value):
        """Build an element from an int (base-p digits) or coefficient list."""
        if isinstance(value, FqElem):
            if value.field != self:
                raise FieldMismatch("element of %r given to %r" % (value.field, self))
            return value
        if isinstance(value, int):
            digits = []
            v = value % self.order
            for _ in range(self.degree):
                digits.append(v % self.p)
                v //= self.p
            return FqElem(self, _poly_trim(digits))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.degree:
            coeffs = _poly_mod(self.p, _poly_trim(coeffs), self.modulus)
        return FqElem(self, _poly_trim(coeffs))

    def gen(self):
        """The class of x, a generator of the field over GF(p) for degree > 1."""
        if self.degree == 1:
            return self.one()
        return FqElem(self, (0, 1))

    def elements(self):
        """All field elements in canonical (integer code) order."""
        if self.order > EXHAUSTION_CAP:
            raise TooLarge("refusing to enumerate %r" % self)
        return [self.elem(i) for i in range(self.order)]

    def is_subfield_of(self, other):
        return self.p == other.p and other.degree % self.degree == 0

    def has_subfield_degree(self, m):
        """Whether GF(p^m) sits inside this field."""
        return self.degree % m == 0


@functools.lru_cache(maxsize=None)
def GF(p, degree=1):
    if p == 2 or not _is_prime(p):
        raise ValueError("p must be an odd prime, got %r" % (p,))
    if degree < 1:
        raise ValueError("degree must be positive")
    return FieldDesc(p, degree, canonical_modulus(p, degree))


class FqElem:
    """An element of a FieldDesc: a fully reduced coefficient tuple."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    # -- basic protocol ----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FqElem)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.field.degree, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __int__(self):
        """Canonical integer code: base-p evaluation of the coefficients."""
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def __repr__(self):
        if not self.coeffs:
            s = "0"
        else:
            terms = []
            for i, c in enumerate(self.coeffs):
                if c == 0:
                    continue
                if i == 0:
                    terms.append(str(c))
                elif i == 1:
                    terms.append("x" if c == 1 else "%dx" % c)
                else:
                    terms.append("x^%d" % i if c == 1 else "%dx^%d" % (c, i))
            s = "+".join(reversed(terms))
        return "%s(%s)" % (self.field, s)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, FqElem):
            other = self.field.elem(other)
        if other.field != self.field:
            raise FieldMismatch("%r vs %r" % (self.field, other.field))
        return other

    def __add__(self, other):
        other = self._check(other)
        return FqElem(self.field, _addmod(self.field.p, self.coeffs, other.coeffs))

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-c) % p for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return FqElem(
            self.field, _mulmod(self.field.p, self.field.modulus, self.coeffs, other.coeffs)
        )

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._check(other) - self

    def inv(self):
        if not self.coeffs:
            raise ZeroInversion("inverse of zero in %r" % self.field)
        # Fermat: a^(q-2); cached mul makes this cheap at desk scale.
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        return self * self._check(other).inv()

    def __pow__(self, e):
        if not self.coeffs:
            if e == 0:
                return self.field.one()
            if e < 0:
                raise ZeroInversion("negative power of zero")
            return self.field.zero()
        e %= self.field.order - 1
        return FqElem(self.field, _powmod(self.field.p, self.field.modulus, self.coeffs, e))


# -- Galois structure --------------------------------------------------------


def _subfield_order(a: FqElem, over: FieldDesc):
    if over.p != a.field.p or a.field.degree % over.degree != 0:
        raise FieldMismatch("%r is not a subfield of %r" % (over, a.field))
    return over.order


def frobenius(a: FqElem, over: FieldDesc, k: int = 1) -> FqElem:
    """a raised to the |over|^k power, the k-th Frobenius over the subfield."""
    q = _subfield_order(a, over)
    d = a.field.degree // over.degree
    k %= d
    return a ** (q**k)


def in_subfield(a: FqElem, over: FieldDesc) -> bool:
    return frobenius(a, over, 1) == a


def trace(a: FqElem, to: FieldDesc) -> FqElem:
    q = _subfield_order(a, to)
    d = a.field.degree // to.degree
    acc = a.field.zero()
    t = a
    for _ in range(d):
        acc = acc + t
        t = t**q
    return project(acc, to)


def norm(a: FqElem, to: FieldDesc) -> FqElem:
    q = _subfield_order(a, to)
    d = a.field.degree // to.degree
    acc = a.field.one()
    t = a
    for _ in range(d):
        acc = acc * t
        t = t**q
    return project(acc, to)


def trace_norm(a: FqElem, to: FieldDesc, which: str) -> FqElem:
    if which == "trace":
        return trace(a, to)
    if which == "norm":
        return norm(a, to)
    raise ValueError("which must be 'trace' or 'norm'")


# -- embeddings ---------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _embedding_root(small: FieldDesc, big: FieldDesc):
    """Lex-least root of small.modulus inside big; identity when degrees agree."""
    if small.p != big.p or big.degree % small.degree != 0:
        raise FieldMismatch("%r does not embed in %r" % (small, big))
    if small.degree == big.degree:
        return big.gen() if big.degree > 1 else big.one()
    if big.order > 1 << 22:
        raise TooLarge("embedding search in %r" % big)
    mod = small.modulus
    for code in range(big.order):
        cand = big.elem(code)
        acc = big.zero()
        power = big.one()
        for c in mod:
            if c:
                acc = acc + power * big.elem(c)
            power = power * cand
        if not acc:
            return cand
    raise AssertionError("modulus of %r has no root in %r" % (small, big))


def embed(a: FqElem, big: FieldDesc) -> FqElem:
    if a.field == big:
        return a
    rho = _embedding_root(a.field, big)
    acc = big.zero()
    power = big.one()
    for c in a.coeffs:
        if c:
            acc = acc + power * big.elem(c)
        power = power * rho
    return acc


@functools.lru_cache(maxsize=None)
def _projection_table(big: FieldDesc, small: FieldDesc):
    if small.order > EXHAUSTION_CAP:
        raise TooLarge("projection table for %r" % small)
    return {embed(small.elem(i), big): small.elem(i) for i in range(small.order)}


def project(a: FqElem, small: FieldDesc) -> FqElem:
    """Convert an element lying in the copy of `small` inside a.field."""
    if a.field == small:
        return a
    if not in_subfield(a, small):
        raise FieldMismatch("%r does not lie in the %r-subfield" % (a, small))
    return _projection_table(a.field, small)[a]


# -- characters and square classes -------------------------------------------


class SquareClass:
    """An element of k^x / k^{x,2}, remembering the witnessing field."""

    __slots__ = ("field", "nontrivial")

    def __init__(self, field, nontrivial):
        self.field = field
        self.nontrivial = bool(nontrivial)

    def __eq__(self, other):
        return (
            isinstance(other, SquareClass)
            and self.field == other.field
            and self.nontrivial == other.nontrivial
        )

    def __hash__(self):
        return hash((self.field, self.nontrivial))

    def __mul__(self, other):
        if not isinstance(other, SquareClass):
            raise TypeError("can only multiply square classes")
        if other.field != self.field:
            raise FieldMismatch("square classes of %r and %r" % (self.field, other.field))
        return SquareClass(self.field, self.nontrivial != other.nontrivial)

    def sign(self):
        return -1 if self.nontrivial else +1

    def __repr__(self):
        return "SquareClass(%r, %s)" % (self.field, "nontrivial" if self.nontrivial else "trivial")


def sgn_in(a: FqElem, sub_degree: int) -> int:
    """sgn of a as an element of the GF(p^sub_degree) subfield it lies in.

    Returns +-1.  The intrinsic form used throughout: the argument may be
    represented in any overfield.
    """
    if not a:
        raise ZeroInput("sgn of zero")
    if a.field.degree % sub_degree != 0:
        raise FieldMismatch("no degree-%d subfield in %r" % (sub_degree, a.field))
    q = a.field.p**sub_degree
    v = a ** ((q - 1) // 2)
    if v == a.field.one():
        return +1
    if v == -a.field.one():
        return -1
    raise FieldMismatch("%r is not in the degree-%d subfield" % (a, sub_degree))


def sgn(a: FqElem) -> SquareClass:
    """Quadratic character of a in its own field, as a square class."""
    return SquareClass(a.field, sgn_in(a, a.field.degree) < 0)


def sgn1(a: FqElem, over: FieldDesc) -> int:
    """The nontrivial quadratic character of the norm-one group of the
    quadratic extension of `over` containing a."""
    q = _subfield_order(a, over)
    if not a:
        raise ZeroInput("sgn1 of zero")
    if not a.field.has_subfield_degree(2 * over.degree):
        raise NotQuadratic("no quadratic extension of %r inside %r" % (over, a.field))
    if a ** (q + 1) != a.field.one():
        raise NotNormOne("%r has nontrivial norm to %r" % (a, over))
    v = a ** ((q + 1) // 2)
    if v == a.field.one():
        return +1
    if v == -a.field.one():
        return -1
    raise NotNormOne("%r not in the norm-one group over %r" % (a, over))


@functools.lru_cache(maxsize=None)
def _multiplicative_generator(field: FieldDesc):
    n = field.order - 1
    factors = set()
    m, d = n, 2
    while d * d <= m:
        if m % d == 0:
            factors.add(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        factors.add(m)
    for code in range(1, field.order):
        g = field.elem(code)
        if all(g ** (n // f) != field.one() for f in factors):
            return g
    raise AssertionError("no generator in %r" % field)


@functools.lru_cache(maxsize=None)
def subfield_units(field: FieldDesc, sub_degree: int):
    """Nonzero elements of the GF(p^sub_degree) subfield, in a fixed order."""
    if field.degree % sub_degree != 0:
        raise FieldMismatch("no degree-%d subfield in %r" % (sub_degree, field))
    qs = field.p**sub_degree
    if qs > EXHAUSTION_CAP:
        raise TooLarge("subfield of order %d too large to enumerate" % qs)
    g = _multiplicative_generator(field) ** ((field.order - 1) // (qs - 1))
    out, t = [], field.one()
    for _ in range(qs - 1):
        out.append(t)
        t = t * g
    return tuple(out)


def lang(u: FqElem, over: FieldDesc) -> FqElem:
    """A representative a with a / Frobenius_over(a) = u; meaningful mod over^x.

    u must be norm-one in the quadratic extension of `over` (inside u.field).
    Exhaustive search, capped at EXHAUSTION_CAP field elements.
    """
    q = _subfield_order(u, over)
    deg2 = 2 * over.degree
    if not u.field.has_subfield_degree(deg2):
        raise NotQuadratic("no quadratic extension of %r inside %r" % (over, u.field))
    if not u or u ** (q + 1) != u.field.one():
        raise NotNormOne("%r is not norm-one over %r" % (u, over))
    for a in subfield_units(u.field, deg2):
        if a * (a**q).inv() == u:
            return a
    raise AssertionError("Lang preimage not found for %r" % u)


def field_sqrt(a: FqElem) -> Optional[FqElem]:
    """A square root of a in its own field, or None if a is a nonsquare.

    Deterministic: of the two roots the one with the smaller integer code is
    returned.  Callers needing roots of nonsquares ascend to
    quadratic_extension(a.field) first.
    """
    if not a:
        raise ZeroInput("sqrt of zero")
    F = a.field
    q = F.order
    if sgn_in(a, F.degree) < 0:
        return None
    if q % 4 == 3:
        r = a ** ((q + 1) // 4)
    else:
        # Tonelli-Shanks with the least nonsquare as auxiliary
        s, m = q - 1, 0
        while s % 2 == 0:
            s //= 2
            m += 1
        z = None
        for code in range(1, q):
            cand = F.elem(code)
            if sgn_in(cand, F.degree) < 0:
                z = cand
                break
        c = z**s
        r = a ** ((s + 1) // 2)
        t = a**s
        while t != F.one():
            # find least i with t^(2^i) = 1
            i, tt = 0, t
            while tt != F.one():
                tt = tt * tt
                i += 1
            b = c ** (1 << (m - i - 1))
            r = r * b
            c = b * b
            t = t * c
            m = i
    return r if int(r) <= int(-r) else -r


def quadratic_extension(field: FieldDesc) -> FieldDesc:
    return GF(field.p, 2 * field.degree)


def disc_ext(big: FieldDesc, small: FieldDesc) -> SquareClass:
    """Square class of det of the trace-form Gram matrix of big over small."""
    if small.p != big.p or big.degree % small.degree != 0:
        raise FieldMismatch("%r is not an extension of %r" % (big, small))
    d = big.degree // small.degree
    x = big.gen()
    powers = [big.one()]
    for _ in range(2 * d - 1):
        powers.append(powers[-1] * x)
    gram = [[trace(powers[i + j], small) for j in range(d)] for i in range(d)]
    det = _det(small, gram)
    if not det:
        raise AssertionError("degenerate trace form")
    return sgn(det)


def _det(field: FieldDesc, rows):
    """Determinant over a FieldDesc by fraction-free-ish Gaussian elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    det = field.one()
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return field.zero()
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inv()
        for r in range(col + 1, n):
            if m[r][col]:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] = m[r][c] - factor * m[col][c]
    return det
