"""Dense truncated power series and polynomials over a coefficient ring.

The coefficient ring is any object with the raw-value interface of
:class:`elkies.ring.RingCtx` (``zero``, ``one``, ``add``, ``mul``, ``inv``,
``poly_mul``, ...).  All products funnel through ``ring.poly_mul`` so the
multiplication kernel can be swapped in one place.

``integrate`` is the only operation that divides by p.
"""

from .errors import ContextMismatch, NonUnit, NotAPerfectSquare
from .ring import ZqElement, div_raw_pow_p, pdiv


def _same_ring(a, b):
    if a.ring is not b.ring and a.ring != b.ring:
        raise ContextMismatch("operands live over different rings")


def _raw_list(ring, values):
    return [ring.coerce(v) if hasattr(ring, "coerce") else v for v in values]


class Series:
    """A power series known modulo x**trunc."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs, trunc=None):
        coeffs = list(coeffs)
        if trunc is not None:
            coeffs = coeffs[:trunc] + [ring.zero] * (trunc - len(coeffs))
        self.ring = ring
        self.coeffs = coeffs

    @classmethod
    def from_values(cls, ring, values, trunc=None):
        """Build from ints / coefficient tuples / elements instead of raw values."""
        return cls(ring, _raw_list(ring, values), trunc)

    @property
    def trunc(self):
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return ZqElement(self.ring, self.coeffs[k])

    def values(self):
        """Coefficients as canonical integers (residues when n == 1)."""
        return [self.ring.encode(c) for c in self.coeffs]

    def truncate(self, m):
        return Series(self.ring, self.coeffs, m)

    def __add__(self, other):
        _same_ring(self, other)
        m = min(self.trunc, other.trunc)
        add = self.ring.add
        return Series(self.ring, [add(a, b) for a, b in zip(self.coeffs[:m], other.coeffs[:m])])

    def __sub__(self, other):
        _same_ring(self, other)
        m = min(self.trunc, other.trunc)
        sub = self.ring.sub
        return Series(self.ring, [sub(a, b) for a, b in zip(self.coeffs[:m], other.coeffs[:m])])

    def __neg__(self):
        return Series(self.ring, [self.ring.neg(a) for a in self.coeffs])

    def scale(self, c):
        """Multiply every coefficient by the raw scalar ``c``."""
        mul = self.ring.mul
        return Series(self.ring, [mul(a, c) for a in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __repr__(self):
        return f"Series({self.values()}, trunc={self.trunc})"


class Poly:
    """A univariate polynomial; trailing zeros are allowed and ignored."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = list(coeffs)

    @classmethod
    def from_values(cls, ring, values):
        return cls(ring, _raw_list(ring, values))

    @classmethod
    def monomial(cls, ring, k, c=None):
        return cls(ring, [ring.zero] * k + [ring.one if c is None else c])

    def trimmed(self):
        c = list(self.coeffs)
        z = self.ring.zero
        while c and c[-1] == z:
            c.pop()
        return c

    @property
    def degree(self):
        """Degree, with -1 for the zero polynomial."""
        return len(self.trimmed()) - 1

    def leading(self):
        c = self.trimmed()
        return c[-1] if c else self.ring.zero

    def is_monic(self):
        return self.leading() == self.ring.one

    def is_zero(self):
        return self.degree < 0

    def values(self):
        return [self.ring.encode(c) for c in self.trimmed()]

    def __getitem__(self, k):
        c = self.coeffs[k] if k < len(self.coeffs) else self.ring.zero
        return ZqElement(self.ring, c)

    def __call__(self, x):
        """Evaluate at a raw value or an element."""
        raw = x.raw if isinstance(x, ZqElement) else x
        R = self.ring
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, raw), c)
        return ZqElement(R, acc) if isinstance(x, ZqElement) else acc

    def __add__(self, other):
        _same_ring(self, other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = self.ring.add(out[i], c)
        return Poly(self.ring, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(self.ring, [self.ring.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        _same_ring(self, other)
        a, b = self.trimmed(), other.trimmed()
        return Poly(self.ring, self.ring.poly_mul(a, b) if a and b else [])

    def __pow__(self, e):
        out = Poly(self.ring, [self.ring.one])
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def scale(self, c):
        return Poly(self.ring, [self.ring.mul(a, c) for a in self.coeffs])

    def monic(self):
        c = self.trimmed()
        if not c:
            return Poly(self.ring, [])
        inv = self.ring.inv(c[-1])
        return Poly(self.ring, [self.ring.mul(a, inv) for a in c])

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.trimmed() == other.trimmed()

    def __hash__(self):
        return hash(tuple(self.trimmed()))

    def __repr__(self):
        return f"Poly({self.values()})"


# --- series operations -----------------------------------------------------

def mul_trunc(A, B, m):
    """Product modulo x**m; the inputs are read as the polynomials they store."""
    _same_ring(A, B)
    a, b = A.coeffs[:m], B.coeffs[:m]
    if not a or not b:
        return Series(A.ring, [], m)
    return Series(A.ring, A.ring.poly_mul(a, b)[:m], m)


def inv_trunc(A, m):
    """1/A modulo x**m by Newton doubling G <- G (2 - G A)."""
    R = A.ring
    if A.trunc == 0 or not R.is_unit(A.coeffs[0]):
        raise NonUnit("constant term of the series is not a unit")
    G = Series(R, [R.inv(A.coeffs[0])])
    two = Series(R, [R.from_int(2)])
    d = 1
    while d < m:
        d = min(2 * d, m)
        GA = mul_trunc(G, A, d)
        G = mul_trunc(G, _sub_padded(two, GA, d), d)
    return G.truncate(m)


def _sub_padded(A, B, m):
    a = A.truncate(m)
    b = B.truncate(m)
    return a - b


def derivative(A):
    R = A.ring
    return Series(R, [R.scale_int(c, k) for k, c in enumerate(A.coeffs)][1:])


def integrate(A):
    """Antiderivative with zero constant term; trunc grows by one.

    The degree-r coefficient is c / r where c is the degree-(r-1) coefficient
    of ``A``.  The p-part of r is removed by exact division, which raises
    :class:`~elkies.errors.NotDivisible` when ``c`` is not a multiple of it.
    """
    R = A.ring
    p = getattr(R, "p", None)
    out = [R.zero]
    for k, c in enumerate(A.coeffs):
        r = k + 1
        v = pdiv(p, r) if p else 0
        if v:
            c = div_raw_pow_p(R, c, v)
            r //= p**v
        out.append(R.mul(c, R.inv(R.from_int(r))) if r != 1 else c)
    return Series(R, out)


def compose_even_poly(H, S, m):
    """H(S) mod x**m for H supported on degrees {0, 2, 4, 6}."""
    R = H.ring
    h = H.trimmed()
    if len(h) > 7 or any(c != R.zero for c in h[1::2]):
        raise ValueError("H must only have terms of degree 0, 2, 4 and 6")
    h = h + [R.zero] * (7 - len(h))
    Q = mul_trunc(S, S, m)
    out = Series(R, [h[0]], m)
    power = Q
    for k in (2, 4, 6):
        if h[k] != R.zero:
            out = out + power.scale(h[k])
        if k < 6:
            power = mul_trunc(power, Q, m)
    return out


def compose_poly(H, S, m):
    """H(S) mod x**m by Horner's rule, for any polynomial H."""
    R = H.ring
    out = Series(R, [], m)
    for c in reversed(H.trimmed()):
        out = mul_trunc(out, S, m)
        out.coeffs[0] = R.add(out.coeffs[0], c)
    return out


def is_even_shaped(H):
    h = H.trimmed()
    z = H.ring.zero
    return len(h) <= 7 and all(c == z for c in h[1::2])


def sqrt_trunc(A, m):
    """Square root of A (with A(0) = 1) modulo x**m, constant term 1."""
    R = A.ring
    if A.coeffs[0] != R.one:
        raise ValueError("series square root needs constant term 1")
    half = R.inv(R.from_int(2))
    Y = Series(R, [R.one])
    d = 1
    while d < m:
        d = min(2 * d, m)
        quot = mul_trunc(A.truncate(d), inv_trunc(Y, d), d)
        Y = (Y.truncate(d) + quot).scale(half)
    return Y.truncate(m)


def poly_sqrt_monic(D):
    """Monic g with g**2 == D exactly, for monic D of even degree."""
    R = D.ring
    c = D.trimmed()
    deg = len(c) - 1
    if deg < 0 or deg % 2 or c[-1] != R.one:
        raise NotAPerfectSquare("input must be monic of even degree")
    d = deg // 2
    rev = Series(R, c[::-1])
    root_rev = sqrt_trunc(rev, d + 1)
    g = Poly(R, root_rev.coeffs[::-1])
    if g * g != D:
        raise NotAPerfectSquare("polynomial is not a perfect square")
    return g
