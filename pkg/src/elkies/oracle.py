"""Independent checks for kernel polynomials.

Nothing here shares code with the ODE path beyond the basic field and
polynomial arithmetic: torsion is tested with affine point arithmetic in an
explicit extension field, and the naive answer comes from factoring the
division polynomial.
"""

import random
from dataclasses import dataclass, field
from functools import cached_property

from . import _intpoly
from .polyalg import factor_squarefree, is_squarefree, poly_rem
from .ring import ZqElement, field_sqrt, is_square
from .series import Poly


# --- extension fields --------------------------------------------------------

@dataclass(frozen=True)
class ExtensionField:
    """base[T] / (modulus(T)) for a monic irreducible ``modulus`` over ``base``.

    Elements are tuples of base raw values.  Towers are allowed.
    """

    base: object
    modulus: tuple

    intlike = False

    @cached_property
    def e(self):
        return len(self.modulus) - 1

    @cached_property
    def p(self):
        return self.base.p

    @cached_property
    def order(self):
        return self.base.order**self.e

    @cached_property
    def _prime_base(self):
        return getattr(self.base, "n", None) == 1 and getattr(self.base, "mu", None) == 1

    @cached_property
    def zero(self):
        return (self.base.zero,) * self.e

    @cached_property
    def one(self):
        return self.embed(self.base.one)

    @cached_property
    def gen(self):
        if self.e == 1:
            return (self.base.neg(self.modulus[0]),)
        return (self.base.zero, self.base.one) + (self.base.zero,) * (self.e - 2)

    def embed(self, b):
        return (b,) + (self.base.zero,) * (self.e - 1)

    def project(self, a):
        """The base element equal to ``a``, or None if ``a`` is not in the base."""
        z = self.base.zero
        return a[0] if all(c == z for c in a[1:]) else None

    def from_int(self, k):
        return self.embed(self.base.from_int(k))

    def coerce(self, value):
        if isinstance(value, int):
            return self.from_int(value)
        vals = list(value)
        return tuple(vals) + (self.base.zero,) * (self.e - len(vals))

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def scale_int(self, a, k):
        return tuple(self.base.scale_int(x, k) for x in a)

    def _reduce(self, c):
        B = self.base
        e = self.e
        c = list(c)
        for k in range(len(c) - 1, e - 1, -1):
            top = c[k]
            if top != B.zero:
                for i in range(e):
                    c[k - e + i] = B.sub(c[k - e + i], B.mul(top, self.modulus[i]))
        c = c[:e]
        return tuple(c) + (B.zero,) * (e - len(c))

    def mul(self, a, b):
        if self._prime_base:
            p = self.base.p
            return _intpoly.reduce_monic(_intpoly.kron_mul(list(a), list(b), p), self.modulus, p)
        return self._reduce(self.base.poly_mul(list(a), list(b)))

    def is_zero(self, a):
        return a == self.zero

    def is_unit(self, a):
        return not self.is_zero(a)

    def inv(self, a):
        """Inverse by extended Euclid over the base field."""
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        B = self.base
        r0, r1 = _trim(B, list(self.modulus)), _trim(B, list(a))
        t0, t1 = [], [B.one]
        while len(r1) > 1:
            q, r = _divmod(B, r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _psub(B, t0, B.poly_mul(q, t1) if q and t1 else [])
        c = B.inv(r1[0])
        out = [B.mul(x, c) for x in t1][: self.e]
        return tuple(out) + (B.zero,) * (self.e - len(out))

    def poly_mul(self, a, b):
        if self._prime_base:
            return _intpoly.kron_mul_ext(a, b, self.base.p, self.modulus)
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x != self.zero:
                for j, y in enumerate(b):
                    out[i + j] = self.add(out[i + j], self.mul(x, y))
        return out

    def encode(self, a):
        q = self.base.order
        return sum(self.base.encode(c) * q**i for i, c in enumerate(a))

    def decode(self, k):
        q = self.base.order
        out = []
        for _ in range(self.e):
            k, c = divmod(k, q)
            out.append(self.base.decode(c))
        return tuple(out)


def _trim(B, c):
    while c and c[-1] == B.zero:
        c.pop()
    return c


def _psub(B, a, b):
    n = max(len(a), len(b))
    a = a + [B.zero] * (n - len(a))
    b = b + [B.zero] * (n - len(b))
    return _trim(B, [B.sub(x, y) for x, y in zip(a, b)])


def _divmod(B, a, b):
    """Quotient and remainder of base-field polynomials (lists, trimmed)."""
    r = list(a)
    inv = B.inv(b[-1])
    db = len(b) - 1
    q = [B.zero] * max(len(r) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        c = B.mul(r[k], inv)
        if c != B.zero:
            q[k - db] = c
            for i in range(db + 1):
                r[k - db + i] = B.sub(r[k - db + i], B.mul(c, b[i]))
    return _trim(B, q), _trim(B, r[:db])


# --- curves and points --------------------------------------------------------

@dataclass(frozen=True)
class Curve:
    """y^2 = x^3 + a4 x + a6 over ``field`` (raw coefficients)."""

    field: object
    a4: object
    a6: object

    def rhs(self, x):
        F = self.field
        return F.add(F.mul(F.add(F.mul(x, x), self.a4), x), self.a6)

    def contains(self, P):
        if P.is_infinity:
            return True
        F = self.field
        return F.mul(P.y, P.y) == self.rhs(P.x)

    def base_change(self, F, embed):
        return Curve(F, embed(self.a4), embed(self.a6))


@dataclass(frozen=True)
class Point:
    x: object = None
    y: object = None
    is_infinity: bool = field(default=False)


INFINITY = Point(is_infinity=True)


def ec_neg(P, curve):
    if P.is_infinity:
        return P
    return Point(P.x, curve.field.neg(P.y))


def ec_add(P, Q, curve, check=True):
    if check and not (curve.contains(P) and curve.contains(Q)):
        raise ValueError("point not on curve")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    F = curve.field
    if P.x == Q.x:
        if F.add(P.y, Q.y) == F.zero:
            return INFINITY
        # tangent
        num = F.add(F.scale_int(F.mul(P.x, P.x), 3), curve.a4)
        lam = F.mul(num, F.inv(F.scale_int(P.y, 2)))
    else:
        lam = F.mul(F.sub(Q.y, P.y), F.inv(F.sub(Q.x, P.x)))
    x3 = F.sub(F.sub(F.mul(lam, lam), P.x), Q.x)
    y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y)
    return Point(x3, y3)


def ec_mul(k, P, curve):
    if not curve.contains(P):
        raise ValueError("point not on curve")
    if k < 0:
        k, P = -k, ec_neg(P, curve)
    R = INFINITY
    while k:
        if k & 1:
            R = ec_add(R, P, curve, check=False)
        k >>= 1
        if k:
            P = ec_add(P, P, curve, check=False)
    return R


def enumerate_points(curve):
    """All points of a curve over a small field (brute force)."""
    F = curve.field
    pts = [INFINITY]
    for k in range(F.order):
        x = F.decode(k)
        for kk in range(F.order):
            y = F.decode(kk)
            if F.mul(y, y) == curve.rhs(x):
                pts.append(Point(x, y))
    return pts


# --- division polynomials ---------------------------------------------------------

def _raw_pair(a4, a6):
    if isinstance(a4, ZqElement):
        return a4.ctx, a4.raw, a6.raw
    raise TypeError("a4 and a6 must be field elements")


def division_poly(ell, a4, a6):
    """Univariate ell-th division polynomial.

    Returns psi_ell for odd ell and psi_ell / (2y) for even ell, with y**2
    eliminated through the curve equation.
    """
    F, a, b = _raw_pair(a4, a6)

    def P(*vals):
        return Poly(F, [F.from_int(v) if isinstance(v, int) else v for v in vals])

    def c(k):
        return F.from_int(k)

    def m(x, k):
        return F.mul(x, F.from_int(k))

    aa, ab, bb, a3 = F.mul(a, a), F.mul(a, b), F.mul(b, b), F.mul(F.mul(a, a), a)
    W = P(m(b, 4), m(a, 4), 0, 4)  # (2y)^2
    W2 = W * W
    memo = {
        0: P(),
        1: P(1),
        2: P(1),
        3: P(F.neg(aa), m(b, 12), m(a, 6), 0, 3),
        4: P(
            F.neg(F.add(m(bb, 16), m(a3, 2))),
            F.neg(m(ab, 8)),
            F.neg(m(aa, 10)),
            m(b, 40),
            m(a, 10),
            0,
            c(2),
        ),
    }

    def f(n):
        if n in memo:
            return memo[n]
        k = n // 2
        if n % 2:
            if k % 2 == 0:
                r = W2 * f(k + 2) * f(k) ** 3 - f(k - 1) * f(k + 1) ** 3
            else:
                r = f(k + 2) * f(k) ** 3 - W2 * f(k - 1) * f(k + 1) ** 3
        else:
            r = f(k) * (f(k + 2) * f(k - 1) ** 2 - f(k - 2) * f(k + 1) ** 2)
        memo[n] = Poly(F, r.trimmed())
        return memo[n]

    return f(ell)


# --- torsion points from a factor ------------------------------------------------

def point_from_factor(h, curve):
    """A point whose abscissa is a root of the irreducible ``h``.

    Returns ``(L, point, to_L)`` with ``L`` the field holding the point and
    ``to_L`` the embedding of F_q into ``L``.  The abscissa itself lives in
    F_q[X]/h; the ordinate may need one further quadratic extension.
    """
    Fq = curve.field
    h = h.monic()
    if h.degree == 1:
        K, to_K, x0 = Fq, (lambda v: v), Fq.neg(h.coeffs[0])
    else:
        K = ExtensionField(Fq, tuple(h.trimmed()))
        to_K, x0 = K.embed, K.gen
    CK = curve.base_change(K, to_K)
    rhs = CK.rhs(x0)
    if is_square(K, rhs):
        return K, Point(x0, field_sqrt(K, rhs)), to_K
    L = ExtensionField(K, (K.neg(rhs), K.zero, K.one))
    return L, Point(L.embed(x0), L.gen), (lambda v: L.embed(to_K(v)))


@dataclass
class KernelReport:
    degree_ok: bool = False
    divides: bool = False
    torsion_ok: bool = False
    abscissa_sum_ok: bool = False
    closed: bool = False
    messages: list = field(default_factory=list)

    @property
    def passed(self):
        return self.degree_ok and self.divides and self.torsion_ok and self.abscissa_sum_ok and self.closed

    def as_dict(self):
        return {
            "degree": self.degree_ok,
            "divides_division_poly": self.divides,
            "torsion": self.torsion_ok,
            "abscissa_sum": self.abscissa_sum_ok,
            "closed_under_multiples": self.closed,
        }


def verify_kernel(g, a4, a6, ell):
    """Check that monic ``g`` cuts out the abscissas of an order-ell subgroup."""
    rep = KernelReport()
    F = g.ring
    curve = Curve(F, a4.raw, a6.raw)
    d = (ell - 1) // 2
    if not g.is_monic():
        rep.messages.append("g is not monic")
        return rep
    rep.degree_ok = g.degree == d
    if not rep.degree_ok:
        rep.messages.append(f"degree {g.degree} != {d}")
    fl = division_poly(ell, a4, a6)
    rep.divides = g.degree > 0 and poly_rem(fl, g).is_zero()
    if not rep.divides:
        rep.messages.append("g does not divide the division polynomial")
    if g.degree <= 0:
        return rep

    factors = factor_squarefree(g) if is_squarefree(g) else []
    if not factors:
        rep.messages.append("g is not squarefree")
        return rep
    L, P, to_L = point_from_factor(factors[0], curve)
    CL = curve.base_change(L, to_L)
    rep.torsion_ok = ec_mul(ell, P, CL).is_infinity and not P.is_infinity
    if not rep.torsion_ok:
        rep.messages.append(f"{ell} * P != O for a root of g")
        return rep

    xs = []
    Q = INFINITY
    for _ in range(ell - 1):
        Q = ec_add(Q, P, CL, check=False)
        if Q.is_infinity:
            break
        xs.append(Q.x)
    total = L.zero
    for x in xs:
        total = L.add(total, x)
    coeffs = g.trimmed()
    root_sum = F.neg(coeffs[-2]) if len(coeffs) >= 2 else F.zero
    rep.abscissa_sum_ok = len(xs) == ell - 1 and total == to_L(F.scale_int(root_sum, 2))
    if not rep.abscissa_sum_ok:
        rep.messages.append("abscissa sum mismatch")
    gL = Poly(L, [to_L(c) for c in coeffs])
    rep.closed = all(L.is_zero(gL(x)) for x in xs)
    if not rep.closed:
        rep.messages.append("multiples of P leave the roots of g")
    return rep


def kernel_from_factor(h, curve, ell):
    """Kernel polynomial of <P> for P over a root of ``h``, if it is rational."""
    L, P, to_L = point_from_factor(h, curve)
    CL = curve.base_change(L, to_L)
    if not ec_mul(ell, P, CL).is_infinity:
        return None
    Fq = curve.field
    prod = Poly(L, [L.one])
    Q = INFINITY
    for _ in range((ell - 1) // 2):
        Q = ec_add(Q, P, CL, check=False)
        prod = prod * Poly(L, [L.neg(Q.x), L.one])
    out = []
    for c in prod.trimmed():
        b = _descend(c, L, Fq)
        if b is None:
            return None
        out.append(b)
    return Poly(Fq, out)


def _descend(c, L, Fq):
    while L is not Fq:
        if not isinstance(L, ExtensionField):
            return None
        c = L.project(c)
        if c is None:
            return None
        L = L.base
    return c


def naive_elkies(a4, a6, ell, seed=0):
    """All rational kernel polynomials of degree (ell-1)/2, by factoring f_ell."""
    F = a4.ctx
    curve = Curve(F, a4.raw, a6.raw)
    half = (ell - 1) // 2
    fl = division_poly(ell, a4, a6).monic()
    found = []
    seen = set()
    for h in factor_squarefree(fl, max_degree=half, seed=seed):
        if half % h.degree:
            continue
        key = tuple(h.trimmed())
        if key in seen:
            continue
        g = kernel_from_factor(h, curve, ell)
        if g is None:
            continue
        for hh in factor_squarefree(g, seed=seed):
            seen.add(tuple(hh.trimmed()))
        if g not in found:
            found.append(g)
    return sorted(found, key=lambda g: [F.encode(c) for c in g.trimmed()])


def random_curve(F, rng=None):
    """A random nonsingular curve over the field context F."""
    rng = rng or random.Random()
    while True:
        a = F.decode(rng.randrange(F.order))
        b = F.decode(rng.randrange(F.order))
        A, B = ZqElement(F, a), ZqElement(F, b)
        if (4 * A * A * A + 27 * B * B).is_unit():
            return A, B
