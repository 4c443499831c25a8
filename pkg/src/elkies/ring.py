"""Fixed-precision arithmetic in Z_q = Z_p[t]/(f(t)) truncated at p**mu.

A :class:`RingCtx` fixes ``p``, the degree ``n`` of the unramified extension,
the absolute precision ``mu`` and the defining polynomial.  With ``mu == 1``
the context is the finite field F_q itself.

Contexts work on *raw* values: plain ints in ``[0, p**mu)`` when ``n == 1``
and ``n``-tuples of such ints otherwise.  :class:`ZqElement` wraps a raw value
together with its context for the public, operator-friendly API; the series
and polynomial code stays on raw values for speed.

Precision is handled the "zealous" way: every value lives modulo ``p**mu``
and :func:`exact_div_pow_p` performs integer division of the representatives,
leaving the top digits meaningless.  Callers budget for that loss up front.
"""

import contextlib
import contextvars
import random
from dataclasses import dataclass, field
from functools import cached_property

import gmpy2

from . import _intpoly
from .errors import ContextMismatch, NonUnit, NotASquare, NotDivisible, SingularRoot


def is_prime(n):
    return n > 1 and bool(gmpy2.is_prime(n))


def pdiv(p, r):
    """Largest k such that p**k divides the positive integer r."""
    if r < 1:
        raise ValueError("r must be positive")
    k = 0
    while r % p == 0:
        r //= p
        k += 1
    return k


# Counts exact divisions by p**v with v >= 1 while a counter is active.
_pdiv_counter = contextvars.ContextVar("_pdiv_counter", default=None)


class DivisionCounter:
    def __init__(self, parent=None):
        self.count = 0
        self.parent = parent

    def bump(self):
        c = self
        while c is not None:
            c.count += 1
            c = c.parent


@contextlib.contextmanager
def count_p_divisions():
    """Count the divisions by positive powers of p attempted in the block.

    Counters nest: an enclosing counter also sees the inner block's divisions.
    """
    counter = DivisionCounter(_pdiv_counter.get())
    token = _pdiv_counter.set(counter)
    try:
        yield counter
    finally:
        _pdiv_counter.reset(token)


@dataclass(frozen=True)
class RingCtx:
    p: int
    n: int
    mu: int
    defining_poly: tuple = None
    modulus: int = field(init=False, repr=False, compare=False)

    intlike = True

    def __post_init__(self):
        if not is_prime(self.p) or self.p <= 3:
            raise ValueError(f"p must be a prime > 3, got {self.p}")
        if self.n < 1 or self.mu < 1:
            raise ValueError("n and mu must be at least 1")
        if self.n == 1:
            if self.defining_poly is not None:
                raise ValueError("a prime-field context takes no defining polynomial")
        else:
            f = self.defining_poly
            if f is None or len(f) != self.n + 1 or f[-1] != 1:
                raise ValueError("defining_poly must be monic of degree n")
        object.__setattr__(self, "modulus", self.p**self.mu)

    # -- structure ------------------------------------------------------

    @property
    def order(self):
        """Number of elements of the residue field F_q."""
        return self.p**self.n

    @property
    def is_field(self):
        return self.mu == 1

    def with_precision(self, mu):
        f = None
        if self.defining_poly is not None:
            f = tuple(c % self.p**mu for c in self.defining_poly)
        return RingCtx(self.p, self.n, mu, f)

    @cached_property
    def residue_ctx(self):
        return self if self.mu == 1 else self.with_precision(1)

    @cached_property
    def zero(self):
        return 0 if self.n == 1 else (0,) * self.n

    @cached_property
    def one(self):
        return 1 if self.n == 1 else (1,) + (0,) * (self.n - 1)

    def from_int(self, k):
        k %= self.modulus
        return k if self.n == 1 else (k,) + (0,) * (self.n - 1)

    def coerce(self, value):
        """Raw value from an int, a coefficient sequence or a ZqElement."""
        if isinstance(value, ZqElement):
            if value.ctx != self:
                raise ContextMismatch("element belongs to another context")
            return value.raw
        if isinstance(value, int):
            return self.from_int(value)
        coeffs = [int(c) for c in value]
        if self.n == 1:
            if len(coeffs) != 1:
                raise ValueError("expected a single residue")
            return coeffs[0] % self.modulus
        if len(coeffs) > self.n:
            raise ValueError(f"expected at most {self.n} coefficients")
        coeffs += [0] * (self.n - len(coeffs))
        return tuple(c % self.modulus for c in coeffs)

    def __call__(self, value):
        return ZqElement(self, self.coerce(value))

    # -- raw arithmetic ---------------------------------------------------

    def add(self, a, b):
        m = self.modulus
        if self.n == 1:
            return (a + b) % m
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.modulus
        if self.n == 1:
            return (a - b) % m
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.modulus
        if self.n == 1:
            return -a % m
        return tuple(-x % m for x in a)

    def mul(self, a, b):
        if self.n == 1:
            return a * b % self.modulus
        return _intpoly.reduce_monic(_intpoly.kron_mul(a, b, self.modulus), self.defining_poly, self.modulus)

    def is_zero(self, a):
        return a == self.zero

    def residue(self, a):
        p = self.p
        if self.n == 1:
            return a % p
        return tuple(x % p for x in a)

    def is_unit(self, a):
        r = self.residue(a)
        return r != 0 if self.n == 1 else any(r)

    def inv(self, a):
        if not self.is_unit(a):
            raise NonUnit(f"{self.encode(a)} is not a unit modulo {self.p}")
        if self.n == 1:
            return pow(a, -1, self.modulus)
        # invert in F_q, then Newton-lift x <- x (2 - a x)
        res = self.residue_ctx
        x = field_pow(res, self.residue(a), res.order - 2)
        prec = 1
        two = self.from_int(2)
        while prec < self.mu:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            prec *= 2
        return x

    def pow(self, a, e):
        return field_pow(self, a, e)

    def scale_int(self, a, k):
        m = self.modulus
        if self.n == 1:
            return a * k % m
        return tuple(x * k % m for x in a)

    def poly_mul(self, a, b):
        """Product of two polynomials given as lists of raw values."""
        if self.n == 1:
            return _intpoly.kron_mul(a, b, self.modulus)
        return _intpoly.kron_mul_ext(a, b, self.modulus, self.defining_poly)

    # -- encodings --------------------------------------------------------

    def encode(self, a):
        """Canonical non-negative integer for a raw value (base-p**mu digits)."""
        if self.n == 1:
            return a
        m = self.modulus
        return sum(c * m**i for i, c in enumerate(a))

    def decode(self, k):
        if self.n == 1:
            return k % self.modulus
        out = []
        for _ in range(self.n):
            k, c = divmod(k, self.modulus)
            out.append(c)
        return tuple(out)

    def __str__(self):
        base = f"Z/{self.p}^{self.mu}" if self.mu > 1 else f"F_{self.p}"
        if self.n == 1:
            return base
        return f"{base}[t]/({_fmt_poly(self.defining_poly, 't')})"


def _fmt_poly(coeffs, var):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c:
            mono = "" if i == 0 else var if i == 1 else f"{var}^{i}"
            terms.append(str(c) if not mono else mono if c == 1 else f"{c}*{mono}")
    return " + ".join(terms) or "0"


class ZqElement:
    """An element of a :class:`RingCtx`, with arithmetic operators."""

    __slots__ = ("ctx", "raw")

    def __init__(self, ctx, raw):
        self.ctx = ctx
        self.raw = raw

    def _other(self, other):
        if isinstance(other, ZqElement):
            if other.ctx is not self.ctx and other.ctx != self.ctx:
                raise ContextMismatch(f"cannot combine elements of {self.ctx} and {other.ctx}")
            return other.raw
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def _wrap(self, raw):
        return ZqElement(self.ctx, raw)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.sub(o, self.raw))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.ctx.mul(self.raw, o))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(self.ctx.neg(self.raw))

    def __pow__(self, e):
        if e < 0:
            return self._wrap(self.ctx.inv(field_pow(self.ctx, self.raw, -e)))
        return self._wrap(field_pow(self.ctx, self.raw, e))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self.ctx.mul(self.raw, self.ctx.inv(o)))

    def __eq__(self, other):
        if isinstance(other, ZqElement):
            return self.ctx == other.ctx and self.raw == other.raw
        if isinstance(other, int):
            return self.raw == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.raw))

    def __int__(self):
        if self.ctx.n != 1:
            raise TypeError("only prime-field elements convert to int")
        return self.raw

    def __index__(self):
        return self.__int__()

    @property
    def coeffs(self):
        return (self.raw,) if self.ctx.n == 1 else self.raw

    def is_zero(self):
        return self.ctx.is_zero(self.raw)

    def is_unit(self):
        return self.ctx.is_unit(self.raw)

    def inverse(self):
        return inv_unit(self)

    def signed(self):
        """Symmetric representative(s) in (-p**mu/2, p**mu/2]."""
        m = self.ctx.modulus
        vals = [c - m if c > m // 2 else c for c in self.coeffs]
        return vals[0] if self.ctx.n == 1 else tuple(vals)

    def __repr__(self):
        if self.ctx.n == 1:
            return f"{self.raw} (mod {self.ctx.p}^{self.ctx.mu})"
        return f"{_fmt_poly(self.raw, 't')} in {self.ctx}"


# --- context creation ---------------------------------------------------

def irreducible_poly(p, n, seed=None):
    """Deterministic monic irreducible polynomial of degree n over F_p."""
    rng = random.Random(0 if seed is None else seed)
    for _ in range(100000):
        f = [rng.randrange(p) for _ in range(n)] + [1]
        if f[0] and _intpoly.is_irreducible_p(f, p):
            return tuple(f)
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


def ctx_create(p, n=1, mu=1, seed=None, defining_poly=None):
    """Build a context for Z/p**mu (n == 1) or its degree-n unramified extension.

    For ``n > 1`` the defining polynomial is drawn deterministically from
    ``seed`` unless one is supplied; it is stored with coefficients in
    ``[0, p)`` (the minimal lift).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p <= 3:
        raise ValueError("characteristic must exceed 3")
    if n == 1:
        return RingCtx(p, 1, mu)
    if defining_poly is None:
        defining_poly = irreducible_poly(p, n, seed)
    else:
        defining_poly = tuple(int(c) % p for c in defining_poly)
        if len(defining_poly) != n + 1 or defining_poly[-1] != 1:
            raise ValueError("defining polynomial must be monic of degree n")
        if not _intpoly.is_irreducible_p(list(defining_poly), p):
            raise ValueError("defining polynomial is not irreducible mod p")
    return RingCtx(p, n, mu, defining_poly)


# --- element-level operations -------------------------------------------

def _check(a, b):
    if a.ctx is not b.ctx and a.ctx != b.ctx:
        raise ContextMismatch(f"cannot combine elements of {a.ctx} and {b.ctx}")


def add(a, b):
    _check(a, b)
    return ZqElement(a.ctx, a.ctx.add(a.raw, b.raw))


def sub(a, b):
    _check(a, b)
    return ZqElement(a.ctx, a.ctx.sub(a.raw, b.raw))


def mul(a, b):
    _check(a, b)
    return ZqElement(a.ctx, a.ctx.mul(a.raw, b.raw))


def neg(a):
    return ZqElement(a.ctx, a.ctx.neg(a.raw))


def inv_unit(a):
    return ZqElement(a.ctx, a.ctx.inv(a.raw))


def div_raw_pow_p(ctx, a, v):
    """Raw-value form of :func:`exact_div_pow_p`."""
    if v == 0:
        return a
    counter = _pdiv_counter.get()
    if counter is not None:
        counter.bump()
    pv = ctx.p**v
    coeffs = (a,) if ctx.n == 1 else a
    out = []
    for c in coeffs:
        q, r = divmod(c, pv)
        if r:
            raise NotDivisible(f"{c} is not divisible by {ctx.p}^{v}")
        out.append(q)
    return out[0] if ctx.n == 1 else tuple(out)


def exact_div_pow_p(a, v):
    """Divide every representative of ``a`` by p**v exactly.

    The top ``v`` p-adic digits of the result carry no information.
    """
    if v < 0:
        raise ValueError("v must be non-negative")
    return ZqElement(a.ctx, div_raw_pow_p(a.ctx, a.raw, v))


def reduce_mod_p(a):
    ctx = a.ctx
    return ZqElement(ctx.residue_ctx, ctx.residue(a.raw))


def lift(a, ctx):
    """Minimal lift of a residue-field element into ``ctx`` (digits in [0, p))."""
    if a.ctx.p != ctx.p or a.ctx.n != ctx.n:
        raise ContextMismatch("lift target has a different residue field")
    if ctx.n > 1 and ctx.residue_ctx.defining_poly != a.ctx.residue_ctx.defining_poly:
        raise ContextMismatch("lift target uses another defining polynomial")
    return ZqElement(ctx, ctx.coerce(a.ctx.residue(a.raw)))


# --- generic finite-field helpers -----------------------------------------
# ``F`` is any object with the raw-value interface (zero, one, mul, ...).

def field_pow(F, a, e):
    result = F.one
    while e:
        if e & 1:
            result = F.mul(result, a)
        e >>= 1
        if e:
            a = F.mul(a, a)
    return result


def is_square(F, a):
    if F.is_zero(a):
        return True
    return field_pow(F, a, (F.order - 1) // 2) == F.one


def _nonresidue(F):
    minus_one = F.neg(F.one)
    k = 2
    while True:
        z = F.decode(k)
        if field_pow(F, z, (F.order - 1) // 2) == minus_one:
            return z
        k += 1


def field_sqrt(F, a):
    """Tonelli-Shanks square root; returns the root with the smaller encoding."""
    if F.is_zero(a):
        return a
    q = F.order
    if not is_square(F, a):
        raise NotASquare(f"{F.encode(a)} is not a square")
    s, t = 0, q - 1
    while t % 2 == 0:
        s += 1
        t //= 2
    z = field_pow(F, _nonresidue(F), t) if s > 1 else F.one
    x = field_pow(F, a, (t + 1) // 2)
    b = field_pow(F, a, t)
    m = s
    while b != F.one:
        i, bb = 0, b
        while bb != F.one:
            bb = F.mul(bb, bb)
            i += 1
        w = field_pow(F, z, 1 << (m - i - 1))
        x = F.mul(x, w)
        z = F.mul(w, w)
        b = F.mul(b, z)
        m = i
    y = F.neg(x)
    return x if F.encode(x) <= F.encode(y) else y


def fq_sqrt(a):
    if a.ctx.mu != 1:
        raise ValueError("fq_sqrt works over the residue field (mu = 1)")
    return ZqElement(a.ctx, field_sqrt(a.ctx, a.raw))


# --- Hensel lifting --------------------------------------------------------

def _horner(ctx, coeffs, x):
    acc = ctx.zero
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def hensel_lift_root(f, r0, target_mu=None):
    """Lift a simple root ``r0`` of ``f mod p`` to a root modulo p**target_mu.

    ``f`` is a polynomial over a :class:`RingCtx` (anything exposing ``ring``
    and raw ``coeffs``); the result lives in that context.
    """
    ctx = f.ring
    if target_mu is None:
        target_mu = ctx.mu
    if target_mu > ctx.mu:
        raise ValueError(f"cannot lift beyond the context precision {ctx.mu}")
    coeffs = list(f.coeffs)
    deriv = [ctx.scale_int(c, i) for i, c in enumerate(coeffs)][1:]
    x = lift(r0, ctx).raw
    if not ctx.is_zero(ctx.residue(_horner(ctx, coeffs, x))):
        raise ValueError("r0 is not a root of f modulo p")
    d0 = _horner(ctx, deriv, x)
    if not ctx.is_unit(d0):
        raise SingularRoot("derivative vanishes at the root modulo p")
    prec = 1
    while prec < target_mu:
        x = ctx.sub(x, ctx.mul(_horner(ctx, coeffs, x), ctx.inv(_horner(ctx, deriv, x))))
        prec *= 2
    return ZqElement(ctx, x)
