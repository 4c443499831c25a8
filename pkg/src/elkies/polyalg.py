"""Polynomial algorithms over finite fields: division, gcd, modular powers,
and Cantor-Zassenhaus factorization (distinct- then equal-degree).

Inputs are :class:`~elkies.series.Poly` values over a field ring.  Prime
fields take a fast path through :mod:`elkies._intpoly`.
"""

import random

from . import _intpoly
from .series import Poly, _same_ring


def _prime_field(R):
    return getattr(R, "n", None) == 1 and getattr(R, "mu", None) == 1


def poly_divmod(a, b):
    _same_ring(a, b)
    R = a.ring
    if _prime_field(R):
        q, r = _intpoly.divmod_p(a.coeffs, b.coeffs, R.p)
        return Poly(R, q), Poly(R, r)
    bc = b.trimmed()
    if not bc:
        raise ZeroDivisionError("polynomial division by zero")
    inv = R.inv(bc[-1])
    db = len(bc) - 1
    rem = a.trimmed()
    if len(rem) <= db:
        return Poly(R, []), Poly(R, rem)
    quo = [R.zero] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = R.mul(rem[k], inv)
        if c != R.zero:
            quo[k - db] = c
            for i in range(db + 1):
                rem[k - db + i] = R.sub(rem[k - db + i], R.mul(c, bc[i]))
    return Poly(R, quo), Poly(R, rem[:db])


def poly_rem(a, b):
    return poly_divmod(a, b)[1]


def poly_gcd(a, b):
    """Monic gcd (zero polynomial if both inputs vanish)."""
    while not b.is_zero():
        a, b = b, poly_rem(a, b)
    return a.monic()


def poly_mulmod(a, b, f):
    return poly_rem(a * b, f)


def poly_powmod(a, e, f):
    R = a.ring
    result = Poly(R, [R.one])
    base = poly_rem(a, f)
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f)
        e >>= 1
        if e:
            base = poly_mulmod(base, base, f)
    return poly_rem(result, f)


def poly_derivative(f):
    R = f.ring
    return Poly(R, [R.mul(R.from_int(k), c) for k, c in enumerate(f.coeffs)][1:])


def x_poly(R):
    return Poly(R, [R.zero, R.one])


def is_squarefree(f):
    return poly_gcd(f, poly_derivative(f)).degree == 0


def distinct_degree(f, max_degree=None):
    """Split a monic squarefree f into (d, product of its degree-d factors)."""
    R = f.ring
    q = R.order
    out = []
    x = x_poly(R)
    h = x
    rest = f.monic()
    d = 0
    while rest.degree >= 2 * (d + 1):
        d += 1
        if max_degree is not None and d > max_degree:
            return out
        h = poly_powmod(h, q, rest)
        g = poly_gcd(rest, h - x)
        if g.degree > 0:
            out.append((d, g))
            rest = poly_divmod(rest, g)[0].monic()
            h = poly_rem(h, rest)
    if rest.degree > 0 and (max_degree is None or rest.degree <= max_degree):
        out.append((rest.degree, rest))
    return out


def _random_poly(R, deg, rng):
    return Poly(R, [R.decode(rng.randrange(R.order)) for _ in range(deg)])


def equal_degree(f, d, rng=None):
    """Irreducible factors of f, all of which are known to have degree d."""
    R = f.ring
    f = f.monic()
    if f.degree == d:
        return [f]
    if f.degree <= 0:
        return []
    rng = rng or random.Random(0)
    e = (R.order**d - 1) // 2
    one = Poly(R, [R.one])
    while True:
        a = _random_poly(R, f.degree, rng)
        if a.degree <= 0:
            continue
        g = poly_gcd(f, a)
        if 0 < g.degree < f.degree:
            break
        g = poly_gcd(f, poly_powmod(a, e, f) - one)
        if 0 < g.degree < f.degree:
            break
    other = poly_divmod(f, g)[0]
    return equal_degree(g, d, rng) + equal_degree(other, d, rng)


def factor_squarefree(f, max_degree=None, seed=0):
    """Irreducible factors (degree <= max_degree) of a squarefree polynomial."""
    rng = random.Random(seed)
    factors = []
    for d, g in distinct_degree(f, max_degree):
        factors.extend(equal_degree(g, d, rng))
    return sorted(factors, key=lambda h: (h.degree, [f.ring.encode(c) for c in h.trimmed()]))


def roots(f, seed=0):
    """Distinct roots of f in its coefficient field, sorted by encoding."""
    R = f.ring
    x = x_poly(R)
    f = f.monic()
    g = poly_gcd(f, poly_powmod(x, R.order, f) - x)
    linear = equal_degree(g, 1, random.Random(seed)) if g.degree > 0 else []
    out = [R.neg(h.coeffs[0]) for h in linear]
    return sorted(out, key=R.encode)
