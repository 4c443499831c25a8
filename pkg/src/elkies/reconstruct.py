"""Pade approximation of a truncated series by extended Euclid."""

from dataclasses import dataclass

from .errors import ReconstructionFailed
from .polyalg import poly_divmod
from .series import Poly, Series, mul_trunc


@dataclass(frozen=True)
class PadeResult:
    num: Poly
    den: Poly
    valid: bool


def pade(R, order, deg_num, deg_den):
    """num/den with den(0) = 1 agreeing with R modulo x**order.

    Runs Euclid on (x**order, R) and stops at the first remainder of degree
    <= deg_num; the matching cofactor of R is the denominator.
    """
    ring = R.ring
    if R.trunc < order:
        raise ValueError(f"series known only to order {R.trunc} < {order}")
    r0 = Poly.monomial(ring, order)
    r1 = Poly(ring, R.coeffs[:order])
    t0 = Poly(ring, [])
    t1 = Poly(ring, [ring.one])
    while r1.degree > deg_num:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    num, den = r1, t1
    if den.degree > deg_den:
        raise ReconstructionFailed(f"denominator degree {den.degree} exceeds {deg_den}")
    c0 = den.coeffs[0] if den.coeffs else ring.zero
    if not ring.is_unit(c0):
        raise ReconstructionFailed("denominator vanishes at 0")
    inv = ring.inv(c0)
    num, den = num.scale(inv), den.scale(inv)
    check = mul_trunc(Series(ring, den.trimmed()), R, order)
    valid = Series(ring, num.trimmed(), order) == check
    if not valid:
        raise ReconstructionFailed("num != den * R modulo x**order")
    return PadeResult(Poly(ring, num.trimmed()), Poly(ring, den.trimmed()), valid)


def reverse_poly(P, d):
    """x**d * P(1/x)."""
    c = P.trimmed()
    if len(c) - 1 > d:
        raise ValueError(f"degree {len(c) - 1} exceeds {d}")
    c = c + [P.ring.zero] * (d + 1 - len(c))
    return Poly(P.ring, c[::-1])
