import random

import pytest

from conftest import EX_D, EX_DEN, EX_NUM, EX_R
from elkies.errors import ReconstructionFailed
from elkies.reconstruct import pade, reverse_poly
from elkies.ring import ctx_create
from elkies.series import Poly, Series, inv_trunc, mul_trunc


def test_geometric(F5):
    R = Series.from_values(F5, [1] + [2] * 9)
    res = pade(R, 10, 1, 1)
    assert res.num.values() == [1, 1]
    assert res.den.values() == [1, 4]
    assert res.valid


def test_constant(F5):
    res = pade(Series.from_values(F5, [1, 0, 0]), 3, 0, 0)
    assert res.num.values() == [1] and res.den.values() == [1]


def test_worked_example(F5):
    res = pade(Series.from_values(F5, EX_R), 22, 11, 10)
    assert res.den.values() == EX_DEN
    assert res.num.values() == EX_NUM
    assert reverse_poly(res.den, 10).values() == EX_D


def test_reverse_poly(F5):
    assert reverse_poly(Poly.from_values(F5, [1]), 3).values() == [0, 0, 0, 1]
    P = Poly.from_values(F5, [2, 0, 3, 1])
    assert reverse_poly(reverse_poly(P, 5), 5) == P
    with pytest.raises(ValueError):
        reverse_poly(P, 2)


def test_short_series_rejected(F5):
    with pytest.raises(ValueError):
        pade(Series.from_values(F5, [1, 2]), 4, 2, 1)


def test_degree_bound_violation(F5):
    # 1/(1 - x - x^2) needs a quadratic denominator
    Q = ctx_create(13)
    R = inv_trunc(Series.from_values(Q, [1, -1, -1]), 8)
    with pytest.raises(ReconstructionFailed):
        pade(R, 8, 0, 1)


def test_random_rational_series():
    rng = random.Random(9)
    Q = ctx_create(31)
    for _ in range(40):
        dn, dd = rng.randrange(0, 6), rng.randrange(0, 6)
        num = Poly.from_values(Q, [rng.randrange(31) for _ in range(dn)] + [rng.randrange(1, 31)])
        den = Poly.from_values(Q, [1] + [rng.randrange(31) for _ in range(dd - 1)] + ([rng.randrange(1, 31)] if dd else []))
        order = dn + dd + 1
        R = mul_trunc(Series(Q, num.coeffs), inv_trunc(Series(Q, den.coeffs), order), order)
        try:
            res = pade(R, order, dn, dd)
        except ReconstructionFailed:
            # happens only when num and den share a factor
            from elkies.polyalg import poly_gcd

            assert poly_gcd(num, den).degree > 0
            continue
        assert res.num * den == num * res.den
