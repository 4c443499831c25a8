import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from elkies import ring as R
from elkies.errors import ContextMismatch, NonUnit, NotASquare, NotDivisible, SingularRoot
from elkies.ring import ctx_create, lift
from elkies.series import Poly


def test_ctx_create_basic():
    Z = ctx_create(5, 1, 6)
    assert Z.modulus == 15625
    assert Z.order == 5
    F = ctx_create(5)
    assert F.is_field and F.mu == 1


def test_ctx_quadratic_is_irreducible():
    Z = ctx_create(7, 2, 3, seed=0)
    f = [c % 7 for c in Z.defining_poly]
    assert len(f) == 3 and f[-1] == 1
    assert all((f[0] + f[1] * x + x * x) % 7 for x in range(7))
    assert all(0 <= c < 7 for c in Z.defining_poly)


@pytest.mark.parametrize("p", [2, 3, 4, 9, 1])
def test_ctx_rejects_bad_p(p):
    with pytest.raises(ValueError):
        ctx_create(p)


def test_ctx_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        ctx_create(7, 2, 1, defining_poly=(0, 0, 1))


def test_ring_ops(Z56, F5):
    assert R.mul(Z56(2), Z56(3)) == 6
    assert R.add(Z56(15624), Z56(1)) == 0
    assert R.mul(F5(4), F5(4)) == 1
    assert R.neg(Z56(1)) == 15624
    assert R.sub(Z56(0), Z56(1)) == Z56(15624)


def test_mixed_contexts_rejected(Z56, F5):
    with pytest.raises(ContextMismatch):
        R.add(Z56(1), F5(1))
    with pytest.raises(ContextMismatch):
        Z56(1) + F5(1)


def test_inv_unit(Z56, F5):
    assert R.inv_unit(Z56(2)) == 7813
    assert R.inv_unit(F5(4)) == 4
    with pytest.raises(NonUnit):
        R.inv_unit(Z56(5))


def test_exact_div_pow_p(Z56):
    assert R.exact_div_pow_p(Z56(250), 2) == 10
    assert R.exact_div_pow_p(Z56(0), 2) == 0
    with pytest.raises(NotDivisible):
        R.exact_div_pow_p(Z56(7), 1)


def test_reduce_mod_p(Z56):
    assert R.reduce_mod_p(Z56(15624)) == 4
    assert R.reduce_mod_p(Z56(-733)) == 2
    assert R.reduce_mod_p(Z56(0)) == 0
    assert R.reduce_mod_p(Z56(3)).ctx.mu == 1


def test_fq_sqrt():
    assert R.fq_sqrt(ctx_create(5)(4)) == 2
    assert R.fq_sqrt(ctx_create(7)(2)) == 3
    with pytest.raises(NotASquare):
        R.fq_sqrt(ctx_create(5)(2))


def test_fq_sqrt_extension():
    F = ctx_create(7, 3, 1, seed=2)
    for k in range(1, 60):
        a = F(F.decode(k))
        s = R.fq_sqrt(a * a)
        assert s * s == a * a
        assert F.encode(s.raw) <= F.encode((-s).raw)


def test_hensel_lift_root():
    Z = ctx_create(5, 1, 3)
    F = ctx_create(5)
    f = Poly.from_values(Z, [-6, 0, 1])
    assert R.hensel_lift_root(f, F(1)) == 16
    Z6 = ctx_create(5, 1, 6)
    assert R.hensel_lift_root(Poly.from_values(Z6, [-3, 1]), F(3)) == 3
    with pytest.raises(SingularRoot):
        R.hensel_lift_root(Poly.from_values(Z, [0, 0, 1]), F(0))


def test_lift_is_minimal(Z56, F5):
    assert lift(F5(4), Z56).raw == 4
    assert lift(F5(1), Z56) == 1


def test_extension_inverse_and_encoding():
    Z = ctx_create(7, 2, 3, seed=0)
    a = Z((3, 5))
    assert a * a.inverse() == 1
    assert Z.decode(Z.encode(a.raw)) == a.raw
    with pytest.raises(NonUnit):
        Z((7, 14)).inverse()


def test_element_operators(Z56):
    a = Z56(2)
    assert a + 1 == 3 and 1 + a == 3
    assert 10 - a == 8
    assert a / 2 == 1
    assert a**3 == 8
    assert Z56(-1).signed() == -1
    assert int(Z56(-1)) == 15624


units = st.integers(0, 5**6 - 1).filter(lambda x: x % 5)


@given(units)
def test_inverse_property(a):
    Z = ctx_create(5, 1, 6)
    assert Z(a) * R.inv_unit(Z(a)) == 1


@given(st.integers(0, 7**3 - 1), st.integers(0, 7**3 - 1), st.integers(0, 7**3 - 1), st.integers(0, 7**3 - 1))
@settings(max_examples=50)
def test_reduction_is_homomorphism(a, b, c, d):
    Z = ctx_create(7, 2, 3, seed=1)
    x, y = Z((a, b)), Z((c, d))
    assert R.reduce_mod_p(x + y) == R.reduce_mod_p(x) + R.reduce_mod_p(y)
    assert R.reduce_mod_p(x * y) == R.reduce_mod_p(x) * R.reduce_mod_p(y)


@given(st.integers(0, 5**6 - 1), st.integers(0, 5))
def test_exact_div_roundtrip(a, v):
    Z = ctx_create(5, 1, 6)
    q = R.exact_div_pow_p(Z(a) * 5**v, v)
    assert (q.raw - a) % 5 ** (6 - v) == 0


@given(st.lists(st.integers(0, 10**6), min_size=2, max_size=6), st.integers(1, 10))
@settings(max_examples=50)
def test_hensel_random_simple_root(coeffs, r):
    Z = ctx_create(11, 1, 8)
    F = ctx_create(11)
    # force a root at r modulo 11
    f = Poly.from_values(Z, coeffs)
    f = f - Poly.from_values(Z, [f(Z(r)).raw % 11])
    d = Poly.from_values(F, [k * c for k, c in enumerate(coeffs)][1:])
    if d(F(r)) == 0:
        return
    root = R.hensel_lift_root(f, F(r))
    assert f(root) == 0
    assert root.raw % 11 == r


def test_division_counter(Z56):
    with R.count_p_divisions() as c:
        R.exact_div_pow_p(Z56(25), 2)
        R.exact_div_pow_p(Z56(3), 0)
    assert c.count == 1


def test_division_counters_nest(Z56):
    with R.count_p_divisions() as outer:
        R.exact_div_pow_p(Z56(5), 1)
        with R.count_p_divisions() as inner:
            R.exact_div_pow_p(Z56(25), 2)
        try:
            R.exact_div_pow_p(Z56(7), 1)
        except NotDivisible:
            pass
    assert inner.count == 1
    assert outer.count == 3
