"""Newton-doubling solver for S'(x)**2 = G(x) * H(S(x)), S(0) = alpha, S'(0) = beta.

Besides S the solver carries three auxiliary series, each only needed to half
the current order:

* ``U``, the inverse of S',
* ``V``, a square root of H(S),
* ``J``, the inverse of V.

One step turns a solution modulo x**(d+1) into one modulo x**(2d+1).
"""

from dataclasses import dataclass

from .errors import BadInitialConditions
from .series import Poly, Series, compose_even_poly, compose_poly, derivative, integrate, is_even_shaped, mul_trunc


@dataclass(frozen=True)
class OdeState:
    d: int
    U: Series
    V: Series
    J: Series
    S: Series


def _raw(R, x):
    return x.raw if hasattr(x, "raw") else R.coerce(x)


def _eval(H, x):
    R = H.ring
    acc = R.zero
    for c in reversed(H.coeffs):
        acc = R.add(R.mul(acc, x), c)
    return acc


def _compose(H, S, m):
    return compose_even_poly(H, S, m) if is_even_shaped(H) else compose_poly(H, S, m)


def ode_init(alpha, beta, G, H):
    R = G.ring
    a, b = _raw(R, alpha), _raw(R, beta)
    problems = []
    if _eval(H, a) != R.one:
        problems.append("H(alpha) != 1")
    g0 = G.coeffs[0] if G.trunc else R.zero
    if R.mul(b, b) != g0:
        problems.append("beta**2 != G(0)")
    if not R.is_unit(b):
        problems.append("beta is not a unit")
    if problems:
        raise BadInitialConditions("; ".join(problems))
    g1 = G.coeffs[1] if G.trunc > 1 else R.zero
    dH = Poly(R, [R.scale_int(c, k) for k, c in enumerate(H.coeffs)][1:])
    b3 = R.mul(b, R.mul(b, b))
    gamma = R.mul(R.add(g1, R.mul(_eval(dH, a), b3)), R.inv(R.scale_int(b, 4)))
    one = Series(R, [R.one])
    return OdeState(
        d=2,
        U=Series(R, [R.inv(b)]),
        V=one,
        J=one,
        S=Series(R, [a, b, gamma]),
    )


def _two_minus(A, m):
    R = A.ring
    out = [R.neg(c) for c in A.truncate(m).coeffs]
    out[0] = R.add(out[0], R.from_int(2))
    return Series(R, out)


def ode_step(state, G, H, mu):
    """Apply the U, V, J and S updates (in that order) and double d."""
    d, U, V, J, S = state.d, state.U, state.V, state.J, state.S
    R = S.ring
    half = R.inv(R.from_int(2))
    # S is the degree-<=d polynomial S_d; products below read it as such.
    dS = derivative(S)

    U = mul_trunc(U, _two_minus(mul_trunc(dS, U, d), d), d)

    HS_d = _compose(H, S, d)
    VJ = mul_trunc(V, J, d)
    corr = mul_trunc(mul_trunc(J, HS_d, d), _two_minus(VJ, d), d)
    V = (V.truncate(d) + corr).scale(half)

    J = mul_trunc(J, _two_minus(mul_trunc(J, V, d), d), d)

    top = min(2 * d + 1, mu)
    m = top - 1  # the integrand is needed modulo x**(top - 1)
    HS = _compose(H, S, m)
    resid = mul_trunc(G, HS, m) - mul_trunc(dS, dS, m)
    # The residual is divisible by x**d; its lower coefficients only carry
    # rounding noise from earlier exact divisions, so they are dropped.
    resid = Series(R, [R.zero] * min(d, m) + resid.coeffs[d:m])
    UJ = mul_trunc(U, J, d).scale(half)
    integral = integrate(mul_trunc(resid, UJ, m))
    S = S.truncate(top) + mul_trunc(V, integral, top)
    return OdeState(2 * d, U, V, J, S)


def solve_ode(G, H, alpha, beta, mu):
    """S modulo x**mu; with mu <= 3 the initial quadratic is returned truncated."""
    state = ode_init(alpha, beta, G, H)
    while state.d < mu - 1:
        state = ode_step(state, G, H, mu)
    return state.S.truncate(mu)


def ode_residual(S, G, H):
    """S'**2 - G * H(S) modulo x**(trunc(S) - 2)."""
    m = max(S.trunc - 2, 0)
    dS = derivative(S)
    return mul_trunc(dS, dS, m) - mul_trunc(G, _compose(H, S, m), m)
