"""End-to-end computation of an Elkies kernel polynomial.

The same code path serves every characteristic: when p > 4*ell - 1 the
precision planner returns mu = 1 and everything runs over F_q.
"""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import Optional

from .errors import (
    ElkiesError,
    NonUnit,
    NotAPerfectSquare,
    OddnessViolated,
    ReconstructionFailed,
    VerificationFailed,
)
from .modpoly import ModPolyDB, curve_invariants, elkies_roots, isogenous_curve
from .ode import solve_ode
from .oracle import KernelReport, verify_kernel
from .precision import required_precision
from .reconstruct import pade, reverse_poly
from .ring import ZqElement, count_p_divisions, ctx_create, hensel_lift_root, is_prime, lift
from .series import Poly, Series, inv_trunc, mul_trunc, poly_sqrt_monic

ROOT_CHOICES = ("first", "second", "both")

# failures tied to one particular root; the next root is tried instead
_RETRYABLE = (NonUnit, VerificationFailed, ReconstructionFailed, NotAPerfectSquare)


@dataclass(frozen=True)
class ElkiesResult:
    kernel_poly: Poly
    jtilde_residue: ZqElement
    isogenous_a4: ZqElement
    isogenous_a6: ZqElement
    mu_used: int
    verification: Optional[KernelReport]
    p_divisions: int = 0
    root_index: int = 0

    @property
    def ell(self):
        return 2 * self.kernel_poly.degree + 1


@contextmanager
def _stage(name):
    try:
        yield
    except ElkiesError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def lift_curve(a4, a6, ctx):
    """Minimal lifts of the residue-field coefficients into ``ctx``."""
    return lift(a4, ctx), lift(a6, ctx)


def extract_odd(S):
    """t_i = s_{2i+1}; the even coefficients must vanish."""
    R = S.ring
    for k in range(0, S.trunc, 2):
        if not R.is_zero(S.coeffs[k]):
            raise OddnessViolated(f"coefficient of x^{k} is nonzero")
    return Series(R, S.coeffs[1::2], S.trunc // 2)


def _reduce(series, F):
    return Series(F, [series.ring.residue(c) for c in series.coeffs])


def _even_poly(ctx, a4, a6):
    z = ctx.zero
    return [ctx.one, z, z, z, a4.raw, z, a6.raw]


def _check_ell(ell, p):
    if ell < 3 or not is_prime(ell):
        raise ValueError(f"ell must be an odd prime, got {ell}")
    if ell == p:
        raise ValueError("ell must differ from p")


def _field_element(F, v):
    if isinstance(v, ZqElement):
        if v.ctx != F:
            raise ValueError("curve coefficient lives in another context")
        return v
    return F(v)


def kernel_for_root(A4, A6, ell, Phi, root, mu, verify=True):
    """Run the ODE path for one root of Phi(X, j) over F_q."""
    F = A4.ctx
    Z = F.with_precision(mu)
    with _stage("lift"):
        a4, a6 = lift_curve(A4, A6, Z)
        _, j = curve_invariants(a4, a6)
        jt = hensel_lift_root(Phi.univariate(j), root)
    with _stage("isogenous-curve"):
        b4, b6 = isogenous_curve(a4, a6, jt, Phi, ell)
    with _stage("ode"), count_p_divisions() as counter:
        G = inv_trunc(Series(Z, _even_poly(Z, a4, a6)), 4 * ell - 1)
        H = Poly(Z, _even_poly(Z, b4, b6))
        S = solve_ode(G, H, 0, 1, 4 * ell)
    with _stage("odd-part"):
        T = _reduce(extract_odd(S), F)
    with _stage("reconstruction"):
        R = inv_trunc(mul_trunc(T, T, 2 * ell), 2 * ell)
        den = pade(R, 2 * ell, ell, ell - 1).den
        D = reverse_poly(den, ell - 1)
    with _stage("square-root"):
        g = poly_sqrt_monic(D)
    report = None
    if verify:
        with _stage("verification"):
            report = verify_kernel(g, A4, A6, ell)
            if not report.passed:
                raise VerificationFailed("; ".join(report.messages), report=report)
    return ElkiesResult(g, root, b4, b6, mu, report, counter.count)


def compute_elkies_poly(p, n, a4, a6, ell, db=None, root_choice="first", defining_poly=None, seed=None, verify=True):
    """Elkies kernel polynomial(s) of y^2 = x^3 + a4 x + a6 over F_q.

    ``a4``/``a6`` are residue-field elements, or ints / coefficient vectors
    interpreted in ``ctx_create(p, n, 1, seed, defining_poly)``.  Returns one
    :class:`ElkiesResult`, or a tuple of them when ``root_choice == "both"``.
    A root that leads to a degenerate isogenous curve or fails verification
    is replaced by the next one.  ``verify=False`` skips the independent
    check (for timing); ``verification`` is then None.
    """
    if root_choice not in ROOT_CHOICES:
        raise ValueError(f"root_choice must be one of {ROOT_CHOICES}")
    _check_ell(ell, p)
    if isinstance(a4, ZqElement):
        F = a4.ctx
        if F.p != p or F.n != n or F.mu != 1:
            raise ValueError("curve coefficients must live in F_q with the given p and n")
    else:
        F = ctx_create(p, n, 1, seed=seed, defining_poly=defining_poly)
    A4, A6 = _field_element(F, a4), _field_element(F, a6)
    db = db if db is not None else ModPolyDB()

    with _stage("invariants"):
        _, j = curve_invariants(A4, A6)
    with _stage("modpoly"):
        Phi = db.get(ell)
    with _stage("roots"):
        found = elkies_roots(Phi, j)
    mu = required_precision(p, ell)

    order = list(range(len(found)))
    if root_choice == "second":
        order = order[1:] + order[:1]

    results, errors = [], []
    for idx in order:
        try:
            res = kernel_for_root(A4, A6, ell, Phi, found[idx], mu, verify)
        except _RETRYABLE as exc:
            errors.append(exc)
            continue
        results.append(_with_index(res, idx, found))
        if root_choice != "both":
            return results[0]
    if not results:
        raise errors[0]
    return tuple(results)


def _with_index(res, idx, found):
    return ElkiesResult(
        res.kernel_poly,
        found[idx],
        res.isogenous_a4,
        res.isogenous_a6,
        res.mu_used,
        res.verification,
        res.p_divisions,
        idx,
    )
