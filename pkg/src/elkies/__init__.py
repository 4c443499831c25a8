"""Elkies kernel polynomials in any characteristic p > 3.

The kernel polynomial of a rational ell-isogeny is recovered from the power
series solution of a nonlinear differential equation solved over a p-adic
ring, followed by a Pade reconstruction over F_q.
"""

from .errors import ElkiesError
from .modpoly import ModPolyDB, curve_invariants, elkies_roots, isogenous_curve, load_modpoly
from .ode import solve_ode
from .oracle import division_poly, naive_elkies, verify_kernel
from .pipeline import ElkiesResult, compute_elkies_poly
from .precision import required_precision
from .ring import ZqElement, ctx_create
from .series import Poly, Series

__all__ = [
    "ElkiesError",
    "ElkiesResult",
    "ModPolyDB",
    "Poly",
    "Series",
    "ZqElement",
    "compute_elkies_poly",
    "ctx_create",
    "curve_invariants",
    "division_poly",
    "elkies_roots",
    "isogenous_curve",
    "load_modpoly",
    "naive_elkies",
    "required_precision",
    "solve_ode",
    "verify_kernel",
]

__version__ = "0.1.0"
