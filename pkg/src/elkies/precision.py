"""p-adic precision budget for the isogeny ODE solver.

Each Newton level i of the solver integrates coefficients of degree r in
``2**i + 1 .. min(2**(i+1), 4*ell - 1)`` and so divides by at most
``p**lploss(p, ell, i)``.  Summing over the levels gives ``loss(p, ell)``;
working at precision ``loss + 1`` leaves one correct digit, which is all the
mod-p reduction needs.
"""

import csv
import io
from dataclasses import dataclass

from .ring import is_prime, pdiv

__all__ = [
    "REFERENCE_GRID",
    "PrecisionReport",
    "reference_grid_rows",
    "levels",
    "loss",
    "loss_odd",
    "lploss",
    "lploss_odd",
    "pdiv",
    "precision_report",
    "precision_table",
    "required_precision",
]


def levels(ell):
    """Newton levels i with 1 <= i and 2**i < 4*ell - 1 (integer comparison)."""
    top = 4 * ell - 1
    i = 1
    while 2**i < top:
        yield i
        i += 1


def _check_level(ell, i):
    if i < 1 or 2**i >= 4 * ell - 1:
        raise ValueError(f"level {i} outside 1 <= i < log2({4 * ell - 1})")


def lploss(p, ell, i):
    _check_level(ell, i)
    hi = min(2 ** (i + 1), 4 * ell - 1)
    return max(pdiv(p, r) for r in range(2**i + 1, hi + 1))


def lploss_odd(p, ell, i):
    """Loss at level i when only odd-degree coefficients are integrated."""
    _check_level(ell, i)
    lo, hi = 2 ** (i - 1), min(2**i - 1, 2 * ell - 1)
    if lo > hi:
        return 0
    return max(pdiv(p, 2 * r + 1) for r in range(lo, hi + 1))


def loss(p, ell):
    return sum(lploss(p, ell, i) for i in levels(ell))


def loss_odd(p, ell):
    return sum(lploss_odd(p, ell, i) for i in levels(ell))


def required_precision(p, ell):
    return loss(p, ell) + 1


@dataclass(frozen=True)
class PrecisionReport:
    p: int
    ell: int
    per_level: tuple
    loss: int
    required_mu: int
    odd_variant_loss: int


def precision_report(p, ell):
    per_level = tuple(lploss(p, ell, i) for i in levels(ell))
    total = sum(per_level)
    return PrecisionReport(p, ell, per_level, total, total + 1, loss_odd(p, ell))


def precision_table(p, ells):
    """Rows ``(ell, required_mu)``."""
    return [(ell, required_precision(p, ell)) for ell in ells]


def format_table(rows, fmt="text"):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ell", "required_mu"])
        w.writerows(rows)
        return buf.getvalue()
    width = max([3] + [len(str(ell)) for ell, _ in rows])
    lines = [f"{'ell':>{width}}  mu"]
    lines += [f"{ell:>{width}}  {mu}" for ell, mu in rows]
    return "\n".join(lines) + "\n"


# Reference precision grid: (p, first ell, last ell, mu).
# A range row covers every prime in the interval.
REFERENCE_GRID = (
    (5, 7, 7, 5), (5, 11, 11, 6), (5, 13, 13, 7), (5, 17, 17, 8), (5, 19, 31, 9),
    (5, 37, 37, 11), (5, 41, 61, 12), (5, 67, 67, 14), (5, 71, 89, 15),
    (5, 97, 97, 16), (5, 131, 131, 17), (5, 257, 257, 22),
    (7, 11, 11, 5), (7, 13, 13, 6), (7, 17, 17, 6), (7, 19, 23, 7), (7, 29, 31, 8),
    (7, 37, 61, 10), (7, 67, 73, 11), (7, 79, 83, 12), (7, 89, 97, 13),
    (7, 131, 131, 14), (7, 257, 257, 16),
    (11, 13, 13, 4), (11, 17, 29, 5), (11, 31, 31, 6), (11, 37, 59, 7),
    (11, 61, 61, 8), (11, 67, 89, 9), (11, 97, 97, 10), (11, 131, 131, 11),
    (11, 257, 257, 12),
)


def reference_grid_rows(p=None):
    """Expand the reference grid into ``(p, ell, mu)`` triples."""
    out = []
    for q, lo, hi, mu in REFERENCE_GRID:
        if p is not None and q != p:
            continue
        out.extend((q, ell, mu) for ell in range(lo, hi + 1) if is_prime(ell))
    return out
