#!/usr/bin/env python3
"""Generate classical modular polynomial files for the bundled database.

Development tool only; the library never computes modular polynomials.

Phi_l(X, j(tau)) = (X - j(l*tau)) * prod_k (X - j((tau + k)/l)), so for l + 2
values of tau on the unit arc the coefficients in X are evaluated numerically
and then interpolated in Y = j(tau).  The integer result is accepted only when
two runs at different working precisions agree and every coefficient rounds
cleanly.

    python tools/gen_modpoly.py 5 7 11 13 --out src/elkies/data/modpoly
"""

import argparse
import sys
from pathlib import Path

import mpmath as mp


def _reduce(tau):
    # move tau into the standard fundamental domain; j is SL2(Z)-invariant
    eps = mp.mpf(10) ** (-(mp.mp.dps // 2))
    while True:
        tau = tau - mp.nint(tau.real)
        if abs(tau) < 1 - eps:
            tau = -1 / tau
        else:
            return tau


def _j(tau):
    return 1728 * mp.kleinj(_reduce(tau))


def _expand(ell, dps):
    mp.mp.dps = dps
    npts = ell + 2
    lo, hi = mp.pi / 3, mp.pi / 2
    ys, values = [], []
    for s in range(npts):
        theta = lo + (hi - lo) * (s + 1) / (npts + 1)
        tau = mp.expjpi(theta / mp.pi)
        roots = [_j(ell * tau)] + [_j((tau + k) / ell) for k in range(ell)]
        poly = [mp.mpc(1)]
        for r in roots:
            nxt = [mp.mpc(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] += c
                nxt[i] -= c * r
            poly = nxt
        ys.append(_j(tau).real)
        values.append([c.real for c in poly])

    vander = mp.matrix([[y**k for k in range(npts)] for y in ys])
    coeffs = {}
    worst = mp.mpf(0)
    for i in range(ell + 2):
        sol = mp.lu_solve(vander, mp.matrix([values[s][i] for s in range(npts)]))
        for k in range(npts):
            r = int(mp.nint(sol[k]))
            worst = max(worst, abs(sol[k] - r))
            if r:
                coeffs[(i, k)] = r
    return coeffs, worst


def classical_modpoly(ell):
    dps = 20 * ell + 100
    first, err1 = _expand(ell, dps)
    second, err2 = _expand(ell, dps + 80)
    if first != second or max(err1, err2) > mp.mpf(10) ** -20:
        raise RuntimeError(f"unstable result for ell={ell}")
    for (i, k), c in first.items():
        if first.get((k, i)) != c:
            raise RuntimeError(f"asymmetric result for ell={ell} at {(i, k)}")
    if first.get((ell + 1, 0)) != 1 or (ell + 1, ell + 1) in first:
        raise RuntimeError(f"bad normalization for ell={ell}")
    return first


def write(ell, coeffs, path):
    lines = [f"ell {ell}", "# classical modular polynomial; '<i> <j> <c>' means c*(X^i Y^j + X^j Y^i), i >= j"]
    for (i, k) in sorted(coeffs, reverse=True):
        if i >= k:
            lines.append(f"{i} {k} {coeffs[(i, k)]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("ells", type=int, nargs="+")
    ap.add_argument("--out", type=Path, required=True)
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for ell in args.ells:
        coeffs = classical_modpoly(ell)
        write(ell, coeffs, args.out / f"phi_{ell}.txt")
        print(f"ell={ell}: {len(coeffs)} terms", file=sys.stderr)


if __name__ == "__main__":
    main()
