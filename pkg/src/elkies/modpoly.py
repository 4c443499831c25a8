"""Classical modular polynomials: ingestion, evaluation, Elkies roots and the
normalized isogenous curve.

File format (UTF-8)::

    ell 11
    # comment
    12 0 1
    11 11 -1
    ...

Each data line ``i j c`` with ``i >= j >= 0`` stands for
``c * (X**i Y**j + X**j Y**i)`` (a single term when ``i == j``).
"""

import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    AtkinPrime,
    DoubleRoot,
    MissingEll,
    NonUnit,
    ParseError,
    SingularCurve,
    SpecialJ,
    ValidationError,
)
from .polyalg import roots
from .ring import ZqElement, is_prime
from .series import Poly

ENV_VAR = "ELKIES_MODPOLY_DIR"


@dataclass(frozen=True)
class ModPoly:
    ell: int
    terms: dict = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def coeff(self, i, j):
        return self.terms.get((max(i, j), min(i, j)), 0)

    def degree(self):
        return max(i for i, _ in self.terms)

    def matrix(self, ring):
        """Full coefficient matrix reduced into ``ring`` (cached per ring)."""
        key = ring
        rows = self._cache.get(key)
        if rows is None:
            size = self.ell + 2
            rows = [[ring.zero] * size for _ in range(size)]
            for (i, j), c in self.terms.items():
                rows[i][j] = rows[j][i] = ring.from_int(c)
            self._cache[key] = rows
        return rows

    def univariate(self, y):
        """Phi(X, y) as a polynomial in X, for a raw value or element y."""
        ring, raw = _unpack(y)
        out = []
        for row in self.matrix(ring):
            acc = ring.zero
            for c in reversed(row):
                acc = ring.add(ring.mul(acc, raw), c)
            out.append(acc)
        return Poly(ring, out)


def _unpack(x):
    if not isinstance(x, ZqElement):
        raise TypeError("expected a ring element")
    return x.ctx, x.raw


def parse_modpoly(text, source="<string>"):
    ell = None
    terms = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if ell is None:
            if len(parts) != 2 or parts[0] != "ell":
                raise ParseError(f"{source}:{lineno}: expected 'ell <L>' header")
            try:
                ell = int(parts[1])
            except ValueError:
                raise ParseError(f"{source}:{lineno}: bad ell value") from None
            continue
        if len(parts) != 3:
            raise ParseError(f"{source}:{lineno}: expected '<i> <j> <c>'")
        try:
            i, j, c = (int(t) for t in parts)
        except ValueError:
            raise ParseError(f"{source}:{lineno}: non-integer field") from None
        if not i >= j >= 0:
            raise ParseError(f"{source}:{lineno}: need i >= j >= 0")
        if (i, j) in terms:
            raise ParseError(f"{source}:{lineno}: duplicate term ({i}, {j})")
        if c:
            terms[(i, j)] = c
    if ell is None:
        raise ParseError(f"{source}: missing 'ell' header")
    return ell, terms


def validate(ell, terms):
    """Raise ValidationError unless ``terms`` look like the classical Phi_ell."""
    if not is_prime(ell):
        raise ValidationError(f"ell = {ell} is not prime")
    top = ell + 1
    bad = [(i, j) for (i, j) in terms if i > top]
    if bad:
        raise ValidationError(f"term {bad[0]} exceeds degree {top}")
    if terms.get((top, 0)) != 1:
        raise ValidationError(f"coefficient of X^{top} must be 1")
    if (top, top) in terms:
        raise ValidationError(f"coefficient of X^{top} Y^{top} must be 0")
    if any(i == top and j > 0 for (i, j) in terms):
        raise ValidationError(f"X^{top} may only appear alone")
    # Kronecker: Phi_ell = (X^ell - Y)(X - Y^ell) modulo ell
    expected = {(top, 0): 1, (ell, ell): -1, (1, 1): -1}
    keys = set(expected) | set(terms)
    for key in keys:
        if (terms.get(key, 0) - expected.get(key, 0)) % ell:
            raise ValidationError(f"Kronecker congruence fails at term {key}; file truncated or corrupt?")


def load_modpoly(path, ell):
    """Load Phi_ell from a file, or from ``phi_<ell>.txt`` inside a directory."""
    path = Path(path)
    if path.is_dir():
        path = path / f"phi_{ell}.txt"
    if not path.is_file():
        raise MissingEll(f"no modular polynomial for ell = {ell} ({path})")
    file_ell, terms = parse_modpoly(path.read_text(encoding="utf-8"), str(path))
    if file_ell != ell:
        raise MissingEll(f"{path} holds ell = {file_ell}, not {ell}")
    validate(ell, terms)
    return ModPoly(ell, terms)


def default_db_dir():
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "data" / "modpoly"


class ModPolyDB:
    """Directory of ``phi_<ell>.txt`` files, loaded lazily and shared read-only."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_db_dir()
        self._loaded = {}

    def get(self, ell):
        if ell not in self._loaded:
            self._loaded[ell] = load_modpoly(self.directory, ell)
        return self._loaded[ell]

    def available(self):
        out = []
        for f in self.directory.glob("phi_*.txt"):
            try:
                out.append(int(f.stem.split("_", 1)[1]))
            except ValueError:
                continue
        return sorted(out)

    def __repr__(self):
        return f"ModPolyDB({str(self.directory)!r})"


def eval_modpoly(Phi, which, x0, y0):
    """Phi, dPhi/dX or dPhi/dY at (x0, y0)."""
    if which not in ("value", "dX", "dY"):
        raise ValueError("which must be 'value', 'dX' or 'dY'")
    ring, x = _unpack(x0)
    ring2, y = _unpack(y0)
    if ring != ring2:
        raise ValueError("x0 and y0 live in different contexts")
    rows = Phi.matrix(ring)
    if which == "dY":
        rows = [[ring.scale_int(c, j) for j, c in enumerate(row)][1:] for row in rows]
    elif which == "dX":
        rows = [[ring.scale_int(c, i) for c in row] for i, row in enumerate(rows)][1:]
    acc = ring.zero
    for row in reversed(rows):
        inner = ring.zero
        for c in reversed(row):
            inner = ring.add(ring.mul(inner, y), c)
        acc = ring.add(ring.mul(acc, x), inner)
    return ZqElement(ring, acc)


def curve_invariants(a4, a6):
    """Discriminant and j-invariant of y^2 = x^3 + a4 x + a6."""
    delta = -16 * (4 * a4 * a4 * a4 + 27 * a6 * a6)
    if not delta.is_unit():
        raise SingularCurve("discriminant vanishes modulo p")
    c = 4 * a4
    j = -1728 * c * c * c / delta
    return delta, j


def _is_special(j):
    return j == 0 or j == 1728


def elkies_roots(Phi, jE):
    """Simple roots of Phi(X, jE) in F_q, ordered by canonical encoding."""
    ctx = jE.ctx
    if ctx.mu != 1:
        raise ValueError("elkies_roots works over the residue field")
    if _is_special(jE):
        raise SpecialJ(f"j = {jE.signed() if ctx.n == 1 else jE.coeffs} is 0 or 1728")
    P = Phi.univariate(jE)
    found = roots(P)
    if not found:
        raise AtkinPrime(f"{Phi.ell} is an Atkin prime for this curve")
    dP = Poly(ctx, [ctx.scale_int(c, k) for k, c in enumerate(P.coeffs)][1:])
    # repeated roots cannot be Hensel-lifted; they are skipped
    simple = [r for r in found if not ctx.is_zero(dP(r))]
    if not simple:
        raise DoubleRoot(f"every rational root of Phi_{Phi.ell}(X, j) is repeated")
    return tuple(ZqElement(ctx, r) for r in simple)


def _inv(x, what):
    if not x.is_unit():
        raise NonUnit(f"{what} vanishes modulo p")
    return x.inverse()


def isogenous_curve(a4, a6, jtilde, Phi, ell=None):
    """Normalized (a4', a6') of the ell-isogenous curve with j-invariant jtilde.

    Partial derivatives of Phi are taken with X = jtilde, Y = j(E).
    """
    ell = Phi.ell if ell is None else ell
    _, j = curve_invariants(a4, a6)
    m = 18 * a6 * _inv(a4, "a4")
    jp = m * j
    phi_x = eval_modpoly(Phi, "dX", jtilde, j)
    phi_y = eval_modpoly(Phi, "dY", jtilde, j)
    jtp = -jp * phi_y * _inv(ell * phi_x, "ell * dPhi/dX(jtilde, j)")
    mt = jtp * _inv(jtilde, "jtilde")
    kt = jtp * _inv(1728 - jtilde, "1728 - jtilde")
    a4p = ell**4 * mt * kt * _inv(a4.ctx(48), "48")
    a6p = ell**6 * mt * mt * kt * _inv(a4.ctx(864), "864")
    return a4p, a6p
