"""Command-line front end.

Exit codes:

    0   success
    2   ell is an Atkin prime for the curve
    3   degenerate input (singular curve, j in {0, 1728}, repeated or unusable roots)
    4   modular polynomial database missing or invalid
    5   verification failure
    64  usage error
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import (
    AtkinPrime,
    DoubleRoot,
    ElkiesError,
    MissingEll,
    NonUnit,
    ParseError,
    SingularCurve,
    SpecialJ,
    ValidationError,
    VerificationFailed,
)
from .modpoly import ModPolyDB, load_modpoly, parse_modpoly, validate
from .oracle import division_poly, verify_kernel
from .pipeline import ROOT_CHOICES, compute_elkies_poly
from .precision import reference_grid_rows, format_table, precision_report, precision_table
from .ring import ctx_create, is_prime
from .series import Poly

EXIT_OK = 0
EXIT_ATKIN = 2
EXIT_DEGENERATE = 3
EXIT_DATABASE = 4
EXIT_VERIFY = 5
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 by default, which is taken by the Atkin code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def exit_code_for(exc):
    if isinstance(exc, AtkinPrime):
        return EXIT_ATKIN
    if isinstance(exc, (SpecialJ, DoubleRoot, SingularCurve, NonUnit)):
        return EXIT_DEGENERATE
    if isinstance(exc, (MissingEll, ParseError, ValidationError)):
        return EXIT_DATABASE
    if isinstance(exc, VerificationFailed):
        return EXIT_VERIFY
    return EXIT_VERIFY


# --- argument helpers ---------------------------------------------------------

def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _element(text, n):
    vals = _int_list(text)
    if n == 1 and len(vals) != 1:
        raise UsageError(f"expected one integer for n = 1, got {text!r}")
    if len(vals) > n:
        raise UsageError(f"expected at most {n} coefficients, got {text!r}")
    return vals[0] if n == 1 else vals


def _check_prime_p(p):
    if p <= 3 or not is_prime(p):
        raise UsageError(f"p must be a prime > 3, got {p}")


def _check_ell(ell, p=None):
    if ell < 3 or not is_prime(ell):
        raise UsageError(f"ell must be an odd prime, got {ell}")
    if p is not None and ell == p:
        raise UsageError("ell must differ from p")


def _field(args):
    _check_prime_p(args.p)
    if args.n < 1:
        raise UsageError("n must be positive")
    modulus = _int_list(args.modulus) if args.modulus else None
    if modulus is not None and args.n == 1:
        raise UsageError("--modulus only applies when n > 1")
    try:
        return ctx_create(args.p, args.n, 1, seed=args.seed, defining_poly=modulus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _value(F, raw):
    if F.n == 1:
        return F.encode(raw)
    return list(raw)


def _signed(elem):
    if elem.ctx.n == 1:
        return elem.signed()
    return list(elem.coeffs)


def _poly_str(values, n):
    if n > 1:
        return " + ".join(f"({','.join(map(str, c))})*x^{k}" for k, c in reversed(list(enumerate(values))))
    terms = []
    for k in range(len(values) - 1, -1, -1):
        c = values[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms) or "0"


def _add_curve_args(sp, need_ell=True):
    sp.add_argument("--p", type=int, required=True, help="characteristic (prime > 3)")
    sp.add_argument("--n", type=int, default=1, help="extension degree of F_q over F_p")
    sp.add_argument("--a4", required=True, help="integer, or comma-separated vector when n > 1")
    sp.add_argument("--a6", required=True)
    if need_ell:
        sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--modulus", help="defining polynomial of F_q, ascending coefficients")
    sp.add_argument("--seed", type=int, default=None, help="seed for the default defining polynomial")


def _add_format(sp, choices=("text", "json")):
    sp.add_argument("--format", choices=choices, default="text")


# --- commands ---------------------------------------------------------------------

def _result_json(res, F, a4, a6):
    out = {
        "ell": res.ell,
        "p": F.p,
        "n": F.n,
        "mu": res.mu_used,
        "kernel_poly": [_value(F, c) for c in res.kernel_poly.trimmed()],
        "isogenous_curve": {"a4": _signed(res.isogenous_a4), "a6": _signed(res.isogenous_a6)},
        "verified": res.verification.passed,
        "root": F.encode(res.jtilde_residue.raw),
        "curve": {"a4": _value(F, a4.raw), "a6": _value(F, a6.raw)},
    }
    if F.n > 1:
        out["modulus"] = list(F.defining_poly)
    return out


def _result_text(res, F):
    coeffs = [_value(F, c) for c in res.kernel_poly.trimmed()]
    checks = ", ".join(k for k, v in res.verification.as_dict().items() if v)
    status = "pass" if res.verification.passed else "FAIL"
    prec = f"{F.p}^{res.mu_used}"
    return "\n".join(
        [
            f"kernel polynomial: {_poly_str(coeffs, F.n)}",
            f"coefficients (ascending): {coeffs}",
            f"isogenous curve: a4' = {_signed(res.isogenous_a4)}, a6' = {_signed(res.isogenous_a6)} (mod {prec})",
            f"root: {F.encode(res.jtilde_residue.raw)} (index {res.root_index})",
            f"precision: mu = {res.mu_used}",
            f"verification: {status} ({checks})",
        ]
    )


def run_kernel_job(job, modpoly_dir=None):
    """Run one kernel job given as a dict; returns (exit code, payload)."""
    p, n, ell = int(job["p"]), int(job.get("n", 1)), int(job["ell"])
    modulus = job.get("modulus")
    F = ctx_create(p, n, 1, seed=job.get("seed"), defining_poly=tuple(modulus) if modulus else None)
    a4, a6 = F(job["a4"]), F(job["a6"])
    root = job.get("root", "first")
    try:
        res = compute_elkies_poly(p, n, a4, a6, ell, db=ModPolyDB(modpoly_dir), root_choice=root)
    except ElkiesError as exc:
        return exit_code_for(exc), {"error": type(exc).__name__, "stage": exc.stage, "message": str(exc)}
    results = res if isinstance(res, tuple) else (res,)
    payload = [_result_json(r, F, a4, a6) for r in results]
    return EXIT_OK, payload if root == "both" else payload[0]


def cmd_kernel(args):
    F = _field(args)
    _check_ell(args.ell, args.p)
    a4, a6 = F(_element(args.a4, F.n)), F(_element(args.a6, F.n))
    db = ModPolyDB(args.modpoly_dir)
    res = compute_elkies_poly(args.p, F.n, a4, a6, args.ell, db=db, root_choice=args.root)
    results = res if isinstance(res, tuple) else (res,)
    if args.format == "json":
        payload = [_result_json(r, F, a4, a6) for r in results]
        print(json.dumps(payload if args.root == "both" else payload[0]))
    else:
        print("\n\n".join(_result_text(r, F) for r in results))
    return EXIT_OK if all(r.verification.passed for r in results) else EXIT_VERIFY


def _ell_list(args):
    if args.ell is not None:
        _check_ell(args.ell)
        return [args.ell]
    try:
        lo, hi = (int(t) for t in args.ell_range.split(":"))
    except ValueError:
        raise UsageError("--ell-range must look like LO:HI") from None
    ells = [e for e in range(max(lo, 3), hi + 1) if is_prime(e)]
    if not ells:
        raise UsageError("no odd primes in the requested range")
    return ells


def cmd_precision(args):
    if args.figure1:
        rows = reference_grid_rows(args.p)
        if args.format == "csv":
            print("p,ell,mu")
            for p, ell, mu in rows:
                print(f"{p},{ell},{mu}")
        else:
            for p, ell, mu in rows:
                print(f"{p:>3} {ell:>4} {mu:>3}")
        return EXIT_OK
    if args.p is None:
        raise UsageError("--p is required unless --figure1 is given")
    _check_prime_p(args.p)
    if args.ell is None and args.ell_range is None:
        raise UsageError("give --ell, --ell-range or --figure1")
    ells = _ell_list(args)
    if args.detail:
        for ell in ells:
            r = precision_report(args.p, ell)
            print(f"ell={ell} per_level={list(r.per_level)} loss={r.loss} mu={r.required_mu}")
        return EXIT_OK
    if len(ells) == 1 and args.format == "text":
        print(precision_table(args.p, ells)[0][1])
        return EXIT_OK
    sys.stdout.write(format_table(precision_table(args.p, ells), args.format))
    return EXIT_OK


def cmd_verify(args):
    if args.json:
        with open(args.json, encoding="utf-8") as fh:
            data = json.load(fh)
        items = data if isinstance(data, list) else [data]
        code = EXIT_OK
        for item in items:
            modulus = item.get("modulus")
            F = ctx_create(item["p"], item["n"], 1, defining_poly=tuple(modulus) if modulus else None)
            g = Poly.from_values(F, item["kernel_poly"])
            a4, a6 = F(item["curve"]["a4"]), F(item["curve"]["a6"])
            code = max(code, _verify_and_report(g, a4, a6, item["ell"], args.format))
        return code
    if args.g is None or args.a4 is None or args.a6 is None or args.ell is None or args.p is None:
        raise UsageError("verify needs --json, or --p, --a4, --a6, --ell and --g")
    F = _field(args)
    _check_ell(args.ell, args.p)
    if F.n == 1:
        vals = _int_list(args.g)
    else:
        vals = [_int_list(c) for c in args.g.split(";")]
    g = Poly.from_values(F, vals)
    a4, a6 = F(_element(args.a4, F.n)), F(_element(args.a6, F.n))
    return _verify_and_report(g, a4, a6, args.ell, args.format)


def _verify_and_report(g, a4, a6, ell, fmt):
    from .modpoly import curve_invariants

    curve_invariants(a4, a6)
    rep = verify_kernel(g, a4, a6, ell)
    if fmt == "json":
        print(json.dumps({"passed": rep.passed, "checks": rep.as_dict(), "messages": rep.messages}))
    else:
        for name, ok in rep.as_dict().items():
            print(f"{name}: {'ok' if ok else 'FAIL'}")
        for m in rep.messages:
            print(f"  {m}", file=sys.stderr)
        print("verified" if rep.passed else "not verified")
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_divpoly(args):
    F = _field(args)
    if args.ell < 1:
        raise UsageError("ell must be positive")
    a4, a6 = F(_element(args.a4, F.n)), F(_element(args.a6, F.n))
    f = division_poly(args.ell, a4, a6)
    if args.degree_only:
        print(f.degree)
    elif args.format == "json":
        print(json.dumps({"ell": args.ell, "degree": f.degree, "coefficients": [_value(F, c) for c in f.trimmed()]}))
    else:
        print(f"degree {f.degree}")
        print(_poly_str([_value(F, c) for c in f.trimmed()], F.n))
    return EXIT_OK


def cmd_modpoly_check(args):
    path = args.path
    with open(path, encoding="utf-8") as fh:
        ell, terms = parse_modpoly(fh.read(), path)
    if args.ell is not None and args.ell != ell:
        raise MissingEll(f"{path} holds ell = {ell}, not {args.ell}")
    validate(ell, terms)
    print(f"{path}: ell = {ell}, {len(terms)} stored terms, valid")
    return EXIT_OK


def cmd_list(args):
    db = ModPolyDB(args.modpoly_dir)
    print(f"{db.directory}: {' '.join(map(str, db.available())) or '(empty)'}")
    return EXIT_OK


def _batch_worker(item):
    job, modpoly_dir = item
    try:
        code, payload = run_kernel_job(job, modpoly_dir)
    except (KeyError, ValueError, TypeError) as exc:
        code, payload = EXIT_USAGE, {"error": "BadJob", "message": str(exc)}
    return code, {"job": job, "exit": code, "result": payload}


def cmd_batch(args):
    jobs = []
    with open(args.file, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if line.strip() and not line.lstrip().startswith("#"):
                try:
                    jobs.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise UsageError(f"{args.file}:{lineno}: {exc}") from None
    items = [(job, args.modpoly_dir) for job in jobs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outputs = list(pool.map(_batch_worker, items))
    else:
        outputs = [_batch_worker(it) for it in items]
    worst = EXIT_OK
    for code, record in outputs:
        print(json.dumps(record))
        worst = max(worst, code)
    return worst


# --- entry point ------------------------------------------------------------------

def build_parser():
    parser = _Parser(prog="elkies", description="Elkies kernel polynomials via a p-adic differential equation.")
    parser.add_argument("--modpoly-dir", default=None, help="directory of phi_<ell>.txt files (default: $ELKIES_MODPOLY_DIR or the bundled data)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("kernel", help="compute an Elkies kernel polynomial")
    _add_curve_args(sp)
    sp.add_argument("--root", choices=ROOT_CHOICES, default="first")
    _add_format(sp)
    sp.set_defaults(func=cmd_kernel)

    sp = sub.add_parser("precision", help="p-adic precision needed by the solver")
    sp.add_argument("--p", type=int)
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--ell", type=int)
    grp.add_argument("--ell-range", help="LO:HI, all odd primes in between")
    grp.add_argument("--figure1", action="store_true", help="print the reference precision grid")
    sp.add_argument("--detail", action="store_true", help="show the per-level losses")
    _add_format(sp, ("text", "csv"))
    sp.set_defaults(func=cmd_precision)

    sp = sub.add_parser("verify", help="check a candidate kernel polynomial")
    sp.add_argument("--json", help="re-verify the JSON printed by 'kernel --format json'")
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--a4")
    sp.add_argument("--a6")
    sp.add_argument("--ell", type=int)
    sp.add_argument("--g", help="ascending coefficients, comma-separated (';' between vectors when n > 1)")
    sp.add_argument("--modulus")
    sp.add_argument("--seed", type=int, default=None)
    _add_format(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("divpoly", help="print a division polynomial")
    _add_curve_args(sp)
    sp.add_argument("--degree-only", action="store_true")
    _add_format(sp)
    sp.set_defaults(func=cmd_divpoly)

    sp = sub.add_parser("modpoly-check", help="validate a modular polynomial file")
    sp.add_argument("path")
    sp.add_argument("--ell", type=int)
    sp.set_defaults(func=cmd_modpoly_check)

    sp = sub.add_parser("modpoly-list", help="list the ell values in the database")
    sp.set_defaults(func=cmd_list)

    sp = sub.add_parser("batch", help="run kernel jobs from a JSON-lines file")
    sp.add_argument("file")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_batch)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"elkies: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ElkiesError as exc:
        print(f"elkies: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"elkies: {exc}", file=sys.stderr)
        return EXIT_DATABASE if args.command.startswith("modpoly") else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
