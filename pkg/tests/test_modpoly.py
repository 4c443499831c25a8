import random

import pytest

from conftest import EX_ISOGENOUS
from elkies.errors import AtkinPrime, MissingEll, ParseError, SingularCurve, SpecialJ, ValidationError
from elkies.modpoly import (
    ModPolyDB,
    curve_invariants,
    elkies_roots,
    eval_modpoly,
    isogenous_curve,
    load_modpoly,
    parse_modpoly,
    validate,
)
from elkies.ring import ctx_create, hensel_lift_root, lift

# Phi_3, written out independently of the bundled file
PHI3 = {
    (4, 0): 1,
    (3, 3): -1,
    (3, 2): 2232,
    (3, 1): -1069956,
    (3, 0): 36864000,
    (2, 2): 2587918086,
    (2, 1): 8900222976000,
    (2, 0): 452984832000000,
    (1, 1): -770845966336000000,
    (1, 0): 1855425871872000000000,
}


def test_bundled_phi3_matches_reference(db):
    assert db.get(3).terms == PHI3


@pytest.mark.parametrize("ell", [5, 7, 11, 13, 17, 19, 23, 47, 97])
def test_bundled_files_are_consistent(db, ell):
    Phi = db.get(ell)
    assert Phi.degree() == ell + 1
    assert Phi.coeff(ell + 1, 0) == 1
    assert Phi.coeff(ell, ell) == -1
    # j = 1/q + 744 + ... forces this coefficient
    assert Phi.coeff(ell, ell - 1) == 744 * ell


def test_available_lists_core_set(db):
    assert {3, 5, 7, 11, 13}.issubset(db.available())


def test_parse_errors():
    with pytest.raises(ParseError, match="header"):
        parse_modpoly("12 0 1\n")
    with pytest.raises(ParseError, match="duplicate"):
        parse_modpoly("ell 3\n4 0 1\n4 0 1\n")
    with pytest.raises(ParseError, match="i >= j"):
        parse_modpoly("ell 3\n0 4 1\n")
    with pytest.raises(ParseError, match="non-integer"):
        parse_modpoly("ell 3\n4 0 x\n")
    with pytest.raises(ParseError, match="missing"):
        parse_modpoly("# nothing\n")


def test_parse_comments_and_blank_lines():
    ell, terms = parse_modpoly("ell 3\n# comment\n\n4 0 1\n")
    assert ell == 3 and terms == {(4, 0): 1}


def test_validation_failures():
    terms = dict(PHI3)
    with pytest.raises(ValidationError):
        validate(3, {**terms, (5, 0): 1})
    with pytest.raises(ValidationError):
        validate(3, {**terms, (4, 4): 1})
    with pytest.raises(ValidationError):
        validate(3, {**terms, (4, 0): 2})
    with pytest.raises(ValidationError):
        validate(3, {k: v for k, v in terms.items() if k != (1, 1)})
    with pytest.raises(ValidationError):
        validate(9, terms)


def test_wrong_degree_file_rejected(tmp_path, db):
    text = (db.directory / "phi_11.txt").read_text() + "13 0 1\n"
    path = tmp_path / "phi_11.txt"
    path.write_text(text)
    with pytest.raises(ValidationError):
        load_modpoly(path, 11)


def test_truncated_file_rejected(tmp_path, db):
    lines = (db.directory / "phi_11.txt").read_text().splitlines()
    path = tmp_path / "phi_11.txt"
    path.write_text("\n".join(lines[:20]) + "\n")
    with pytest.raises(ValidationError):
        load_modpoly(tmp_path, 11)


def test_missing_ell(tmp_path):
    with pytest.raises(MissingEll):
        ModPolyDB(tmp_path).get(11)
    (tmp_path / "phi_5.txt").write_text("ell 7\n8 0 1\n")
    with pytest.raises(MissingEll):
        load_modpoly(tmp_path, 5)


def test_env_var_selects_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("ELKIES_MODPOLY_DIR", str(tmp_path))
    assert ModPolyDB().directory == tmp_path


def test_curve_invariants():
    F = ctx_create(5)
    delta, j = curve_invariants(F(1), F(4))
    assert delta == 4 and j == 2
    Q = ctx_create(101)
    assert curve_invariants(Q(0), Q(1))[1] == 0
    assert curve_invariants(Q(1), Q(0))[1] == 1728
    with pytest.raises(SingularCurve):
        curve_invariants(Q(-3), Q(2))


def test_eval_symmetry_and_partials(db):
    Z = ctx_create(7, 1, 4)
    rng = random.Random(2)
    Phi = db.get(5)
    for _ in range(10):
        a, b = Z(rng.randrange(7**4)), Z(rng.randrange(7**4))
        assert eval_modpoly(Phi, "value", a, b) == eval_modpoly(Phi, "value", b, a)
        assert eval_modpoly(Phi, "dX", a, b) == eval_modpoly(Phi, "dY", b, a)
    with pytest.raises(ValueError):
        eval_modpoly(Phi, "dZ", a, b)


def test_worked_example_roots_and_curve(db):
    F = ctx_create(5)
    Z = ctx_create(5, 1, 6)
    Phi = db.get(11)
    _, j = curve_invariants(F(1), F(4))
    roots = elkies_roots(Phi, j)
    assert [int(r) for r in roots] == [2]
    a4, a6 = lift(F(1), Z), lift(F(4), Z)
    jZ = curve_invariants(a4, a6)[1]
    jt = hensel_lift_root(Phi.univariate(jZ), roots[0])
    assert eval_modpoly(Phi, "value", jt, jZ) == 0
    assert eval_modpoly(Phi, "dX", jt, jZ).is_unit()
    b4, b6 = isogenous_curve(a4, a6, jt, Phi)
    assert (b4.signed(), b6.signed()) == EX_ISOGENOUS
    assert curve_invariants(b4, b6)[1] == jt


def test_special_and_atkin(db):
    Q = ctx_create(13)
    with pytest.raises(SpecialJ):
        elkies_roots(db.get(5), Q(0))
    with pytest.raises(SpecialJ):
        elkies_roots(db.get(5), Q(1728))
    with pytest.raises(ValueError):
        elkies_roots(db.get(5), ctx_create(13, 1, 2)(5))
    F = ctx_create(5)
    # j = 2 over F_5: no rational root of Phi_7
    with pytest.raises(AtkinPrime):
        elkies_roots(db.get(7), F(2))


def test_recipe_identity_on_source_curve():
    rng = random.Random(5)
    Z = ctx_create(101, 1, 3)
    for _ in range(20):
        a4, a6 = Z(rng.randrange(1, 101)), Z(rng.randrange(1, 101))
        try:
            _, j = curve_invariants(a4, a6)
        except SingularCurve:
            continue
        if not (1728 - j).is_unit():
            continue
        m = 18 * a6 / a4
        k = m * j / (1728 - j)
        assert m * k / 48 == a4
        assert m * m * k / 864 == a6


def test_random_isogenous_curves(db):
    rng = random.Random(8)
    hits = 0
    for p, mu in ((101, 1), (7, 4), (11, 3), (13, 5)):
        F = ctx_create(p)
        Z = ctx_create(p, 1, mu)
        for _ in range(60):
            A4, A6 = F(rng.randrange(p)), F(rng.randrange(p))
            try:
                _, j = curve_invariants(A4, A6)
                roots = elkies_roots(db.get(5), j)
            except Exception:
                continue
            for r in roots:
                assert db.get(5).univariate(j)(r) == 0
                if r == 0 or r == 1728 % p:
                    continue
                a4, a6 = lift(A4, Z), lift(A6, Z)
                jZ = curve_invariants(a4, a6)[1]
                jt = hensel_lift_root(db.get(5).univariate(jZ), r)
                b4, b6 = isogenous_curve(a4, a6, jt, db.get(5))
                assert curve_invariants(b4, b6)[1] == jt
                hits += 1
    assert hits > 10
