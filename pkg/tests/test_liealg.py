"""Lie algebra layer: validation, adjoint matrices, the generalized Killing form."""

from fractions import Fraction

import pytest

from parshin.errors import AntisymmetryViolation, JacobiViolation, MixedAlgebras
from parshin.liealg import (
    abelian,
    ad,
    from_json_dict,
    heisenberg3,
    is_centreless,
    killing_nform,
    sl2,
    to_json_dict,
    validate,
)
from parshin.matrices import mat_mul, mat_trace


def brute_ad(alg, coeffs):
    """Independent adjoint matrix straight off the structure constants."""
    y = alg.element(coeffs)
    cols = []
    for j in range(alg.dim):
        img = y.bracket(alg.basis_element(j))
        cols.append(img.coeffs)
    return tuple(tuple(cols[j][i] for j in range(alg.dim)) for i in range(alg.dim))


def test_abelian_validates():
    alg = abelian(3)
    assert alg.dim == 3
    assert all(all(c == 0 for c in alg.table[i][j]) for i in range(3) for j in range(3))


def test_sl2_validates():
    alg = sl2()
    h, e, f = alg.by_name("H"), alg.by_name("E"), alg.by_name("F")
    assert h.bracket(e).coeffs == (0, 2, 0)
    assert h.bracket(f).coeffs == (0, 0, -2)
    assert e.bracket(f).coeffs == (1, 0, 0)


def test_antisymmetry_violation():
    with pytest.raises(AntisymmetryViolation) as err:
        validate({(0, 1): {2: 1}, (1, 0): {2: 1}}, dim=3)
    assert err.value.pair == (0, 1)


def test_jacobi_violation():
    # J(e0,e1,e2) = [e0,[e1,e2]] = e2 != 0 for this table
    structure = {
        (0, 1): {2: 1}, (1, 0): {2: -1},
        (0, 2): {1: 1}, (2, 0): {1: -1},
        (1, 2): {1: 1}, (2, 1): {1: -1},
    }
    with pytest.raises(JacobiViolation) as err:
        validate(structure, dim=3)
    assert err.value.triple == (0, 1, 2)


def test_ad_abelian_is_zero():
    alg = abelian(3)
    assert ad(alg.element((1, 2, 3))) == tuple((Fraction(0),) * 3 for _ in range(3))


def test_ad_sl2_h_diagonal():
    alg = sl2()
    m = ad(alg.by_name("H"))
    assert m == ((0, 0, 0), (0, 2, 0), (0, 0, -2))


def test_ad_is_bracket_homomorphism():
    import random

    alg = sl2()
    rng = random.Random(0)
    for _ in range(25):
        x = alg.element([rng.randint(-3, 3) for _ in range(3)])
        y = alg.element([rng.randint(-3, 3) for _ in range(3)])
        lhs = ad(x.bracket(y))
        axy = mat_mul(ad(x), ad(y))
        ayx = mat_mul(ad(y), ad(x))
        rhs = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(axy, ayx))
        assert lhs == rhs


def test_killing_form_values_sl2():
    alg = sl2()
    h, e, f = alg.by_name("H"), alg.by_name("E"), alg.by_name("F")
    assert killing_nform(e, f) == 4
    assert killing_nform(h, h) == 8
    # ternary value against a direct matrix product oracle
    expected = mat_trace(mat_mul(mat_mul(ad(h), ad(e)), ad(f)))
    assert killing_nform(h, e, f) == expected == 4


def test_killing_form_abelian_zero():
    alg = abelian(4)
    xs = [alg.element((1, 0, 2, -1)), alg.element((0, 1, 1, 1))]
    assert killing_nform(*xs) == 0
    assert killing_nform(xs[0], xs[1], xs[0]) == 0


def test_killing_multilinear():
    import random

    alg = sl2()
    rng = random.Random(1)
    for _ in range(20):
        x, y, z = (alg.element([rng.randint(-2, 2) for _ in range(3)]) for _ in range(3))
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        lhs = killing_nform(x + z.scale(c), y)
        assert lhs == killing_nform(x, y) + c * killing_nform(z, y)
        lhs = killing_nform(x, y + z.scale(c), x)
        assert lhs == killing_nform(x, y, x) + c * killing_nform(x, z, x)


def test_mixed_algebras_rejected():
    with pytest.raises(MixedAlgebras):
        killing_nform(sl2().by_name("H"), abelian(3).basis_element(0))


def test_centreless():
    assert is_centreless(sl2())
    assert not is_centreless(abelian(1))
    assert not is_centreless(abelian(4))
    assert not is_centreless(heisenberg3())  # z is central


def test_json_round_trip():
    alg = sl2()
    doc = to_json_dict(alg)
    assert doc["basis"] == ["H", "E", "F"]
    again = from_json_dict(doc)
    assert again == alg


def test_json_rational_strings():
    doc = {
        "dim": 2,
        "basis": ["a", "b"],
        "brackets": [{"i": 0, "j": 1, "coeffs": {"0": "1/2"}}],
    }
    alg = from_json_dict(doc)
    assert alg.table[0][1] == (Fraction(1, 2), Fraction(0))
    assert alg.table[1][0] == (Fraction(-1, 2), Fraction(0))
