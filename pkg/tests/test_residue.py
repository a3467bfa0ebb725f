"""Operator-trace residues against the coefficient-extraction oracle."""

import random
from fractions import Fraction

import pytest

from parshin.errors import ShapeMismatch
from parshin.laurent import LaurentPoly, parse_poly
from parshin.opalg import mul_operator
from parshin.residue import (
    ResidueReport,
    ack_residue_n1,
    raw_sum,
    raw_sum_polys,
    residue,
    residue_det_monomial,
)
from parshin.sampling import random_laurent


def mono(n, exp, c=1):
    return LaurentPoly.monomial(n, exp, c)


# -- raw sums -----------------------------------------------------------------

def test_raw_sum_n1_shift_pair():
    # trace of P^- t^-3 P^+ t^3 counts {-3 <= lam < 0}
    ops = [mul_operator(parse_poly("t1^3")), mul_operator(parse_poly("t1^-3"))]
    assert raw_sum(ops) == 3


def test_raw_sum_unbalanced_is_zero():
    ops = [mul_operator(parse_poly("t1^3")), mul_operator(parse_poly("t1^2"))]
    assert raw_sum(ops) == 0


def test_raw_sum_n2_identity_exponents():
    ops = [mul_operator(parse_poly("t1^-1*t2^-1")),
           mul_operator(parse_poly("t1", 2)),
           mul_operator(parse_poly("t2", 2))]
    assert raw_sum(ops) == 1


def test_raw_sum_shape_checks():
    from parshin.errors import DimensionMismatch

    with pytest.raises(DimensionMismatch):
        raw_sum([mul_operator(parse_poly("t1")), mul_operator(parse_poly("t1*t2"))])
    with pytest.raises(DimensionMismatch):
        raw_sum([mul_operator(parse_poly("t1"))] * 3)


def test_raw_sum_polys_matches_operator_route():
    rng = random.Random(0)
    for n in (1, 2):
        for _ in range(8):
            f0 = random_laurent(rng, n)
            fs = [random_laurent(rng, n) for _ in range(n)]
            direct = raw_sum([mul_operator(f0)] + [mul_operator(f) for f in fs])
            assert raw_sum_polys(f0, fs) == direct


# -- the residue and its report ------------------------------------------------

def test_classical_values():
    t = LaurentPoly.variable(1, 1)
    for c in range(-5, 6):
        for alpha in (Fraction(1), Fraction(-2), Fraction(3, 7)):
            rep = residue(mono(1, (c,), alpha), [t])
            assert rep.residue == (alpha if c == -1 else 0)
            assert rep.agrees


def test_report_fields():
    rep = residue(mono(1, (-1,)), [LaurentPoly.variable(1, 1)])
    assert isinstance(rep, ResidueReport)
    assert rep.raw == -1 and rep.residue == 1 and rep.oracle == 1
    assert rep.paper_res_star == 1  # -(-1)^0 * raw
    assert rep.agrees
    doc = rep.to_json_dict()
    assert doc == {"n": 1, "raw": "-1", "residue": "1", "oracle": "1",
                   "paper_res_star": "1", "agrees": True}


def test_monomial_det_example():
    f0 = mono(2, (-2, -3))
    fs = [mono(2, (1, 1)), mono(2, (1, 2))]
    rep = residue(f0, fs)
    assert rep.residue == 1 == rep.oracle
    assert residue_det_monomial([(-2, -3), (1, 1), (1, 2)]) == 1


def test_det_formula_shapes():
    assert residue_det_monomial([(-1,), (1,)]) == 1
    assert residue_det_monomial([(-2, -2), (1, 1), (1, 2)]) == 0  # column sums violated
    identity_rows = [(-1, -1), (1, 0), (0, 1)]
    assert residue_det_monomial(identity_rows) == 1
    with pytest.raises(ShapeMismatch):
        residue_det_monomial([(1, 2, 3), (1, 2, 3)])


def test_degree_filter_monomials():
    rng = random.Random(1)
    for n in (1, 2):
        for _ in range(10):
            rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n + 1)]
            if all(sum(r[j] for r in rows) == 0 for j in range(n)):
                continue
            f0 = mono(n, tuple(rows[0]))
            fs = [mono(n, tuple(r)) for r in rows[1:]]
            assert raw_sum_polys(f0, fs) == 0


def test_oracle_agreement_random():
    rng = random.Random(2)
    for n in (1, 2):
        for _ in range(25):
            f0 = random_laurent(rng, n)
            fs = [random_laurent(rng, n) for _ in range(n)]
            rep = residue(f0, fs)
            assert rep.agrees, (f0, fs, rep.residue, rep.oracle)


def test_oracle_agreement_n3_spot():
    rng = random.Random(3)
    for _ in range(3):
        f0 = random_laurent(rng, 3, max_terms=2, exp_bound=2)
        fs = [random_laurent(rng, 3, max_terms=2, exp_bound=2) for _ in range(3)]
        assert residue(f0, fs).agrees


def test_idempotent_cut_independence():
    rng = random.Random(4)
    for n in (1, 2):
        f0 = random_laurent(rng, n)
        fs = [random_laurent(rng, n) for _ in range(n)]
        base = residue(f0, fs).residue
        for cuts in ((-3,) * n, (1,) * n, (3,) * n, tuple(range(1, n + 1))):
            assert residue(f0, fs, cuts).residue == base


def test_antisymmetry_and_repeats():
    rng = random.Random(5)
    f0, f1, f2 = (random_laurent(rng, 2) for _ in range(3))
    assert residue(f0, [f1, f2]).residue == -residue(f0, [f2, f1]).residue
    assert residue(f0, [f1, f1]).residue == 0


# -- the n = 1 commutator form ---------------------------------------------------

def test_ack_classical_value():
    assert ack_residue_n1(mul_operator(parse_poly("t1^-1")),
                          mul_operator(parse_poly("t1"))) == 1


def test_ack_diagonal_operators_vanish():
    a = mul_operator(parse_poly("t1^0"))
    d = mul_operator(parse_poly("2 + 3*t1^0"))
    assert ack_residue_n1(d, a) == 0


def test_ack_matches_residue_random():
    rng = random.Random(6)
    for _ in range(30):
        f0 = random_laurent(rng, 1)
        f1 = random_laurent(rng, 1)
        assert ack_residue_n1(mul_operator(f0), mul_operator(f1)) == residue(f0, [f1]).residue


def test_ack_cut_choice():
    rng = random.Random(7)
    f0 = random_laurent(rng, 1)
    f1 = random_laurent(rng, 1)
    base = ack_residue_n1(mul_operator(f0), mul_operator(f1))
    for cut in (-2, 1, 3):
        assert ack_residue_n1(mul_operator(f0), mul_operator(f1), cut=cut) == base
