"""Laurent polynomials, the coefficient-extraction oracle, and the text grammar."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parshin.errors import DimensionMismatch, ParseError
from parshin.laurent import (
    GLaurent,
    LaurentPoly,
    jacobian_det,
    parse_poly,
    parshin_oracle,
    partial,
)
from parshin.liealg import sl2


def mono(n, exp, c=1):
    return LaurentPoly.monomial(n, exp, c)


# -- arithmetic ---------------------------------------------------------------

def test_difference_of_squares():
    t = LaurentPoly.variable(1, 1)
    tinv = mono(1, (-1,))
    assert (t + tinv) * (t - tinv) == mono(1, (2,)) - mono(1, (-2,))


def test_mul_by_zero():
    p = parse_poly("3/2*t1^-2*t2 + t1")
    assert (p * LaurentPoly.zero(2)).terms == ()


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mono(1, (1,)) + mono(2, (1, 0))


def test_glaurent_bracket():
    alg = sl2()
    e_t = GLaurent.monomial(1, alg.by_name("E"), (1,))
    f_tinv = GLaurent.monomial(1, alg.by_name("F"), (-1,))
    br = e_t.bracket(f_tinv)
    assert br.terms == (((0,), (Fraction(1), Fraction(0), Fraction(0))),)  # H t^0


small_polys = st.builds(
    lambda terms: LaurentPoly.make(2, {tuple(e): c for e, c in terms}),
    st.lists(
        st.tuples(
            st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
            st.fractions(min_value=-3, max_value=3, max_denominator=4),
        ),
        max_size=4,
    ),
)


@given(small_polys, small_polys, small_polys)
@settings(max_examples=60, deadline=None)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


# -- derivatives --------------------------------------------------------------

def test_partial_basic():
    assert partial(mono(1, (3,)), 1) == mono(1, (2,), 3)
    assert partial(mono(2, (-1, 1)), 1) == mono(2, (-2, 1), -1)
    assert partial(mono(2, (5, 0)), 2).is_zero()


@given(small_polys)
@settings(max_examples=40, deadline=None)
def test_partials_commute(f):
    assert partial(partial(f, 1), 2) == partial(partial(f, 2), 1)


@given(small_polys, small_polys)
@settings(max_examples=40, deadline=None)
def test_leibniz(f, g):
    assert partial(f * g, 1) == partial(f, 1) * g + f * partial(g, 1)


# -- the residue oracle -------------------------------------------------------

def test_oracle_classical_n1():
    t = LaurentPoly.variable(1, 1)
    assert parshin_oracle(mono(1, (-1,), Fraction(3, 7)), [t]) == Fraction(3, 7)
    assert parshin_oracle(mono(1, (4,), 5), [t]) == 0
    assert parshin_oracle(LaurentPoly.one(1), [t]) == 0


def test_oracle_n2_identity_exponents():
    f0 = mono(2, (-1, -1))
    assert parshin_oracle(f0, [LaurentPoly.variable(2, 1), LaurentPoly.variable(2, 2)]) == 1


def test_oracle_n2_derived_example():
    # Jacobian of (t1 t2, t1 t2^2) is t1 t2^2; product with f0 lands on t^(-1,-1)
    f0 = mono(2, (-2, -3))
    fs = [mono(2, (1, 1)), mono(2, (1, 2))]
    assert jacobian_det(fs) == mono(2, (1, 2))
    assert parshin_oracle(f0, fs) == 1


def test_oracle_multilinear_and_alternating():
    import random

    rng = random.Random(4)

    def rnd():
        return LaurentPoly.make(2, {
            (rng.randint(-2, 2), rng.randint(-2, 2)): Fraction(rng.randint(1, 3))
            for _ in range(2)
        })

    for _ in range(20):
        f0, f1, f2, g = rnd(), rnd(), rnd(), rnd()
        c = Fraction(rng.randint(1, 5), 2)
        assert parshin_oracle(f0, [f1 + g.scale(c), f2]) == \
            parshin_oracle(f0, [f1, f2]) + c * parshin_oracle(f0, [g, f2])
        assert parshin_oracle(f0 + g.scale(c), [f1, f2]) == \
            parshin_oracle(f0, [f1, f2]) + c * parshin_oracle(g, [f1, f2])
        assert parshin_oracle(f0, [f1, f2]) == -parshin_oracle(f0, [f2, f1])
        assert parshin_oracle(f0, [f1, f1]) == 0


def test_oracle_no_residue_coefficient():
    # constant f0 with monomial f's whose Jacobian misses t^(-1,...,-1)
    assert parshin_oracle(LaurentPoly.one(2), [mono(2, (1, 0)), mono(2, (0, 2))]) == 0


# -- grammar ------------------------------------------------------------------

def test_parse_examples():
    p = parse_poly("3/2*t1^-2*t2 + t1")
    assert p.n == 2
    assert p.coefficient((-2, 1)) == Fraction(3, 2)
    assert p.coefficient((1, 0)) == 1


def test_parse_whitespace_and_signs():
    assert parse_poly(" - t1 + 2 * t1 ") == mono(1, (1,))
    assert parse_poly("-3/4") == mono(1, (0,), Fraction(-3, 4))
    assert parse_poly("t2^0", n=2) == LaurentPoly.one(2)


def test_parse_adjacent_factors():
    assert parse_poly("2t1^2t2") == mono(2, (2, 1), 2)


def test_parse_error_offset():
    with pytest.raises(ParseError) as err:
        parse_poly("t1^^2")
    assert err.value.offset == 3


def test_parse_error_bad_char():
    with pytest.raises(ParseError) as err:
        parse_poly("t1 @ t2")
    assert err.value.offset == 3


def test_parse_roundtrip_str():
    p = parse_poly("3/2*t1^-2*t2 + t1")
    assert parse_poly(str(p)) == p
