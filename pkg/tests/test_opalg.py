"""Lattice operators: action, composition, projectors, traces, ideal tests."""

import random
from fractions import Fraction

import pytest

from parshin.errors import DimensionMismatch, NotTraceClass
from parshin.laurent import LaurentPoly, parse_poly
from parshin.liealg import ad, sl2
from parshin.matrices import matrix
from parshin.opalg import (
    Box,
    KernelAtom,
    LatticeOperator,
    WeightPoly,
    derivation_operator,
    mul_operator,
    projector,
)
from parshin.sampling import random_operator


def test_identity_apply():
    op = LatticeOperator.identity(2)
    vec = {(0, 1): (Fraction(2),), (-3, 4): (Fraction(1, 2),)}
    assert op.apply(vec) == vec


def test_shift_apply():
    op = mul_operator(parse_poly("t1"))
    assert op.apply({(0,): 1}) == {(1,): (Fraction(1),)}


def test_derivation_eigenvector():
    op = derivation_operator(1, (1,), 1)  # t d/dt
    for lam in (-2, 0, 3):
        out = op.apply({(lam,): 1})
        assert out == ({} if lam == 0 else {(lam,): (Fraction(lam),)})


def test_derivation_kills_constant():
    assert derivation_operator(1, (0,), 1).apply({(0,): 1}) == {}


def test_compose_projector_sandwich_empty():
    p_plus = projector(1, 1, "+")
    p_minus = projector(1, 1, "-")
    t = mul_operator(parse_poly("t1"))
    assert p_minus.compose(t).compose(p_plus).is_structurally_zero()


def test_compose_projector_sandwich_rank_one():
    p_plus = projector(1, 1, "+")
    p_minus = projector(1, 1, "-")
    tinv = mul_operator(parse_poly("t1^-1"))
    op = p_minus.compose(tinv).compose(p_plus)
    assert op.apply({(0,): 1}) == {(-1,): (Fraction(1),)}
    assert op.apply({(1,): 1}) == {}
    assert op.in_ideal(1, "0")
    assert op.in_trace_ideal()


def test_multiplication_operators_commute():
    a = mul_operator(parse_poly("3*t1^2 + t1^-1"))
    b = mul_operator(parse_poly("1/2*t1^-3"))
    assert a.commutator(b).is_structurally_zero()


def test_projector_identities():
    for n, axis in ((1, 1), (2, 2)):
        plus = projector(n, axis, "+")
        minus = projector(n, axis, "-")
        assert plus.compose(plus) == plus
        assert plus.compose(minus).is_structurally_zero()
        assert plus + minus == LatticeOperator.identity(n)
    p1 = projector(2, 1, "+")
    p2 = projector(2, 2, "-")
    assert p1.compose(p2) == p2.compose(p1)


def test_mul_operator_shapes():
    assert mul_operator(LaurentPoly.one(2)) == LatticeOperator.identity(2)
    op = mul_operator(parse_poly("t1*t2^-1"))
    assert len(op.atoms) == 1 and op.atoms[0].shift == (1, -1)

    from parshin.laurent import GLaurent

    alg = sl2()
    gop = mul_operator(GLaurent.monomial(1, alg.by_name("E"), (1,)))
    assert gop.d == 3
    assert gop.atoms[0].shift == (1,)
    assert gop.atoms[0].matrix == ad(alg.by_name("E"))


def test_witt_relations():
    def L(m):
        return derivation_operator(1, (m + 1,), 1)

    for a in range(-2, 3):
        for b in range(-2, 3):
            assert L(a).commutator(L(b)) == L(a + b).scale(b - a)


# -- trace ---------------------------------------------------------------------

def test_trace_finite_box():
    op = LatticeOperator.make(1, 1, [
        KernelAtom((0,), matrix([[1]]), WeightPoly.const(1, 1), Box.of([(0, 5)]))
    ])
    assert op.trace() == 5


def test_trace_no_diagonal():
    assert mul_operator(parse_poly("t1 + 4*t1^2")).trace() == 0


def test_trace_projector_not_trace_class():
    with pytest.raises(NotTraceClass):
        projector(1, 1, "+").trace()


def test_trace_cancelling_unbounded_atoms():
    # [P+, t] t^-1 has two unbounded same-shift atoms whose difference is e_0
    p_plus = projector(1, 1, "+")
    t = mul_operator(parse_poly("t1"))
    tinv = mul_operator(parse_poly("t1^-1"))
    assert p_plus.commutator(t).compose(tinv).trace() == 1


def test_trace_polynomial_weight():
    op = LatticeOperator.make(1, 1, [
        KernelAtom((0,), matrix([[1]]), WeightPoly.coordinate(1, 0), Box.of([(-3, 4)]))
    ])
    assert op.trace() == sum(range(-3, 4))


def test_trace_properties_random():
    rng = random.Random(6)
    for trial in range(25):
        n = rng.randint(1, 2)
        d = 1 if trial % 2 else 3
        a = random_operator(rng, n, d)
        b = random_operator(rng, n, d)
        assert a.commutator(b).trace() == 0
        assert a.compose(b).trace() == b.compose(a).trace()
        assert (a + b).trace() == a.trace() + b.trace()


def test_trace_commutator_with_unbounded_side():
    # a in the trace ideal, b arbitrary banded: both products trace class
    rng = random.Random(7)
    for _ in range(15):
        a = random_operator(rng, 1, 1)
        b = mul_operator(parse_poly("t1^2 + 2*t1^-1")) + projector(1, 1, "+")
        assert a.commutator(b).trace() == 0


# -- ideal membership -----------------------------------------------------------

def test_in_ideal_examples():
    assert projector(2, 1, "+").in_ideal(1, "+")
    assert not projector(2, 1, "+").in_ideal(1, "-")
    t1 = mul_operator(parse_poly("t1", 2))
    assert not t1.in_ideal(1, "+")
    assert not t1.in_ideal(1, "-")


def test_ideal_decomposition_and_products():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(1, 2)
        t = random_operator(rng, n, 1, box_bound=2) + mul_operator(
            LaurentPoly.monomial(n, (1,) * n, 2)
        )
        axis = rng.randint(1, n)
        plus = projector(n, axis, "+").compose(t)
        minus = projector(n, axis, "-").compose(t)
        assert plus + minus == t
        assert plus.in_ideal(axis, "+")
        assert minus.in_ideal(axis, "-")
        # two-sided ideal: products of members stay members
        other = random_operator(rng, n, 1)
        assert plus.compose(other).in_ideal(axis, "+")
        assert other.compose(plus).in_ideal(axis, "+")


# -- algebra laws / semantic equality -------------------------------------------

def test_algebra_laws_random():
    rng = random.Random(9)
    for trial in range(20):
        n = rng.randint(1, 2)
        d = 1 if trial % 2 else 3
        a, b, c = (random_operator(rng, n, d) for _ in range(3))
        assert a.compose(b.compose(c)) == a.compose(b).compose(c)
        assert a.compose(b + c) == a.compose(b) + a.compose(c)
        assert (a + b).compose(c) == a.compose(c) + b.compose(c)
        jac = (a.commutator(b.commutator(c)) + b.commutator(c.commutator(a))
               + c.commutator(a.commutator(b)))
        assert jac.is_zero()


def test_semantic_equality_vs_apply():
    rng = random.Random(10)
    for _ in range(20):
        n = rng.randint(1, 2)
        a = random_operator(rng, n, 1)
        b = random_operator(rng, n, 1)
        diff = a - b
        # probe on a window covering all boxes plus margin
        points = [tuple(rng.randint(-7, 7) for _ in range(n)) for _ in range(60)]
        agree = all(a.apply({p: 1}) == b.apply({p: 1}) for p in points)
        if diff.is_zero():
            assert agree
        elif not agree:
            assert not diff.is_zero()


def test_piecewise_cancellation_normalizes_away():
    one = LatticeOperator.identity(1)
    assert (projector(1, 1, "+") + projector(1, 1, "-") - one).atoms == ()


def test_cut_parameter():
    p = projector(1, 1, "+", cut=2)
    assert p.apply({(2,): 1}) == {(2,): (Fraction(1),)}
    assert p.apply({(1,): 1}) == {}


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        LatticeOperator.identity(1).compose(LatticeOperator.identity(2))
