"""Operator-trace residues.

``raw_sum`` is the unnormalized trace sum over permutations and projector
sign words; every statement-level variant differs from it only by a global
sign.  ``residue`` normalizes by (-1)^n, which is the convention that
matches the classical coefficient-extraction residue (checked against
``parshin_oracle`` on every call and reported side by side with the
alternative global sign ``paper_res_star``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ShapeMismatch
from .laurent import LaurentPoly, parshin_oracle
from .matrices import det
from .opalg import LatticeOperator, mul_operator, projector


def _cuts(n, cuts):
    if cuts is None:
        return (0,) * n
    cuts = tuple(int(c) for c in cuts)
    if len(cuts) != n:
        raise DimensionMismatch(f"need {n} cut points, got {len(cuts)}")
    return cuts


def _perm_sign(perm):
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def raw_sum(operators, cuts=None) -> Fraction:
    """tau sum over pi in S_n, g in {+,-}^n of sgn(pi) (-1)^(g_1+...+g_n)
    (P_1^(-g_1) f_pi(1) P_1^(g_1)) ... (P_n^(-g_n) f_pi(n) P_n^(g_n)) f_0.

    The conjugations are plain multiplications: sandwiched between opposite
    projectors, the second commutator term of an adjoint action dies.
    Every composite must be trace-class; NotTraceClass propagates.
    """
    operators = list(operators)
    n, d = operators[0].n, operators[0].d
    for op in operators:
        if op.n != n or op.d != d:
            raise DimensionMismatch("raw_sum operators on different spaces")
    if len(operators) != n + 1:
        raise DimensionMismatch(f"need n+1 = {n + 1} operators, got {len(operators)}")
    cuts = _cuts(n, cuts)

    proj = {
        (axis, sign): projector(n, axis, sign, d=d, cut=cuts[axis - 1])
        for axis in range(1, n + 1)
        for sign in "+-"
    }
    total = Fraction(0)
    for perm in itertools.permutations(range(1, n + 1)):
        sgn = _perm_sign(perm)
        for gammas in itertools.product("+-", repeat=n):
            sign = sgn * (-1 if gammas.count("-") % 2 else 1)
            comp = operators[0]
            for axis in range(n, 0, -1):
                g = gammas[axis - 1]
                flip = "-" if g == "+" else "+"
                comp = proj[(axis, g)].compose(comp)
                comp = operators[perm[axis - 1]].compose(comp)
                comp = proj[(axis, flip)].compose(comp)
            total += sign * comp.trace()
    return total


@dataclass(frozen=True)
class ResidueReport:
    """Residue of f_0 df_1 ... df_n with its oracle cross-check.

    ``raw`` is the bare trace sum; ``residue`` = (-1)^n raw is normalized to
    the classical convention; ``paper_res_star`` = -(-1)^((n-1)n/2) raw is
    the same data under the alternative global sign; ``agrees`` records
    residue == oracle.
    """

    n: int
    raw: Fraction
    residue: Fraction
    oracle: Fraction
    paper_res_star: Fraction
    agrees: bool

    def to_json_dict(self):
        return {
            "n": self.n,
            "raw": str(self.raw),
            "residue": str(self.residue),
            "oracle": str(self.oracle),
            "paper_res_star": str(self.paper_res_star),
            "agrees": self.agrees,
        }


def _global_signs(n, raw):
    residue = raw if n % 2 == 0 else -raw
    star = -raw if ((n - 1) * n // 2) % 2 == 0 else raw
    return residue, star


def raw_sum_polys(f0: LaurentPoly, fs, cuts=None) -> Fraction:
    """raw_sum of the multiplication operators, expanded over monomial tuples.

    Multilinear expansion keeps every factor a single-atom operator, so each
    projector word cuts an exact interval per axis.
    """
    n = f0.n
    polys = [f0] + list(fs)
    for f in polys:
        if f.n != n:
            raise DimensionMismatch("residue inputs with mismatched variable counts")
    if len(polys) != n + 1:
        raise DimensionMismatch(f"need n+1 = {n + 1} polynomials, got {len(polys)}")
    total = Fraction(0)
    for combo in itertools.product(*(f.terms for f in polys)):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        ops = [mul_operator(LaurentPoly.monomial(n, exp, 1)) for exp, _ in combo]
        total += coeff * raw_sum(ops, cuts)
    return total


def residue(f0: LaurentPoly, fs, cuts=None) -> ResidueReport:
    """The multidimensional residue of f_0 df_1 ... df_n, oracle-checked."""
    fs = list(fs)
    raw = raw_sum_polys(f0, fs, cuts)
    res, star = _global_signs(f0.n, raw)
    oracle = parshin_oracle(f0, fs)
    return ResidueReport(f0.n, raw, res, oracle, star, res == oracle)


def residue_det_monomial(exponents) -> Fraction:
    """Residue of a monomial form from its exponent matrix.

    ``exponents`` is (n+1) x n; row p holds the exponents of f_p, columns
    index the variables.  The value is det of rows 1..n when every column
    sums to zero, and 0 otherwise.
    """
    rows = [tuple(int(x) for x in row) for row in exponents]
    if not rows:
        raise ShapeMismatch("empty exponent matrix")
    n = len(rows) - 1
    if n < 1 or any(len(row) != n for row in rows):
        raise ShapeMismatch(f"need an (n+1) x n matrix, got {len(rows)} x {len(rows[0])}")
    for j in range(n):
        if sum(row[j] for row in rows) != 0:
            return Fraction(0)
    return det(tuple(tuple(Fraction(x) for x in row) for row in rows[1:]))


def ack_residue_n1(f0: LatticeOperator, f1: LatticeOperator, cut=0) -> Fraction:
    """The n = 1 commutator form of the residue: tr([P+, f1] f0)."""
    if f0.n != 1 or f1.n != 1:
        raise DimensionMismatch("ack_residue_n1 is an n=1 formula")
    plus = projector(1, 1, "+", d=f0.d, cut=cut)
    return plus.commutator(f1).compose(f0).trace()
