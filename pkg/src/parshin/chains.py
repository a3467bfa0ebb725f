"""Chevalley-Eilenberg chain machinery with pluggable coefficient modules.

Two containers: ``TensorChain`` for sums of head (x) f_1 ^ ... ^ f_r with the
head in a module carrying a bracket action, and ``WedgeChain`` for rational
combinations of pure wedges f_0 ^ ... ^ f_r.  Tails are formal wedges kept in
a canonical sorted order with sign tracking; terms with a repeated factor are
dropped.

Every participating element type exposes ``bracket``, ``scale``, ``__add__``
and ``is_zero``; Laurent polynomials bracket to zero (abelian), lattice
operators bracket by commutator, and cube elements by componentwise
commutator, which is how the spectral-sequence lift reuses this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ModuleActionUndefined
from .laurent import GLaurent, LaurentPoly
from .liealg import LieElement
from .opalg import LatticeOperator


def bracket_of(a, b):
    """Lie bracket in the acting algebra, dispatched on type."""
    if isinstance(a, LaurentPoly) and isinstance(b, LaurentPoly):
        a._check(b)
        return LaurentPoly.zero(a.n)
    if isinstance(a, LatticeOperator) and isinstance(b, LatticeOperator):
        return a.commutator(b)
    if type(a) is type(b) and hasattr(a, "bracket"):
        return a.bracket(b)
    raise ModuleActionUndefined(
        f"no bracket between {type(a).__name__} and {type(b).__name__}"
    )


def module_action(head, f):
    """[head, f]: the action of the algebra element f on the module element head."""
    if isinstance(head, LatticeOperator) and isinstance(f, LatticeOperator):
        return head.commutator(f)
    if isinstance(head, LaurentPoly) and isinstance(f, LaurentPoly):
        head._check(f)
        return LaurentPoly.zero(head.n)
    if hasattr(head, "bracket"):
        try:
            return head.bracket(f)
        except TypeError as exc:
            raise ModuleActionUndefined(str(exc)) from exc
    raise ModuleActionUndefined(
        f"no action of {type(f).__name__} on {type(head).__name__}"
    )


def element_key(x):
    """Stable total order on generators, used to canonicalize wedge tails."""
    if isinstance(x, LieElement):
        return ("lie", x.coeffs)
    if isinstance(x, LaurentPoly):
        return ("poly", x.n, x.terms)
    if isinstance(x, GLaurent):
        return ("gla", x.n, x.terms)
    if isinstance(x, LatticeOperator):
        return ("op", x.n, x.d, tuple(
            (a.shift, a.box.sort_key(), a.weight.terms, a.matrix) for a in x.atoms
        ))
    raise ModuleActionUndefined(f"no canonical key for {type(x).__name__}")


def expand_factor(x):
    """Decompose a wedge factor into (scalar, basis monomial) pieces.

    The wedge is multilinear, so tails are canonicalized over basis
    monomials: without this, sums hiding in a factor slot (e.g. a Jacobi
    combination) would not cancel.  Lattice operators have no preferred
    basis and stay opaque.
    """
    if isinstance(x, LieElement):
        alg = x.algebra
        return [(c, alg.basis_element(k)) for k, c in enumerate(x.coeffs) if c != 0]
    if isinstance(x, LaurentPoly):
        return [(c, LaurentPoly.monomial(x.n, exp, 1)) for exp, c in x.terms]
    if isinstance(x, GLaurent):
        out = []
        for exp, coeffs in x.terms:
            for k, c in enumerate(coeffs):
                if c != 0:
                    unit = GLaurent.monomial(x.n, x.algebra.basis_element(k), exp)
                    out.append((c, unit))
        return out
    if isinstance(x, LatticeOperator):
        if x.is_structurally_zero():
            return []
        # extract the leading scalar so scalar multiples share one wedge key
        lead = x.atoms[0].weight.terms[0][1]
        return [(lead, x.scale(Fraction(1) / lead))]
    return [(Fraction(1), x)]


def _expand_tail(factors):
    """Multilinear expansion of a tail: yields (scalar, tuple of basis monomials)."""
    pieces = [expand_factor(f) for f in factors]
    if any(not p for p in pieces):
        return
    stack = [(Fraction(1), ())]
    for options in pieces:
        stack = [(c * c2, tail + (unit,)) for c, tail in stack for c2, unit in options]
    yield from stack


def _sort_with_sign(factors):
    """Sort by element_key counting swaps; returns (sign, sorted) or (0, ()) on repeats."""
    keyed = [(element_key(f), f) for f in factors]
    sign = 1
    items = list(keyed)
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1][0] > items[j][0]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(items)):
        if items[i - 1][0] == items[i][0]:
            return 0, ()
    return sign, tuple(f for _, f in items)


def _is_zero_element(x):
    if isinstance(x, Fraction):
        return x == 0
    if isinstance(x, LatticeOperator):
        return x.is_structurally_zero() or x.is_zero()
    return x.is_zero()


@dataclass(frozen=True)
class TensorChain:
    """Formal sum of head (x) (f_1 ^ ... ^ f_r) terms of one wedge length r."""

    r: int
    terms: tuple  # ((head, tail), ...) with canonical tails, merged heads

    @staticmethod
    def make(r, items) -> "TensorChain":
        merged = {}
        for head, tail in items:
            if len(tail) != r:
                raise ValueError(f"tail of length {len(tail)} in a chain of wedge length {r}")
            for scalar, expanded in _expand_tail(tail):
                sign, sorted_tail = _sort_with_sign(expanded)
                if sign == 0:
                    continue
                term_head = head.scale(sign * scalar)
                key = tuple(element_key(f) for f in sorted_tail)
                if key in merged:
                    merged[key] = (merged[key][0] + term_head, sorted_tail)
                else:
                    merged[key] = (term_head, sorted_tail)
        terms = tuple(
            (head, tail) for _, (head, tail) in sorted(merged.items(), key=lambda kv: kv[0])
            if not _is_zero_element(head)
        )
        return TensorChain(r, terms)

    @staticmethod
    def single(head, tail) -> "TensorChain":
        return TensorChain.make(len(tail), [(head, tuple(tail))])

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.r != other.r:
            raise ValueError("cannot add chains of different wedge length")
        return TensorChain.make(self.r, list(self.terms) + list(other.terms))

    def scale(self, c):
        return TensorChain.make(self.r, [(h.scale(c), t) for h, t in self.terms])

    def __sub__(self, other):
        return self + other.scale(-1)

    def ce_diff_parts(self):
        """The two halves of the differential, returned separately.

        First: sum_i (-1)^i [f_0, f_i] (x) ...omit f_i...; second:
        sum_(i<j) (-1)^(i+j+1) f_0 (x) [f_i, f_j] ^ ...omit both...
        """
        d1_items = []
        d2_items = []
        for head, tail in self.terms:
            r = len(tail)
            for i in range(1, r + 1):
                new_head = module_action(head, tail[i - 1]).scale((-1) ** i)
                new_tail = tail[:i - 1] + tail[i:]
                d1_items.append((new_head, new_tail))
            for i in range(1, r + 1):
                for j in range(i + 1, r + 1):
                    sign = (-1) ** (i + j + 1)
                    new_tail = (bracket_of(tail[i - 1], tail[j - 1]),) + tuple(
                        tail[k] for k in range(r) if k not in (i - 1, j - 1)
                    )
                    d2_items.append((head.scale(sign), new_tail))
        return TensorChain.make(self.r - 1, d1_items), TensorChain.make(self.r - 1, d2_items)

    def ce_diff(self) -> "TensorChain":
        d1, d2 = self.ce_diff_parts()
        return d1 + d2

    def map_I(self) -> "WedgeChain":
        """f_0 (x) f_1 ^ ... ^ f_r -> (-1)^r f_0 ^ f_1 ^ ... ^ f_r."""
        sign = Fraction((-1) ** self.r)
        return WedgeChain.make(
            self.r + 1, [(sign, (head,) + tail) for head, tail in self.terms]
        )


@dataclass(frozen=True)
class WedgeChain:
    """Rational formal sum of pure wedges f_0 ^ ... ^ f_r (length r + 1)."""

    length: int
    terms: tuple  # ((Fraction, factors), ...) canonical

    @staticmethod
    def make(length, items) -> "WedgeChain":
        merged = {}
        for coeff, factors in items:
            coeff = Fraction(coeff)
            if len(factors) != length:
                raise ValueError(
                    f"wedge of {len(factors)} factors in a chain of length {length}"
                )
            if coeff == 0:
                continue
            for scalar, expanded in _expand_tail(factors):
                sign, sorted_factors = _sort_with_sign(expanded)
                if sign == 0:
                    continue
                key = tuple(element_key(f) for f in sorted_factors)
                value = sign * scalar * coeff
                if key in merged:
                    merged[key] = (merged[key][0] + value, sorted_factors)
                else:
                    merged[key] = (value, sorted_factors)
        terms = tuple(
            (c, fs) for _, (c, fs) in sorted(merged.items(), key=lambda kv: kv[0]) if c != 0
        )
        return WedgeChain(length, terms)

    @staticmethod
    def single(factors, coeff=1) -> "WedgeChain":
        return WedgeChain.make(len(factors), [(Fraction(coeff), tuple(factors))])

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        if self.length != other.length:
            raise ValueError("cannot add wedge chains of different length")
        return WedgeChain.make(self.length, list(self.terms) + list(other.terms))

    def scale(self, c):
        c = Fraction(c)
        return WedgeChain.make(self.length, [(c * k, fs) for k, fs in self.terms])

    def __sub__(self, other):
        return self + other.scale(-1)

    def ce_diff_trivial(self) -> "WedgeChain":
        """Trivial-coefficient differential, the restriction of the standard one.

        delta(f_0 ^ ... ^ f_r) = sum_(0<=i<j<=r) (-1)^(i+j+1)
        [f_i, f_j] ^ f_0 ^ ...omit i, j... ^ f_r.
        """
        items = []
        for coeff, factors in self.terms:
            r = len(factors)
            for i in range(r):
                for j in range(i + 1, r):
                    sign = (-1) ** (i + j + 1)
                    new_factors = (bracket_of(factors[i], factors[j]),) + tuple(
                        factors[k] for k in range(r) if k not in (i, j)
                    )
                    items.append((coeff * sign, new_factors))
        return WedgeChain.make(self.length - 1, items)


# ---------------------------------------------------------------------------
# Chain JSON (CLI surface)
# ---------------------------------------------------------------------------
#
# {"n": 2, "algebra": "<path or 'scalar'>",
#  "terms": [{"coeff": "1",
#             "factors": [{"Y": "E", "exp": [1, 0]},
#                         {"Y": "F", "exp": [-1, 0]}]}]}
#
# The first factor of each term is f_0, the rest form the wedge tail.  Scalar
# factors use {"exp": [...], "coeff": "3/2"?}; vector-field factors (n = 1)
# use {"s": [2], "i": 1} for t^s d/dt_i.

def factor_from_json(doc, n, algebra=None):
    from .opalg import derivation_operator

    if "Y" in doc:
        if algebra is None:
            raise ValueError("Lie-algebra factors need an algebra")
        element = algebra.by_name(doc["Y"])
        if "coeff" in doc:
            element = element.scale(Fraction(doc["coeff"]))
        return GLaurent.monomial(n, element, tuple(doc["exp"]))
    if "s" in doc:
        return derivation_operator(n, tuple(doc["s"]), int(doc.get("i", 1)))
    coeff = Fraction(doc.get("coeff", 1))
    return LaurentPoly.monomial(n, tuple(doc["exp"]), coeff)


def wedge_from_json(doc, algebra=None) -> WedgeChain:
    n = int(doc["n"])
    items = []
    length = None
    for term in doc["terms"]:
        factors = tuple(factor_from_json(f, n, algebra) for f in term["factors"])
        length = len(factors) if length is None else length
        items.append((Fraction(term.get("coeff", 1)), factors))
    if length is None:
        raise ValueError("chain document has no terms")
    return WedgeChain.make(length, items)
