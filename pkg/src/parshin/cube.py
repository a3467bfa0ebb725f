"""The cube complex of ideal intersections and its contracting homotopy.

Components of N^p are indexed by sign strings in {+,-,0}^n of degree
p = 1 + #zeros; the component at s lives in the intersection of the ideals
I_i^(s_i).  The module implements the differential, the idempotent-built
homotopies and averaging maps, the combinatorial sign function rho, and the
spectral-sequence lifting theta_(p,q) both iteratively (alternating the
Chevalley-Eilenberg differential with the homotopy) and in closed form.

Everything is parametrized by the idempotent cut points: P_i^+ projects onto
lam_i >= cuts[i] (default 0).  Identities are expected to hold for any cuts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch, IdealViolation, RepeatedIndex
from .opalg import LatticeOperator, projector

# ---------------------------------------------------------------------------
# Sign strings
# ---------------------------------------------------------------------------

SIGNS = "+-"


def degree(s) -> int:
    """deg(s_1 ... s_n) = 1 + #{i : s_i = 0}."""
    return 1 + s.count("0")


def sign_strings(n, p):
    """All sign strings in {+,-,0}^n of degree p, in lexicographic order."""
    out = []
    for combo in itertools.product("+-0", repeat=n):
        s = "".join(combo)
        if degree(s) == p:
            out.append(s)
    return out


def _sign_value(ch) -> int:
    """(-1)^s for s in {+,-}."""
    return 1 if ch == "+" else -1


def _minus_parity(s) -> int:
    """(-1)^(s_1 + ... + s_k) for a +/- word: parity of the minus count."""
    return -1 if s.count("-") % 2 else 1


def rho(w) -> int:
    """Sign function (-1)^(sum_k #{j < k : w_j < w_k}) on distinct index lists."""
    w = tuple(w)
    if len(set(w)) != len(w):
        raise RepeatedIndex(f"index list {w} has repeats")
    ascents = sum(1 for k in range(len(w)) for j in range(k) if w[j] < w[k])
    return -1 if ascents % 2 else 1


# ---------------------------------------------------------------------------
# Cube elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CubeElement:
    """Element of N^p: a map from degree-p sign strings to lattice operators."""

    n: int
    d: int
    p: int
    components: dict

    __hash__ = None

    @staticmethod
    def make(n, d, p, components) -> "CubeElement":
        clean = {}
        for s, op in components.items():
            if len(s) != n or degree(s) != p:
                raise DimensionMismatch(f"sign string {s!r} is not degree {p} over n={n}")
            if op.n != n or op.d != d:
                raise DimensionMismatch("component operator on the wrong space")
            if not op.is_structurally_zero():
                clean[s] = op
        return CubeElement(n, d, p, clean)

    @staticmethod
    def zero(n, d, p) -> "CubeElement":
        return CubeElement(n, d, p, {})

    def component(self, s) -> LatticeOperator:
        return self.components.get(s) or LatticeOperator.zero(self.n, self.d)

    def _check(self, other):
        if (self.n, self.d, self.p) != (other.n, other.d, other.p):
            raise DimensionMismatch("cube elements of different shape")

    def __add__(self, other):
        self._check(other)
        out = dict(self.components)
        for s, op in other.components.items():
            merged = out[s] + op if s in out else op
            if merged.is_structurally_zero():
                out.pop(s, None)
            else:
                out[s] = merged
        return CubeElement(self.n, self.d, self.p, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return CubeElement.zero(self.n, self.d, self.p)
        return CubeElement(self.n, self.d, self.p,
                           {s: op.scale(c) for s, op in self.components.items()})

    def bracket(self, f: LatticeOperator) -> "CubeElement":
        """Componentwise commutator [component, f]; the g-module action on N^p."""
        return CubeElement.make(self.n, self.d, self.p,
                                {s: op.commutator(f) for s, op in self.components.items()})

    def is_zero(self):
        return all(op.is_zero() for op in self.components.values())

    def __eq__(self, other):
        if not isinstance(other, CubeElement):
            return NotImplemented
        if (self.n, self.d, self.p) != (other.n, other.d, other.p):
            return False
        return (self - other).is_zero()

    def check_ideals(self):
        """Conservative membership check of every component; raises IdealViolation."""
        for s, op in self.components.items():
            for axis, sign in enumerate(s, start=1):
                want = "0" if sign == "0" else sign
                if not op.in_ideal(axis, want):
                    raise IdealViolation(
                        f"component {s!r} fails membership in I_{axis}^{want}"
                    )
        return self


# ---------------------------------------------------------------------------
# Differential and homotopies
# ---------------------------------------------------------------------------

def _cuts(n, cuts):
    if cuts is None:
        return (0,) * n
    cuts = tuple(int(c) for c in cuts)
    if len(cuts) != n:
        raise DimensionMismatch(f"need {n} cut points, got {len(cuts)}")
    return cuts


def _proj(n, d, axis, sign, cuts):
    return projector(n, axis, sign, d=d, cut=cuts[axis - 1])


def _flip(sign):
    return "-" if sign == "+" else "+"


def boundary(f: CubeElement) -> CubeElement:
    """(d f)_s = sum over i with s_i in {+,-} of (-1)^(#{j>i: s_j=0}) f_(s with 0 at i)."""
    if f.p < 2:
        raise DimensionMismatch("boundary needs degree >= 2; use boundary_hat on N^1")
    out = {}
    for s in sign_strings(f.n, f.p - 1):
        total = None
        for i, ch in enumerate(s):
            if ch == "0":
                continue
            source = s[:i] + "0" + s[i + 1:]
            comp = f.components.get(source)
            if comp is None:
                continue
            sign = -1 if sum(1 for j in range(i + 1, f.n) if s[j] == "0") % 2 else 1
            piece = comp.scale(sign)
            total = piece if total is None else total + piece
        if total is not None and not total.is_structurally_zero():
            out[s] = total
    return CubeElement(f.n, f.d, f.p - 1, out)


def boundary_axis(f: CubeElement, axis) -> CubeElement:
    """(d_i f)_(..+-..) = (-1)^(#{j>i: s_j=0}) f_(s with 0 at i); zero on s_i = 0."""
    if f.p < 2:
        raise DimensionMismatch("boundary_axis needs degree >= 2")
    i = axis - 1
    out = {}
    for s in sign_strings(f.n, f.p - 1):
        if s[i] == "0":
            continue
        comp = f.components.get(s[:i] + "0" + s[i + 1:])
        if comp is None:
            continue
        sign = -1 if sum(1 for j in range(i + 1, f.n) if s[j] == "0") % 2 else 1
        op = comp.scale(sign)
        if not op.is_structurally_zero():
            out[s] = op
    return CubeElement(f.n, f.d, f.p - 1, out)


def boundary_hat(f: CubeElement) -> LatticeOperator:
    """N^1 -> N^0: sum over s in {+,-}^n of (-1)^(s_1+...+s_n) f_s."""
    if f.p != 1:
        raise DimensionMismatch("boundary_hat is defined on N^1")
    total = LatticeOperator.zero(f.n, f.d)
    for s, op in f.components.items():
        total = total + op.scale(_minus_parity(s))
    return total


def epsilon(f: CubeElement, axis, cuts=None) -> CubeElement:
    """(eps_i f)_(..s_i..) = (-1)^(s_i) P_i^(s_i) sum_g (-1)^g f_(..g..); zero on s_i = 0."""
    cuts = _cuts(f.n, cuts)
    i = axis - 1
    out = {}
    for s in sign_strings(f.n, f.p):
        if s[i] == "0":
            continue
        acc = None
        for g in SIGNS:
            comp = f.components.get(s[:i] + g + s[i + 1:])
            if comp is None:
                continue
            piece = comp.scale(_sign_value(g))
            acc = piece if acc is None else acc + piece
        if acc is None:
            continue
        op = _proj(f.n, f.d, axis, s[i], cuts).compose(acc).scale(_sign_value(s[i]))
        if not op.is_structurally_zero():
            out[s] = op
    return CubeElement(f.n, f.d, f.p, out)


def epsilon_prefix(f: CubeElement, upto, cuts=None) -> CubeElement:
    """Closed form of eps_1 ... eps_upto:

    (-1)^(s_1+...+s_upto) P_1^(s_1) ... P_upto^(s_upto)
    sum over g in {+,-}^upto of (-1)^(g_1+...+g_upto) f_(g s_(upto+1) ...),
    and zero wherever one of s_1..s_upto is 0.
    """
    cuts = _cuts(f.n, cuts)
    out = {}
    for s in sign_strings(f.n, f.p):
        head = s[:upto]
        if "0" in head:
            continue
        acc = None
        for g in itertools.product(SIGNS, repeat=upto):
            comp = f.components.get("".join(g) + s[upto:])
            if comp is None:
                continue
            piece = comp.scale(_minus_parity("".join(g)))
            acc = piece if acc is None else acc + piece
        if acc is None:
            continue
        for axis in range(upto, 0, -1):
            acc = _proj(f.n, f.d, axis, s[axis - 1], cuts).compose(acc)
        acc = acc.scale(_minus_parity(head))
        if not acc.is_structurally_zero():
            out[s] = acc
    return CubeElement(f.n, f.d, f.p, out)


def epsilon_all(f: CubeElement, cuts=None) -> CubeElement:
    return epsilon_prefix(f, f.n, cuts)


def homotopy_axis(f: CubeElement, axis, cuts=None) -> CubeElement:
    """(H_i f)_(..0..) = (-1)^(#{j>i: s_j=0}) sum_g P_i^(-g) f_(..g..); zero on s_i != 0."""
    cuts = _cuts(f.n, cuts)
    i = axis - 1
    out = {}
    for s in sign_strings(f.n, f.p + 1):
        if s[i] != "0":
            continue
        acc = None
        for g in SIGNS:
            comp = f.components.get(s[:i] + g + s[i + 1:])
            if comp is None:
                continue
            piece = _proj(f.n, f.d, axis, _flip(g), cuts).compose(comp)
            acc = piece if acc is None else acc + piece
        if acc is None:
            continue
        sign = -1 if sum(1 for j in range(i + 1, f.n) if s[j] == "0") % 2 else 1
        acc = acc.scale(sign)
        if not acc.is_structurally_zero():
            out[s] = acc
    return CubeElement(f.n, f.d, f.p + 1, out)


def homotopy(f: CubeElement, cuts=None) -> CubeElement:
    """H = H_1 + eps_1 H_2 + ... + eps_1 ... eps_(n-1) H_n, via the explicit formula.

    At an output string s of degree p + 1 with leftmost zero in slot b + 1:

      (Hf)_s = (-1)^(deg s) (-1)^(s_1+...+s_b) P_1^(s_1) ... P_b^(s_b)
               sum over g_1..g_(b+1) of (-1)^(g_1+...+g_b)
               P_(b+1)^(-g_(b+1)) f_(g_1..g_(b+1) s_(b+2)..s_n).
    """
    cuts = _cuts(f.n, cuts)
    if f.p >= f.n + 1:
        return CubeElement.zero(f.n, f.d, f.p + 1)
    out = {}
    for s in sign_strings(f.n, f.p + 1):
        b = s.index("0")  # 0-based slot of the leftmost zero
        acc = None
        for g in itertools.product(SIGNS, repeat=b + 1):
            word = "".join(g)
            comp = f.components.get(word + s[b + 1:])
            if comp is None:
                continue
            piece = _proj(f.n, f.d, b + 1, _flip(word[b]), cuts).compose(comp)
            piece = piece.scale(_minus_parity(word[:b]))
            acc = piece if acc is None else acc + piece
        if acc is None:
            continue
        for axis in range(b, 0, -1):
            acc = _proj(f.n, f.d, axis, s[axis - 1], cuts).compose(acc)
        sign = (-1 if degree(s) % 2 else 1) * _minus_parity(s[:b])
        acc = acc.scale(sign)
        if not acc.is_structurally_zero():
            out[s] = acc
    return CubeElement(f.n, f.d, f.p + 1, out)


def homotopy_via_definition(f: CubeElement, cuts=None) -> CubeElement:
    """H as the literal sum H_1 + eps_1 H_2 + ...; cross-check for homotopy()."""
    total = CubeElement.zero(f.n, f.d, f.p + 1)
    for i in range(1, f.n + 1):
        piece = homotopy_axis(f, i, cuts)
        for axis in range(i - 1, 0, -1):
            piece = epsilon(piece, axis, cuts)
        total = total + piece
    return total


def homotopy_hat(g: LatticeOperator, cuts=None) -> CubeElement:
    """N^0 -> N^1: (H^ g)_s = (-1)^(s_1+...+s_n) P_1^(s_1) ... P_n^(s_n) g."""
    cuts = _cuts(g.n, cuts)
    out = {}
    for combo in itertools.product(SIGNS, repeat=g.n):
        s = "".join(combo)
        op = g
        for axis in range(g.n, 0, -1):
            op = _proj(g.n, g.d, axis, s[axis - 1], cuts).compose(op)
        op = op.scale(_minus_parity(s))
        if not op.is_structurally_zero():
            out[s] = op
    return CubeElement(g.n, g.d, 1, out)


def identity_minus_epsilon_all(f: CubeElement, cuts=None) -> CubeElement:
    return f - epsilon_all(f, cuts)


# ---------------------------------------------------------------------------
# The spectral-sequence lifting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LiftTerm:
    """One summand of a lift state.

    ``omitted`` lists the wedge slots already consumed (sorted, 1-based);
    ``bracket`` marks a [f_a, f_b]-led tail produced by the second half of
    the differential (those heads must die under the homotopy).
    """

    omitted: tuple
    bracket: tuple  # () for plain terms, (a, b) for bracket-led terms
    head: CubeElement


@dataclass
class LiftState:
    """theta_(p,q): the lift after p - 1 differential/homotopy rounds."""

    p: int
    q: int
    terms: list
    bracket_residual: list = field(default_factory=list)

    def term(self, omitted) -> CubeElement:
        omitted = tuple(sorted(omitted))
        for t in self.terms:
            if t.omitted == omitted and t.bracket == ():
                return t.head
        raise KeyError(f"no term with omitted={omitted}")

    def residual_is_zero(self):
        return all(t.head.is_zero() for t in self.bracket_residual)


def _check_operator_family(fs):
    n, d = fs[0].n, fs[0].d
    for f in fs:
        if f.n != n or f.d != d:
            raise DimensionMismatch("lift inputs on different spaces")
    return n, d


def lift_iterative(fs, cuts=None):
    """Run the descent theta_(1,n) -> ... -> theta_(n+1,0) for f_0 ... f_n.

    Each round applies the Chevalley-Eilenberg differential (with the
    commutator action on cube elements) and then the contracting homotopy.
    Bracket-led terms produced by the second half of the differential are
    recorded after the homotopy in ``bracket_residual`` (they vanish when
    the machinery is consistent) and are not propagated.
    """
    fs = list(fs)
    n, d = _check_operator_family(fs)
    if len(fs) != n + 1:
        raise DimensionMismatch(f"need n+1 = {n + 1} operators, got {len(fs)}")
    cuts = _cuts(n, cuts)
    ops = {i: fs[i] for i in range(len(fs))}

    theta = {(): homotopy_hat(ops[0], cuts)}
    states = [LiftState(1, n, [LiftTerm((), (), head) for _, head in sorted(theta.items())])]

    for _ in range(n):
        acc_plain = {}
        acc_bracket = {}
        for omitted, head in theta.items():
            remaining = [j for j in range(1, n + 1) if j not in omitted]
            for pos, w in enumerate(remaining, start=1):
                contrib = head.bracket(ops[w]).scale((-1) ** pos)
                key = tuple(sorted(omitted + (w,)))
                acc_plain[key] = acc_plain[key] + contrib if key in acc_plain else contrib
            for (pa, wa), (pb, wb) in itertools.combinations(enumerate(remaining, 1), 2):
                contrib = head.scale((-1) ** (pa + pb + 1))
                key = (omitted, (wa, wb))
                acc_bracket[key] = acc_bracket[key] + contrib if key in acc_bracket else contrib

        theta = {}
        terms = []
        for key in sorted(acc_plain):
            lifted = homotopy(acc_plain[key], cuts)
            if lifted.components:
                theta[key] = lifted
            terms.append(LiftTerm(key, (), lifted))
        residual = [
            LiftTerm(omitted, pair, homotopy(value, cuts))
            for (omitted, pair), value in sorted(acc_bracket.items())
        ]
        prev = states[-1]
        states.append(LiftState(prev.p + 1, prev.q - 1, terms, residual))
    return states


def lift_closed_form(fs, p, cuts=None) -> LiftState:
    """theta_(p+1, n-p) per the explicit descent formula.

    For each ordered tuple (w_1 ... w_p) of distinct slots and each sign word
    g in {+,-}^(n-p), the component at  g 0...0  is

        (-1)^(p(p+1)/2) (-1)^(w_1+...+w_p) rho(w) (-1)^(g_1+...+g_(n-p))
        P_1^(g_1) ... P_(n-p)^(g_(n-p))
        [sum over g* of (-1)^(g*) (P_(n-p+1)^(-g*) f_(w_p) P^(g*)) ...
            (P_n^(-g*) f_(w_1) P^(g*))] f_0;

    tuples with the same underlying set share a wedge tail and are summed.
    The leading (-1)^(p(p+1)/2) differs from a verbatim reading of the
    source recursion, which is inconsistent at its base step; this is the
    prefactor the iterative descent actually produces.
    """
    fs = list(fs)
    n, d = _check_operator_family(fs)
    if len(fs) != n + 1:
        raise DimensionMismatch(f"need n+1 = {n + 1} operators, got {len(fs)}")
    if not 0 <= p <= n:
        raise DimensionMismatch(f"stage p={p} outside 0..{n}")
    cuts = _cuts(n, cuts)

    prefactor = -1 if (p * (p + 1) // 2) % 2 else 1
    heads = {}
    for w_tuple in itertools.permutations(range(1, n + 1), p):
        base_sign = prefactor * ((-1) ** sum(w_tuple)) * rho(w_tuple)
        inner = fs[0]
        for axis in range(n, n - p, -1):  # axis n holds f_(w_1), axis n-p+1 holds f_(w_p)
            inner = _signed_conjugation(fs[w_tuple[n - axis]], axis, cuts).compose(inner)
        key = tuple(sorted(w_tuple))
        components = heads.setdefault(key, {})
        for g in itertools.product(SIGNS, repeat=n - p):
            word = "".join(g)
            op = inner
            for axis in range(n - p, 0, -1):
                op = _proj(n, d, axis, word[axis - 1], cuts).compose(op)
            op = op.scale(base_sign * _minus_parity(word))
            s = word + "0" * p
            components[s] = components[s] + op if s in components else op

    terms = [
        LiftTerm(key, (), CubeElement.make(n, d, p + 1, comps))
        for key, comps in sorted(heads.items())
    ]
    return LiftState(p + 1, n - p, terms)


def _signed_conjugation(f: LatticeOperator, axis, cuts) -> LatticeOperator:
    """sum over g in {+,-} of (-1)^g P_axis^(-g) f P_axis^(g)."""
    plus = _proj(f.n, f.d, axis, "-", cuts).compose(f).compose(_proj(f.n, f.d, axis, "+", cuts))
    minus = _proj(f.n, f.d, axis, "+", cuts).compose(f).compose(_proj(f.n, f.d, axis, "-", cuts))
    return plus - minus
