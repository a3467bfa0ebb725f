"""The Tate-type (n+1)-cocycle on subalgebras of the infinite matrix algebra.

``phi`` evaluates the bare operator-trace sum (no global prefactor: the
n = 1 specializations below fix this normalization) on three input flavors:

* ``scalar``     -- Laurent polynomials acting by multiplication (d = 1);
  for n = 1 this is the Heisenberg 2-cocycle  phi(t^a ^ t^b) = a d_(a+b,0).
* ``multiloop``  -- g[t^+-...] acting through the adjoint representation;
  for sl2, n = 1 this is the affine Kac-Moody cocycle
  phi(Y0 t^a ^ Y1 t^b) = -b d_(a+b,0) B(Y1, Y0).
* ``vectorfield`` -- n = 1 derivations t^s d/dt; on L_m = t^(m+1) d/dt this
  is the Virasoro cocycle  phi(L_m ^ L_-m) = -(m^3 - m)/6.

``phi_closed_form`` is the generalized-Killing-form expression for monomial
multiloop wedges; ``verify_cocycle`` machine-checks the cocycle identity by
evaluating phi on boundaries of random wedges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import TensorChain, WedgeChain
from .errors import DimensionMismatch, MixedFlavors, NotCentreless
from .laurent import GLaurent, LaurentPoly
from .liealg import is_centreless, killing_nform
from .opalg import LatticeOperator, derivation_operator, mul_operator
from .residue import _perm_sign, raw_sum

FLAVORS = ("multiloop", "scalar", "vectorfield")


@dataclass(frozen=True)
class CocycleInput:
    """A classified wedge f_0 ^ ... ^ f_n of one flavor."""

    n: int
    flavor: str
    entries: tuple

    @staticmethod
    def classify(entries) -> "CocycleInput":
        entries = tuple(entries)
        if not entries:
            raise MixedFlavors("empty cocycle input")
        kinds = set()
        for e in entries:
            if isinstance(e, GLaurent):
                kinds.add("multiloop")
            elif isinstance(e, LaurentPoly):
                kinds.add("scalar")
            elif isinstance(e, LatticeOperator) or _is_derivation_descriptor(e):
                kinds.add("vectorfield")
            else:
                raise MixedFlavors(f"unsupported cocycle entry type {type(e).__name__}")
        if len(kinds) != 1:
            raise MixedFlavors(f"entries mix flavors {sorted(kinds)}")
        flavor = kinds.pop()
        first = entries[0]
        n = len(tuple(first[0])) if _is_derivation_descriptor(first) else first.n
        inp = CocycleInput(n, flavor, entries)
        if flavor == "multiloop":
            alg = first.algebra
            if any(e.algebra != alg for e in entries):
                raise MixedFlavors("multiloop entries over different algebras")
        if flavor == "vectorfield" and n != 1:
            raise DimensionMismatch("the derivation flavor is restricted to n = 1")
        return inp


def _is_derivation_descriptor(e):
    return (
        isinstance(e, tuple)
        and len(e) == 2
        and isinstance(e[0], (tuple, list))
        and isinstance(e[1], int)
    )


def entry_operator(entry) -> LatticeOperator:
    """The lattice operator an input entry acts by."""
    if isinstance(entry, (GLaurent, LaurentPoly)):
        return mul_operator(entry)
    if isinstance(entry, LatticeOperator):
        return entry
    if _is_derivation_descriptor(entry):
        s, axis = entry
        return derivation_operator(len(tuple(s)), tuple(s), axis)
    raise MixedFlavors(f"cannot interpret {type(entry).__name__} as a cocycle entry")


def phi(entries, cuts=None) -> Fraction:
    """The cocycle value on a single wedge f_0 ^ ... ^ f_n."""
    inp = entries if isinstance(entries, CocycleInput) else CocycleInput.classify(entries)
    if len(inp.entries) != inp.n + 1:
        raise DimensionMismatch(
            f"a wedge over n = {inp.n} needs {inp.n + 1} entries, got {len(inp.entries)}"
        )
    return raw_sum([entry_operator(e) for e in inp.entries], cuts)


def phi_wedge_chain(chain: WedgeChain, cuts=None) -> Fraction:
    """Linear extension of phi to a formal sum of wedges.

    Each canonical wedge is read with its first factor in the f_0 slot.
    Since the formula's f_0 slot is distinguished, this is only meaningful
    on chains where slot-0 exchange is harmless (e.g. cycles); prefer
    :func:`phi_tensor_chain` when a tensor representative is available.
    """
    total = Fraction(0)
    for coeff, factors in chain.terms:
        total += coeff * phi(factors, cuts)
    return total


def phi_tensor_chain(chain: TensorChain, cuts=None) -> Fraction:
    """phi on a sum of head (x) tail terms, the head held in the f_0 slot."""
    total = Fraction(0)
    for head, tail in chain.terms:
        ops = [entry_operator(head)] + [entry_operator(f) for f in tail]
        total += raw_sum(ops, cuts)
    return total


def phi_closed_form(elements, exponents) -> Fraction:
    """Generalized-Killing-form value on a monomial multiloop wedge.

    For Y_p t^(c_p) with exponent rows c_0 ... c_n:
        (-1)^n  sum over pi of sgn(pi) B(Y_pi(1), ..., Y_pi(n), Y_0)
                prod_i c_(pi(i), i)
    when all column sums vanish, and zero otherwise.  Requires a centreless
    algebra (faithful adjoint representation).
    """
    elements = list(elements)
    rows = [tuple(int(x) for x in row) for row in exponents]
    n = len(elements) - 1
    if len(rows) != n + 1 or any(len(r) != n for r in rows):
        raise DimensionMismatch("exponent matrix must be (n+1) x n matching the elements")
    alg = elements[0].algebra
    if not is_centreless(alg):
        raise NotCentreless("the closed form presumes a faithful adjoint representation")
    for j in range(n):
        if sum(row[j] for row in rows) != 0:
            return Fraction(0)
    total = Fraction(0)
    for perm in itertools.permutations(range(1, n + 1)):
        prod = Fraction(_perm_sign(perm))
        for i in range(1, n + 1):
            prod *= rows[perm[i - 1]][i - 1]
        if prod == 0:
            continue
        ordered = [elements[p] for p in perm] + [elements[0]]
        total += prod * killing_nform(*ordered)
    return total if n % 2 == 0 else -total


# ---------------------------------------------------------------------------
# Specializations
# ---------------------------------------------------------------------------

def virasoro_generator(m) -> tuple:
    """Descriptor of L_m = t^(m+1) d/dt."""
    return ((m + 1,), 1)


def virasoro_phi(m, cut=0) -> Fraction:
    """phi(L_m ^ L_-m)."""
    return phi([virasoro_generator(m), virasoro_generator(-m)], cuts=(cut,))


def virasoro_table(max_m, cut=0):
    return [(m, virasoro_phi(m, cut)) for m in range(1, max_m + 1)]


# ---------------------------------------------------------------------------
# Machine verification
# ---------------------------------------------------------------------------

@dataclass
class CocycleReport:
    """Result of evaluating phi on boundaries of random wedges."""

    flavor: str
    n: int
    trials: int
    seed: int
    degree_bound: int
    nonzero: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.nonzero

    def to_json_dict(self):
        return {
            "flavor": self.flavor,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "degree_bound": self.degree_bound,
            "passed": self.passed,
            "nonzero": self.nonzero,
        }


def _random_entry(rng, flavor, n, degree_bound, algebra, zero_sum_exponent=None):
    from .sampling import random_lie_element

    exp = tuple(rng.randint(-degree_bound, degree_bound) for _ in range(n)) \
        if zero_sum_exponent is None else zero_sum_exponent
    if flavor == "multiloop":
        return GLaurent.monomial(n, random_lie_element(rng, algebra), exp)
    if flavor == "scalar":
        return LaurentPoly.monomial(n, exp, 1)
    return virasoro_generator(exp[0])


def verify_cocycle(flavor, n, degree_bound=2, trials=50, seed=1, algebra=None, cuts=None) -> CocycleReport:
    """Evaluate phi on boundaries of random (n+2)-wedges; report any nonzero value.

    A boundary of f_0 ^ ... ^ f_(n+1) is a cycle with canonical lift
    delta(f_0 (x) f_1 ^ ... ^ f_(n+1)), and phi on a lifted cycle is by
    definition the trace formula on the lift.  The evaluation therefore goes
    through the tensor differential, which keeps the distinguished f_0 slot
    in place.  (Reading the raw wedge boundary with brackets in the first
    slot instead is *not* equivalent for n >= 2: the formula is not slot-0
    alternating off cycles; see :func:`naive_wedge_coboundary`.)

    The cocycle identity predicts zero on every trial; a nonzero value is
    surfaced as a finding, not an exception.
    """
    import random

    if flavor not in FLAVORS:
        raise MixedFlavors(f"unknown flavor {flavor!r}")
    if flavor == "multiloop" and algebra is None:
        from .liealg import sl2

        algebra = sl2()
    rng = random.Random(seed)
    report = CocycleReport(flavor, n, trials, seed, degree_bound)
    for trial in range(trials):
        entries = _boundary_trial_entries(rng, flavor, n, degree_bound, algebra)
        chain = TensorChain.single(entries[0], tuple(entries[1:]))
        value = phi_tensor_chain(chain.ce_diff(), cuts)
        if value != 0:
            report.nonzero.append({
                "trial": trial,
                "value": str(value),
            })
    return report


def _boundary_trial_entries(rng, flavor, n, degree_bound, algebra):
    exps = [tuple(rng.randint(-degree_bound, degree_bound) for _ in range(n))
            for _ in range(n + 2)]
    if rng.random() < 0.5:
        # force total exponent zero per axis so individual phi terms are nonzero
        for j in range(n):
            last = list(exps[-1])
            last[j] = -sum(e[j] for e in exps[:-1])
            exps[-1] = tuple(last)
    entries = [_random_entry(rng, flavor, n, degree_bound, algebra, exp) for exp in exps]
    if flavor == "vectorfield":
        # wedge the operators themselves so the differential brackets by commutator
        entries = [entry_operator(e) for e in entries]
    return entries


def naive_wedge_coboundary(flavor, n, degree_bound=2, trials=10, seed=1, algebra=None, cuts=None):
    """Diagnostic: phi of raw wedge boundaries, first factor in the f_0 slot.

    For n = 1 this agrees with :func:`verify_cocycle` (the formula is fully
    alternating there); for n >= 2 it measures the slot-0 defect of the
    formula off cycles, and nonzero values are expected findings.
    """
    import random

    if flavor == "multiloop" and algebra is None:
        from .liealg import sl2

        algebra = sl2()
    rng = random.Random(seed)
    values = []
    for _ in range(trials):
        entries = _boundary_trial_entries(rng, flavor, n, degree_bound, algebra)
        wedge = WedgeChain.single(tuple(entries))
        values.append(phi_wedge_chain(wedge.ce_diff_trivial(), cuts))
    return values


@dataclass
class ComparisonReport:
    n: int
    trials: int
    seed: int
    mismatches: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.mismatches

    def to_json_dict(self):
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "mismatches": self.mismatches,
        }


def operator_vs_closed_form(n, trials=25, seed=1, algebra=None, cuts=None) -> ComparisonReport:
    """Compare the operator-trace phi with the Killing-form closed form."""
    import random

    from .sampling import random_lie_element

    if algebra is None:
        from .liealg import sl2

        algebra = sl2()
    rng = random.Random(seed)
    report = ComparisonReport(n, trials, seed)
    for trial in range(trials):
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n + 1)]
        if trial % 2 == 0:
            for j in range(n):
                rows[0][j] = -sum(rows[i][j] for i in range(1, n + 1))
        elements = [random_lie_element(rng, algebra) for _ in range(n + 1)]
        entries = [GLaurent.monomial(n, el, tuple(row)) for el, row in zip(elements, rows)]
        direct = phi(entries, cuts)
        closed = phi_closed_form(elements, rows)
        if direct != closed:
            report.mismatches.append({
                "trial": trial,
                "operator": str(direct),
                "closed_form": str(closed),
                "exponents": rows,
            })
    return report
