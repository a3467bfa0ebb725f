"""Banded lattice-kernel operators on V tensor k[t_1^+-, ..., t_n^+-].

An operator is a finite sum of kernel atoms.  Each atom sends the basis
vector v (x) e_lam to  [lam in box] * weight(lam) * (matrix v) (x) e_(lam+shift),
with an exact rational matrix, a polynomial weight in the lattice coordinate
lam, and a half-open integer box (axes may be unbounded).  This class of
operators is closed under addition and composition and contains everything
the residue and cocycle formulas generate: multiplication operators,
derivations t^s d/dt_i, the half-space projectors P_i^+-, and their products.

Operator identity is semantic.  Equality and the trace both refine the atoms
into box-arrangement cells per axis and decide vanishing of the cell-wise
polynomial sums on a sample grid (degree + 2 points per axis, capped at the
cell width), which is exact for polynomial weights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotTraceClass
from .matrices import (
    identity,
    is_zero_matrix,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
)

_INF_LO = -(10**18)
_INF_HI = 10**18


# ---------------------------------------------------------------------------
# Boxes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Box:
    """Product of half-open integer intervals [lo, hi); None means unbounded."""

    bounds: tuple  # ((lo, hi), ...) with lo, hi int or None

    @staticmethod
    def full(n) -> "Box":
        return Box(((None, None),) * n)

    @staticmethod
    def of(bounds) -> "Box":
        return Box(tuple((lo, hi) for lo, hi in bounds))

    @property
    def n(self):
        return len(self.bounds)

    def is_empty(self):
        return any(lo is not None and hi is not None and lo >= hi for lo, hi in self.bounds)

    def contains(self, point):
        for (lo, hi), x in zip(self.bounds, point):
            if lo is not None and x < lo:
                return False
            if hi is not None and x >= hi:
                return False
        return True

    def intersect(self, other) -> "Box":
        out = []
        for (lo1, hi1), (lo2, hi2) in zip(self.bounds, other.bounds):
            lo = lo1 if lo2 is None else (lo2 if lo1 is None else max(lo1, lo2))
            hi = hi1 if hi2 is None else (hi2 if hi1 is None else min(hi1, hi2))
            out.append((lo, hi))
        return Box(tuple(out))

    def translate(self, shift) -> "Box":
        return Box(tuple(
            (None if lo is None else lo + s, None if hi is None else hi + s)
            for (lo, hi), s in zip(self.bounds, shift)
        ))

    def bounded_axis(self, i, side):
        lo, hi = self.bounds[i]
        return (lo is not None) if side == "+" else (hi is not None)

    def sort_key(self):
        return tuple((_INF_LO if lo is None else lo, _INF_HI if hi is None else hi)
                     for lo, hi in self.bounds)


# ---------------------------------------------------------------------------
# Weight polynomials in the lattice coordinate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightPoly:
    """Polynomial in lam_1, ..., lam_n with Fraction coefficients, canonical form."""

    n: int
    terms: tuple  # sorted ((degree tuple, Fraction), ...), no zeros

    @staticmethod
    def make(n, mapping) -> "WeightPoly":
        out = {}
        for deg, c in mapping.items():
            c = Fraction(c)
            if c != 0:
                deg = tuple(int(d) for d in deg)
                out[deg] = out.get(deg, Fraction(0)) + c
        return WeightPoly(n, tuple(sorted((d, c) for d, c in out.items() if c != 0)))

    @staticmethod
    def const(n, c) -> "WeightPoly":
        return WeightPoly.make(n, {(0,) * n: c})

    @staticmethod
    def coordinate(n, i) -> "WeightPoly":
        """The coordinate function lam_i (0-based axis)."""
        deg = tuple(1 if k == i else 0 for k in range(n))
        return WeightPoly.make(n, {deg: 1})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for deg, c in other.terms:
            out[deg] = out.get(deg, Fraction(0)) + c
        return WeightPoly.make(self.n, out)

    def __neg__(self):
        return WeightPoly(self.n, tuple((d, -c) for d, c in self.terms))

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return WeightPoly(self.n, ())
        return WeightPoly(self.n, tuple((d, c * v) for d, v in self.terms))

    def __mul__(self, other):
        out = {}
        for d1, c1 in self.terms:
            for d2, c2 in other.terms:
                deg = tuple(a + b for a, b in zip(d1, d2))
                out[deg] = out.get(deg, Fraction(0)) + c1 * c2
        return WeightPoly.make(self.n, out)

    def shift_argument(self, shift) -> "WeightPoly":
        """The polynomial lam -> self(lam + shift), by binomial expansion."""
        if all(s == 0 for s in shift):
            return self
        out = {}
        for deg, c in self.terms:
            expansions = []
            for e, s in zip(deg, shift):
                if s == 0 or e == 0:
                    expansions.append([(e, Fraction(1))])
                else:
                    # (x+s)^e = sum_k C(e,k) s^(e-k) x^k
                    expansions.append(
                        [(k, Fraction(_binomial(e, k) * s ** (e - k))) for k in range(e + 1)]
                    )
            for combo in itertools.product(*expansions):
                deg_new = tuple(k for k, _ in combo)
                coeff = c
                for _, b in combo:
                    coeff *= b
                out[deg_new] = out.get(deg_new, Fraction(0)) + coeff
        return WeightPoly.make(self.n, out)

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for deg, c in self.terms:
            val = c
            for e, x in zip(deg, point):
                if e:
                    val *= Fraction(x) ** e
            total += val
        return total

    def degree_axis(self, i):
        return max((d[i] for d, _ in self.terms), default=0)


def _binomial(n, k):
    result = 1
    for i in range(k):
        result = result * (n - i) // (i + 1)
    return result


# ---------------------------------------------------------------------------
# Atoms and operators
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelAtom:
    shift: tuple
    matrix: tuple
    weight: WeightPoly
    box: Box


@dataclass(frozen=True, eq=False)
class LatticeOperator:
    """Finite sum of kernel atoms, kept in normalized form.

    Equality is semantic (``A == B`` iff they act identically); operators are
    therefore deliberately unhashable.
    """

    n: int
    d: int
    atoms: tuple

    __hash__ = None

    @staticmethod
    def make(n, d, atoms) -> "LatticeOperator":
        return LatticeOperator(n, d, _normalize(n, d, atoms))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(n, d=1) -> "LatticeOperator":
        return LatticeOperator(n, d, ())

    @staticmethod
    def identity(n, d=1) -> "LatticeOperator":
        return LatticeOperator.make(n, d, [
            KernelAtom((0,) * n, identity(d), WeightPoly.const(n, 1), Box.full(n))
        ])

    # -- structure ----------------------------------------------------------

    def is_structurally_zero(self):
        return not self.atoms

    def _check(self, other):
        if self.n != other.n or self.d != other.d:
            raise DimensionMismatch(
                f"operators on different spaces: (n={self.n}, d={self.d}) vs (n={other.n}, d={other.d})"
            )

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return LatticeOperator.make(self.n, self.d, self.atoms + other.atoms)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return LatticeOperator.zero(self.n, self.d)
        return LatticeOperator(self.n, self.d, tuple(
            KernelAtom(a.shift, a.matrix, a.weight.scale(c), a.box) for a in self.atoms
        ))

    # -- composition ---------------------------------------------------------

    def compose(self, other) -> "LatticeOperator":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        self._check(other)
        atoms = []
        for a in self.atoms:
            for b in other.atoms:
                box = b.box.intersect(a.box.translate(tuple(-s for s in b.shift)))
                if box.is_empty():
                    continue
                weight = a.weight.shift_argument(b.shift) * b.weight
                if weight.is_zero():
                    continue
                matrix = mat_mul(a.matrix, b.matrix)
                if is_zero_matrix(matrix):
                    continue
                shift = tuple(x + y for x, y in zip(a.shift, b.shift))
                atoms.append(KernelAtom(shift, matrix, weight, box))
        return LatticeOperator.make(self.n, self.d, atoms)

    def __matmul__(self, other):
        return self.compose(other)

    def commutator(self, other) -> "LatticeOperator":
        return self.compose(other) - other.compose(self)

    # -- action --------------------------------------------------------------

    def apply(self, vector):
        """Apply to a finitely supported map exponent -> coefficient vector.

        Scalar entries are accepted for d == 1.
        """
        out = {}
        zero = (Fraction(0),) * self.d
        for lam, v in vector.items():
            lam = tuple(lam)
            if len(lam) != self.n:
                raise DimensionMismatch(f"exponent {lam} has length {len(lam)}, expected {self.n}")
            if not isinstance(v, tuple):
                v = (Fraction(v),) if self.d == 1 else tuple(Fraction(x) for x in v)
            for atom in self.atoms:
                if not atom.box.contains(lam):
                    continue
                w = atom.weight.evaluate(lam)
                if w == 0:
                    continue
                target = tuple(x + s for x, s in zip(lam, atom.shift))
                image = mat_vec(atom.matrix, v)
                prev = out.get(target, zero)
                out[target] = tuple(p + w * x for p, x in zip(prev, image))
        return {lam: v for lam, v in out.items() if any(x != 0 for x in v)}

    # -- semantics -----------------------------------------------------------

    def is_zero(self):
        if not self.atoms:
            return True
        for _, group in _shift_groups(self.atoms):
            if not _group_vanishes(self.n, group):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, LatticeOperator):
            return NotImplemented
        if self.n != other.n or self.d != other.d:
            return False
        return (self - other).is_zero()

    def trace(self) -> Fraction:
        """Sum over the diagonal: shift-0 atoms summed over their boxes.

        Raises NotTraceClass when the diagonal has unbounded nonzero support
        (decided semantically on the cell refinement of the shift-0 part).
        """
        diagonal = [a for a in self.atoms if all(s == 0 for s in a.shift)]
        if not diagonal:
            return Fraction(0)
        total = Fraction(0)
        for cell, alive in _iter_cells(self.n, diagonal):
            if all(lo is not None and hi is not None for lo, hi in cell):
                for atom in alive:
                    tr = sum((atom.matrix[i][i] for i in range(self.d)), Fraction(0))
                    if tr != 0:
                        total += tr * _weight_box_sum(atom.weight, cell)
            else:
                if not _cell_sum_vanishes(cell, alive):
                    raise NotTraceClass(
                        "diagonal part has unbounded nonzero support on cell "
                        f"{cell}"
                    )
        return total

    def in_ideal(self, axis, sign) -> bool:
        """Conservative per-atom membership test for I_axis^sign (1-based axis).

        sign '+' requires every atom box bounded below in the axis, '-' above,
        '0' both.
        """
        i = axis - 1
        for atom in self.atoms:
            if sign in ("+", "0") and not atom.box.bounded_axis(i, "+"):
                return False
            if sign in ("-", "0") and not atom.box.bounded_axis(i, "-"):
                return False
        return True

    def in_trace_ideal(self) -> bool:
        return all(self.in_ideal(axis, "0") for axis in range(1, self.n + 1))

    def max_degree_axis(self, i):
        return max((a.weight.degree_axis(i) for a in self.atoms), default=0)

    def __str__(self):
        if not self.atoms:
            return "0"
        return " + ".join(
            f"[shift={a.shift}, box={a.box.bounds}, w={dict(a.weight.terms)!r}]" for a in self.atoms
        )


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

def _fold_scalar(d, atom):
    # for d == 1 the 1x1 matrix folds into the weight, easing merges
    if d == 1 and atom.matrix != ((Fraction(1),),):
        c = atom.matrix[0][0]
        return KernelAtom(atom.shift, ((Fraction(1),),), atom.weight.scale(c), atom.box)
    return atom


def _normalize(n, d, atoms):
    pending = []
    for atom in atoms:
        if atom.box.is_empty() or atom.weight.is_zero() or is_zero_matrix(atom.matrix):
            continue
        pending.append(_fold_scalar(d, atom))

    changed = True
    while changed:
        changed = False
        # merge equal (shift, box, matrix): sum the weights
        merged = {}
        for atom in pending:
            key = (atom.shift, atom.box, atom.matrix)
            if key in merged:
                merged[key] = merged[key] + atom.weight
                changed = True
            else:
                merged[key] = atom.weight
        pending = [KernelAtom(s, m, w, b) for (s, b, m), w in merged.items() if not w.is_zero()]

        # merge equal (shift, box, weight): sum the matrices
        merged = {}
        for atom in pending:
            key = (atom.shift, atom.box, atom.weight)
            if key in merged:
                merged[key] = mat_add(merged[key], atom.matrix)
                changed = True
            else:
                merged[key] = atom.matrix
        pending = [KernelAtom(s, m, w, b) for (s, b, w), m in merged.items() if not is_zero_matrix(m)]

        # glue boxes abutting along exactly one axis (equal shift/weight/matrix)
        groups = {}
        for atom in pending:
            groups.setdefault((atom.shift, atom.weight, atom.matrix), []).append(atom.box)
        glued = []
        for (shift, weight, mat), boxes in groups.items():
            boxes = list(boxes)
            merged_any = True
            while merged_any:
                merged_any = False
                for i in range(len(boxes)):
                    for j in range(i + 1, len(boxes)):
                        union = _glue_boxes(boxes[i], boxes[j])
                        if union is not None:
                            boxes[i] = union
                            boxes.pop(j)
                            merged_any = True
                            changed = True
                            break
                    if merged_any:
                        break
            glued.extend(KernelAtom(shift, mat, weight, b) for b in boxes)
        pending = glued

    pending.sort(key=lambda a: (a.shift, a.box.sort_key(), a.weight.terms, a.matrix))
    return tuple(pending)


def _glue_boxes(b1: Box, b2: Box):
    """Union of two boxes when they abut along exactly one axis, else None."""
    diff_axis = None
    for i, (p, q) in enumerate(zip(b1.bounds, b2.bounds)):
        if p != q:
            if diff_axis is not None:
                return None
            diff_axis = i
    if diff_axis is None:
        return None  # identical boxes would have merged by weight already
    (lo1, hi1), (lo2, hi2) = b1.bounds[diff_axis], b2.bounds[diff_axis]
    if hi1 is not None and lo2 is not None and hi1 == lo2:
        joined = (lo1, hi2)
    elif hi2 is not None and lo1 is not None and hi2 == lo1:
        joined = (lo2, hi1)
    else:
        return None
    bounds = list(b1.bounds)
    bounds[diff_axis] = joined
    return Box(tuple(bounds))


# ---------------------------------------------------------------------------
# Cell refinement: semantic vanishing and traces
# ---------------------------------------------------------------------------

def _shift_groups(atoms):
    groups = {}
    for atom in atoms:
        groups.setdefault(atom.shift, []).append(atom)
    return sorted(groups.items())


def _axis_cells(atoms, i):
    """Arrangement cells of axis i: half-open intervals refined by all bounds."""
    points = set()
    for atom in atoms:
        lo, hi = atom.box.bounds[i]
        if lo is not None:
            points.add(lo)
        if hi is not None:
            points.add(hi)
    points = sorted(points)
    if not points:
        return [(None, None)]
    cells = [(None, points[0])]
    cells.extend((points[k], points[k + 1]) for k in range(len(points) - 1))
    cells.append((points[-1], None))
    return cells


def _interval_covers(bounds, cell):
    lo, hi = bounds
    clo, chi = cell
    if lo is not None and (clo is None or clo < lo):
        return False
    if hi is not None and (chi is None or chi > hi):
        return False
    return True


def _iter_cells(n, atoms):
    """Yield (cell, alive_atoms) over arrangement cells met by at least one atom."""
    cells_per_axis = [_axis_cells(atoms, i) for i in range(n)]

    def rec(axis, alive, prefix):
        if axis == n:
            yield tuple(prefix), alive
            return
        for cell in cells_per_axis[axis]:
            sub = [a for a in alive if _interval_covers(a.box.bounds[axis], cell)]
            if sub:
                prefix.append(cell)
                yield from rec(axis + 1, sub, prefix)
                prefix.pop()

    yield from rec(0, list(atoms), [])


def _cell_points(cell, degrees):
    """Sample grid deciding polynomial vanishing on the integer points of a cell."""
    axes = []
    for (lo, hi), deg in zip(cell, degrees):
        count = deg + 2
        if lo is not None and hi is not None:
            width = hi - lo
            count = min(count, width)
            axes.append(range(lo, lo + count))
        elif lo is not None:
            axes.append(range(lo, lo + count))
        elif hi is not None:
            axes.append(range(hi - count, hi))
        else:
            axes.append(range(count))
    return itertools.product(*axes)


def _cell_sum_vanishes(cell, atoms):
    """True iff sum of weight x matrix over the atoms vanishes on the cell."""
    degrees = [max(a.weight.degree_axis(i) for a in atoms) for i in range(len(cell))]
    by_matrix = {}
    for atom in atoms:
        by_matrix.setdefault(atom.matrix, []).append(atom.weight)
    for point in _cell_points(cell, degrees):
        acc = None
        for mat, weights in by_matrix.items():
            val = sum((w.evaluate(point) for w in weights), Fraction(0))
            if val == 0:
                continue
            scaled = mat_scale(val, mat)
            acc = scaled if acc is None else mat_add(acc, scaled)
        if acc is not None and not is_zero_matrix(acc):
            return False
    return True


def _group_vanishes(n, atoms):
    for cell, alive in _iter_cells(n, atoms):
        if not _cell_sum_vanishes(cell, alive):
            return False
    return True


def _power_sum(e, lo, hi):
    """Sum of lam^e for lam in [lo, hi)."""
    total = Fraction(0)
    for lam in range(lo, hi):
        total += Fraction(lam) ** e if e else Fraction(1)
    return total


def _weight_box_sum(weight, cell):
    total = Fraction(0)
    for deg, c in weight.terms:
        val = c
        for e, (lo, hi) in zip(deg, cell):
            val *= _power_sum(e, lo, hi)
            if val == 0:
                break
        total += val
    return total


# ---------------------------------------------------------------------------
# Named operators
# ---------------------------------------------------------------------------

def projector(n, axis, sign, d=1, cut=0) -> LatticeOperator:
    """P_axis^+ = indicator(lam_axis >= cut); P_axis^- = 1 - P_axis^+ (1-based axis)."""
    if not 1 <= axis <= n:
        raise DimensionMismatch(f"axis {axis} outside 1..{n}")
    bounds = [(None, None)] * n
    bounds[axis - 1] = (cut, None) if sign == "+" else (None, cut)
    return LatticeOperator.make(n, d, [
        KernelAtom((0,) * n, identity(d), WeightPoly.const(n, 1), Box.of(bounds))
    ])


def projector_word(n, signs, d=1, cuts=None) -> LatticeOperator:
    """Product P_1^(s_1) ... P_k^(s_k) for signs drawn from '+-' (axes 1..k)."""
    cuts = cuts or (0,) * n
    op = LatticeOperator.identity(n, d)
    for axis0, sign in enumerate(signs):
        op = op.compose(projector(n, axis0 + 1, sign, d=d, cut=cuts[axis0]))
    return op


def mul_operator(f) -> LatticeOperator:
    """Multiplication by a LaurentPoly (d=1) or by a GLaurent via ad (d=dim g)."""
    from .laurent import GLaurent, LaurentPoly
    from .liealg import ad

    if isinstance(f, LaurentPoly):
        atoms = [
            KernelAtom(exp, ((Fraction(1),),), WeightPoly.const(f.n, c), Box.full(f.n))
            for exp, c in f.terms
        ]
        return LatticeOperator.make(f.n, 1, atoms)
    if isinstance(f, GLaurent):
        d = f.algebra.dim
        atoms = [
            KernelAtom(exp, ad(el), WeightPoly.const(f.n, 1), Box.full(f.n))
            for exp, el in f.iter_terms()
        ]
        return LatticeOperator.make(f.n, d, atoms)
    raise TypeError(f"cannot build a multiplication operator from {type(f).__name__}")


def derivation_operator(n, s, axis) -> LatticeOperator:
    """t^s d/dt_axis acting on k[t_1^+-, ...]: e_lam -> lam_axis e_(lam + s - e_axis)."""
    if not 1 <= axis <= n:
        raise DimensionMismatch(f"axis {axis} outside 1..{n}")
    s = tuple(int(x) for x in s)
    if len(s) != n:
        raise DimensionMismatch(f"shift {s} has length {len(s)}, expected {n}")
    shift = tuple(x - (1 if i == axis - 1 else 0) for i, x in enumerate(s))
    return LatticeOperator.make(n, 1, [
        KernelAtom(shift, ((Fraction(1),),), WeightPoly.coordinate(n, axis - 1), Box.full(n))
    ])
