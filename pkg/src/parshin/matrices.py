"""Small exact-rational matrix helpers (tuples of tuples of Fraction)."""

from fractions import Fraction

Matrix = tuple


def matrix(rows):
    """Build a canonical matrix (tuple of tuples of Fraction) from nested iterables."""
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(d):
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(d)) for i in range(d))


def zeros(d):
    zero = Fraction(0)
    return tuple((zero,) * d for _ in range(d))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a, b):
    d = len(b)
    cols = list(zip(*b))
    return tuple(tuple(sum(ra[k] * col[k] for k in range(d)) for col in cols) for ra in a)


def mat_trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def det(a):
    """Determinant by fraction-preserving Gaussian elimination."""
    m = [list(row) for row in a]
    d = len(m)
    sign = 1
    result = Fraction(1)
    for col in range(d):
        pivot = next((r for r in range(col, d) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result *= m[col][col]
        inv = Fraction(1) / m[col][col]
        for r in range(col + 1, d):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for c in range(col, d):
                    m[r][c] -= factor * m[col][c]
    return sign * result


def rank(a):
    """Exact rank of a (possibly rectangular) rational matrix."""
    m = [list(row) for row in a]
    rows = len(m)
    if rows == 0:
        return 0
    cols = len(m[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][col]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                factor = m[i][col] * inv
                for c in range(col, cols):
                    m[i][c] -= factor * m[r][c]
        r += 1
        if r == rows:
            break
    return r


def mat_vec(a, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)
