"""Small exact linear algebra over Q or Q(i).

Entries may be ``Fraction`` or ``GaussianRational``; nothing here
touches floating point.
"""

from fractions import Fraction

__all__ = [
    "identity", "zeros", "mat_mul", "mat_vec", "transpose", "mat_inverse",
    "rref", "rank", "nullspace", "solve_particular", "Echelon", "sparse_nullspace",
]


def identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append([sum((x * col[k] for k, x in nz), 0) for col in bt])
    return out


def mat_vec(a, v):
    return [sum((x * v[k] for k, x in enumerate(row) if x), 0) for row in a]


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv if not isinstance(piv, int) else Fraction(1, piv)
            m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis of {x : rows * x = 0}."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def solve_particular(rows, rhs, ncols):
    """One solution of rows * x = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def mat_inverse(a):
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(a)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red[:n]]


class Echelon:
    """Incrementally maintained echelon basis of a subspace.

    ``add`` reduces a vector against the current basis and keeps the
    remainder if it is nonzero; used for span closures.
    """

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []      # (pivot, normalized row)

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for p, row in self.rows:
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def add(self, v):
        v = self.reduce(v)
        p = next((k for k, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = 1 / v[p] if not isinstance(v[p], int) else Fraction(1, v[p])
        v = [x * inv for x in v]
        new = []
        for q, row in self.rows:
            if row[p]:
                f = row[p]
                row = [x - f * y for x, y in zip(row, v)]
            new.append((q, row))
        new.append((p, v))
        self.rows = new
        return True

    def contains(self, v):
        return not any(self.reduce(v))


def sparse_nullspace(rows, ncols, one=Fraction(1)):
    """Basis of the solutions of sparse rows {col: value}, as dicts.

    Works over any exact field; ``one`` fixes the unit used for the free
    coordinates.
    """
    pivots = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        for col in [k for k in row if k in pivots]:
            f = row.get(col)
            if not f:
                continue
            for k, v in pivots[col].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        col = min(row)
        inv = one / row[col]
        row = {k: v * inv for k, v in row.items()}
        for other in pivots.values():
            f = other.get(col)
            if f:
                for k, v in row.items():
                    nv = other.get(k, 0) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivots[col] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: one}
        for col, row in pivots.items():
            if row.get(free):
                vec[col] = -row[free]
        basis.append(vec)
    return basis
