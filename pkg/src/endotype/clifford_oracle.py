"""Brute-force Brauer-Wall classes of Clifford superalgebras.

Superalgebras are stored by structure constants on a monomial basis.  The
class of a real algebra is read off from Morita-invariant data of the
underlying ungraded algebra and its even part, and compared with the
reference algebras Cl_{0,k} (k odd generators squaring to -1), which
realize the class k_R.  Complex classes are read off from the dimension of
the ungraded center.  Nothing here consults the closed-form product rule.
"""


from .bw_monoid import Endotype, signature
from .linalg import sparse_nullspace

__all__ = [
    "SuperAlgebra", "clifford", "graded_tensor", "center_dim", "classify",
    "representative", "oracle_product",
]


class SuperAlgebra:
    """Associative superalgebra with a basis of homogeneous elements.

    ``table[(i, j)]`` is the product of basis elements i and j as a dict
    {k: coefficient}.  ``generators`` generate the algebra and are given as
    basis indices.
    """

    def __init__(self, parity, table, generators, field="R"):
        self.parity = list(parity)
        self.dim = len(self.parity)
        self.table = table
        self.generators = list(generators)
        self.field = field

    def mul_basis(self, i, j):
        return self.table.get((i, j), {})

    def unit_index(self):
        for i in range(self.dim):
            if all(self.mul_basis(i, j) == {j: 1} for j in range(self.dim)):
                return i
        raise ValueError("no unit among basis elements")


def _clifford_sign(s, t, squares):
    """e_S e_T = sign * e_{S xor T} for generator squares ``squares``."""
    sign = 1
    # reorder: count pairs (i in S, j in T) with i > j
    bits_s = [i for i in range(len(squares)) if s >> i & 1]
    for i in bits_s:
        lower = t & ((1 << i) - 1)
        if bin(lower).count("1") % 2:
            sign = -sign
    both = s & t
    for i in range(len(squares)):
        if both >> i & 1:
            sign *= squares[i]
    return sign


def clifford(p, q, field="R"):
    """Cl_{p,q}: p odd generators squaring to +1 and q squaring to -1."""
    squares = [1] * p + [-1] * q
    n = p + q
    dim = 1 << n
    table = {}
    for s in range(dim):
        for t in range(dim):
            table[(s, t)] = {s ^ t: _clifford_sign(s, t, squares)}
    parity = [bin(s).count("1") % 2 for s in range(dim)]
    return SuperAlgebra(parity, table, [1 << i for i in range(n)], field)


def graded_tensor(a, b, field=None):
    """a (x) b with (x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy'."""
    db = b.dim
    parity = [a.parity[i] ^ b.parity[j] for i in range(a.dim) for j in range(db)]
    table = {}
    for i1 in range(a.dim):
        for j1 in range(db):
            for i2 in range(a.dim):
                pa = a.mul_basis(i1, i2)
                if not pa:
                    continue
                sign = -1 if (b.parity[j1] and a.parity[i2]) else 1
                for j2 in range(db):
                    pb = b.mul_basis(j1, j2)
                    if not pb:
                        continue
                    out = {}
                    for k, u in pa.items():
                        for l, v in pb.items():
                            out[k * db + l] = out.get(k * db + l, 0) + sign * u * v
                    table[(i1 * db + j1, i2 * db + j2)] = {
                        k: v for k, v in out.items() if v}
    ua, ub = a.unit_index(), b.unit_index()
    gens = [g * db + ub for g in a.generators] + [ua * db + g for g in b.generators]
    return SuperAlgebra(parity, table, gens, field or _join(a.field, b.field))


def _join(f1, f2):
    return "C" if "C" in (f1, f2) else "R"


def _mul(alg, x, y):
    out = {}
    for i, u in x.items():
        for j, v in y.items():
            for k, c in alg.mul_basis(i, j).items():
                out[k] = out.get(k, 0) + u * v * c
    return {k: v for k, v in out.items() if v}


def _twisted_centralizer(alg, parity, twisted):
    """Elements x of the given parity with x g = (-1)^{|g|} g x (twisted) or
    x g = g x (untwisted) for every generator g."""
    support = [i for i in range(alg.dim) if alg.parity[i] == parity]
    rows = {}
    for g in alg.generators:
        sign = -1 if (twisted and alg.parity[g]) else 1
        for col, i in enumerate(support):
            comm = _mul(alg, {i: 1}, {g: 1})
            for k, v in _mul(alg, {g: 1}, {i: 1}).items():
                comm[k] = comm.get(k, 0) - sign * v
            for k, v in comm.items():
                if v:
                    rows.setdefault((g, k), {})[col] = v
    return [{support[c]: v for c, v in vec.items()}
            for vec in sparse_nullspace(rows.values(), len(support))]


def center_dim(alg):
    """Dimension of the ungraded center."""
    return (len(_twisted_centralizer(alg, 0, False))
            + len(_twisted_centralizer(alg, 1, False)))


def _square_sign(alg, x):
    sq = _mul(alg, x, x)
    unit = alg.unit_index()
    if set(sq) != {unit}:
        raise ValueError("element does not square to a scalar")
    return 1 if sq[unit] > 0 else -1


def _trace_sign(alg, support):
    """Sign of the signature of the regular trace form on a subalgebra."""
    index = {i: k for k, i in enumerate(support)}
    trace = {}
    for k in support:
        t = sum(alg.mul_basis(k, i).get(i, 0) for i in support)
        if t:
            trace[k] = t
    gram = [[0] * len(support) for _ in support]
    for i in support:
        for j in support:
            v = sum(c * trace.get(k, 0) for k, c in alg.mul_basis(i, j).items())
            if v:
                gram[index[i]][index[j]] = v
    p, q, _ = signature(gram)
    return (p > q) - (p < q)


def invariants(alg):
    """(odd type?, sign of the discriminant, Brauer sign).

    Even type: the grading is inner, given by an even u with u x u^-1 =
    (-1)^|x| x; the discriminant is u^2 and the Brauer sign is that of the
    whole algebra.  Odd type: an odd central z exists; the discriminant is
    z^2 and the Brauer sign is that of the even part.
    """
    odd_center = _twisted_centralizer(alg, 1, False)
    if odd_center:
        disc = _square_sign(alg, odd_center[0])
        even = [i for i in range(alg.dim) if alg.parity[i] == 0]
        return (1, disc, _trace_sign(alg, even))
    grading = _twisted_centralizer(alg, 0, True)
    if len(grading) != 1:
        raise ValueError("not a central simple superalgebra")
    return (0, _square_sign(alg, grading[0]), _trace_sign(alg, range(alg.dim)))


_REFERENCE = {}


def _reference_table():
    if not _REFERENCE:
        for k in range(8):
            inv = invariants(clifford(0, k))
            if inv in _REFERENCE:
                raise AssertionError("invariants do not separate classes")
            _REFERENCE[inv] = Endotype.real(k)
    return _REFERENCE


def classify(alg):
    if alg.field == "C":
        return Endotype.complex(0 if center_dim(alg) == 1 else 1)
    inv = invariants(alg)
    table = _reference_table()
    if inv not in table:
        raise ValueError("unrecognized invariants %s" % (inv,))
    return table[inv]


def representative(e):
    """A small Clifford superalgebra in the class ``e``."""
    if not e.is_real:
        return clifford(e.index, 0, "C")
    k = e.index
    return clifford(0, k) if k <= 4 else clifford(8 - k, 0)


def oracle_product(d1, d2):
    return classify(graded_tensor(representative(d1), representative(d2)))
