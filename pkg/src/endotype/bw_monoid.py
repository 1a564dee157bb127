"""The ten-element Brauer-Wall monoid, symmetry data and classification reports.

Also hosts exact signature computation for rational symmetric forms and
the Clifford-type endotype rule for modules whose highest-weight space is a
Clifford module.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .linalg import Echelon, rank as mat_rank
from .scalars import G, as_gaussian

__all__ = [
    "Endotype", "SymmetryDatum", "ClassificationReport", "SplitType",
    "bw_product", "table1_lookup", "table1_row", "report", "signature",
    "clifford_endotype", "clifford_endotype_from_signature", "DatumError",
    "real_fixed_basis", "PI", "B_PLUS", "B_MINUS", "PIB_PLUS", "PIB_MINUS",
]


class DatumError(ValueError):
    """A symmetry datum that matches no row of the dictionary."""


class Endotype(Enum):
    C0 = "0C"
    C1 = "1C"
    R0 = "0R"
    R1 = "1R"
    R2 = "2R"
    R3 = "3R"
    R4 = "4R"
    R5 = "5R"
    R6 = "6R"
    R7 = "7R"

    @property
    def is_real(self):
        return self.value[1] == "R"

    @property
    def index(self):
        return int(self.value[0])

    @classmethod
    def real(cls, k):
        return cls("%dR" % (k % 8))

    @classmethod
    def complex(cls, k):
        return cls("%dC" % (k % 2))

    @classmethod
    def parse(cls, text):
        try:
            return cls(text)
        except ValueError:
            raise ValueError("unknown endotype %r" % text)

    def __str__(self):
        return self.value

    def __mul__(self, other):
        return bw_product(self, other)


def bw_product(d1, d2):
    if d1.is_real and d2.is_real:
        return Endotype.real(d1.index + d2.index)
    return Endotype.complex(d1.index + d2.index)


# ------------------------------------------------------------ symmetry data

PI = "Pi"
B_PLUS = "B+"
B_MINUS = "B-"
PIB_PLUS = "PiB+"
PIB_MINUS = "PiB-"
_TOKENS = (PI, B_PLUS, B_MINUS, PIB_PLUS, PIB_MINUS)


class SymmetryDatum(frozenset):
    """Subset of {Pi, (B,+), (B,-), (PiB,+), (PiB,-)}."""

    def __new__(cls, items=()):
        items = frozenset(items)
        bad = items - set(_TOKENS)
        if bad:
            raise DatumError("unknown symmetry tokens %s" % sorted(bad))
        if {B_PLUS, B_MINUS} <= items or {PIB_PLUS, PIB_MINUS} <= items:
            raise DatumError("opposite signs for the same symmetry")
        return super().__new__(cls, items)

    def __str__(self):
        return "{%s}" % ",".join(t for t in _TOKENS if t in self)

    __repr__ = __str__


class SplitType(Enum):
    W_ITSELF = "W"
    V_PLUS_V = "V+V"
    W_PLUS_CONJUGATE = "W+B(W)"


@dataclass(frozen=True)
class _Row:
    divalg: str
    complexified: str
    e_of_v: str
    datum: frozenset
    real_dim: int


_TABLE = {
    Endotype.C0: _Row("C", "C + C", "W + B(W)", frozenset(), 2),
    Endotype.C1: _Row("Q(1), iota^2=1, iota.i=i.iota", "Q(1) + Q(1)",
                      "W + B(W)", frozenset({PI}), 4),
    Endotype.R0: _Row("R", "C", "W", frozenset({B_PLUS}), 1),
    Endotype.R1: _Row("R + R.iota, iota^2=-1", "Q(1)", "W",
                      frozenset({PI, B_PLUS, PIB_MINUS}), 2),
    Endotype.R2: _Row("C + C.iota, iota^2=-1, iota.i=-i.iota", "Mat(1|1)",
                      "W + B(W)", frozenset({PIB_MINUS}), 4),
    Endotype.R3: _Row("H + H.iota, iota^2=1", "Mat2(Q(1))", "W + B(W)",
                      frozenset({PI, B_MINUS, PIB_MINUS}), 8),
    Endotype.R4: _Row("H", "Mat2(C)", "W + B(W)", frozenset({B_MINUS}), 4),
    Endotype.R5: _Row("H + H.iota, iota^2=-1", "Mat2(Q(1))", "W + B(W)",
                      frozenset({PI, B_MINUS, PIB_PLUS}), 8),
    Endotype.R6: _Row("C + C.iota, iota^2=1, iota.i=-i.iota", "Mat(1|1)",
                      "W + B(W)", frozenset({PIB_PLUS}), 4),
    Endotype.R7: _Row("R + R.iota, iota^2=1", "Q(1)", "W",
                      frozenset({PI, B_PLUS, PIB_PLUS}), 2),
}


def table1_lookup(datum):
    datum = SymmetryDatum(datum)
    hits = [e for e, row in _TABLE.items() if row.datum == datum]
    if len(hits) != 1:
        raise DatumError("symmetry datum %s matches no row" % datum)
    return hits[0]


def table1_row(e):
    """(divalg, complexified wEnd, E(V), datum) for an endotype."""
    row = _TABLE[e]
    return {
        "endotype": e,
        "divalg": row.divalg,
        "complexified": row.complexified,
        "e_of_v": row.e_of_v,
        "datum": SymmetryDatum(row.datum),
        "real_dim": row.real_dim,
    }


@dataclass(frozen=True)
class ClassificationReport:
    endotype: Endotype
    divalg: str
    restriction_irreducible: bool
    splits_as: SplitType
    wend_complex: str
    real_dim: int


def report(e):
    row = _TABLE[e]
    if e in (Endotype.R0, Endotype.R1, Endotype.R7):
        split, irreducible = SplitType.V_PLUS_V, False
    elif not e.is_real:
        split, irreducible = SplitType.W_PLUS_CONJUGATE, True
    else:
        split, irreducible = SplitType.W_ITSELF, True
    return ClassificationReport(
        endotype=e,
        divalg=row.divalg,
        restriction_irreducible=irreducible,
        splits_as=split,
        wend_complex="C" if e.index % 2 == 0 else "Q(1)",
        real_dim=row.real_dim,
    )


# -------------------------------------------------------------- signatures

def _as_fraction(x):
    if isinstance(x, G):
        if x.im:
            raise ValueError("Gram matrix must be real")
        return x.re
    return Fraction(x)


def signature(gram):
    """(p, q, rank) of a rational symmetric matrix by congruence elimination."""
    a = [[_as_fraction(x) for x in row] for row in gram]
    n = len(a)
    for i in range(n):
        if len(a[i]) != n:
            raise ValueError("Gram matrix must be square")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("Gram matrix must be symmetric")
    p = q = 0
    live = list(range(n))
    while live:
        piv = next((i for i in live if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in live for j in live
                         if i != j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # row/column i += row/column j makes the diagonal 2*a[i][j]
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            p += 1
        else:
            q += 1
        live.remove(piv)
        col = [(k, a[k][piv]) for k in live if a[k][piv]]
        for k, f in col:
            r = f / d
            rowp = a[piv]
            rowk = a[k]
            for l in live:
                if rowp[l]:
                    rowk[l] -= r * rowp[l]
        for k in live:
            a[k][piv] = a[piv][k] = Fraction(0)
    return p, q, p + q


# --------------------------------------------------------------- Clifford

def clifford_endotype_from_signature(p, q):
    """Endotype of a Clifford module whose form has signature (p, q)."""
    return Endotype.real(q - p)


def real_fixed_basis(vectors, tau):
    """Real basis of the tau-fixed real span of the complex span of ``vectors``.

    ``tau`` maps a model element to a model element; elements are realified
    through their sparse coordinates.
    """
    keys = sorted({k for v in vectors for k in v.terms}
                  | {k for v in vectors for k in tau(v).terms})
    ech = Echelon(2 * len(keys))
    out = []
    for v in vectors:
        tv = tau(v)
        for cand in (v + tv, (v - tv).scale(G(0, 1))):
            if not cand:
                continue
            coords = []
            for k in keys:
                c = cand.get(*k)
                coords += [c.re, c.im]
            if ech.add(coords):
                out.append(cand)
    return out


def clifford_endotype(lam, tau, h_odd_basis, bracket_value=None):
    """Endotype for a Clifford-type highest-weight space.

    ``bracket_value(x, y)`` returns lambda([x, y]); by default the model's
    bracket and evaluation are used.
    """
    model = tau.model
    if bracket_value is None:
        from .algebra_model import superbracket

        def bracket_value(x, y):
            return model.evaluate(lam, superbracket(x, y))

    basis = list(h_odd_basis)
    if lam != tau.weight(lam):
        gram = [[bracket_value(x, y) for y in basis] for x in basis]
        return Endotype.complex(mat_rank(gram, len(basis)))
    real = real_fixed_basis(basis, tau)
    if len(real) != len(basis):
        raise ValueError("tau-fixed part of the odd Cartan has wrong dimension")
    gram = [[bracket_value(x, y) for y in real] for x in real]
    for row in gram:
        for v in row:
            if not as_gaussian(v).is_real():
                raise ArithmeticError("B_lambda is not real on the fixed space")
    p, q, _ = signature(gram)
    return clifford_endotype_from_signature(p, q)
