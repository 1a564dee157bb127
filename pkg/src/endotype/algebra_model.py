"""Matrix models of gl(m|n), sl(m|n), psl(m|n), q(n) and gl(n).

Every model lives inside an ambient gl(N) of supermatrices whose first
``even_dim`` indices are even.  Elements are sparse maps from index pairs
to Gaussian rationals.  Roots are integer vectors in epsilon/delta
coordinates; Borel subalgebras of type A are encoded by shuffle words over
the letters ``e`` (epsilon) and ``d`` (delta).
"""

import re
from enum import Enum

from .scalars import ZERO, ONE, as_gaussian

__all__ = [
    "Family", "Element", "AlgebraModel", "Weight", "Root", "BorelShuffle",
    "build_algebra", "superbracket", "fundamental_system", "odd_reflection",
    "shifted_highest_weight", "sl22_shift", "ModelError", "is_sl22_like",
    "dominance_warnings", "sl22_partner", "order_from_positive",
]


class ModelError(ValueError):
    """Unsupported model, malformed Borel word, or misuse of an operation."""


class Family(Enum):
    GL = "gl"
    SL = "sl"
    PSL = "psl"
    Q = "q"
    REDUCTIVE = "reductive_gl"


# ---------------------------------------------------------------- elements

class Element:
    """Sparse supermatrix {(row, col): coefficient} in an ambient gl(N)."""

    __slots__ = ("terms", "even_dim")

    def __init__(self, terms, even_dim):
        self.terms = {k: v for k, v in terms.items() if v}
        self.even_dim = even_dim

    @classmethod
    def unit(cls, a, b, even_dim, coeff=ONE):
        return cls({(a, b): as_gaussian(coeff)}, even_dim)

    def index_parity(self, a):
        return 0 if a < self.even_dim else 1

    def parities(self):
        return {self.index_parity(a) ^ self.index_parity(b) for a, b in self.terms}

    @property
    def parity(self):
        """0 or 1 for homogeneous elements, None otherwise (0 for zero)."""
        ps = self.parities()
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def homogeneous_parts(self):
        even = {k: v for k, v in self.terms.items()
                if self.index_parity(k[0]) == self.index_parity(k[1])}
        odd = {k: v for k, v in self.terms.items() if k not in even}
        return Element(even, self.even_dim), Element(odd, self.even_dim)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return Element(out, self.even_dim)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element({k: -v for k, v in self.terms.items()}, self.even_dim)

    def scale(self, c):
        c = as_gaussian(c)
        return Element({k: v * c for k, v in self.terms.items()}, self.even_dim)

    def __rmul__(self, c):
        return self.scale(c)

    def matmul(self, other):
        rows = {}
        for (a, b), v in other.terms.items():
            rows.setdefault(a, []).append((b, v))
        out = {}
        for (a, b), u in self.terms.items():
            for c, v in rows.get(b, ()):
                out[(a, c)] = out.get((a, c), ZERO) + u * v
        return Element(out, self.even_dim)

    def conj_entries(self):
        return Element({k: v.conjugate() for k, v in self.terms.items()},
                       self.even_dim)

    def get(self, a, b):
        return self.terms.get((a, b), ZERO)

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), v in sorted(self.terms.items()):
            parts.append("(%s)E%d,%d" % (v, a + 1, b + 1))
        return " + ".join(parts)


def superbracket(x, y):
    """[x, y] = xy - (-1)^{|x||y|} yx, extended bilinearly."""
    if x.even_dim != y.even_dim:
        raise ModelError("elements of different models")
    out = Element({}, x.even_dim)
    for xp in x.homogeneous_parts():
        if not xp:
            continue
        for yp in y.homogeneous_parts():
            if not yp:
                continue
            sign = -1 if (xp.parity and yp.parity) else 1
            out = out + xp.matmul(yp) - yp.matmul(xp).scale(sign)
    return out


# ------------------------------------------------------------------ weights

class Weight:
    """Coefficient vector of a weight on the diagonal Cartan.

    For type A models the coordinates are (eps_1..eps_m | delta_1..delta_n),
    i.e. the values on E_11, ..., E_NN.  For q(n) there are n coordinates.
    """

    __slots__ = ("coeffs", "split")

    def __init__(self, coeffs, split=None):
        self.coeffs = tuple(as_gaussian(c) for c in coeffs)
        self.split = len(self.coeffs) if split is None else split

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def eps(self):
        return self.coeffs[:self.split]

    @property
    def delta(self):
        return self.coeffs[self.split:]

    def _lift(self, other):
        if isinstance(other, Root):
            return other.vec
        if isinstance(other, Weight):
            return other.coeffs
        return tuple(other)

    def __add__(self, other):
        o = self._lift(other)
        return Weight([a + b for a, b in zip(self.coeffs, o)], self.split)

    def __sub__(self, other):
        o = self._lift(other)
        return Weight([a - b for a, b in zip(self.coeffs, o)], self.split)

    def __neg__(self):
        return Weight([-a for a in self.coeffs], self.split)

    def scale(self, c):
        return Weight([a * c for a in self.coeffs], self.split)

    def conjugate(self):
        return Weight([a.conjugate() for a in self.coeffs], self.split)

    def permute(self, perm):
        """Weight mu with mu[perm[j]] = self[j]."""
        out = [None] * len(self.coeffs)
        for j, pj in enumerate(perm):
            out[pj] = self.coeffs[j]
        return Weight(out, self.split)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        e = ", ".join(str(c) for c in self.eps)
        d = ", ".join(str(c) for c in self.delta)
        if self.split == len(self.coeffs):
            return "(%s)" % e
        return "(%s | %s)" % (e, d)

    __repr__ = __str__


# -------------------------------------------------------------------- roots

class Root:
    """Integer vector in eps/delta coordinates.

    ``even_dim`` fixes which coordinates are delta's; parity and isotropy
    are derived from it with the form (eps_i, eps_j) = delta_ij,
    (delta_i, delta_j) = -delta_ij.
    """

    __slots__ = ("vec", "even_dim")

    def __init__(self, vec, even_dim):
        self.vec = tuple(int(c) for c in vec)
        self.even_dim = even_dim

    @classmethod
    def difference(cls, a, b, size, even_dim):
        v = [0] * size
        v[a] += 1
        v[b] -= 1
        return cls(v, even_dim)

    @property
    def parity(self):
        return sum(self.vec[self.even_dim:]) % 2

    def inner(self, other):
        m = self.even_dim
        return (sum(x * y for x, y in zip(self.vec[:m], other.vec[:m]))
                - sum(x * y for x, y in zip(self.vec[m:], other.vec[m:])))

    @property
    def isotropic(self):
        return self.parity == 1 and self.inner(self) == 0

    def pair(self):
        """(a, b) with self = char_a - char_b, or None."""
        pos = [k for k, c in enumerate(self.vec) if c == 1]
        neg = [k for k, c in enumerate(self.vec) if c == -1]
        if len(pos) == 1 and len(neg) == 1 and sum(map(abs, self.vec)) == 2:
            return pos[0], neg[0]
        return None

    def __neg__(self):
        return Root([-c for c in self.vec], self.even_dim)

    def __add__(self, other):
        return Root([a + b for a, b in zip(self.vec, other.vec)], self.even_dim)

    def __sub__(self, other):
        return Root([a - b for a, b in zip(self.vec, other.vec)], self.even_dim)

    def __eq__(self, other):
        return isinstance(other, Root) and self.vec == other.vec

    def __hash__(self):
        return hash(self.vec)

    def label(self):
        m = self.even_dim
        names = ["e%d" % (k + 1) for k in range(m)]
        names += ["d%d" % (k + 1) for k in range(len(self.vec) - m)]
        out = ""
        for name, c in zip(names, self.vec):
            if not c:
                continue
            sign = "+" if c > 0 else "-"
            mag = "" if abs(c) == 1 else str(abs(c))
            out += sign + mag + name
        return out.lstrip("+") or "0"

    __repr__ = label
    __str__ = label


# ------------------------------------------------------------------ borels

_WORD = re.compile(r"^[ed]+$")


class BorelShuffle:
    """Borel subalgebra of gl(m|n) containing the diagonal and the standard
    even Borel, encoded by a word in ``e``/``d``.

    The k-th ``e`` stands for eps_k and the k-th ``d`` for delta_k; letters
    earlier in the word are higher.
    """

    __slots__ = ("word", "m", "n")

    def __init__(self, word, m=None, n=None):
        if not _WORD.match(word or ""):
            raise ModelError("shuffle word must match [ed]+: %r" % word)
        me, nd = word.count("e"), word.count("d")
        if m is not None and (m, n) != (me, nd):
            raise ModelError("word %r does not have %d e's and %d d's"
                             % (word, m, n))
        self.word = word
        self.m, self.n = me, nd

    @classmethod
    def standard(cls, m, n):
        return cls("e" * m + "d" * n)

    def order(self):
        """Ambient indices listed from highest to lowest."""
        out, ke, kd = [], 0, 0
        for ch in self.word:
            if ch == "e":
                out.append(ke)
                ke += 1
            else:
                out.append(self.m + kd)
                kd += 1
        return out

    def positive_roots(self):
        seq = self.order()
        size = self.m + self.n
        return [Root.difference(seq[i], seq[j], size, self.m)
                for i in range(len(seq)) for j in range(i + 1, len(seq))]

    def __eq__(self, other):
        return isinstance(other, BorelShuffle) and self.word == other.word

    def __hash__(self):
        return hash(self.word)

    def __repr__(self):
        return "BorelShuffle(%r)" % self.word


def fundamental_system(b):
    """Simple roots of a shuffle Borel: adjacent differences in word order."""
    seq = b.order()
    size = b.m + b.n
    return tuple(Root.difference(seq[i], seq[i + 1], size, b.m)
                 for i in range(len(seq) - 1))


def odd_reflection(simple, alpha):
    """Fundamental system after the odd reflection at an isotropic simple root."""
    simple = tuple(simple)
    if alpha not in simple:
        raise ModelError("%s is not simple" % alpha)
    if not alpha.isotropic:
        raise ModelError("%s is not isotropic" % alpha)
    out = []
    for beta in simple:
        if beta == alpha:
            out.append(-alpha)
        elif beta.inner(alpha) == 0:
            out.append(beta)
        else:
            out.append(beta + alpha)
    return tuple(out)


def order_from_positive(positive, size):
    """Total order (highest first) of indices for a type-A positive system."""
    above = {a: set() for a in range(size)}
    for r in positive:
        p = r.pair()
        if p is None:
            raise ModelError("not a type-A root: %s" % r)
        above[p[1]].add(p[0])
    seq = sorted(range(size), key=lambda a: len(above[a]))
    for i, a in enumerate(seq):
        if above[a] != set(seq[:i]):
            raise ModelError("positive system is not a total order")
    return seq


# ------------------------------------------------------------------- models

class AlgebraModel:
    """A matrix model with its basis, Cartan subalgebra and root data."""

    def __init__(self, family, m, n):
        self.family = family
        if family is Family.Q:
            if n < 1:
                raise ModelError("q(n) needs n >= 1")
            self.m, self.n = n, n
            self.rank = n
            self.even_dim = n
            self.size = 2 * n
            self.weight_dim = n
        else:
            if family is Family.REDUCTIVE:
                n = 0
            if m < 0 or n < 0 or m + n < 1:
                raise ModelError("unsupported size (%d|%d)" % (m, n))
            if family in (Family.SL, Family.PSL) and m + n < 2:
                raise ModelError("unsupported size (%d|%d)" % (m, n))
            self.m, self.n = m, n
            self.rank = m + n
            self.even_dim = m
            self.size = m + n
            self.weight_dim = m + n
        self._basis = None

    # naming
    @property
    def name(self):
        if self.family is Family.Q:
            return "q(%d)" % self.n
        if self.family is Family.REDUCTIVE:
            return "gl(%d)" % self.m
        return "%s(%d|%d)" % (self.family.value, self.m, self.n)

    def __repr__(self):
        return "AlgebraModel(%s)" % self.name

    def __eq__(self, other):
        return (isinstance(other, AlgebraModel) and self.family == other.family
                and (self.m, self.n) == (other.m, other.n))

    def __hash__(self):
        return hash((self.family, self.m, self.n))

    @property
    def is_q(self):
        return self.family is Family.Q

    @property
    def is_type_a(self):
        return not self.is_q

    # elements
    def unit(self, a, b, coeff=ONE):
        return Element.unit(a, b, self.even_dim, coeff)

    def zero(self):
        return Element({}, self.even_dim)

    def index_parity(self, a):
        return 0 if a < self.even_dim else 1

    def basis(self):
        """List of (label, element)."""
        if self._basis is None:
            out = []
            if self.is_q:
                n = self.n
                for i in range(n):
                    for j in range(n):
                        out.append(("A[%d,%d]" % (i + 1, j + 1),
                                    self.unit(i, j) + self.unit(n + i, n + j)))
                for i in range(n):
                    for j in range(n):
                        out.append(("B[%d,%d]" % (i + 1, j + 1),
                                    self.unit(i, n + j) + self.unit(n + i, j)))
            else:
                for a in range(self.size):
                    for b in range(self.size):
                        out.append(("E[%d,%d]" % (a + 1, b + 1), self.unit(a, b)))
            self._basis = out
        return self._basis

    def parity_of(self, x):
        return x.parity

    def bracket(self, x, y):
        return superbracket(x, y)

    def contains(self, x):
        """Membership test in the ambient model (q(n) shape check)."""
        if not self.is_q:
            return True
        n = self.n
        for (a, b), v in x.terms.items():
            a2, b2 = (a + n) % (2 * n), (b + n) % (2 * n)
            if x.get(a2, b2) != v:
                return False
        return True

    def coordinates(self, x):
        """Coefficients of x in ``basis()`` order."""
        if not self.contains(x):
            raise ModelError("element is not in %s" % self.name)
        if self.is_q:
            n = self.n
            return ([x.get(i, j) for i in range(n) for j in range(n)]
                    + [x.get(i, n + j) for i in range(n) for j in range(n)])
        return [x.get(a, b) for a in range(self.size) for b in range(self.size)]

    # cartan
    def cartan(self):
        """Basis of the even Cartan subalgebra (one element per coordinate)."""
        if self.is_q:
            n = self.n
            return [self.unit(i, i) + self.unit(n + i, n + i) for i in range(n)]
        return [self.unit(a, a) for a in range(self.size)]

    def odd_cartan(self):
        if not self.is_q:
            return []
        n = self.n
        return [self.unit(i, n + i) + self.unit(n + i, i) for i in range(n)]

    def cartan_coordinates(self, h):
        """Coordinates of an even Cartan element in ``cartan()`` basis."""
        if self.is_q:
            return [h.get(i, i) for i in range(self.n)]
        return [h.get(a, a) for a in range(self.size)]

    def evaluate(self, weight, h):
        """lambda(h) for h in the even Cartan."""
        return sum((c * x for c, x in zip(weight.coeffs,
                                          self.cartan_coordinates(h))), ZERO)

    def weight(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != self.weight_dim:
            raise ModelError("%s weights have %d coordinates, got %d"
                             % (self.name, self.weight_dim, len(coeffs)))
        split = self.n if self.is_q else self.m
        return Weight(coeffs, split)

    def str_vector(self):
        """The supertrace functional (1..1 | -1..-1)."""
        return Weight([1] * self.m + [-1] * self.n, self.m)

    def weights_equal(self, lam, mu):
        """Equality in the dual of this model's Cartan."""
        diff = lam - mu
        if self.family in (Family.SL, Family.PSL):
            c = diff[0] if self.m else -diff[self.m]
            return all(d == c * s for d, s in zip(diff, self.str_vector()))
        return all(not d for d in diff)

    def weight_on_identity(self, lam):
        return sum(lam.coeffs, ZERO)

    # roots
    def roots(self):
        """All roots of the even part and odd part (as type-A differences)."""
        size = self.weight_dim
        return [Root.difference(a, b, size, self.even_dim if self.is_type_a else size)
                for a in range(size) for b in range(size) if a != b]

    def root_vector(self, alpha):
        """Fixed root vector: E_ab for alpha = char_a - char_b (even part for q(n))."""
        p = alpha.pair()
        if p is None:
            raise ModelError("not a root: %s" % alpha)
        a, b = p
        if self.is_q:
            n = self.n
            return self.unit(a, b) + self.unit(n + a, n + b)
        return self.unit(a, b)

    def odd_root_vector(self, alpha):
        if not self.is_q:
            return self.root_vector(alpha)
        a, b = alpha.pair()
        n = self.n
        return self.unit(a, n + b) + self.unit(n + a, b)

    def coroot_element(self, alpha):
        """h_alpha = [e_alpha, e_{-alpha}]."""
        return superbracket(self.root_vector(alpha), self.root_vector(-alpha))

    def root_of(self, x):
        """The root alpha with x in g_alpha, or None for Cartan/inhomogeneous."""
        found = None
        for (a, b) in x.terms:
            if self.is_q:
                n = self.n
                a, b = a % n, b % n
            if a == b:
                return None
            r = Root.difference(a, b, self.weight_dim,
                                self.even_dim if self.is_type_a else self.weight_dim)
            if found is not None and found != r:
                return None
            found = r
        return found

    def standard_borel(self):
        if self.is_q:
            return BorelShuffle("e" * self.n)
        return BorelShuffle.standard(self.m, self.n)

    def check_borel(self, b):
        if self.is_q:
            if b.word != "e" * self.n:
                raise ModelError("q(n) accepts only the standard Borel")
            return
        if (b.m, b.n) != (self.m, self.n):
            raise ModelError("word %r does not fit %s" % (b.word, self.name))
        if is_sl22_like(self) and b.word not in ("edde", "deed"):
            raise ModelError("for %s only the words edde and deed give Borel "
                             "subalgebras with a root decomposition" % self.name)


def build_algebra(family, m=0, n=0):
    """Construct a model; ``family`` may be a Family or its string value."""
    if isinstance(family, str):
        try:
            family = Family(family.lower())
        except ValueError:
            raise ModelError("unknown family %r" % family)
    if family is Family.Q:
        n = n or m
        return AlgebraModel(family, n, n)
    return AlgebraModel(family, m, n)


def is_sl22_like(model):
    return model.family in (Family.SL, Family.PSL) and (model.m, model.n) == (2, 2)


def dominance_warnings(model, lam):
    """Advisory messages when lam is not dominant integral for the even part.

    The engine classifies formal highest weights; these warnings only flag
    weights that do not come from a finite-dimensional module.
    """
    out = []
    if model.is_q:
        blocks = [list(range(model.n))]
    else:
        blocks = [list(range(model.m)), list(range(model.m, model.size))]
    for blk in blocks:
        for a, b in zip(blk, blk[1:]):
            d = lam[a] - lam[b]
            # for the delta block the even Borel uses the same order
            if not d.is_integer() or d.re < 0:
                out.append("coordinate difference %s between positions %d and %d "
                           "is not a non-negative integer" % (d, a + 1, b + 1))
    return out


# --------------------------------------------------------- weight shifting

def shifted_highest_weight(lam, alpha, model):
    """Highest weight after the odd reflection at ``alpha``."""
    if is_sl22_like(model):
        raise ModelError("use sl22_shift for %s" % model.name)
    if not alpha.isotropic:
        raise ModelError("%s is not isotropic" % alpha)
    if not model.evaluate(lam, model.coroot_element(alpha)):
        return lam
    return lam - alpha


def sl22_partner(alpha):
    """The second root of gl(2|2) restricting to ``alpha`` on sl(2|2)."""
    a, b = alpha.pair()
    if a < 2:       # eps_a - delta_b  ->  delta_b' - eps_a'
        return Root.difference(5 - b, 1 - a, 4, 2)
    return Root.difference(1 - b, 5 - a, 4, 2)


def sl22_shift(lam, alpha1, model):
    """Highest weight across the sl(2|2) odd reflection at ``alpha1``.

    Returns (new weight, rank, lowering recipe), where the recipe lists the
    roots whose negative root vectors produce the new highest weight vector.
    """
    if not is_sl22_like(model):
        raise ModelError("sl22_shift applies to sl(2|2) and psl(2|2) only")
    if not alpha1.isotropic:
        raise ModelError("%s is not isotropic" % alpha1)
    pair = (alpha1, sl22_partner(alpha1))
    nonzero = [g for g in pair if model.evaluate(lam, model.coroot_element(g))]
    rank = len(nonzero)
    if model.family is Family.PSL and rank == 1:
        raise ModelError("rank one cannot occur for psl(2|2); weight violates "
                         "lambda(I) = 0")
    return lam - Weight([rank * c for c in alpha1.vec], lam.split), rank, tuple(nonzero)
