"""PBW normal forms in U(gl(m|n)) and the Harish-Chandra projection.

Generators are the elementary matrices E_ab, written as index pairs.  The
PBW order attached to a Borel is: negative root vectors (by height, then
lexicographically), then the Cartan E_jj, then positive root vectors.  A
monomial is a non-decreasing tuple of generators in which odd generators
occur at most once.
"""

from fractions import Fraction
from functools import lru_cache

from .algebra_model import BorelShuffle, Element, Weight
from .scalars import ZERO, ONE, as_gaussian

__all__ = [
    "PBWEngine", "PBWElement", "CartanPolynomial", "straighten",
    "hc_projection", "evaluate_at_weight", "pbw_engine",
]


class PBWEngine:
    """Straightening rules for U(gl(m|n)) relative to one shuffle Borel."""

    def __init__(self, m, n, word):
        self.m, self.n = m, n
        self.size = m + n
        self.borel = BorelShuffle(word, m, n)
        pos = {a: k for k, a in enumerate(self.borel.order())}
        keys = {}
        for a in range(self.size):
            for b in range(self.size):
                height = pos[b] - pos[a]
                if height < 0:
                    keys[(a, b)] = (0, -height, a, b)
                elif height == 0:
                    keys[(a, b)] = (1, 0, a, b)
                else:
                    keys[(a, b)] = (2, height, a, b)
        ordered = sorted(keys, key=keys.get)
        self.rank = {g: k for k, g in enumerate(ordered)}
        self.generators = ordered
        self._memo = {}

    def is_odd(self, g):
        return (g[0] < self.m) != (g[1] < self.m)

    def is_cartan(self, g):
        return g[0] == g[1]

    def bracket(self, x, y):
        """[E_ab, E_cd] as a list of (generator, coefficient)."""
        (a, b), (c, d) = x, y
        out = {}
        if b == c:
            out[(a, d)] = out.get((a, d), 0) + 1
        if d == a:
            sign = -1 if (self.is_odd(x) and self.is_odd(y)) else 1
            out[(c, b)] = out.get((c, b), 0) - sign
        return [(g, c) for g, c in out.items() if c]

    def normal_form(self, word):
        """dict monomial -> coefficient for the product of generators ``word``."""
        word = tuple(word)
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        rank = self.rank
        k = None
        for j in range(len(word) - 1):
            x, y = word[j], word[j + 1]
            if rank[x] > rank[y] or (x == y and self.is_odd(x)):
                k = j
                break
        if k is None:
            result = {word: ONE}
        else:
            x, y = word[k], word[k + 1]
            head, tail = word[:k], word[k + 2:]
            result = {}
            if x == y:
                # odd square: x^2 = [x, x] / 2
                for g, c in self.bracket(x, x):
                    _accumulate(result, self.normal_form(head + (g,) + tail),
                                Fraction(c, 2))
            else:
                sign = -1 if (self.is_odd(x) and self.is_odd(y)) else 1
                _accumulate(result, self.normal_form(head + (y, x) + tail), sign)
                for g, c in self.bracket(x, y):
                    _accumulate(result, self.normal_form(head + (g,) + tail), c)
        self._memo[word] = result
        return result

    def element(self, terms):
        return PBWElement(terms, self)


@lru_cache(maxsize=64)
def pbw_engine(m, n, word):
    return PBWEngine(m, n, word)


def _accumulate(target, source, coeff):
    for mono, c in source.items():
        v = target.get(mono, ZERO) + c * coeff
        if v:
            target[mono] = v
        else:
            target.pop(mono, None)


class PBWElement:
    """Linear combination of PBW monomials."""

    __slots__ = ("terms", "engine")

    def __init__(self, terms, engine):
        self.terms = {k: as_gaussian(v) for k, v in terms.items() if v}
        self.engine = engine

    @classmethod
    def scalar(cls, c, engine):
        return cls({(): as_gaussian(c)}, engine)

    @classmethod
    def from_element(cls, x, engine):
        out = {}
        for (a, b), v in x.terms.items():
            _accumulate(out, engine.normal_form(((a, b),)), v)
        return cls(out, engine)

    def __add__(self, other):
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return PBWElement(out, self.engine)

    def __sub__(self, other):
        out = dict(self.terms)
        _accumulate(out, other.terms, -ONE)
        return PBWElement(out, self.engine)

    def scale(self, c):
        return PBWElement({k: v * as_gaussian(c) for k, v in self.terms.items()},
                          self.engine)

    def __mul__(self, other):
        out = {}
        nf = self.engine.normal_form
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _accumulate(out, nf(m1 + m2), c1 * c2)
        return PBWElement(out, self.engine)

    def __eq__(self, other):
        return isinstance(other, PBWElement) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def exponents(self, mono):
        """Exponent vector of a monomial over ``engine.generators``."""
        vec = [0] * len(self.engine.generators)
        for g in mono:
            vec[self.engine.rank[g]] += 1
        return tuple(vec)

    def max_cartan_degree(self):
        return max((sum(1 for g in mono if g[0] == g[1]) for mono in self.terms),
                   default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items(),
                              key=lambda t: [self.engine.rank[g] for g in t[0]]):
            word = "".join("E%d%d" % (a + 1, b + 1) for a, b in mono) or "1"
            parts.append("(%s)%s" % (c, word))
        return " + ".join(parts)


def straighten(factors, borel, model=None):
    """PBW normal form of the ordered product of model elements."""
    if isinstance(borel, PBWEngine):
        engine = borel
    else:
        engine = pbw_engine(borel.m, borel.n, borel.word)
    out = PBWElement.scalar(ONE, engine)
    for x in factors:
        if isinstance(x, Element):
            x = PBWElement.from_element(x, engine)
        out = out * x
    return out


class CartanPolynomial:
    """Polynomial in E_11, ..., E_NN: exponent tuple -> coefficient."""

    __slots__ = ("terms", "size")

    def __init__(self, terms, size):
        self.terms = {k: as_gaussian(v) for k, v in terms.items() if v}
        self.size = size

    @classmethod
    def constant(cls, c, size):
        return cls({(0,) * size: c}, size)

    @classmethod
    def linear(cls, coeffs, const=0, size=None):
        """sum_j coeffs[j] E_jj + const."""
        size = len(coeffs) if size is None else size
        terms = {}
        for j, c in enumerate(coeffs):
            if c:
                e = [0] * size
                e[j] = 1
                terms[tuple(e)] = c
        if const:
            terms[(0,) * size] = const
        return cls(terms, size)

    def __add__(self, other):
        out = dict(self.terms)
        _accumulate(out, other.terms, ONE)
        return CartanPolynomial(out, self.size)

    def __sub__(self, other):
        out = dict(self.terms)
        _accumulate(out, other.terms, -ONE)
        return CartanPolynomial(out, self.size)

    def __mul__(self, other):
        if not isinstance(other, CartanPolynomial):
            return CartanPolynomial({k: v * as_gaussian(other)
                                     for k, v in self.terms.items()}, self.size)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                _accumulate(out, {e: c1 * c2}, ONE)
        return CartanPolynomial(out, self.size)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, CartanPolynomial) and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, lam):
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(lam, e):
                if k:
                    v = v * as_gaussian(x) ** k
            total = total + v
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "".join("E%d%d" % (j + 1, j + 1) + ("^%d" % k if k > 1 else "")
                           for j, k in enumerate(e) if k)
            parts.append("(%s)%s" % (c, mono) if mono else "(%s)" % c)
        return " + ".join(parts)


def hc_projection(u):
    """Keep the monomials built only from Cartan generators."""
    size = u.engine.size
    out = {}
    for mono, c in u.terms.items():
        if all(a == b for a, b in mono):
            e = [0] * size
            for a, _ in mono:
                e[a] += 1
            e = tuple(e)
            out[e] = out.get(e, ZERO) + c
    return CartanPolynomial(out, size)


def evaluate_at_weight(p, lam):
    """Substitute lam(E_jj) for E_jj."""
    coeffs = lam.coeffs if isinstance(lam, Weight) else lam
    return p.evaluate(coeffs)
