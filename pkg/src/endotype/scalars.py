"""Exact Gaussian rationals a + b*i with a, b in Q."""

import re
from fractions import Fraction

__all__ = ["GaussianRational", "G", "ZERO", "ONE", "I", "as_gaussian"]

_F0 = Fraction(0)
_INT = r"\d+(?:/\d+)?"
_LITERAL = re.compile(
    r"^(?P<re>[+-]?" + _INT + r")(?:(?P<sign>[+-])(?P<im>" + _INT + r")i)?$"
)


class GaussianRational:
    """Immutable element of Q(i).

    Both parts are stored as reduced ``Fraction`` objects, so equality and
    hashing are exact.
    """

    __slots__ = ("re", "im", "_hash")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)
        self._hash = None

    # construction helpers
    @classmethod
    def parse(cls, text):
        """Parse ``[+-]INT(/INT)?([+-]INT(/INT)?i)?``; surrounding blanks allowed."""
        m = _LITERAL.match(text.strip())
        if m is None:
            raise ValueError("not a Gaussian rational literal: %r" % text)
        im = Fraction(0)
        if m.group("im") is not None:
            im = Fraction(m.group("im"))
            if m.group("sign") == "-":
                im = -im
        return cls(Fraction(m.group("re")), im)

    # predicates
    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # arithmetic
    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """|z|^2 as a Fraction."""
        return self.re * self.re + self.im * self.im

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return other
        if not self.im and not other.im:
            return GaussianRational(self.re + other.re, _F0)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        other = as_gaussian(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        # most values met in practice are real
        if not b:
            return GaussianRational(a * c, a * d if d else _F0)
        if not d:
            return GaussianRational(a * c, b * c)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers are exact")
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = ONE
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparisons
    def __eq__(self, other):
        other = as_gaussian(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.re, self.im))
        return self._hash

    def sign(self):
        """Sign of a real value: -1, 0 or 1."""
        if self.im:
            raise ValueError("sign of a non-real number %s" % self)
        return (self.re > 0) - (self.re < 0)

    def is_integer(self):
        return not self.im and self.re.denominator == 1

    # formatting
    def __str__(self):
        out = _fmt(self.re)
        if self.im:
            mag = _fmt(abs(self.im))
            out += ("-" if self.im < 0 else "+") + mag + "i"
        return out

    def __repr__(self):
        return "G(%s)" % self


def _fmt(q):
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def as_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return GaussianRational.parse(x)
    return NotImplemented


G = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
