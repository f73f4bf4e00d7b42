"""Quadratic extension fields Q(alpha), alpha^2 + c1*alpha + c0 = 0.

Elements are pairs a + b*alpha with exact rational a, b.  Only one extension
is in play per certificate, so elements carry their (shared) minimal
polynomial and arithmetic asserts it matches.
"""

from __future__ import annotations

from fractions import Fraction


class QuadField:
    """Context for Q(alpha) with alpha^2 = -c0 - c1*alpha."""

    __slots__ = ("c0", "c1")

    def __init__(self, c0, c1):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        d = self.c1 * self.c1 - 4 * self.c0
        if _is_rational_square(d):
            raise ValueError("minimal polynomial is reducible over Q")

    def __eq__(self, other):
        return isinstance(other, QuadField) and (self.c0, self.c1) == (other.c0, other.c1)

    def __hash__(self):
        return hash((self.c0, self.c1))

    def __call__(self, a, b=0):
        return QElem(Fraction(a), Fraction(b), self)

    @property
    def alpha(self):
        return QElem(Fraction(0), Fraction(1), self)

    def minpoly_str(self):
        return f"alpha^2+({self.c1})*alpha+({self.c0})"

    def __repr__(self):
        return f"QuadField({self.minpoly_str()})"


def _is_rational_square(q):
    q = Fraction(q)
    if q < 0:
        return False
    from math import isqrt

    return isqrt(q.numerator) ** 2 == q.numerator and isqrt(q.denominator) ** 2 == q.denominator


class QElem:
    """a + b*alpha in a fixed QuadField."""

    __slots__ = ("a", "b", "field")

    def __init__(self, a, b, field):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.field = field

    def _coerce(self, other):
        if isinstance(other, QElem):
            if other.field != self.field:
                raise ValueError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QElem(Fraction(other), Fraction(0), self.field)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b, self.field))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QElem(self.a + o.a, self.b + o.b, self.field)

    __radd__ = __add__

    def __neg__(self):
        return QElem(-self.a, -self.b, self.field)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QElem(self.a - o.a, self.b - o.b, self.field)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        # (a1 + b1*al)(a2 + b2*al), al^2 = -c0 - c1*al
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        f = self.field
        return QElem(a1 * a2 - f.c0 * b1 * b2, a1 * b2 + b1 * a2 - f.c1 * b1 * b2, f)

    __rmul__ = __mul__

    def inverse(self):
        # conjugate: a + b*alphabar with alpha + alphabar = -c1, alpha*alphabar = c0
        # norm(a + b*alpha) = a^2 - c1*a*b + c0*b^2
        f = self.field
        n = self.a * self.a - f.c1 * self.a * self.b + f.c0 * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("zero element in quadratic field")
        # (a + b*alpha)^{-1} = (a - c1*b - b*alpha)/n
        return QElem((self.a - f.c1 * self.b) / n, -self.b / n, f)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"({self.b})*alpha"
        return f"{self.a}+({self.b})*alpha"


def coeff_to_json(x):
    """JSON form: 'p/q' for rationals, ['p/q', 'r/s'] for a + b*alpha."""
    if isinstance(x, QElem):
        return [str(x.a), str(x.b)]
    return str(x)


def coeff_from_json(v, field=None):
    if isinstance(v, list):
        if field is None:
            raise ValueError("quadratic coefficient without a field")
        return field(Fraction(v[0]), Fraction(v[1]))
    return Fraction(v)
