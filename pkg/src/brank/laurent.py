"""Laurent polynomials in one variable eps, over an exact field.

Coefficients are duck-typed field elements: ``fractions.Fraction`` for Q, or
:class:`brank.qext.QElem` for a quadratic extension Q(alpha).  A polynomial is
a map {exponent: coefficient} with no zero coefficients stored; exponents may
be negative.  The valuation of a nonzero polynomial is its minimal exponent;
``val(0)`` is the sentinel ``+infinity`` (``Laurent.INF``).
"""

from __future__ import annotations

from fractions import Fraction


def _as_coeff(x):
    if isinstance(x, (int, str)):
        return Fraction(x)
    return x


class Laurent:
    """A Laurent polynomial sum_e c_e * eps^e."""

    __slots__ = ("coeffs",)

    INF = float("inf")

    def __init__(self, coeffs=None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                c = _as_coeff(c)
                if c != 0:
                    d[int(e)] = c
        self.coeffs = d

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def eps(cls, exponent=1, coeff=1):
        return cls({exponent: Fraction(coeff) if isinstance(coeff, (int, str)) else coeff})

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def val(self):
        """Minimal exponent, or +inf for the zero polynomial."""
        return min(self.coeffs) if self.coeffs else Laurent.INF

    def degree(self):
        return max(self.coeffs) if self.coeffs else -Laurent.INF

    def leading_at_val(self):
        """Coefficient at the valuation exponent (nonzero input required)."""
        return self.coeffs[min(self.coeffs)]

    def coeff(self, e):
        return self.coeffs.get(e, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(Fraction(other))
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items(), key=lambda t: t[0])))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
        res = Laurent.__new__(Laurent)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = Laurent.__new__(Laurent)
        res.coeffs = {e: -c for e, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Laurent()
            res = Laurent.__new__(Laurent)
            res.coeffs = {e: c * other for e, c in self.coeffs.items()}
            return res
        if not isinstance(other, Laurent):
            # scalar from an extension field
            if not other:
                return Laurent()
            res = Laurent.__new__(Laurent)
            res.coeffs = {e: c * other for e, c in self.coeffs.items()}
            return res
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                s = out.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                out[e] = s
        res = Laurent.__new__(Laurent)
        res.coeffs = {e: c for e, c in out.items() if c != 0}
        return res

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by eps^k."""
        res = Laurent.__new__(Laurent)
        res.coeffs = {e + k: c for e, c in self.coeffs.items()}
        return res

    def divmod_poly(self, other):
        """Long division by a nonzero Laurent polynomial.

        Both are shifted to valuation 0 first, so the quotient/remainder
        satisfy self = q*other + r with r of (shifted) degree < deg(other).
        """
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        sv = self.val() if self.coeffs else 0
        ov = other.val()
        a = self.shift(-sv) if self.coeffs else Laurent()
        b = other.shift(-ov)
        q = Laurent()
        bd = b.degree()
        blc = b.coeffs[bd]
        while a.coeffs and a.degree() >= bd:
            ad = a.degree()
            t = Laurent({ad - bd: a.coeffs[ad] / blc})
            q = q + t
            a = a - t * b
        return q.shift(sv - ov), a.shift(sv) if a.coeffs else Laurent()

    def exact_div(self, other):
        """Exact division; raises ValueError when not divisible."""
        q, r = self.divmod_poly(other)
        if not r.is_zero():
            raise ValueError("inexact Laurent division")
        return q

    def truncate_nonnegative(self):
        """Part with exponent >= 0."""
        return Laurent({e: c for e, c in self.coeffs.items() if e >= 0})

    def negative_part(self):
        return Laurent({e: c for e, c in self.coeffs.items() if e < 0})

    def at_zero(self):
        """Limit as eps -> 0; requires valuation >= 0."""
        if self.coeffs and self.val() < 0:
            raise ValueError("pole at eps = 0")
        return self.coeffs.get(0, Fraction(0))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"({c})*eps")
            else:
                parts.append(f"({c})*eps^{e}")
        return " + ".join(parts)


def laurent_matrix_val(rows):
    """Minimum valuation over all entries of a matrix of Laurent polynomials."""
    v = Laurent.INF
    for row in rows:
        for p in row:
            if p.coeffs:
                v = min(v, p.val())
    return v
