"""Multivariate polynomials over Q with a fixed degrevlex term order.

A ring is just a tuple of variable names; monomials are exponent tuples of
that length.  Term order is degree-reverse-lexicographic with respect to the
declared variable order, which keeps Groebner bases and leading monomials
reproducible.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def degrevlex_key(mono):
    """Sort key: larger key = larger monomial in degrevlex."""
    # deg first; ties broken by the *smallest* trailing exponent being larger,
    # i.e. reverse lexicographic on reversed exponents with flipped sign.
    return (sum(mono), tuple(-e for e in reversed(mono)))


def mono_mul(m1, m2):
    return tuple(a + b for a, b in zip(m1, m2))


def mono_divides(m1, m2):
    return all(a <= b for a, b in zip(m1, m2))


def mono_div(m1, m2):
    return tuple(a - b for a, b in zip(m1, m2))


def mono_lcm(m1, m2):
    return tuple(max(a, b) for a, b in zip(m1, m2))


def mono_coprime(m1, m2):
    return all(a == 0 or b == 0 for a, b in zip(m1, m2))


class MPoly:
    """Polynomial over Q in the ring given by ``vars`` (a tuple of names)."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        self.vars = tuple(vars)
        d = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c) if isinstance(c, (int, str)) else c
                if c != 0:
                    d[tuple(m)] = c
        self.terms = d

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars)

    @classmethod
    def const(cls, vars, c):
        return cls(vars, {tuple([0] * len(vars)): Fraction(c)})

    @classmethod
    def var(cls, vars, name, coeff=1):
        i = vars.index(name)
        m = [0] * len(vars)
        m[i] = 1
        return cls(vars, {tuple(m): Fraction(coeff)})

    @classmethod
    def var_index(cls, vars, i, coeff=1):
        m = [0] * len(vars)
        m[i] = 1
        return cls(vars, {tuple(m): Fraction(coeff)})

    @classmethod
    def linear(cls, vars, coeffs):
        """sum coeffs[i] * vars[i]."""
        t = {}
        for i, c in enumerate(coeffs):
            if c != 0:
                m = [0] * len(vars)
                m[i] = 1
                t[tuple(m)] = Fraction(c)
        return cls(vars, t)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(sum(m) == 0 for m in self.terms)

    def constant_value(self):
        return self.terms.get(tuple([0] * len(self.vars)), ZERO)

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def support_vars(self):
        """Indices of variables that occur."""
        out = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(i)
        return out

    # -- ordering -----------------------------------------------------------

    def leading_monomial(self):
        return max(self.terms, key=degrevlex_key)

    def leading_coeff(self):
        return self.terms[self.leading_monomial()]

    def leading_term(self):
        m = self.leading_monomial()
        return m, self.terms[m]

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError("mixed polynomial rings")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = s
        r = MPoly.__new__(MPoly)
        r.vars, r.terms = self.vars, out
        return r

    __radd__ = __add__

    def __neg__(self):
        r = MPoly.__new__(MPoly)
        r.vars = self.vars
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return MPoly.zero(self.vars)
            r = MPoly.__new__(MPoly)
            r.vars = self.vars
            f = Fraction(other)
            r.terms = {m: c * f for m, c in self.terms.items()}
            return r
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m)
                s = c1 * c2 if s is None else s + c1 * c2
                out[m] = s
        r = MPoly.__new__(MPoly)
        r.vars = self.vars
        r.terms = {m: c for m, c in out.items() if c != 0}
        return r

    __rmul__ = __mul__

    def scale(self, c):
        return self * c

    def monic(self):
        if not self.terms:
            return self
        return self * (ONE / self.leading_coeff())

    def term_mul(self, mono, coeff):
        r = MPoly.__new__(MPoly)
        r.vars = self.vars
        r.terms = {mono_mul(m, mono): c * coeff for m, c in self.terms.items()}
        return r

    # -- substitution and division ------------------------------------------

    def substitute_zero(self, var_indices):
        """Set the listed variables to zero."""
        idx = set(var_indices)
        out = {}
        for m, c in self.terms.items():
            if any(m[i] for i in idx):
                continue
            out[m] = c
        r = MPoly.__new__(MPoly)
        r.vars, r.terms = self.vars, out
        return r

    def evaluate(self, values):
        """Full evaluation; ``values[i]`` is the value of variable i."""
        total = ZERO
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                for _ in range(e):
                    v = v * values[i]
            total = total + v
        return total

    def divmod_single(self, g):
        """Divide by one polynomial; returns (quotient, remainder)."""
        q = MPoly.zero(self.vars)
        r = MPoly.zero(self.vars)
        p = self
        gm, gc = g.leading_term()
        while p.terms:
            pm, pc = p.leading_term()
            if mono_divides(gm, pm):
                t = MPoly(self.vars, {mono_div(pm, gm): pc / gc})
                q = q + t
                p = p - t * g
            else:
                r = r + MPoly(self.vars, {pm: pc})
                p = p - MPoly(self.vars, {pm: pc})
        return q, r

    def exact_div(self, g):
        q, r = self.divmod_single(g)
        if r.terms:
            raise ValueError("inexact polynomial division")
        return q

    def reduce_mod(self, basis):
        """Normal form of self modulo a list of polynomials (multi-divisor)."""
        p = self
        r = MPoly.zero(self.vars)
        lts = [(g.leading_monomial(), g.leading_coeff(), g) for g in basis if g.terms]
        while p.terms:
            pm, pc = p.leading_term()
            for gm, gc, g in lts:
                if mono_divides(gm, pm):
                    p = p - g.term_mul(mono_div(pm, gm), pc / gc)
                    break
            else:
                t = MPoly(self.vars, {pm: pc})
                r = r + t
                p = p - t
        return r

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=degrevlex_key, reverse=True):
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(self.vars[i])
                elif e > 1:
                    factors.append(f"{self.vars[i]}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"({c})*{body}")
        return " + ".join(parts)
