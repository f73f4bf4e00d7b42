"""Buchberger's algorithm over Q and ideal-theoretic predicates.

Everything is deterministic: degrevlex order from the ring's variable order,
pairs processed by increasing lcm, reduced bases sorted by leading monomial.
Resource limits raise :class:`ResourceCapExceeded` rather than ever returning
a wrong answer.
"""

from __future__ import annotations

from fractions import Fraction

from .mpoly import (
    MPoly,
    degrevlex_key,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_MAX_PAIRS = 200_000


class ResourceCapExceeded(RuntimeError):
    """Raised when the S-polynomial queue exceeds the configured cap."""


def s_poly(f, g):
    fm, fc = f.leading_term()
    gm, gc = g.leading_term()
    lcm = mono_lcm(fm, gm)
    return f.term_mul(mono_div(lcm, fm), Fraction(1) / fc) - g.term_mul(mono_div(lcm, gm), Fraction(1) / gc)


def _interreduce(polys):
    """Make a list of polynomials auto-reduced and monic."""
    polys = [p.monic() for p in polys if p.terms]
    changed = True
    while changed:
        changed = False
        out = []
        for i, p in enumerate(polys):
            rest = out + polys[i + 1 :]
            r = p.reduce_mod(rest) if rest else p
            if r.terms:
                r = r.monic()
                if r != p:
                    changed = True
                out.append(r)
            else:
                changed = True
        polys = out
    return polys


def groebner_basis(gens, max_pairs=DEFAULT_MAX_PAIRS):
    """Reduced Groebner basis (degrevlex) via Buchberger.

    Uses the coprimality (first) criterion and the chain criterion; output is
    interreduced, monic, and sorted by leading monomial.
    """
    basis = _interreduce([g for g in gens if g.terms])
    if not basis:
        return []
    vars = basis[0].vars

    pairs = set()
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pairs.add((i, j))

    processed = 0
    while pairs:
        # normal selection: smallest lcm in degrevlex
        best = min(
            pairs,
            key=lambda ij: degrevlex_key(mono_lcm(basis[ij[0]].leading_monomial(), basis[ij[1]].leading_monomial())),
        )
        pairs.discard(best)
        i, j = best
        fi, fj = basis[i], basis[j]
        mi, mj = fi.leading_monomial(), fj.leading_monomial()
        if mono_coprime(mi, mj):
            continue
        lcm = mono_lcm(mi, mj)
        # chain criterion
        skip = False
        for k, fk in enumerate(basis):
            if k == i or k == j:
                continue
            if mono_divides(fk.leading_monomial(), lcm):
                if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                    skip = True
                    break
        if skip:
            continue
        processed += 1
        if processed > max_pairs:
            raise ResourceCapExceeded(f"Groebner pair cap {max_pairs} exceeded")
        r = s_poly(fi, fj).reduce_mod(basis)
        if r.terms:
            r = r.monic()
            k = len(basis)
            basis.append(r)
            for t in range(k):
                pairs.add((t, k))

    reduced = _interreduce(basis)
    reduced.sort(key=lambda p: degrevlex_key(p.leading_monomial()))
    return reduced


def normal_form(p, gb):
    return p.reduce_mod(gb)


def reduces_to_zero(p, gb):
    return not normal_form(p, gb).terms


def quotient_is_finite_dim(gb):
    """True iff the affine cone of the ideal is {0}.

    For a reduced degrevlex basis this holds iff each variable has some pure
    power among the leading monomials; a nonzero cone would contain a line
    through the origin, so this is exactly projective emptiness.
    """
    if not gb:
        return False
    nvars = len(gb[0].vars)
    lms = [g.leading_monomial() for g in gb]
    covered = set()
    for m in lms:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            covered.add(support[0])
        elif len(support) == 0:
            return True  # 1 in the ideal
    return len(covered) == nvars


def standard_monomials(gb, cap=10_000):
    """Monomials outside the leading-term ideal (finite-dim quotients only)."""
    if not gb:
        raise ValueError("zero ideal has infinite-dimensional quotient")
    nvars = len(gb[0].vars)
    lms = [g.leading_monomial() for g in gb]
    out = []
    frontier = [tuple([0] * nvars)]
    seen = set(frontier)
    while frontier:
        m = frontier.pop()
        if any(mono_divides(lm, m) for lm in lms):
            continue
        out.append(m)
        if len(out) > cap:
            raise ResourceCapExceeded("standard monomial cap exceeded")
        for i in range(nvars):
            m2 = tuple(e + 1 if k == i else e for k, e in enumerate(m))
            if m2 not in seen:
                seen.add(m2)
                frontier.append(m2)
    return sorted(out, key=degrevlex_key)


def variable_is_nilpotent(gb, var_index, max_power=None):
    """Does some power x_i^N reduce to zero mod the ideal?

    Every projective/affine zero of the ideal then has x_i = 0.
    """
    if not gb:
        return False
    nvars = len(gb[0].vars)
    if max_power is None:
        max_power = 2 * nvars + 4
    x = MPoly.var_index(gb[0].vars, var_index)
    p = x
    for _ in range(max_power):
        if reduces_to_zero(p, gb):
            return True
        p = p * x
    return False


def monomial_ideal_point_components(gb):
    """For a monomial ideal: maximal coordinate subspaces in the zero set.

    Returns the list of maximal variable subsets S such that no generator is
    supported inside S; the projective zero set is the union of P(span S).
    Returns None when the basis is not monomial.
    """
    if not gb:
        return None
    for g in gb:
        if len(g.terms) != 1:
            return None
    nvars = len(gb[0].vars)
    supports = [frozenset(i for i, e in enumerate(g.leading_monomial()) if e) for g in gb]
    if any(not s for s in supports):
        return []  # unit ideal
    maximal = []
    # greedy: a subset S is allowed iff no generator support is inside S
    import itertools

    allowed_cache = {}

    def allowed(S):
        key = frozenset(S)
        v = allowed_cache.get(key)
        if v is None:
            v = not any(s <= key for s in supports)
            allowed_cache[key] = v
        return v

    # enumerate maximal allowed subsets by downward search from the full set
    full = frozenset(range(nvars))
    frontier = {full}
    seen = set()
    found = []
    while frontier:
        nxt = set()
        for S in frontier:
            if S in seen:
                continue
            seen.add(S)
            if allowed(S):
                found.append(S)
            else:
                for i in S:
                    nxt.add(S - {i})
        frontier = nxt
    # keep only maximal ones
    for S in found:
        if not any(S < T for T in found):
            if S not in maximal:
                maximal.append(S)
    maximal.sort(key=lambda S: (len(S), sorted(S)))
    return [sorted(S) for S in maximal if S]
