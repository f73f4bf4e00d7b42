"""Exact arithmetic kernels: Laurent polynomials, MPoly, linear algebra, GB."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brank.groebner import (
    groebner_basis,
    monomial_ideal_point_components,
    normal_form,
    quotient_is_finite_dim,
    reduces_to_zero,
    variable_is_nilpotent,
)
from brank.laurent import Laurent
from brank.linalg import bareiss_rank, field_rank, in_span, invert, mat_rank, nullspace, poly_det
from brank.mpoly import MPoly, degrevlex_key
from brank.qext import QuadField


def P(vars, s):
    """Tiny polynomial builder for tests: 'x*y - 2*z^2' style not needed;
    build from term dicts instead."""
    return MPoly(vars, s)


# -- Laurent ----------------------------------------------------------------


def test_laurent_valuation_product():
    p = Laurent({-1: 1, 0: 1})  # eps^-1 + 1
    q = Laurent({1: 1, 2: -1})  # eps - eps^2
    r = p * q
    assert r == Laurent({0: 1, 2: -1})  # 1 - eps^2
    assert r.val() == 0


@settings(max_examples=200, deadline=None)
@given(
    st.dictionaries(st.integers(-4, 4), st.fractions(), max_size=4),
    st.dictionaries(st.integers(-4, 4), st.fractions(), max_size=4),
)
def test_laurent_val_additive(d1, d2):
    p, q = Laurent(d1), Laurent(d2)
    if p.is_zero() or q.is_zero():
        assert (p * q).is_zero()
    else:
        assert (p * q).val() == p.val() + q.val()


def test_laurent_exact_div():
    p = Laurent({0: 1, 2: -1})  # 1 - eps^2
    d = Laurent({-1: 1, 0: 1})  # eps^-1 + 1
    q = p.exact_div(d)
    assert q * d == p
    with pytest.raises(ValueError):
        Laurent({0: 1, 1: 1}).exact_div(Laurent({2: 1, 0: 3}))


def test_laurent_zero_parts():
    p = Laurent({-2: 3, 0: 1, 1: 5})
    assert p.truncate_nonnegative() == Laurent({0: 1, 1: 5})
    assert p.negative_part() == Laurent({-2: 3})
    assert Laurent({0: 7}).at_zero() == 7
    with pytest.raises(ValueError):
        p.at_zero()


# -- degrevlex ---------------------------------------------------------------


def test_degrevlex_matches_classical_order():
    # with vars (x, y, z): x^2 > x*y > y^2 > x*z > y*z > z^2
    monos = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    assert sorted(monos, key=degrevlex_key, reverse=True) == monos


# -- ranks and determinants ---------------------------------------------------


def test_mat_rank_identity():
    eye = [[Fraction(int(i == j)) for j in range(2)] for i in range(2)]
    assert mat_rank(eye) == 2


def test_mat_rank_symbolic():
    vars = ("x1", "x2")
    x1 = MPoly.var(vars, "x1")
    x2 = MPoly.var(vars, "x2")
    assert bareiss_rank([[x1, x2], [x2, x1]]) == 2
    assert bareiss_rank([[x1, x2], [x1, x2]]) == 1


def test_rank_invariant_under_row_ops():
    import random

    rng = random.Random(7)
    for _ in range(10):
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(4)] for _ in range(3)]
        r = field_rank(m)
        perm = m[::-1]
        assert field_rank(perm) == r
        # multiply by an exact invertible matrix
        g = None
        while g is None:
            cand = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
            g = cand if invert(cand) is not None else None
        gm = [[sum((g[i][k] * m[k][j] for k in range(3)), Fraction(0)) for j in range(4)] for i in range(3)]
        assert field_rank(gm) == r


def test_poly_det_basic():
    vars = ("x1", "x2", "x3", "x4")
    x = [MPoly.var_index(vars, i) for i in range(4)]
    m = [[x[0], x[1]], [x[2], x[3]]]
    assert poly_det(m) == x[0] * x[3] - x[1] * x[2]
    diag = [[x[i] if i == j else MPoly.zero(vars) for j in range(3)] for i in range(3)]
    assert poly_det(diag) == x[0] * x[1] * x[2]


def test_poly_det_multiplicative():
    import random

    rng = random.Random(3)
    vars = ("x1", "x2")

    def rand_poly():
        t = {}
        for _ in range(2):
            m = (rng.randint(0, 1), rng.randint(0, 1))
            t[m] = Fraction(rng.randint(-2, 2))
        return MPoly(vars, t)

    for _ in range(5):
        a = [[rand_poly() for _ in range(2)] for _ in range(2)]
        b = [[rand_poly() for _ in range(2)] for _ in range(2)]
        ab = [
            [a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)]
            for i in range(2)
        ]
        assert poly_det(ab) == poly_det(a) * poly_det(b)


def test_nullspace_and_span():
    m = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)]]
    ns = nullspace(m)
    assert len(ns) == 2
    for v in ns:
        assert all(sum(row[j] * v[j] for j in range(3)) == 0 for row in m)
    assert in_span([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]], [Fraction(3), Fraction(-2)])
    assert not in_span([[Fraction(1), Fraction(0)]], [Fraction(0), Fraction(1)])


# -- quadratic field ----------------------------------------------------------


def test_quadfield_arithmetic():
    # alpha^2 + alpha - 1 = 0
    F = QuadField(-1, 1)
    a = F.alpha
    assert a * a == 1 - a
    x = F(2, 3)
    assert x * x.inverse() == F(1)
    with pytest.raises(ValueError):
        QuadField(-4, 0)  # alpha^2 = 4 reducible


# -- Groebner ------------------------------------------------------------------


def _vars3():
    return ("x", "y", "z")


def test_gb_already_a_basis():
    vars = ("x", "y")
    x = MPoly.var(vars, "x")
    y = MPoly.var(vars, "y")
    gens = [x * x, x * y, y * y]
    gb = groebner_basis(gens)
    assert set(repr(g) for g in gb) == set(repr(g) for g in gens)
    assert quotient_is_finite_dim(gb)
    from brank.groebner import standard_monomials

    assert set(standard_monomials(gb)) == {(0, 0), (1, 0), (0, 1)}


def test_gb_single_generator():
    vars = ("x",)
    x = MPoly.var(vars, "x")
    gb = groebner_basis([x - 1])
    assert gb == [x - 1]


def test_gb_generators_reduce_to_zero():
    vars = _vars3()
    x, y, z = (MPoly.var(vars, v) for v in vars)
    gens = [x * y - z * z, x * x - y * z, y * y - x * z]
    gb = groebner_basis(gens)
    for g in gens:
        assert reduces_to_zero(g, gb)


def test_quotient_finite_dim_flags():
    vars = ("x", "y")
    x = MPoly.var(vars, "x")
    y = MPoly.var(vars, "y")
    assert quotient_is_finite_dim(groebner_basis([x * x, x * y, y * y]))
    assert not quotient_is_finite_dim(groebner_basis([x * y]))


def test_nilpotent_variable():
    vars = ("x", "y")
    x = MPoly.var(vars, "x")
    y = MPoly.var(vars, "y")
    gb = groebner_basis([x * x, x * y])
    assert variable_is_nilpotent(gb, 0)
    assert not variable_is_nilpotent(gb, 1)


def test_monomial_components():
    vars = ("x", "y", "z")
    x, y, z = (MPoly.var(vars, v) for v in vars)
    gb = groebner_basis([x * y, x * z, y * z])
    comps = monomial_ideal_point_components(gb)
    assert comps == [[0], [1], [2]]


def test_gfp_point_agreement_one_directional():
    # finite-dim quotient => no nonzero GF(p) point, for random small ideals
    import random

    from brank.gfp import projective_points

    rng = random.Random(11)
    vars = ("x", "y")
    for _ in range(5):
        x = MPoly.var(vars, "x")
        y = MPoly.var(vars, "y")
        gens = [x * x + rng.randint(-2, 2) * x * y, y * y + rng.randint(-2, 2) * x * y, x * y * rng.randint(0, 1)]
        gens = [g for g in gens if g.terms]
        gb = groebner_basis(gens)
        if not quotient_is_finite_dim(gb):
            continue
        for p in (101,):
            for pt in projective_points(2, p):
                vals = [Fraction(v) for v in pt]
                assert any(g.evaluate(vals) % p != 0 for g in gens)
