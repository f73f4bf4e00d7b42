"""Upper-bound certificates and their exact verification.

Two certificate kinds:

* rank certificates: r rational rank-one matrices whose span contains the
  slice space T(A*) (or r explicit rank-one tensor summands adding up to T);
* border-rank certificates: r rank-one matrices with Laurent entries in eps
  whose span's limit at eps -> 0 contains T(A*) (or rank-one tensor summands
  with Laurent scalings whose combination limits to T entrywise).

The limit of a curve of row spans is computed by valuation-reducing
elimination (:func:`grassmann_limit`); the elimination log makes the run
replayable.  Entries live over Q or over one quadratic extension Q(alpha).
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import linalg
from .laurent import Laurent
from .qext import QElem, QuadField, coeff_from_json, coeff_to_json
from .tensor import Tensor3


class CertificateError(ValueError):
    """A certificate failed verification; the message names the clause."""


class DependentRows(CertificateError):
    pass


def _as_laurent(x):
    if isinstance(x, Laurent):
        return x
    if isinstance(x, (int, Fraction)):
        return Laurent.const(Fraction(x)) if x else Laurent()
    return Laurent.const(x)  # QElem scalar


def _lmat(rows):
    return [[_as_laurent(x) for x in row] for row in rows]


class CurveFamily:
    """r rank-one curves in B (x) C, as matrices of Laurent polynomials."""

    def __init__(self, matrices, field=None):
        self.matrices = [_lmat(m) for m in matrices]
        self.field = field  # QuadField or None for plain Q
        if self.matrices:
            r0, c0 = len(self.matrices[0]), len(self.matrices[0][0])
            for m in self.matrices:
                if len(m) != r0 or any(len(row) != c0 for row in m):
                    raise ValueError("curve matrices must share a shape")

    @property
    def r(self):
        return len(self.matrices)

    def shape(self):
        m = self.matrices[0]
        return len(m), len(m[0])

    def scaled(self, exponents):
        """Multiply curve i by eps^{exponents[i]}; the limit is unchanged."""
        return CurveFamily(
            [[[p.shift(e) for p in row] for row in m] for m, e in zip(self.matrices, exponents)],
            field=self.field,
        )

    def rank_one_violations(self):
        """Indices of curves with a nonvanishing 2x2 minor."""
        bad = []
        for idx, m in enumerate(self.matrices):
            nr, nc = len(m), len(m[0])
            ok = True
            for r1 in range(nr):
                for r2 in range(r1 + 1, nr):
                    for c1 in range(nc):
                        for c2 in range(c1 + 1, nc):
                            d = m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]
                            if not d.is_zero():
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                bad.append(idx)
        return bad

    def independent_over_fraction_field(self):
        rows = [[p for row in m for p in row] for m in self.matrices]
        return linalg.bareiss_rank(rows) == self.r

    def to_json(self):
        obj = {
            "kind": "border",
            "form": "matrix",
            "r": self.r,
            "field": "Q" if self.field is None else f"Q(alpha:{self.field.minpoly_str()})",
            "matrices": [
                [[{str(e): coeff_to_json(c) for e, c in p.coeffs.items()} for p in row] for row in m]
                for m in self.matrices
            ],
        }
        if self.field is not None:
            obj["minpoly"] = [str(self.field.c0), str(self.field.c1)]
        return obj

    @classmethod
    def from_json(cls, obj):
        field = None
        if obj.get("minpoly"):
            field = QuadField(Fraction(obj["minpoly"][0]), Fraction(obj["minpoly"][1]))
        mats = []
        for m in obj["matrices"]:
            mats.append(
                [[Laurent({int(e): coeff_from_json(c, field) for e, c in p.items()}) for p in row] for row in m]
            )
        return cls(mats, field=field)


class GrassLimit:
    """The computed limit subspace plus the elimination log."""

    def __init__(self, basis, log):
        self.basis = basis  # list of rational/QElem matrices
        self.log = log  # list of {"replaced": j, "coeffs": [...], "shifts": [...]}

    @property
    def dim(self):
        return len(self.basis)


def grassmann_limit(family, max_steps=None):
    """Limit of span{X_1(eps), ..., X_r(eps)} in the Grassmannian as eps -> 0.

    Valuation-reducing elimination: take each row's leading coefficient
    vector at its valuation; while those are dependent, use a dependency to
    raise the valuation of one row (the dependent index of maximal valuation,
    ties broken by largest index).  Terminates because the total valuation is
    bounded by the valuation of any nonzero r x r minor over Q(eps).
    """
    r = family.r
    if r == 0:
        return GrassLimit([], [])
    if not family.independent_over_fraction_field():
        raise DependentRows("curves are dependent over the fraction field")
    nr, nc = family.shape()
    rows = [[p for row in m for p in row] for m in family.matrices]
    if max_steps is None:
        spread = 1
        for row in rows:
            for p in row:
                if p.coeffs:
                    spread = max(spread, p.degree() - p.val() + 1)
        max_steps = r * (spread + 2) * (nr * nc + 2)
    log = []
    for _ in range(max_steps):
        vals = []
        leads = []
        for row in rows:
            v = min((p.val() for p in row if p.coeffs), default=None)
            if v is None:
                raise DependentRows("a curve collapsed to zero during elimination")
            vals.append(v)
            leads.append([p.coeff(v) for p in row])
        if linalg.field_rank(leads) == r:
            basis = [[[leads[i][rr * nc + cc] for cc in range(nc)] for rr in range(nr)] for i in range(r)]
            return GrassLimit(basis, log)
        # deterministic dependency: first kernel vector of the lead matrix
        dep = linalg.nullspace(linalg.transpose(leads))[0]
        support = [i for i, c in enumerate(dep) if c]
        j = max(support, key=lambda i: (vals[i], i))
        cj = dep[j]
        newrow = [Laurent() for _ in range(nr * nc)]
        coeffs = []
        shifts = []
        for i in support:
            ci = dep[i] / cj
            shift = vals[j] - vals[i]
            coeffs.append(coeff_to_json(ci))
            shifts.append(shift)
            for e in range(nr * nc):
                newrow[e] = newrow[e] + rows[i][e].shift(shift) * ci
        rows[j] = newrow
        log.append({"replaced": j, "support": support, "coeffs": coeffs, "shifts": shifts})
    raise RuntimeError("grassmann_limit failed to terminate within the step cap")


def _flatten(mat):
    return [x for row in mat for x in row]


def _span_contains(basis_matrices, target_matrices):
    """Are all targets in the field-span of the basis matrices?"""
    if not basis_matrices:
        return all(not any(_flatten(t)) for t in target_matrices)
    cols = [_flatten(b) for b in basis_matrices]
    a = linalg.transpose(cols)
    for t in target_matrices:
        if linalg.solve(a, _flatten(t)) is None:
            return False
    return True


def verify_border_certificate(tensor, family, factor="A"):
    """Check a matrix-form border certificate; True certifies brank <= r.

    Raises :class:`CertificateError` with the failing clause.
    """
    nr, nc = family.shape()
    rows, cols = tensor.slice_shape(factor)
    if (nr, nc) != (rows, cols):
        raise CertificateError(f"shape mismatch: curves are {nr}x{nc}, slices are {rows}x{cols}")
    bad = family.rank_one_violations()
    if bad:
        raise CertificateError(f"curves {bad} are not rank one identically in eps")
    limit = grassmann_limit(family)
    n = {"A": tensor.dims[0], "B": tensor.dims[1], "C": tensor.dims[2]}[factor]
    slices = [tensor.slice(factor, i) for i in range(n)]
    if not _span_contains(limit.basis, slices):
        raise CertificateError("a slice escapes the limit span")
    return True


class SummandFamily:
    """r rank-one tensor summands with Laurent entries; their sum must limit to T."""

    def __init__(self, summands, field=None):
        # each summand: (scale Laurent, a-vec, b-vec, c-vec) with Laurent coords
        self.summands = [
            (_as_laurent(s), [_as_laurent(x) for x in a], [_as_laurent(x) for x in b], [_as_laurent(x) for x in c])
            for (s, a, b, c) in summands
        ]
        self.field = field

    @property
    def r(self):
        return len(self.summands)

    def expand(self, dims):
        a, b, c = dims
        total = [[[Laurent() for _ in range(c)] for _ in range(b)] for _ in range(a)]
        for scale, va, vb, vc in self.summands:
            if len(va) != a or len(vb) != b or len(vc) != c:
                raise CertificateError("summand vector length mismatch")
            for i in range(a):
                if va[i].is_zero():
                    continue
                for j in range(b):
                    if vb[j].is_zero():
                        continue
                    sij = scale * va[i] * vb[j]
                    for k in range(c):
                        if vc[k].is_zero():
                            continue
                        total[i][j][k] = total[i][j][k] + sij * vc[k]
        return total

    def to_json(self):
        def vec(v):
            return [{str(e): coeff_to_json(c) for e, c in p.coeffs.items()} for p in v]

        obj = {
            "kind": "border",
            "form": "summand",
            "r": self.r,
            "field": "Q" if self.field is None else f"Q(alpha:{self.field.minpoly_str()})",
            "summands": [
                {"scale": vec([s])[0], "a": vec(a), "b": vec(b), "c": vec(c)} for (s, a, b, c) in self.summands
            ],
        }
        if self.field is not None:
            obj["minpoly"] = [str(self.field.c0), str(self.field.c1)]
        return obj

    @classmethod
    def from_json(cls, obj):
        field = None
        if obj.get("minpoly"):
            field = QuadField(Fraction(obj["minpoly"][0]), Fraction(obj["minpoly"][1]))

        def pv(p):
            return Laurent({int(e): coeff_from_json(c, field) for e, c in p.items()})

        return cls(
            [
                (pv(s["scale"]), [pv(x) for x in s["a"]], [pv(x) for x in s["b"]], [pv(x) for x in s["c"]])
                for s in obj["summands"]
            ],
            field=field,
        )


def verify_border_summands(tensor, family):
    """Check a tensor-summand border certificate: sum -> T as eps -> 0."""
    total = family.expand(tensor.dims)
    a, b, c = tensor.dims
    for i in range(a):
        for j in range(b):
            for k in range(c):
                p = total[i][j][k]
                if p.negative_part().coeffs:
                    raise CertificateError(f"entry ({i},{j},{k}) has a pole at eps=0: {p}")
                if p.coeff(0) != tensor.t[i][j][k]:
                    raise CertificateError(f"entry ({i},{j},{k}) limits to {p.coeff(0)}, tensor has {tensor.t[i][j][k]}")
    for idx, (scale, va, vb, vc) in enumerate(family.summands):
        if scale.is_zero() or all(p.is_zero() for p in va) or all(p.is_zero() for p in vb) or all(p.is_zero() for p in vc):
            raise CertificateError(f"summand {idx} is zero")
    return True


class RankCertificate:
    """r rational matrices (matrix form) or r rank-one summand triples."""

    def __init__(self, matrices=None, triples=None):
        if (matrices is None) == (triples is None):
            raise ValueError("exactly one of matrices/triples")
        self.matrices = [[[Fraction(x) for x in row] for row in m] for m in matrices] if matrices else None
        self.triples = (
            [([Fraction(x) for x in a], [Fraction(x) for x in b], [Fraction(x) for x in c]) for a, b, c in triples]
            if triples
            else None
        )

    @property
    def r(self):
        return len(self.matrices) if self.matrices is not None else len(self.triples)

    def to_json(self):
        if self.matrices is not None:
            return {
                "kind": "rank",
                "form": "matrix",
                "r": self.r,
                "field": "Q",
                "matrices": [[[str(x) for x in row] for row in m] for m in self.matrices],
            }
        return {
            "kind": "rank",
            "form": "summand",
            "r": self.r,
            "field": "Q",
            "summands": [
                {"a": [str(x) for x in a], "b": [str(x) for x in b], "c": [str(x) for x in c]}
                for a, b, c in self.triples
            ],
        }

    @classmethod
    def from_json(cls, obj):
        if obj.get("form", "matrix") == "matrix":
            return cls(matrices=[[[Fraction(x) for x in row] for row in m] for m in obj["matrices"]])
        return cls(
            triples=[
                ([Fraction(x) for x in s["a"]], [Fraction(x) for x in s["b"]], [Fraction(x) for x in s["c"]])
                for s in obj["summands"]
            ]
        )


def verify_rank_certificate(tensor, cert, factor="A"):
    """Exact check; True certifies R(T) <= r."""
    if cert.matrices is not None:
        rows, cols = tensor.slice_shape(factor)
        for idx, m in enumerate(cert.matrices):
            if len(m) != rows or len(m[0]) != cols:
                raise CertificateError(f"matrix {idx} has the wrong shape")
            if linalg.field_rank(m) != 1:
                raise CertificateError(f"matrix {idx} does not have rank exactly 1")
        n = {"A": tensor.dims[0], "B": tensor.dims[1], "C": tensor.dims[2]}[factor]
        slices = [tensor.slice(factor, i) for i in range(n)]
        if not _span_contains(cert.matrices, slices):
            raise CertificateError("a slice escapes the span of the certificate matrices")
        return True
    a, b, c = tensor.dims
    total = Tensor3((a, b, c))
    for idx, (va, vb, vc) in enumerate(cert.triples):
        if not any(va) or not any(vb) or not any(vc):
            raise CertificateError(f"summand {idx} is zero in some factor")
        if (len(va), len(vb), len(vc)) != (a, b, c):
            raise CertificateError(f"summand {idx} vector length mismatch")
        for i in range(a):
            if va[i] == 0:
                continue
            for j in range(b):
                if vb[j] == 0:
                    continue
                vij = va[i] * vb[j]
                for k in range(c):
                    total.t[i][j][k] += vij * vc[k]
    if total != tensor:
        raise CertificateError("summands do not add up to the tensor")
    return True


def certificate_from_json(obj):
    if obj["kind"] == "rank":
        return RankCertificate.from_json(obj)
    if obj.get("form", "matrix") == "matrix":
        return CurveFamily.from_json(obj)
    return SummandFamily.from_json(obj)


def verify_certificate(tensor, cert):
    """Dispatch on the certificate type; returns (kind, r)."""
    if isinstance(cert, RankCertificate):
        verify_rank_certificate(tensor, cert)
        return "rank", cert.r
    if isinstance(cert, SummandFamily):
        verify_border_summands(tensor, cert)
        return "border", cert.r
    verify_border_certificate(tensor, cert)
    return "border", cert.r


def load_certificate(path):
    with open(path) as fh:
        return certificate_from_json(json.load(fh))


# -- programmatic certificate constructions -----------------------------------


def _E(nr, nc, entries):
    """Matrix of Laurent polynomials from {(i, j): Laurent-or-scalar}."""
    m = [[Laurent() for _ in range(nc)] for _ in range(nr)]
    for (i, j), v in entries.items():
        m[i][j] = _as_laurent(v)
    return m


def _eps(e, c=1):
    return Laurent({e: Fraction(c)})


def flag_certificate(partition):
    """The m curves degenerating to the flag-algebra tensor of a partition.

    ``partition`` has |partition| = m - 1.  The construction follows five
    groups of rank-one single-column / single-row / four-entry matrices in
    the reordered (anti-diagonal) presentation; the output is transported to
    the standard presentation (identity diagonal, reflected Young diagram in
    the upper-right block) by reversing columns.
    """
    lam = tuple(sorted((int(p) for p in partition), reverse=True))
    if not lam or any(p <= 0 for p in lam):
        raise ValueError("partition parts must be positive")
    m = sum(lam) + 1
    k = lam[0]
    ell = len(lam)
    young = {(i, j) for i in range(ell) for j in range(lam[i])}
    inner = sorted((i, j) for (i, j) in young if i >= 1 and j >= 1)
    free_rows = list(range(ell, m - k))
    if len(inner) != len(free_rows):
        raise RuntimeError("internal bookkeeping error in flag certificate")
    pairing = list(zip(inner, free_rows))

    mats = []
    # group 1: four corners
    mats.append(_E(m, m, {(0, 0): _eps(0), (0, m - 1): _eps(m - 1), (m - 1, 0): _eps(m - 1), (m - 1, m - 1): _eps(2 * m - 2)}))
    # group 2: the full rectangle
    mats.append(_E(m, m, {(i, j): _eps(i + j) for i in range(ell) for j in range(k)}))
    # group 3: one per inner Young entry
    for (i0, j0), i1 in pairing:
        j1 = m - 1 - i1
        mats.append(
            _E(m, m, {(i0, j0): _eps(i0 + j0), (i0, j1): _eps(i0 + j1), (i1, j0): _eps(i1 + j0), (i1, j1): _eps(m - 1)})
        )
    # group 4: one single-column matrix per column 1..k-1
    for i in range(1, k):
        entries = {(0, i): _eps(i)}
        for j in range(1, ell):
            if (j, i) not in young:
                entries[(j, i)] = _eps(i + j)
        for (i0, j0), i1 in pairing:
            if j0 == i:
                entries[(i1, i)] = _eps(i + i1, -1)
        entries[(m - 1 - i, i)] = _eps(m - 1)
        mats.append(_E(m, m, entries))
    # group 5: one single-row matrix per row 1..ell-1
    for i in range(1, ell):
        entries = {(i, 0): _eps(i)}
        for (i0, j0), i1 in pairing:
            if i0 == i:
                j1 = m - 1 - i1
                entries[(i, j1)] = _eps(i + j1, -1)
        entries[(i, m - 1 - i)] = _eps(m - 1)
        mats.append(_E(m, m, entries))

    # transport to the standard presentation: reverse columns
    reversed_mats = [[[row[m - 1 - j] for j in range(m)] for row in mat] for mat in mats]
    return CurveFamily(reversed_mats)


def cw_rank_certificate(q):
    """2q+1 rank-one matrices spanning T_cw(A*): q+1 diagonal units plus q
    four-corner matrices."""
    n = q + 1
    mats = []
    for j in range(n):
        mats.append([[Fraction(int(r == j and c == j)) for c in range(n)] for r in range(n)])
    for j in range(1, n):
        mats.append([[Fraction(int(r in (0, j) and c in (0, j))) for c in range(n)] for r in range(n)])
    return RankCertificate(matrices=mats)


def cw_tilde_rank_certificate(q):
    """2q+3 rank-one matrices for the bordered variant (one more per group)."""
    n = q + 2
    mats = []
    for j in range(n):
        mats.append([[Fraction(int(r == j and c == j)) for c in range(n)] for r in range(n)])
    for j in range(1, n):
        mats.append([[Fraction(int(r in (0, j) and c in (0, j))) for c in range(n)] for r in range(n)])
    return RankCertificate(matrices=mats)


def cw_border_summands(q):
    """q+2 rank-one tensor summands with limit T_cw(q).

    sum_j eps^-2 (e0+eps e_j)^{x3}  -  eps^-3 (e0+eps^2 sum_j e_j)^{x3}
    + (eps^-3 - q eps^-2) e0^{x3}.
    """
    n = q + 1

    def basis(i, scale_pairs):
        v = [Laurent() for _ in range(n)]
        for idx, lp in scale_pairs:
            v[idx] = v[idx] + lp
        return v

    summands = []
    for j in range(1, n):
        vec = basis(0, [(0, _eps(0)), (j, _eps(1))])
        summands.append((_eps(-2), vec, list(vec), list(vec)))
    allv = basis(0, [(0, _eps(0))] + [(j, _eps(2)) for j in range(1, n)])
    summands.append((_eps(-3, -1), allv, list(allv), list(allv)))
    e0 = basis(0, [(0, _eps(0))])
    summands.append((Laurent({-3: Fraction(1), -2: Fraction(-q)}), e0, list(e0), list(e0)))
    return SummandFamily(summands)


def cw_tilde_border_summands(q):
    """q+2 rank-one summands with limit the bordered tensor T~_cw(q)."""
    n = q + 2
    mu = Fraction(1, q)

    def vec(pairs):
        v = [Laurent() for _ in range(n)]
        for idx, lp in pairs:
            v[idx] = v[idx] + lp
        return v

    summands = []
    for j in range(1, q + 1):
        w = vec([(0, _eps(0)), (j, _eps(1)), (q + 1, Laurent({2: mu}))])
        summands.append((_eps(-2), w, list(w), list(w)))
    allv = vec([(0, _eps(0))] + [(j, _eps(2)) for j in range(1, q + 1)])
    summands.append((_eps(-3, -1), allv, list(allv), list(allv)))
    e0 = vec([(0, _eps(0))])
    summands.append((Laurent({-3: Fraction(1), -2: Fraction(-q)}), e0, list(e0), list(e0)))
    return SummandFamily(summands)


def biggap_border_certificate(m):
    """The m+1 rank-one eps-elements for the odd-m big-gap tensor.

    The theorem's list enumerates m+1 elements, matching the bound
    brank <= m+1.
    """
    if m < 5 or m % 2 == 0:
        raise ValueError("m must be odd and at least 5")
    k = (m - 1) // 2
    half = Fraction(1, 2)
    mats = []
    # (1), (2): (2 b_{m-1} +- eps b_k + eps^2 b_0) (x) (c_0 +- eps/2 c_k + eps^2/2 c_{m-1})
    for sign in (1, -1):
        b = {m - 1: _eps(0, 2), k: _eps(1, sign), 0: _eps(2)}
        c = {0: _eps(0), k: Laurent({1: half * sign}), m - 1: Laurent({2: half})}
        mats.append(_outer(m, b, c))
    # (3)
    b = {i: _eps(0) for i in range(k, m - 1)}
    b[m - 1] = _eps(0, 2)
    mats.append(_outer(m, b, {0: _eps(0)}))
    # (4)
    c = {0: _eps(0, 2)}
    for j in range(1, k):
        c[j] = _eps(0)
    mats.append(_outer(m, {m - 1: _eps(0)}, c))
    # (5)
    for i in range(k + 1, m - 1):
        mats.append(_outer(m, {i: _eps(0)}, {0: _eps(0), i - k: _eps(1), i: _eps(2)}))
    # (6)
    for i in range(1, k):
        mats.append(_outer(m, {m - 1: _eps(0), k + i: _eps(1, -1), i: _eps(2)}, {i: _eps(0)}))
    return CurveFamily(mats)


def _outer(n, bcoeffs, ccoeffs):
    mat = [[Laurent() for _ in range(n)] for _ in range(n)]
    for i, bi in bcoeffs.items():
        for j, cj in ccoeffs.items():
            mat[i][j] = bi * cj
    return mat


def biggap_rank_certificate(m):
    """5(m-1)/2 rational rank-one matrices spanning T_biggap_m(A*)."""
    if m < 5 or m % 2 == 0:
        raise ValueError("m must be odd and at least 5")
    k = (m - 1) // 2
    one = Fraction(1)
    mats = []

    def unit(i, j):
        return [[one if (r, c) == (i, j) else Fraction(0) for c in range(m)] for r in range(m)]

    for j in range(m):
        if j != k:
            mats.append(unit(j, j))
    # the two four-entry matrices tying rows {k, 2k} to columns {0, k}
    x1 = [[Fraction(0)] * m for _ in range(m)]
    x2 = [[Fraction(0)] * m for _ in range(m)]
    for r, sr in ((k, 1), (2 * k, -1)):
        for c, sc in ((0, -1), (k, 1)):
            x1[r][c] = Fraction(sr * sc)
    for r in (k, 2 * k):
        for c in (0, k):
            x2[r][c] = one
    mats.append(x1)
    mats.append(x2)
    for i in range(1, k):
        mats.append(unit(k + i, i))  # interior of the block diagonal
    for i in range(1, k + 1):
        mats.append(unit(k + i, 0))  # first-column variables
    for j in range(1, k):
        mats.append(unit(2 * k, j))  # last-row variables
    return RankCertificate(matrices=mats)
