"""Dense exact 3-tensors and their slice spaces.

A :class:`Tensor3` is an (a, b, c) array of rationals.  Slicing on a factor
gives a :class:`MatSpace`: a matrix of homogeneous linear forms whose
evaluation at a covector recovers the corresponding contraction.  Factors are
named "A", "B", "C" throughout.
"""

from __future__ import annotations

import json
from fractions import Fraction

from . import linalg
from .mpoly import MPoly

FACTORS = ("A", "B", "C")


def _f(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class Tensor3:
    __slots__ = ("dims", "t")

    def __init__(self, dims, entries=None):
        a, b, c = dims
        self.dims = (a, b, c)
        self.t = [[[Fraction(0)] * c for _ in range(b)] for _ in range(a)]
        if entries:
            for (i, j, k), v in entries.items():
                self.t[i][j][k] = _f(v)

    # -- construction --------------------------------------------------------

    @classmethod
    def from_nested(cls, t):
        a = len(t)
        b = len(t[0]) if a else 0
        c = len(t[0][0]) if b else 0
        out = cls((a, b, c))
        for i in range(a):
            for j in range(b):
                for k in range(c):
                    out.t[i][j][k] = _f(t[i][j][k])
        return out

    @classmethod
    def unit(cls, r):
        """Diagonal unit tensor <r> = sum_i e_i (x) e_i (x) e_i."""
        out = cls((r, r, r))
        for i in range(r):
            out.t[i][i][i] = Fraction(1)
        return out

    @classmethod
    def from_slice_pattern(cls, rows, nvars, transpose=False):
        """Build the tensor whose A-slice space is the given matrix pattern.

        ``rows[j][k]`` is a dict {var_index: coeff}, a plain int var index, a
        string like ``"x2"`` / ``"x2+x7"`` / ``"-x3"``, or 0 for a blank.
        Variable indexing in strings follows the paper displays (``x1`` is
        index 0 unless an ``x0`` appears somewhere, in which case ``x0`` is
        index 0); prefer passing explicit dicts for anything unusual.
        """
        parsed = [[_parse_entry(e) for e in row] for row in rows]
        base = 0 if any(v == 0 for row in parsed for e in row for v in e) else 1
        b, c = len(parsed), len(parsed[0])
        out = cls((nvars, b, c))
        for j in range(b):
            for k in range(c):
                for v, coeff in parsed[j][k].items():
                    jj, kk = (k, j) if transpose else (j, k)
                    out.t[v - base][jj][kk] += coeff
        return out

    def copy(self):
        out = Tensor3(self.dims)
        out.t = [[list(col) for col in pl] for pl in self.t]
        return out

    # -- basics ---------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Tensor3) and self.dims == other.dims and self.t == other.t

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.dims, tuple(tuple(tuple(col) for col in pl) for pl in self.t))

    def is_zero(self):
        return all(x == 0 for pl in self.t for col in pl for x in col)

    def nonzero_entries(self):
        out = []
        a, b, c = self.dims
        for i in range(a):
            for j in range(b):
                for k in range(c):
                    if self.t[i][j][k] != 0:
                        out.append((i, j, k, self.t[i][j][k]))
        return out

    # -- slices ---------------------------------------------------------------

    def slice(self, factor, index):
        """The matrix of the contraction against a coordinate covector."""
        a, b, c = self.dims
        if factor == "A":
            return [[self.t[index][j][k] for k in range(c)] for j in range(b)]
        if factor == "B":
            return [[self.t[i][index][k] for k in range(c)] for i in range(a)]
        if factor == "C":
            return [[self.t[i][j][index] for j in range(b)] for i in range(a)]
        raise ValueError(f"bad factor {factor!r}")

    def contract(self, factor, alpha):
        """T(alpha) for a covector on the given factor, as a rational matrix."""
        a, b, c = self.dims
        n = {"A": a, "B": b, "C": c}[factor]
        if len(alpha) != n:
            raise ValueError("covector length mismatch")
        out = None
        for idx, coeff in enumerate(alpha):
            if coeff == 0:
                continue
            s = self.slice(factor, idx)
            if out is None:
                out = [[coeff * x for x in row] for row in s]
            else:
                for r in range(len(s)):
                    for cc in range(len(s[0])):
                        out[r][cc] += coeff * s[r][cc]
        if out is None:
            rows, cols = self.slice_shape(factor)
            out = [[Fraction(0)] * cols for _ in range(rows)]
        return out

    def slice_shape(self, factor):
        a, b, c = self.dims
        return {"A": (b, c), "B": (a, c), "C": (a, b)}[factor]

    def flattening(self, factor):
        """The factor* -> (other (x) other) matrix; its rank tests concision."""
        a, b, c = self.dims
        n = {"A": a, "B": b, "C": c}[factor]
        return [[x for row in self.slice(factor, i) for x in row] for i in range(n)]

    def is_concise(self, factor):
        n = {"A": self.dims[0], "B": self.dims[1], "C": self.dims[2]}[factor]
        return linalg.field_rank(self.flattening(factor)) == n

    def concise_dims(self):
        """Rank of each flattening (the dimensions of the concise core)."""
        return tuple(linalg.field_rank(self.flattening(f)) for f in FACTORS)

    # -- constructions --------------------------------------------------------

    def direct_sum(self, other):
        a1, b1, c1 = self.dims
        a2, b2, c2 = other.dims
        out = Tensor3((a1 + a2, b1 + b2, c1 + c2))
        for i, j, k, v in self.nonzero_entries():
            out.t[i][j][k] = v
        for i, j, k, v in other.nonzero_entries():
            out.t[a1 + i][b1 + j][c1 + k] = v
        return out

    def tensor_product(self, other):
        a1, b1, c1 = self.dims
        a2, b2, c2 = other.dims
        out = Tensor3((a1 * a2, b1 * b2, c1 * c2))
        for i1, j1, k1, v1 in self.nonzero_entries():
            for i2, j2, k2, v2 in other.nonzero_entries():
                out.t[i1 * a2 + i2][j1 * b2 + j2][k1 * c2 + k2] += v1 * v2
        return out

    def permute_factors(self, perm):
        """``perm[p]`` is the old factor landing in new position p."""
        perm = tuple(perm)
        if sorted(perm) != [0, 1, 2]:
            raise ValueError("perm must be a permutation of (0, 1, 2)")
        dims = tuple(self.dims[perm[p]] for p in range(3))
        out = Tensor3(dims)
        for i, j, k, v in self.nonzero_entries():
            old = (i, j, k)
            new = tuple(old[perm[p]] for p in range(3))
            out.t[new[0]][new[1]][new[2]] = v
        return out

    def change_basis(self, g_a=None, g_b=None, g_c=None):
        """Apply per-factor matrices (new = g . old on each factor)."""
        return self.degenerate(g_a, g_b, g_c)

    def degenerate(self, g_a=None, g_b=None, g_c=None, zero_mask=None):
        """Per-factor linear maps, possibly singular or rectangular.

        ``g_x`` maps old coordinates to new ones (shape new_dim x old_dim).
        ``zero_mask`` is an iterable of (i, j, k) entries to zero afterwards;
        entry zeroing covers degenerations like "set everything above the
        diagonal to zero" that are not linear on a single factor.
        """
        a, b, c = self.dims
        na = len(g_a) if g_a is not None else a
        nb = len(g_b) if g_b is not None else b
        nc = len(g_c) if g_c is not None else c
        out = Tensor3((na, nb, nc))
        for i, j, k, v in self.nonzero_entries():
            ai = [(i2, g_a[i2][i]) for i2 in range(na)] if g_a is not None else [(i, Fraction(1))]
            bj = [(j2, g_b[j2][j]) for j2 in range(nb)] if g_b is not None else [(j, Fraction(1))]
            ck = [(k2, g_c[k2][k]) for k2 in range(nc)] if g_c is not None else [(k, Fraction(1))]
            for i2, ca in ai:
                if ca == 0:
                    continue
                for j2, cb in bj:
                    if cb == 0:
                        continue
                    for k2, cc in ck:
                        if cc == 0:
                            continue
                        out.t[i2][j2][k2] += v * ca * cb * cc
        if zero_mask:
            for i, j, k in zero_mask:
                out.t[i][j][k] = Fraction(0)
        return out

    def restrict(self, a_keep=None, b_keep=None, c_keep=None):
        """Coordinate projection onto the listed indices of each factor."""
        a, b, c = self.dims
        a_keep = list(range(a)) if a_keep is None else list(a_keep)
        b_keep = list(range(b)) if b_keep is None else list(b_keep)
        c_keep = list(range(c)) if c_keep is None else list(c_keep)
        out = Tensor3((len(a_keep), len(b_keep), len(c_keep)))
        for i2, i in enumerate(a_keep):
            for j2, j in enumerate(b_keep):
                for k2, k in enumerate(c_keep):
                    out.t[i2][j2][k2] = self.t[i][j][k]
        return out

    def is_symmetric(self):
        a, b, c = self.dims
        if not (a == b == c):
            return False
        for i in range(a):
            for j in range(b):
                for k in range(c):
                    v = self.t[i][j][k]
                    if v != self.t[i][k][j] or v != self.t[j][i][k]:
                        return False
        return True

    # -- slice spaces ----------------------------------------------------------

    def slice_space(self, factor="A"):
        return MatSpace.from_tensor(self, factor)

    # -- serialization -----------------------------------------------------------

    def to_json(self):
        entries = [[i, j, k, str(v)] for i, j, k, v in self.nonzero_entries()]
        return {"dims": list(self.dims), "entries": entries}

    @classmethod
    def from_json(cls, obj):
        out = cls(tuple(obj["dims"]))
        for i, j, k, v in obj["entries"]:
            out.t[i][j][k] = Fraction(v)
        return out

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def loads(cls, s):
        return cls.from_json(json.loads(s))

    def __repr__(self):
        return f"Tensor3(dims={self.dims}, nnz={len(self.nonzero_entries())})"


def _parse_entry(e):
    """Parse one displayed matrix entry into {var_number: coeff}."""
    if isinstance(e, dict):
        return {int(v): _f(c) for v, c in e.items()}
    if isinstance(e, int):
        if e == 0:
            return {}
        raise ValueError("int entries other than 0 are ambiguous; use 'xN'")
    if not e:
        return {}
    s = str(e).replace(" ", "").replace("-", "+-")
    out = {}
    for term in s.split("+"):
        if not term:
            continue
        coeff = Fraction(1)
        if term.startswith("-"):
            coeff = Fraction(-1)
            term = term[1:]
        if "*" in term:
            cs, term = term.split("*")
            coeff *= Fraction(cs)
        if not term.startswith("x"):
            raise ValueError(f"bad entry term {term!r}")
        v = int(term[1:])
        out[v] = out.get(v, Fraction(0)) + coeff
    return {v: c for v, c in out.items() if c != 0}


class MatSpace:
    """A matrix of linear forms in x_0..x_{a-1}; the slice space T(factor*)."""

    __slots__ = ("vars", "nrows", "ncols", "forms")

    def __init__(self, vars, forms):
        self.vars = tuple(vars)
        self.forms = forms
        self.nrows = len(forms)
        self.ncols = len(forms[0]) if forms else 0

    @classmethod
    def from_tensor(cls, tensor, factor="A"):
        a, b, c = tensor.dims
        n = {"A": a, "B": b, "C": c}[factor]
        names = tuple(f"x{i}" for i in range(n))
        rows, cols = tensor.slice_shape(factor)
        forms = [[MPoly.zero(names) for _ in range(cols)] for _ in range(rows)]
        for idx in range(n):
            s = tensor.slice(factor, idx)
            for r in range(rows):
                for cc in range(cols):
                    v = s[r][cc]
                    if v != 0:
                        forms[r][cc] = forms[r][cc] + MPoly.var_index(names, idx, v)
        return cls(names, forms)

    def to_tensor(self):
        """Reconstruct the tensor with this as its A-slice space."""
        n = len(self.vars)
        out = Tensor3((n, self.nrows, self.ncols))
        for r in range(self.nrows):
            for cc in range(self.ncols):
                for m, coeff in self.forms[r][cc].terms.items():
                    if sum(m) != 1:
                        raise ValueError("matrix space entries must be linear")
                    i = next(i for i, e in enumerate(m) if e)
                    out.t[i][r][cc] = coeff
        return out

    def evaluate(self, alpha):
        if len(alpha) != len(self.vars):
            raise ValueError("covector length mismatch")
        vals = [_f(x) for x in alpha]
        return [[p.evaluate(vals) for p in row] for row in self.forms]

    def generic_rank(self):
        """Rank over the fraction field = max rank attained on the space."""
        return linalg.bareiss_rank(self.forms)

    def minors(self, size):
        """All size x size minors as polynomials (deduplicated, nonzero)."""
        from itertools import combinations

        out = []
        seen = set()
        for rows in combinations(range(self.nrows), size):
            for cols in combinations(range(self.ncols), size):
                sub = [[self.forms[r][c] for c in cols] for r in rows]
                d = linalg.poly_det(sub)
                if d.terms:
                    key = tuple(sorted(d.monic().terms.items()))
                    if key not in seen:
                        seen.add(key)
                        out.append(d)
        return out

    def __repr__(self):
        return f"MatSpace({self.nrows}x{self.ncols} in {len(self.vars)} vars)"


def is_one_generic(tensor, factor="A", tries=40, seed=2):
    """Is some contraction T(alpha) on this factor invertible?

    Returns (verdict, witness covector or None).  Escalation ladder:
    coordinate covectors, then small random rational combinations, then the
    symbolic generic rank as the deterministic authority (searching further
    for an explicit witness only when the symbolic answer is positive).
    """
    import random

    rows, cols = tensor.slice_shape(factor)
    if rows != cols:
        return False, None
    n = {"A": tensor.dims[0], "B": tensor.dims[1], "C": tensor.dims[2]}[factor]
    for i in range(n):
        alpha = [Fraction(1) if j == i else Fraction(0) for j in range(n)]
        if linalg.field_rank(tensor.contract(factor, alpha)) == rows:
            return True, alpha
    rng = random.Random(seed)
    for height in (1, 2, 5):
        for _ in range(tries):
            alpha = [Fraction(rng.randint(-height, height)) for _ in range(n)]
            if linalg.field_rank(tensor.contract(factor, alpha)) == rows:
                return True, alpha
    space = tensor.slice_space(factor)
    if space.generic_rank() < rows:
        return False, None
    # symbolic rank is full, so witnesses are generic; widen the search
    for height in (7, 19, 53, 151):
        for _ in range(200):
            alpha = [Fraction(rng.randint(-height, height)) for _ in range(n)]
            if linalg.field_rank(tensor.contract(factor, alpha)) == rows:
                return True, alpha
    raise RuntimeError("symbolic rank is full but no witness found")
