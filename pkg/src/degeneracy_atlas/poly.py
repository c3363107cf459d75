"""Sparse multivariate polynomials and polynomial matrices.

Terms live in a dict keyed by exponent tuples; zero coefficients are never
stored.  Every ordered view (printing, Groebner leading terms, report
serialization) uses graded reverse lexicographic order so output is
reproducible across runs and platforms.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import DegenerateSampler, DegreeBoundViolated, ShapeError
from .fields import Field, PrimeField
from .linalg import Mat, np_rank, np_solve
from .rng import SplitMix64


def grevlex_key(exps: tuple[int, ...]):
    """Sort key: ascending in this key == descending in grevlex."""
    return (-sum(exps), tuple(reversed(exps)))


class MultiPoly:
    """Polynomial in ``nvars`` variables over ``field``."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ShapeError("exponent vector length != nvars")
            if not field.is_zero(c):
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one()})

    @classmethod
    def from_coeff_dict(cls, field, nvars, d):
        return cls(field, nvars, d)

    # -- structure ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]))

    def leading(self):
        """(exponents, coefficient) of the grevlex-leading term."""
        exps = min(self.terms, key=grevlex_key)
        return exps, self.terms[exps]

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, tuple(self.sorted_terms())))

    # -- arithmetic --------------------------------------------------------
    def add(self, other):
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero()), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(F, self.nvars, out)

    def neg(self):
        F = self.field
        return MultiPoly(F, self.nvars, {e: F.neg(c) for e, c in self.terms.items()})

    def sub(self, other):
        return self.add(other.neg())

    def scale(self, c):
        F = self.field
        if F.is_zero(c):
            return MultiPoly.zero(F, self.nvars)
        return MultiPoly(F, self.nvars, {e: F.mul(c, v) for e, v in self.terms.items()})

    def mul(self, other):
        F = self.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = F.mul(c1, c2)
                s = F.add(out.get(e, F.zero()), prod)
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(F, self.nvars, out)

    def pow(self, k: int):
        out = MultiPoly.constant(self.field, self.nvars, self.field.one())
        base = self
        while k:
            if k & 1:
                out = out.mul(base)
            base = base.mul(base)
            k >>= 1
        return out

    def mul_term(self, exps, coeff):
        F = self.field
        return MultiPoly(
            F,
            self.nvars,
            {
                tuple(a + b for a, b in zip(e, exps)): F.mul(c, coeff)
                for e, c in self.terms.items()
            },
        )

    # -- evaluation and calculus --------------------------------------------
    def eval(self, point):
        if len(point) != self.nvars:
            raise ShapeError("point length != nvars")
        F = self.field
        # shared power table keeps repeated exponents cheap
        maxdeg = [0] * self.nvars
        for e in self.terms:
            for i, d in enumerate(e):
                if d > maxdeg[i]:
                    maxdeg[i] = d
        powers = []
        for i in range(self.nvars):
            row = [F.one()]
            for _ in range(maxdeg[i]):
                row.append(F.mul(row[-1], point[i]))
            powers.append(row)
        total = F.zero()
        for e, c in self.terms.items():
            v = c
            for i, d in enumerate(e):
                if d:
                    v = F.mul(v, powers[i][d])
            total = F.add(total, v)
        return total

    def derivative(self, i: int):
        F = self.field
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            coeff = F.mul(c, F.from_int(e[i]))
            if F.is_zero(coeff):
                continue
            new = list(e)
            new[i] -= 1
            out[tuple(new)] = F.add(out.get(tuple(new), F.zero()), coeff)
        return MultiPoly(F, self.nvars, out)

    def compose_affine(self, amap: "AffineMap"):
        """Substitute x_i = (affine form in t variables)."""
        if amap.n_out != self.nvars:
            raise ShapeError("affine map target dimension != nvars")
        F = self.field
        forms = amap.forms()
        out = MultiPoly.zero(F, amap.n_in)
        for e, c in self.terms.items():
            term = MultiPoly.constant(F, amap.n_in, c)
            for i, d in enumerate(e):
                if d:
                    term = term.mul(forms[i].pow(d))
            out = out.add(term)
        return out

    # -- serialization -------------------------------------------------------
    def to_string(self) -> str:
        """Canonical text form, grevlex-sorted: "c*x0^a0*x1^a1 + ..."."""
        if self.is_zero():
            return "0"
        F = self.field
        parts = []
        for e, c in self.sorted_terms():
            factors = [F.to_str(c)]
            for i, d in enumerate(e):
                if d == 1:
                    factors.append(f"x{i}")
                elif d > 1:
                    factors.append(f"x{i}^{d}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"


class AffineMap:
    """t |-> matrix @ t + offset, from n_in t-variables to n_out x-variables."""

    __slots__ = ("field", "n_in", "n_out", "matrix", "offset")

    def __init__(self, field: Field, matrix, offset):
        self.field = field
        self.matrix = [list(r) for r in matrix]
        self.offset = list(offset)
        self.n_out = len(self.matrix)
        if len(self.offset) != self.n_out:
            raise ShapeError("offset length != number of output coordinates")
        self.n_in = len(self.matrix[0]) if self.n_out else 0
        if any(len(r) != self.n_in for r in self.matrix):
            raise ShapeError("ragged affine matrix")

    def forms(self) -> list[MultiPoly]:
        F = self.field
        out = []
        for i in range(self.n_out):
            terms = {}
            if not F.is_zero(self.offset[i]):
                terms[(0,) * self.n_in] = self.offset[i]
            for j in range(self.n_in):
                if not F.is_zero(self.matrix[i][j]):
                    e = [0] * self.n_in
                    e[j] = 1
                    terms[tuple(e)] = self.matrix[i][j]
            out.append(MultiPoly(F, self.n_in, terms))
        return out

    def apply(self, tpoint):
        if len(tpoint) != self.n_in:
            raise ShapeError("t-point length != n_in")
        F = self.field
        out = []
        for i in range(self.n_out):
            v = self.offset[i]
            for j in range(self.n_in):
                v = F.add(v, F.mul(self.matrix[i][j], tpoint[j]))
            out.append(v)
        return out


class PolyMatrix:
    """Matrix of polynomials sharing nvars and field."""

    __slots__ = ("field", "nvars", "rows", "cols", "entries")

    def __init__(self, field: Field, nvars: int, rows: int, cols: int, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ShapeError("entry count mismatch")
        for p in entries:
            if p.field != field or p.nvars != nvars:
                raise ShapeError("entry polynomial in the wrong ring")
        self.field = field
        self.nvars = nvars
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, field, nvars, row_lists):
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        return cls(field, nvars, rows, cols, [p for r in row_lists for p in r])

    @classmethod
    def constant(cls, mat: Mat, nvars: int):
        F = mat.field
        return cls(
            F,
            nvars,
            mat.rows,
            mat.cols,
            [MultiPoly.constant(F, nvars, x) for x in mat.entries],
        )

    def get(self, i, j) -> MultiPoly:
        return self.entries[i * self.cols + j]

    def add(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols, self.nvars) != (other.rows, other.cols, other.nvars):
            raise ShapeError("shape mismatch in add")
        return PolyMatrix(
            self.field,
            self.nvars,
            self.rows,
            self.cols,
            [a.add(b) for a, b in zip(self.entries, other.entries)],
        )

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.field,
            self.nvars,
            self.cols,
            self.rows,
            [self.get(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.get(i, j) == self.get(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ShapeError("shape mismatch in mul")
        F, nv = self.field, self.nvars
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                acc = MultiPoly.zero(F, nv)
                for t in range(self.cols):
                    acc = acc.add(self.get(i, t).mul(other.get(t, j)))
                out.append(acc)
        return PolyMatrix(F, nv, self.rows, other.cols, out)

    def max_degree(self) -> int:
        return max((p.total_degree() for p in self.entries), default=-1)

    def eval(self, point) -> Mat:
        return eval_poly_matrix(self, point)

    def restrict(self, amap: AffineMap) -> "PolyMatrix":
        return restrict_linear(self, amap)


def eval_poly_matrix(pm: PolyMatrix, point) -> Mat:
    """Entrywise evaluation at a chart point."""
    if len(point) != pm.nvars:
        raise ShapeError("point length != nvars")
    return Mat(pm.field, pm.rows, pm.cols, [p.eval(point) for p in pm.entries])


def partial_derivatives(p: MultiPoly) -> list[MultiPoly]:
    """All nvars first partials of p."""
    return [p.derivative(i) for i in range(p.nvars)]


def restrict_linear(pm: PolyMatrix, amap: AffineMap) -> PolyMatrix:
    """Compose every entry with an affine parametrization of a subspace."""
    if amap.n_out != pm.nvars:
        raise ShapeError("affine map does not land in the matrix variables")
    return PolyMatrix(
        pm.field,
        amap.n_in,
        pm.rows,
        pm.cols,
        [p.compose_affine(amap) for p in pm.entries],
    )


# -- interpolation -----------------------------------------------------------


def monomials_up_to(nvars: int, d: int):
    """Exponent vectors of total degree <= d, grevlex-descending."""
    out = [
        e
        for e in itertools.product(range(d + 1), repeat=nvars)
        if sum(e) <= d
    ]
    out.sort(key=grevlex_key)
    return out


def simplex_grid(nvars: int, d: int):
    """The principal lattice {x in {0..d}^nvars : sum(x) <= d}.

    Unisolvent for total degree <= d as long as 0..d are distinct in the
    field, i.e. the field has more than d elements.
    """
    return [
        pt
        for pt in itertools.product(range(d + 1), repeat=nvars)
        if sum(pt) <= d
    ]


class InterpolationResult:
    __slots__ = ("poly", "fresh_checked", "grid_size")

    def __init__(self, poly: MultiPoly, fresh_checked: int, grid_size: int):
        self.poly = poly
        self.fresh_checked = fresh_checked
        self.grid_size = grid_size


def interpolate(
    field: Field,
    nvars: int,
    degree_bound: int,
    sampler,
    fresh_points: int = 1000,
    rng: SplitMix64 | None = None,
) -> InterpolationResult:
    """Unique degree <= d polynomial through the simplex grid, then verified.

    The sampler is called on lists of field elements.  After solving on the
    deterministic grid, ``fresh_points`` random points are compared against
    the sampler; any disagreement raises DegreeBoundViolated with the point
    as witness -- that outcome is a *finding* about the sampled function,
    not a failure of this routine.
    """
    if field.is_finite() and field.order <= degree_bound:
        raise ShapeError("field too small for this degree bound")
    exps = monomials_up_to(nvars, degree_bound)
    grid_int = simplex_grid(nvars, degree_bound)
    grid = [[field.from_int(c) for c in pt] for pt in grid_int]
    values = [sampler(pt) for pt in grid]

    if isinstance(field, PrimeField):
        p = field.p
        vand = np.empty((len(grid), len(exps)), dtype=np.int64)
        pts = np.array(grid_int, dtype=np.int64)
        pow_tab = []
        for i in range(nvars):
            col = pts[:, i] % p
            tab = [np.ones(len(grid), dtype=np.int64)]
            for _ in range(degree_bound):
                tab.append(tab[-1] * col % p)
            pow_tab.append(tab)
        for t, e in enumerate(exps):
            acc = np.ones(len(grid), dtype=np.int64)
            for i, dg in enumerate(e):
                if dg:
                    acc = acc * pow_tab[i][dg] % p
            vand[:, t] = acc
        rhs = np.array(values, dtype=np.int64) % p
        coeffs = np_solve(vand, rhs, p)
        if coeffs is None or np_rank(vand, p) < len(exps):
            raise DegenerateSampler("singular interpolation system")
        poly = MultiPoly(
            field,
            nvars,
            {e: int(c) for e, c in zip(exps, coeffs) if c % p},
        )
    else:
        vand = Mat(
            field,
            len(grid),
            len(exps),
            [
                _monomial_value(field, pt, e)
                for pt in grid
                for e in exps
            ],
        )
        rhs = Mat(field, len(grid), 1, values)
        sol = vand.solve(rhs)
        if sol is None or vand.rank() < len(exps):
            raise DegenerateSampler("singular interpolation system")
        poly = MultiPoly(
            field,
            nvars,
            {e: sol.get(t, 0) for t, e in enumerate(exps)},
        )

    rng = rng or SplitMix64(0)
    checked = 0
    for _ in range(fresh_points):
        pt = [field.random(rng) for _ in range(nvars)]
        if poly.eval(pt) != sampler(pt):
            raise DegreeBoundViolated(
                f"sampler exceeds degree {degree_bound} at {pt}", witness=pt
            )
        checked += 1
    return InterpolationResult(poly, checked, len(grid))


def _monomial_value(field, point, exps):
    v = field.one()
    for x, d in zip(point, exps):
        for _ in range(d):
            v = field.mul(v, x)
    return v


def np_eval_many(poly: MultiPoly, points) -> np.ndarray:
    """Evaluate a prime-field polynomial at many points at once.

    points: (N, nvars) int64 array; returns (N,) int64 array.
    """
    F = poly.field
    if not isinstance(F, PrimeField):
        raise ShapeError("np_eval_many needs a prime field")
    p = F.p
    pts = np.asarray(points, dtype=np.int64) % p
    n = pts.shape[0]
    if poly.is_zero():
        return np.zeros(n, dtype=np.int64)
    maxdeg = [0] * poly.nvars
    for e in poly.terms:
        for i, d in enumerate(e):
            maxdeg[i] = max(maxdeg[i], d)
    pow_tab = []
    for i in range(poly.nvars):
        tab = [np.ones(n, dtype=np.int64)]
        for _ in range(maxdeg[i]):
            tab.append(tab[-1] * pts[:, i] % p)
        pow_tab.append(tab)
    total = np.zeros(n, dtype=np.int64)
    for e, c in poly.terms.items():
        acc = np.full(n, c % p, dtype=np.int64)
        for i, d in enumerate(e):
            if d:
                acc = acc * pow_tab[i][d] % p
        total = (total + acc) % p
    return total
