"""Dense exact linear algebra over the coefficient fields.

``Mat`` is an immutable dense matrix tied to a field handle.  Elimination
uses partial pivoting by first nonzero entry: arithmetic is exact, so there
is nothing to gain from magnitude pivoting, and first-nonzero keeps pivot
choices deterministic across runs.

Prime-field matrices route through numpy int64 kernels (entries stay below
2^31 so products never overflow); extension fields and rationals take the
generic path.  The batched kernels at the bottom are what the EPW censuses
sit on: one elimination pass over a whole (N, m, n) stack.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldMismatch, ShapeError
from .fields import Field, PrimeField


class Mat:
    """Dense matrix; entries row-major, all owned by ``field``."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ShapeError(f"expected {rows * cols} entries, got {len(entries)}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, row_lists) -> "Mat":
        row_lists = [list(r) for r in row_lists]
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        if any(len(r) != cols for r in row_lists):
            raise ShapeError("ragged rows")
        return cls(field, rows, cols, [x for r in row_lists for x in r])

    @classmethod
    def zero(cls, field: Field, rows: int, cols: int) -> "Mat":
        return cls(field, rows, cols, [field.zero()] * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Mat":
        m = [field.zero()] * (n * n)
        for i in range(n):
            m[i * n + i] = field.one()
        return cls(field, n, n, m)

    @classmethod
    def from_numpy(cls, field: PrimeField, arr) -> "Mat":
        arr = np.asarray(arr, dtype=np.int64) % field.p
        return cls(field, arr.shape[0], arr.shape[1], [int(x) for x in arr.ravel()])

    def to_numpy(self):
        if not isinstance(self.field, PrimeField):
            raise FieldMismatch("numpy form only exists over prime fields")
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    # -- access ------------------------------------------------------------
    def get(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def submatrix(self, row_idx, col_idx) -> "Mat":
        ents = [self.get(i, j) for i in row_idx for j in col_idx]
        return Mat(self.field, len(list(row_idx)), len(list(col_idx)), ents)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        F = self.field
        body = "; ".join(
            " ".join(F.to_str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Mat({F!r}, {self.rows}x{self.cols}: {body})"

    def _check_same_field(self, other: "Mat"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    # -- arithmetic --------------------------------------------------------
    def add(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in add")
        F = self.field
        return Mat(
            F,
            self.rows,
            self.cols,
            [F.add(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def sub(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("shape mismatch in sub")
        F = self.field
        return Mat(
            F,
            self.rows,
            self.cols,
            [F.sub(a, b) for a, b in zip(self.entries, other.entries)],
        )

    def neg(self) -> "Mat":
        F = self.field
        return Mat(F, self.rows, self.cols, [F.neg(a) for a in self.entries])

    def scale(self, c) -> "Mat":
        F = self.field
        return Mat(F, self.rows, self.cols, [F.mul(c, a) for a in self.entries])

    def mul(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        F = self.field
        if isinstance(F, PrimeField):
            return Mat.from_numpy(F, (self.to_numpy() @ other.to_numpy()) % F.p)
        out = [F.zero()] * (self.rows * other.cols)
        for i in range(self.rows):
            base = i * self.cols
            for t in range(self.cols):
                a = self.entries[base + t]
                if F.is_zero(a):
                    continue
                obase = t * other.cols
                for j in range(other.cols):
                    out[i * other.cols + j] = F.add(
                        out[i * other.cols + j], F.mul(a, other.entries[obase + j])
                    )
        return Mat(F, self.rows, other.cols, out)

    def transpose(self) -> "Mat":
        return Mat(
            self.field,
            self.cols,
            self.rows,
            [self.get(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def hstack(self, other: "Mat") -> "Mat":
        self._check_same_field(other)
        if self.rows != other.rows:
            raise ShapeError("row mismatch in hstack")
        ents = []
        for i in range(self.rows):
            ents.extend(self.row(i))
            ents.extend(other.row(i))
        return Mat(self.field, self.rows, self.cols + other.cols, ents)

    def is_zero(self) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.entries)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.get(i, j) == self.get(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    # -- elimination -------------------------------------------------------
    def echelon(self):
        """Row echelon form (not reduced).

        Returns (ech: Mat, pivots: list of column indices, swaps: parity of
        row swaps, scale: field element, the product of pivoting factors
        applied so far -- always one here since rows are never rescaled).
        """
        F = self.field
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots = []
        swaps = 0
        r = 0
        for j in range(self.cols):
            sel = None
            for i in range(r, self.rows):
                if not F.is_zero(m[i][j]):
                    sel = i
                    break
            if sel is None:
                continue
            if sel != r:
                m[r], m[sel] = m[sel], m[r]
                swaps ^= 1
            inv = F.inv(m[r][j])
            for i in range(r + 1, self.rows):
                c = m[i][j]
                if F.is_zero(c):
                    continue
                f = F.mul(c, inv)
                for t in range(j, self.cols):
                    m[i][t] = F.sub(m[i][t], F.mul(f, m[r][t]))
            pivots.append(j)
            r += 1
            if r == self.rows:
                break
        ech = Mat(F, self.rows, self.cols, [x for row in m for x in row])
        return ech, pivots, swaps

    def rref(self):
        """Reduced row echelon form.  Returns (rref: Mat, pivots)."""
        F = self.field
        if isinstance(F, PrimeField):
            arr, pivots = np_rref(self.to_numpy(), F.p)
            return Mat.from_numpy(F, arr), pivots
        ech, pivots, _ = self.echelon()
        m = [list(ech.row(i)) for i in range(self.rows)]
        for r in range(len(pivots) - 1, -1, -1):
            j = pivots[r]
            inv = F.inv(m[r][j])
            for t in range(j, self.cols):
                m[r][t] = F.mul(inv, m[r][t])
            for i in range(r):
                c = m[i][j]
                if F.is_zero(c):
                    continue
                for t in range(j, self.cols):
                    m[i][t] = F.sub(m[i][t], F.mul(c, m[r][t]))
        return Mat(F, self.rows, self.cols, [x for row in m for x in row]), pivots

    def rank(self) -> int:
        F = self.field
        if isinstance(F, PrimeField):
            return int(np_rank(self.to_numpy(), F.p))
        _, pivots, _ = self.echelon()
        return len(pivots)

    def kernel(self) -> "Mat":
        """Basis of the right kernel, one column per free variable."""
        F = self.field
        red, pivots = self.rref()
        free = [j for j in range(self.cols) if j not in pivots]
        basis = Mat.zero(F, self.cols, len(free))
        ents = basis.entries
        for t, f in enumerate(free):
            ents[f * len(free) + t] = F.one()
            for r, j in enumerate(pivots):
                ents[j * len(free) + t] = F.neg(red.get(r, f))
        return basis

    def det(self):
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        F = self.field
        if isinstance(F, PrimeField):
            return int(np_det(self.to_numpy(), F.p))
        ech, pivots, swaps = self.echelon()
        if len(pivots) < self.rows:
            return F.zero()
        out = F.one()
        for r, j in enumerate(pivots):
            out = F.mul(out, ech.get(r, j))
        return F.neg(out) if swaps else out

    def solve(self, rhs: "Mat"):
        """One solution X of self @ X = rhs, or None if inconsistent."""
        self._check_same_field(rhs)
        if rhs.rows != self.rows:
            raise ShapeError("rhs row mismatch")
        F = self.field
        aug = self.hstack(rhs)
        red, pivots = aug.rref()
        pivots_in_lhs = [j for j in pivots if j < self.cols]
        if len(pivots_in_lhs) != len(pivots):
            return None
        out = Mat.zero(F, self.cols, rhs.cols)
        ents = out.entries
        for r, j in enumerate(pivots_in_lhs):
            for t in range(rhs.cols):
                ents[j * rhs.cols + t] = red.get(r, self.cols + t)
        return out

    def pivot_columns(self) -> list[int]:
        """Greedy-independent column set (the echelon pivot columns)."""
        F = self.field
        if isinstance(F, PrimeField):
            return np_pivot_columns(self.to_numpy(), F.p)
        _, pivots, _ = self.echelon()
        return list(pivots)


# -- spec-level functional aliases ----------------------------------------


def mat_rank_kernel(m: Mat):
    """(rank, kernel basis).  rank + kernel.cols == m.cols."""
    ker = m.kernel()
    return m.cols - ker.cols, ker


def mat_det(m: Mat):
    return m.det()


def echelon_subspace_reps(field, n: int, d: int):
    """All d-dimensional subspaces of field^n, one RREF basis each.

    Yields d x n Mats in reduced row echelon form; exactly one per subspace
    (one per Schubert cell filling), so the total count is the Gaussian
    binomial [n choose d]_q.
    """
    import itertools as _it

    if d == 0:
        yield Mat.zero(field, 0, n)
        return
    one, zero = field.one(), field.zero()
    nonpivot_values = list(field.elements())
    for pivots in _it.combinations(range(n), d):
        free_slots = [
            (r, c)
            for r in range(d)
            for c in range(pivots[r] + 1, n)
            if c not in pivots
        ]
        for fill in _it.product(nonpivot_values, repeat=len(free_slots)):
            rows = [[zero] * n for _ in range(d)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = one
            for (r, c), v in zip(free_slots, fill):
                rows[r][c] = v
            yield Mat.from_rows(field, rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


# -- numpy kernels over F_p --------------------------------------------------
#
# Matrices are int64 arrays with entries in [0, p).  Elimination never
# normalizes rows except at pivots, and reduces mod p after each update,
# so intermediate values stay below p^2 < 2^62.


def _inverse_table(p: int):
    inv = np.zeros(p, dtype=np.int64)
    inv[1:] = np.array([pow(i, p - 2, p) for i in range(1, p)], dtype=np.int64)
    return inv


_INV_CACHE: dict[int, np.ndarray] = {}


def inverse_table(p: int):
    tab = _INV_CACHE.get(p)
    if tab is None:
        tab = _inverse_table(p)
        _INV_CACHE[p] = tab
    return tab


def np_rref(a, p: int):
    """RREF of a single matrix mod p.  Returns (array, pivot columns)."""
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    inv = inverse_table(p)
    pivots = []
    r = 0
    for j in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, j])[0]
        if nz.size == 0:
            continue
        sel = r + int(nz[0])
        if sel != r:
            a[[r, sel]] = a[[sel, r]]
        a[r] = a[r] * inv[a[r, j]] % p
        col = a[:, j].copy()
        col[r] = 0
        a -= np.outer(col, a[r])
        a %= p
        pivots.append(j)
        r += 1
    return a, pivots


def np_pivot_columns(a, p: int):
    _, pivots = np_rref(a, p)
    return pivots


def np_rank(a, p: int) -> int:
    _, pivots = np_rref(a, p)
    return len(pivots)


def np_kernel(a, p: int):
    """Right-kernel basis as columns of an int64 array."""
    a = np.asarray(a, dtype=np.int64)
    red, pivots = np_rref(a, p)
    cols = a.shape[1]
    free = [j for j in range(cols) if j not in pivots]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    for t, f in enumerate(free):
        out[f, t] = 1
        for r, j in enumerate(pivots):
            out[j, t] = (-red[r, f]) % p
    return out


def np_det(a, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    if n != a.shape[1]:
        raise ShapeError("determinant of a non-square matrix")
    inv = inverse_table(p)
    det = 1
    for j in range(n):
        nz = np.nonzero(a[j:, j])[0]
        if nz.size == 0:
            return 0
        sel = j + int(nz[0])
        if sel != j:
            a[[j, sel]] = a[[sel, j]]
            det = -det
        piv = int(a[j, j])
        det = det * piv % p
        if j + 1 < n:
            factors = a[j + 1 :, j] * inv[piv] % p
            a[j + 1 :] = (a[j + 1 :] - np.outer(factors, a[j])) % p
    return det % p


def np_solve(a, b, p: int):
    """Solve a @ x = b mod p.  b may be a vector or matrix.  None if
    inconsistent; the unique solution requires full column rank."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    red, pivots = np_rref(np.concatenate([a, b], axis=1) % p, p)
    lhs_cols = a.shape[1]
    if any(j >= lhs_cols for j in pivots):
        return None
    x = np.zeros((lhs_cols, b.shape[1]), dtype=np.int64)
    for r, j in enumerate(pivots):
        x[j] = red[r, lhs_cols:]
    return x[:, 0] if vec else x


# -- batched kernels ---------------------------------------------------------


def batch_rank(mats, p: int):
    """Ranks of a stack of matrices mod p.  mats: (N, m, n) int64."""
    a = np.array(mats, dtype=np.int64) % p
    n_mat, m, n = a.shape
    inv = inverse_table(p)
    piv_row = np.zeros(n_mat, dtype=np.int64)
    row_idx = np.arange(m, dtype=np.int64)[None, :]
    for j in range(n):
        col = a[:, :, j]
        candidates = (col != 0) & (row_idx >= piv_row[:, None])
        has = candidates.any(axis=1)
        if not has.any():
            continue
        sel = np.nonzero(has)[0]
        first = candidates[sel].argmax(axis=1)
        pr = piv_row[sel]
        # swap rows first <-> pr within each selected matrix
        tmp = a[sel, pr, :].copy()
        a[sel, pr, :] = a[sel, first, :]
        a[sel, first, :] = tmp
        pivot = a[sel, pr, j]
        a[sel, pr, :] = a[sel, pr, :] * inv[pivot][:, None] % p
        below = row_idx > pr[:, None]
        factors = np.where(below, a[sel, :, j], 0)
        a[sel] = (a[sel] - factors[:, :, None] * a[sel, pr, :][:, None, :]) % p
        piv_row[sel] = pr + 1
        if (piv_row >= m).all():
            break
    return piv_row


def batch_det(mats, p: int):
    """Determinants of a stack of square matrices mod p."""
    a = np.array(mats, dtype=np.int64) % p
    n_mat, m, n = a.shape
    if m != n:
        raise ShapeError("batch_det needs square matrices")
    inv = inverse_table(p)
    det = np.ones(n_mat, dtype=np.int64)
    alive = np.ones(n_mat, dtype=bool)
    row_idx = np.arange(m, dtype=np.int64)[None, :]
    for j in range(n):
        col = a[:, :, j]
        candidates = (col != 0) & (row_idx >= j)
        has = candidates.any(axis=1)
        det[~has] = 0
        alive &= has
        if not alive.any():
            break
        sel = np.nonzero(alive)[0]
        first = candidates[sel].argmax(axis=1)
        swap = first != j
        sw = sel[swap]
        if sw.size:
            fs = first[swap]
            tmp = a[sw, j, :].copy()
            a[sw, j, :] = a[sw, fs, :]
            a[sw, fs, :] = tmp
            det[sw] = (-det[sw]) % p
        pivot = a[sel, j, j]
        det[sel] = det[sel] * pivot % p
        if j + 1 < m:
            factors = a[sel, :, j] * inv[pivot][:, None] % p
            factors[:, : j + 1] = 0
            a[sel] = (a[sel] - factors[:, :, None] * a[sel, j, :][:, None, :]) % p
    return det % p
