"""Corank stratification of quadratic families and their pointwise covers.

A family of symmetric forms on a chart is a symmetric polynomial matrix
(the twisting line bundle is trivialized on the chart, so determinant
square classes are honest field elements).  At a point of corank exactly k
the double cover of the corank-k locus has fiber

    Split     two rational points   (signed discriminant a square),
    Inert     one conjugate pair    (signed discriminant a nonsquare),
    Ramified  one point             (corank exceeds k: the branch locus).

The signed discriminant is (-1)^r det of the induced nondegenerate form
when its rank 2r is even, plain det when odd.  The sign normalization is
not visible over an algebraically closed field; over F_q it is pinned by
the ruling enumeration of ``enumerate_isotropic_rulings``, which this
module cross-validates exhaustively in the test suite.
"""

from __future__ import annotations

import enum

from .errors import (
    Degenerate,
    EvenSizeNotSupported,
    NotOnOpenStratum,
    NotOnStratum,
    NotRankOne,
    ShapeError,
    SizeError,
    Unsupported,
)
from .fields import Field, SquareClass, square_class, square_root
from .linalg import Mat, echelon_subspace_reps
from .poly import MultiPoly, PolyMatrix


class FiberSignature(enum.Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"

    def __str__(self):
        return self.value


class QuadraticFamily:
    """Symmetric m x m polynomial matrix over an nvars-dimensional chart."""

    __slots__ = ("field", "m", "nvars", "gram", "twist_note", "_partials")

    def __init__(self, gram: PolyMatrix, twist_note: str = ""):
        if gram.rows != gram.cols:
            raise ShapeError("gram must be square")
        if gram.rows < 1:
            raise ShapeError("m must be >= 1")
        if not gram.is_symmetric():
            raise ShapeError("gram must be symmetric identically")
        self.gram = gram
        self.field = gram.field
        self.m = gram.rows
        self.nvars = gram.nvars
        self.twist_note = twist_note
        self._partials = None

    @classmethod
    def constant(cls, mat: Mat, nvars: int = 0, twist_note: str = "") -> "QuadraticFamily":
        return cls(PolyMatrix.constant(mat, nvars), twist_note)

    @classmethod
    def diagonal(cls, field: Field, polys: list[MultiPoly], twist_note: str = ""):
        nvars = polys[0].nvars
        m = len(polys)
        zero = MultiPoly.zero(field, nvars)
        entries = [
            polys[i] if i == j else zero for i in range(m) for j in range(m)
        ]
        return cls(PolyMatrix(field, nvars, m, m, entries), twist_note)

    @classmethod
    def universal(cls, field: Field, m: int) -> "QuadraticFamily":
        """The universal family: one independent variable per matrix slot."""
        nvars = m * (m + 1) // 2
        idx = {}
        t = 0
        for i in range(m):
            for j in range(i, m):
                idx[(i, j)] = t
                t += 1
        entries = []
        for i in range(m):
            for j in range(m):
                entries.append(
                    MultiPoly.variable(field, nvars, idx[(min(i, j), max(i, j))])
                )
        return cls(
            PolyMatrix(field, nvars, m, m, entries),
            twist_note="universal family on Sym^2",
        )

    def eval(self, point) -> Mat:
        return self.gram.eval(point)

    def corank_at(self, point) -> int:
        return self.m - self.eval(point).rank()

    def partials(self) -> list[PolyMatrix]:
        """d(gram)/dx_i, one polynomial matrix per chart variable."""
        if self._partials is None:
            self._partials = [
                PolyMatrix(
                    self.field,
                    self.nvars,
                    self.m,
                    self.m,
                    [p.derivative(i) for p in self.gram.entries],
                )
                for i in range(self.nvars)
            ]
        return self._partials


class PointAssessment:
    """Corank, induced nondegenerate form, and fiber signature at a point.

    ``qk`` always reflects the actual corank at the point (so rank(qk) =
    m - corank holds even on deeper strata, where the signature relative to
    the queried k is Ramified).
    """

    __slots__ = (
        "field",
        "point",
        "queried_k",
        "corank",
        "kernel_basis",
        "complement",
        "qk",
        "det_class",
        "signed_disc_class",
        "signature",
    )

    def __init__(
        self,
        field,
        point,
        queried_k,
        corank,
        kernel_basis,
        complement,
        qk,
        det_class,
        signed_disc_class,
        signature,
    ):
        self.field = field
        self.point = point
        self.queried_k = queried_k
        self.corank = corank
        self.kernel_basis = kernel_basis
        self.complement = complement
        self.qk = qk
        self.det_class = det_class
        self.signed_disc_class = signed_disc_class
        self.signature = signature

    def to_json_dict(self):
        F = self.field
        return {
            "point": [F.to_str(x) for x in self.point],
            "corank": self.corank,
            "signature": str(self.signature),
            "det_class": str(self.det_class),
            "signed_disc_class": str(self.signed_disc_class),
        }


def signed_disc_class_of(field: Field, qk: Mat) -> tuple[SquareClass, SquareClass]:
    """(det class, signed disc class) of a nondegenerate symmetric form."""
    det = qk.det()
    det_class = square_class(field, det)
    rank = qk.rows
    if rank % 2 == 0:
        r = rank // 2
        sign = field.one() if r % 2 == 0 else field.neg(field.one())
        signed = square_class(field, field.mul(sign, det))
    else:
        signed = det_class
    return det_class, signed


def assess_point(
    qf: QuadraticFamily, k: int, point, complement: Mat | None = None
) -> PointAssessment:
    """Fiber data of the corank-k cover at a chart point.

    ``complement`` may supply an explicit m x (m - corank) basis of a
    complement of the kernel; by default the echelon pivot columns of the
    evaluated gram are used (deterministic, and always a complement because
    the matrix is symmetric).  Any valid complement yields the same square
    classes: two complements induce congruent forms.
    """
    F = qf.field
    G = qf.eval(point)
    rank = G.rank()
    corank = qf.m - rank
    if corank < k:
        raise NotOnStratum(f"corank {corank} < queried k {k}")
    kernel = G.kernel()
    if complement is None:
        pivots = G.pivot_columns()
        comp = Mat.zero(F, qf.m, rank)
        for t, j in enumerate(pivots):
            comp.entries[j * rank + t] = F.one()
        complement_desc = list(pivots)
    else:
        comp = complement
        if comp.rows != qf.m or comp.cols != rank:
            raise ShapeError("complement must be m x rank(G)")
        if comp.hstack(kernel).rank() != qf.m:
            raise ShapeError("complement does not complement the kernel")
        complement_desc = None
    qk = comp.transpose().mul(G).mul(comp)
    det_class, signed = signed_disc_class_of(F, qk)
    if corank > k:
        signature = FiberSignature.RAMIFIED
    else:
        signature = (
            FiberSignature.SPLIT
            if signed is SquareClass.SQUARE
            else FiberSignature.INERT
        )
    return PointAssessment(
        F, list(point), k, corank, kernel, complement_desc, qk,
        det_class, signed, signature,
    )


def _dq_on_subspace(qf: QuadraticFamily, point, subspace: Mat) -> Mat:
    """Matrix of dq : T_s -> Sym^2(K^dual) in coordinates.

    Rows are chart directions, columns the upper-triangle slots of the
    restricted symmetric form.
    """
    F = qf.field
    kdim = subspace.cols
    slots = [(a, b) for a in range(kdim) for b in range(a, kdim)]
    rows = []
    for i in range(qf.nvars):
        Di = qf.partials()[i].eval(point)
        restricted = subspace.transpose().mul(Di).mul(subspace)
        rows.append([restricted.get(a, b) for (a, b) in slots])
    return Mat.from_rows(F, rows) if rows else Mat.zero(F, 0, len(slots))


def p_regular_at(qf: QuadraticFamily, p: int, point) -> bool:
    """Surjectivity of dq onto Sym^2 of every <= p-dimensional kernel subspace.

    When the corank does not exceed p this reduces to the single full-kernel
    check (surjectivity onto Sym^2 of a subspace follows from surjectivity on
    any larger one).  Beyond that, all p-dimensional subspaces of the kernel
    are enumerated, which needs a finite field.
    """
    F = qf.field
    G = qf.eval(point)
    kernel = G.kernel()
    corank = kernel.cols
    if corank <= p:
        if corank == 0:
            return True
        dq = _dq_on_subspace(qf, point, kernel)
        return dq.rank() == corank * (corank + 1) // 2
    if not F.is_finite():
        raise Unsupported("subspace enumeration needs a finite field")
    for rep in echelon_subspace_reps(F, corank, p):
        sub = kernel.mul(rep.transpose())
        dq = _dq_on_subspace(qf, point, sub)
        if dq.rank() != p * (p + 1) // 2:
            return False
    return True


def expected_smoothness_at(qf: QuadraticFamily, k: int, point) -> bool:
    """Whether the corank-k stratum is cut out transversally at the point.

    True iff the dq-against-kernel matrix has full column rank k(k+1)/2,
    i.e. the stratum is nonsingular of the expected codimension there.
    """
    G = qf.eval(point)
    corank = qf.m - G.rank()
    if corank != k:
        raise NotOnOpenStratum(f"corank {corank} != k {k}")
    if k == 0:
        return True
    kernel = G.kernel()
    dq = _dq_on_subspace(qf, point, kernel)
    return dq.rank() == k * (k + 1) // 2


def veronese_square_root(q: Mat):
    """Linear form whose square is the rank <= 1 symmetric form q.

    Returns the coefficient vector of the form (up to sign), None when the
    fiber has no rational point, and the zero vector for q = 0 (the
    ramification point of the squaring cover).
    """
    F = q.field
    if q.rows != q.cols or not q.is_symmetric():
        raise ShapeError("q must be square symmetric")
    rank = q.rank()
    if rank > 1:
        raise NotRankOne(f"rank {rank} > 1")
    if rank == 0:
        return [F.zero()] * q.rows
    p = q.pivot_columns()[0]
    # q = (1/q_pp) col_p col_p^T for symmetric rank one; q_pp != 0 because
    # column p is proportional to the (nonzero) coefficient vector
    root = square_root(F, q.get(p, p))
    if root is None:
        return None
    return [F.div(x, root) for x in q.col(p)]


class RulingReport:
    """Exhaustive census of maximal isotropic subspaces of one quadric."""

    __slots__ = (
        "size",
        "field_order",
        "total",
        "family_sizes",
        "rational",
        "signed_disc_class",
    )

    def __init__(self, size, field_order, total, family_sizes, rational, signed):
        self.size = size
        self.field_order = field_order
        self.total = total
        self.family_sizes = family_sizes
        self.rational = rational
        self.signed_disc_class = signed

    @property
    def matches_signature(self) -> bool:
        """Rationality of the rulings against the signed discriminant.

        This equality is the pointwise content of the Stein-factorization
        comparison; it is asserted exhaustively by the acceptance suite.
        """
        return self.rational == (self.signed_disc_class is SquareClass.SQUARE)

    def to_json_dict(self):
        return {
            "size": self.size,
            "field_order": self.field_order,
            "total": self.total,
            "family_sizes": list(self.family_sizes),
            "rational": self.rational,
            "signed_disc_class": str(self.signed_disc_class),
        }


def enumerate_isotropic_rulings(q: Mat, max_size: int = 8, max_field: int = 11) -> RulingReport:
    """All maximal isotropic subspaces of a nondegenerate even-size form,
    partitioned into rulings by intersection parity.

    Two maximal isotropics lie in the same family iff dim of their
    intersection is congruent to r = size/2 mod 2.  For a split form both
    families are rational; for a nonsplit one the count is zero.
    """
    F = q.field
    if not F.is_finite():
        raise Unsupported("ruling enumeration needs a finite field")
    n = q.rows
    if n % 2 != 0:
        raise ShapeError("even size required")
    if n > max_size or F.order > max_field:
        raise SizeError(f"budget: size {n} over F_{F.order}")
    if q.rank() < n:
        raise Degenerate("degenerate form")
    r = n // 2

    # grow isotropic subspaces one dimension at a time; canonical RREF rows
    # deduplicate spans
    def canonical(vectors):
        m = Mat.from_rows(F, vectors)
        red, pivots = m.rref()
        return tuple(tuple(red.row(i)) for i in range(len(pivots)))

    level = [tuple()]
    for depth in range(r):
        nxt = set()
        for rows in level:
            # orthogonal complement of the current span
            if rows:
                span = Mat.from_rows(F, [list(v) for v in rows])
                perp = span.mul(q).kernel()  # vectors v with rows . q . v = 0
            else:
                perp = Mat.identity(F, n)
            pdim = perp.cols
            for idx in range(1, F.order**pdim):
                coeffs = []
                t = idx
                for _ in range(pdim):
                    coeffs.append(F.element_at(t % F.order))
                    t //= F.order
                v = [
                    _dot_col(F, perp, coeffs, row)
                    for row in range(n)
                ]
                vm = Mat(F, 1, n, v)
                # must be isotropic and add a new dimension
                if not vm.mul(q).mul(vm.transpose()).is_zero():
                    continue
                cand = [list(x) for x in rows] + [v]
                if Mat.from_rows(F, cand).rank() != depth + 1:
                    continue
                nxt.add(canonical(cand))
        level = sorted(nxt)
    subspaces = [Mat.from_rows(F, [list(v) for v in rows]) for rows in level]
    total = len(subspaces)
    _, signed = signed_disc_class_of(F, q)
    if total == 0:
        return RulingReport(n, F.order, 0, (0, 0), False, signed)
    base = subspaces[0]
    fam = [0, 0]
    for s in subspaces:
        stacked = Mat.from_rows(
            F, [base.row(i) for i in range(r)] + [s.row(i) for i in range(r)]
        )
        inter_dim = 2 * r - stacked.rank()
        fam[0 if (inter_dim - r) % 2 == 0 else 1] += 1
    return RulingReport(n, F.order, total, tuple(fam), True, signed)


def _dot_col(F, mat: Mat, coeffs, row):
    v = F.zero()
    for c in range(mat.cols):
        v = F.add(v, F.mul(mat.get(row, c), coeffs[c]))
    return v


def hilbert_dim_formula(dim_s: int, m: int, d: int) -> int:
    """Expected dimension of the relative variety of (d-1)-planes in a
    quadric fibration over an S of the given dimension."""
    if not 1 <= d <= m:
        raise ShapeError("need 1 <= d <= m")
    return dim_s + d * (m - d) - d * (d + 1) // 2


def symmetroid_family(mats: list[Mat]) -> QuadraticFamily:
    """Linear system of odd-size quadrics on the chart t0 = 1.

    The family is mats[0] + sum t_i mats[i]; its determinant has total
    degree at most 2d - 1 = size, with equality generically.  Even sizes are
    rejected: the canonical square root of the twist exists only in the odd
    case.
    """
    if len(mats) < 2:
        raise ShapeError("need at least two matrices")
    size = mats[0].rows
    F = mats[0].field
    if size % 2 == 0:
        raise EvenSizeNotSupported("symmetroid construction needs odd size")
    nvars = len(mats) - 1
    for m in mats:
        if m.field != F or m.rows != size or m.cols != size:
            raise ShapeError("matrices must share field and size")
        if not m.is_symmetric():
            raise ShapeError("matrices must be symmetric")
    entries = []
    for i in range(size):
        for j in range(size):
            terms = {}
            if not F.is_zero(mats[0].get(i, j)):
                terms[(0,) * nvars] = mats[0].get(i, j)
            for t in range(nvars):
                c = mats[t + 1].get(i, j)
                if not F.is_zero(c):
                    e = [0] * nvars
                    e[t] = 1
                    terms[tuple(e)] = c
            entries.append(MultiPoly(F, nvars, terms))
    gram = PolyMatrix(F, nvars, size, size, entries)
    return QuadraticFamily(gram, twist_note="symmetroid chart t0=1; L=O(-1) trivialized")
