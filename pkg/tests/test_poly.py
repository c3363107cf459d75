import pytest

from degeneracy_atlas.errors import DegreeBoundViolated, ShapeError
from degeneracy_atlas.fields import PrimeField, RationalField
from degeneracy_atlas.poly import (
    AffineMap,
    MultiPoly,
    PolyMatrix,
    eval_poly_matrix,
    interpolate,
    monomials_up_to,
    np_eval_many,
    partial_derivatives,
    restrict_linear,
    simplex_grid,
)
from degeneracy_atlas.rng import SplitMix64

F5 = PrimeField(5)
F7 = PrimeField(7)
F101 = PrimeField(101)


def poly_of(field, nvars, term_list):
    return MultiPoly(field, nvars, {tuple(e): c for e, c in term_list})


def random_poly(field, nvars, deg, rng, density=0.5):
    terms = {}
    for e in monomials_up_to(nvars, deg):
        if rng.below(100) < density * 100:
            terms[e] = field.random(rng)
    return MultiPoly(field, nvars, terms)


def naive_eval(p, point):
    """Term-by-term oracle with repeated multiplication."""
    F = p.field
    total = F.zero()
    for e, c in p.terms.items():
        v = c
        for i, d in enumerate(e):
            for _ in range(d):
                v = F.mul(v, point[i])
        total = F.add(total, v)
    return total


def test_eval_constant_matrix_unchanged():
    pm = PolyMatrix.from_rows(
        F5, 2, [[MultiPoly.constant(F5, 2, 3), MultiPoly.constant(F5, 2, 1)]]
    )
    m = eval_poly_matrix(pm, [4, 2])
    assert m.entries == [3, 1]


def test_eval_direct_substitution():
    x = MultiPoly.variable(F5, 2, 0)
    y = MultiPoly.variable(F5, 2, 1)
    pm = PolyMatrix.from_rows(F5, 2, [[x, y], [y, x]])
    m = eval_poly_matrix(pm, [1, 2])
    assert m.entries == [1, 2, 2, 1]


def test_eval_matches_naive_oracle():
    rng = SplitMix64(5)
    for _ in range(10):
        entries = [random_poly(F7, 3, 1, rng) for _ in range(9)]
        pm = PolyMatrix(F7, 3, 3, 3, entries)
        for _ in range(10):
            pt = [F7.random(rng) for _ in range(3)]
            m = eval_poly_matrix(pm, pt)
            for idx, p in enumerate(entries):
                assert m.entries[idx] == naive_eval(p, pt)


def test_eval_commutes_with_addition():
    rng = SplitMix64(7)
    a = PolyMatrix(F7, 2, 2, 2, [random_poly(F7, 2, 2, rng) for _ in range(4)])
    b = PolyMatrix(F7, 2, 2, 2, [random_poly(F7, 2, 2, rng) for _ in range(4)])
    for _ in range(20):
        pt = [F7.random(rng) for _ in range(2)]
        assert a.add(b).eval(pt) == a.eval(pt).add(b.eval(pt))


def test_eval_length_mismatch():
    pm = PolyMatrix.from_rows(F5, 2, [[MultiPoly.zero(F5, 2)]])
    with pytest.raises(ShapeError):
        eval_poly_matrix(pm, [1])


def test_partials_basic():
    # d(x^2+1)/dx = 2x
    p = poly_of(F7, 1, [((2,), 1), ((0,), 1)])
    (dp,) = partial_derivatives(p)
    assert dp == poly_of(F7, 1, [((1,), 2)])
    # d(xy)/dx = y, d(xy)/dy = x
    q = poly_of(F7, 2, [((1, 1), 1)])
    dx, dy = partial_derivatives(q)
    assert dx == MultiPoly.variable(F7, 2, 1)
    assert dy == MultiPoly.variable(F7, 2, 0)


def test_euler_identity_homogeneous():
    # sum_i x_i d_i p = deg * p for homogeneous p, checked at 50 points
    F = PrimeField(101)
    rng = SplitMix64(11)
    deg = 6
    terms = {}
    for e in monomials_up_to(3, deg):
        if sum(e) == deg and rng.below(2):
            terms[e] = F.random_nonzero(rng)
    p = MultiPoly(F, 3, terms)
    parts = partial_derivatives(p)
    for _ in range(50):
        pt = [F.random(rng) for _ in range(3)]
        lhs = F.zero()
        for i in range(3):
            lhs = F.add(lhs, F.mul(pt[i], parts[i].eval(pt)))
        assert lhs == F.mul(F.from_int(deg), p.eval(pt))


def test_restrict_identity_line():
    x = MultiPoly.variable(F7, 1, 0)
    pm = PolyMatrix.from_rows(F7, 1, [[x]])
    amap = AffineMap(F7, [[1]], [0])  # x = t
    out = restrict_linear(pm, amap)
    assert out.get(0, 0) == MultiPoly.variable(F7, 1, 0)


def test_restrict_along_segment():
    # restrict [[x, y]] along (x,y) = (t, 1-t); at t=1 -> [[1, 0]]
    x = MultiPoly.variable(F7, 2, 0)
    y = MultiPoly.variable(F7, 2, 1)
    pm = PolyMatrix.from_rows(F7, 2, [[x, y]])
    amap = AffineMap(F7, [[1], [F7.neg(1)]], [0, 1])
    out = restrict_linear(pm, amap)
    m = out.eval([1])
    assert m.entries == [1, 0]


def test_restrict_preserves_linear_degree():
    rng = SplitMix64(13)
    entries = [random_poly(F7, 10, 1, rng) for _ in range(100)]
    pm = PolyMatrix(F7, 10, 10, 10, entries)
    amap = AffineMap(
        F7,
        [[F7.random(rng)] for _ in range(10)],
        [F7.random(rng) for _ in range(10)],
    )
    out = restrict_linear(pm, amap)
    assert out.max_degree() <= 1


def test_restrict_commutes_with_eval():
    rng = SplitMix64(17)
    pm = PolyMatrix(F7, 3, 2, 2, [random_poly(F7, 3, 2, rng) for _ in range(4)])
    amap = AffineMap(
        F7,
        [[F7.random(rng), F7.random(rng)] for _ in range(3)],
        [F7.random(rng) for _ in range(3)],
    )
    out = restrict_linear(pm, amap)
    for _ in range(20):
        t = [F7.random(rng) for _ in range(2)]
        assert out.eval(t) == pm.eval(amap.apply(t))


def test_interpolate_univariate():
    p = poly_of(F7, 1, [((2,), 1), ((0,), 1)])  # x^2 + 1
    res = interpolate(F7, 1, 2, lambda pt: p.eval(pt), fresh_points=50)
    assert res.poly == p


def test_interpolate_bivariate_linear():
    p = poly_of(F7, 2, [((1, 0), 1), ((0, 1), 2)])  # x + 2y
    res = interpolate(F7, 2, 1, lambda pt: p.eval(pt), fresh_points=50)
    assert res.poly == p
    assert res.grid_size == 3


def test_interpolate_roundtrip_random():
    rng = SplitMix64(19)
    for nvars, d in [(1, 4), (2, 3), (3, 2), (5, 2)]:
        p = random_poly(F101, nvars, d, rng)
        res = interpolate(
            F101, nvars, d, lambda pt: p.eval(pt), fresh_points=100, rng=rng.spawn()
        )
        assert res.poly == p  # exact equality of term dicts


def test_interpolate_detects_degree_violation():
    # sampling x^3 with bound 2 must produce a finding with a witness
    p = poly_of(F101, 1, [((3,), 1)])
    with pytest.raises(DegreeBoundViolated) as exc:
        interpolate(F101, 1, 2, lambda pt: p.eval(pt), fresh_points=200)
    assert exc.value.witness is not None


def test_interpolate_over_rationals():
    Q = RationalField()
    p = MultiPoly(
        Q, 2, {(1, 1): Q.from_int(3), (0, 0): Q.inv(Q.from_int(2))}
    )  # 3xy + 1/2
    res = interpolate(Q, 2, 2, lambda pt: p.eval(pt), fresh_points=0)
    assert res.poly == p


def test_interpolate_field_too_small():
    with pytest.raises(ShapeError):
        interpolate(PrimeField(3), 1, 3, lambda pt: pt[0], fresh_points=0)


def test_simplex_grid_size_matches_monomial_count():
    for nvars, d in [(1, 3), (2, 4), (3, 3), (5, 6)]:
        assert len(simplex_grid(nvars, d)) == len(monomials_up_to(nvars, d))


def test_serialization_grevlex_sorted():
    # x0^2 + x0*x1 + x1 + 3 over F7, grevlex descending
    p = poly_of(F7, 2, [((0, 1), 1), ((2, 0), 1), ((1, 1), 1), ((0, 0), 3)])
    assert p.to_string() == "1*x0^2 + 1*x0*x1 + 1*x1 + 3"


def test_np_eval_many_matches_scalar_eval():
    import numpy as np

    rng = SplitMix64(23)
    p = random_poly(F101, 4, 3, rng)
    pts = np.array(
        [[F101.random(rng) for _ in range(4)] for _ in range(50)], dtype="int64"
    )
    vals = np_eval_many(p, pts)
    for i in range(50):
        assert vals[i] == p.eval(list(pts[i]))
