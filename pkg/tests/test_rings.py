"""Exact scalar ring tower: rationals, rational functions, the circle
coordinate ring, matrices, and graded Laurent extensions."""

from fractions import Fraction

import pytest

from linloop import QQ, CircleRing, FunctionField, MatrixRing, pythagorean_grid
from linloop.errors import SingularFiniteBlock
from linloop.rings import CirclePoint, invert_dense


def test_rational_ring_protocol():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.mul(QQ.inv(Fraction(3, 7)), Fraction(3, 7)) == QQ.one
    assert QQ.is_zero(QQ.sub(QQ.one, QQ.one))
    assert QQ.half == Fraction(1, 2)


def test_function_field_inverse():
    F = FunctionField("t")
    t = F.gen
    x = F.add(F.one, t)  # 1 + t
    assert F.eq(F.mul(x, F.inv(x)), F.one)
    assert not F.is_zero(t)


def test_circle_ring_relation():
    C = CircleRing()
    s = C.s
    t = C.t
    lhs = C.mul(s, s)
    rhs = C.sub(C.one, C.mul(t, t))
    assert C.eq(lhs, rhs)
    # units: (t + s) * (t - s) = 2t^2 - 1, invertible as a rational function
    u = C.add(t, s)
    assert C.eq(C.mul(u, C.inv(u)), C.one)


def test_matrix_ring_inverse_and_star():
    M = MatrixRing(QQ, 2)
    a = ((Fraction(1), Fraction(2)), (Fraction(0), Fraction(1)))
    ai = M.inv(a)
    assert M.eq(M.mul(a, ai), M.one)
    assert M.eq(M.star(M.star(a)), a)


def test_invert_dense_singular_raises():
    rows = [[QQ.one, QQ.one], [QQ.one, QQ.one]]
    with pytest.raises(SingularFiniteBlock):
        invert_dense(QQ, rows)


def test_invert_dense_matches_product():
    M = MatrixRing(QQ, 2)
    rows = [[M.one, M.scalar(2)], [M.zero, M.one]]
    inv = invert_dense(M, rows)
    prod = [
        [
            M.add(M.mul(rows[i][0], inv[0][j]), M.mul(rows[i][1], inv[1][j]))
            for j in range(2)
        ]
        for i in range(2)
    ]
    assert M.eq(prod[0][0], M.one) and M.eq(prod[1][1], M.one)
    assert M.is_zero(prod[0][1]) and M.is_zero(prod[1][0])


def test_pythagorean_grid_points_lie_on_circle():
    pts = pythagorean_grid(5, include_endpoints=True)
    assert len(pts) >= 5
    for p in pts:
        t = p.t_in(QQ)
        s = p.s_in(QQ)
        assert t * t + s * s == 1


def test_circle_point_endpoints():
    p = CirclePoint.theta_half_pi()
    assert p.t_in(QQ) == 1 and p.s_in(QQ) == 0
    m = CirclePoint.theta_minus_half_pi()
    assert m.t_in(QQ) == -1
    z = CirclePoint.theta_zero()
    assert z.t_in(QQ) == 0 and z.s_in(QQ) == 1
