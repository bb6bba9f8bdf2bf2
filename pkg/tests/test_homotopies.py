"""Shifting rotations, stabilization, the linear-loop correspondence, and
the pointed one-parameter linearization family."""

import random
from fractions import Fraction

from linloop import (
    QQ,
    CirclePoint,
    LaurentRing,
    MatrixRing,
    Rotation,
    ZOp,
    build_unit,
    pythagorean_grid,
    vgrade_ring,
)
from linloop.homotopies import (
    bott,
    bott_invert,
    k_endpoint_quarter,
    k_endpoint_zero,
    conj_finite,
    key_coisometry,
    key_isometry,
    linearize_k,
    linearize_u,
    shift_relabel,
    zop_bind_v,
    zop_embed,
)
from linloop.loops import random_invertible_matrix, random_involution
from linloop.operators import loop_mul
from linloop.rings import CircleRing


def _zeq(a: ZOp, b: ZOp) -> bool:
    d = a - b
    return not d.neg and not d.pos and not d.finite


def test_rotation_isometry_symbolically():
    rot = Rotation.trig(CircleRing(), CirclePoint.symbolic())
    assert key_isometry(rot, 8)


def test_rotation_coisometry_at_rational_points():
    for p in pythagorean_grid(3):
        rot = Rotation.trig(QQ, p)
        assert key_coisometry(rot, 8)
    for p in (CirclePoint.theta_half_pi(), CirclePoint.theta_minus_half_pi()):
        assert key_coisometry(Rotation.trig(QQ, p), 8)


def test_stabilize_endomorphism():
    p = pythagorean_grid(3)[1]
    rot = Rotation.trig(QQ, p)
    a = {(0, 1): Fraction(2), (2, 0): Fraction(-1, 3)}
    b = {(1, 1): Fraction(1, 2), (0, 2): Fraction(4)}
    ta = conj_finite(rot, a)
    tb = conj_finite(rot, b)
    # multiplicativity on finite matrices
    def fmul(x, y):
        out = {}
        for (i, k), v in x.items():
            for (k2, j), w in y.items():
                if k == k2:
                    out[(i, j)] = out.get((i, j), Fraction(0)) + v * w
        return {c: v for c, v in out.items() if v != 0}

    assert conj_finite(rot, fmul(a, b)) == fmul(ta, tb)


def test_stabilize_endpoints():
    rng = random.Random(6)
    fin = {(0, 0): Fraction(3), (1, 2): Fraction(-2)}
    flat = conj_finite(Rotation.trig(QQ, CirclePoint.theta_zero()), fin)
    assert flat == fin
    quarter = conj_finite(
        Rotation.trig(QQ, CirclePoint.theta_half_pi()), fin
    )
    assert quarter == shift_relabel(fin)


def test_bott_is_involution_and_inverts():
    mring = MatrixRing(QQ, 2)
    lring = LaurentRing(mring)
    rng = random.Random(8)
    u = build_unit(
        lring,
        [
            ("mixer", 1, random_involution(mring, rng)),
            ("const", random_invertible_matrix(mring, rng)),
        ],
    )
    b = bott(u, mring)
    assert _zeq(b * b, ZOp.one(mring))
    a1 = sum_at_one = None
    got = bott_invert(b)
    # recovered loop equals a(z) a(1)^{-1}
    a_at_one = mring.zero
    for c in u.fwd.values():
        a_at_one = mring.add(a_at_one, c)
    inv1 = mring.inv(a_at_one)
    want = {e: mring.mul(c, inv1) for e, c in u.fwd.items()}
    want = {e: c for e, c in want.items() if not mring.is_zero(c)}
    assert set(got) == set(want)
    for e in want:
        assert mring.eq(got[e], want[e])


def test_linearization_is_multiplicative():
    mring = MatrixRing(QQ, 1)
    lring = LaurentRing(mring)
    vring = vgrade_ring(mring)
    rot = Rotation.trig(QQ, pythagorean_grid(3)[0])
    rng = random.Random(10)
    a = build_unit(lring, [("monomial", 1, mring.one)])
    b = build_unit(lring, [("const", mring.scalar(Fraction(3)))])
    ua = linearize_u(a.fwd, rot, vring)
    ub = linearize_u(b.fwd, rot, vring)
    uab = linearize_u(loop_mul(mring, a.fwd, b.fwd), rot, vring)
    assert _zeq(ua * ub, uab)


def test_pointed_family_endpoints():
    mring = MatrixRing(QQ, 2)
    lring = LaurentRing(mring)
    vring = vgrade_ring(mring)
    rng = random.Random(12)
    u = build_unit(
        lring,
        [
            ("monomial", -1, random_invertible_matrix(mring, rng)),
            ("mixer", 1, random_involution(mring, rng)),
        ],
    )
    flat = linearize_k(u, Rotation.trig(QQ, CirclePoint.theta_zero()), vring)
    assert _zeq(flat, k_endpoint_zero(u, vring))
    quarter = linearize_k(u, Rotation.trig(QQ, CirclePoint.theta_half_pi()), vring)
    assert _zeq(quarter, k_endpoint_quarter(u, vring))


def test_pointed_family_is_unital_at_interior_points():
    mring = MatrixRing(QQ, 1)
    lring = LaurentRing(mring)
    vring = vgrade_ring(mring)
    u = build_unit(lring, [("monomial", 1, mring.one)])
    for p in pythagorean_grid(3):
        rot = Rotation.trig(QQ, p)
        k = linearize_k(u, rot, vring)
        # binding the grading variable at 1 collapses the family to 1
        assert _zeq(zop_bind_v(k, vring), ZOp.one(mring))
