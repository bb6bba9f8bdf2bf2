"""Finite linearization: stripe perturbations, interpolation paths, the
reduction towers, and the endpoint box bounds."""

import random
from fractions import Fraction

import pytest

from linloop import (
    QQ,
    CirclePoint,
    LaurentRing,
    MatrixRing,
    Rotation,
    ZOp,
    build_unit,
    decompose_unit,
    pythagorean_grid,
    vgrade_ring,
)
from linloop import finite as finm
from linloop.errors import NotAPerturbation, StripeClassViolation
from linloop.homotopies import (
    bott,
    k_endpoint_quarter,
    lambda_v,
    linearize_k,
    zop_bind_v,
    zop_embed,
)
from linloop.loops import random_invertible_matrix, random_involution


def _zeq(a: ZOp, b: ZOp) -> bool:
    d = a - b
    return not d.neg and not d.pos and not d.finite


def _decomp(d=2, seed=19, specs=None):
    mring = MatrixRing(QQ, d)
    lring = LaurentRing(mring)
    rng = random.Random(seed)
    specs = specs or [
        ("mixer", 1, random_involution(mring, rng)),
        ("monomial", -1, random_invertible_matrix(mring, rng)),
    ]
    u = build_unit(lring, specs)
    return mring, lring, u, decompose_unit(u)


def test_stripe_deviation_rejects_non_perturbations():
    op = ZOp.shift_poly(QQ, {1: QQ.one})
    with pytest.raises(NotAPerturbation):
        finm.stripe_deviation(op, Fraction(2))


def test_pert_path_unit_inverse_and_halving():
    mring = MatrixRing(QQ, 1)
    base = ZOp.mixer(mring, mring.scalar(Fraction(2)))
    op = base + ZOp.from_finite(mring, {(0, -1): mring.one})
    window = (-2, 2)
    t = Fraction(1, 3)
    pt = finm.pert_path(op, window, t)
    # the straight-line path interpolates toward the reduced operator
    assert _zeq(finm.pert_path(op, window, Fraction(0)), op)
    assert _zeq(finm.pert_path(op, window, Fraction(1)), finm.reduce_box(op, window))
    # halving composes
    half1 = finm.pert_path(op, window, Fraction(1, 2))
    assert _zeq(
        finm.pert_path(half1, window, Fraction(1)),
        finm.reduce_box(op, window),
    )


def test_stripe_inverse_closed_form():
    mring = MatrixRing(QQ, 1)
    s = mring.scalar(Fraction(2))
    base = ZOp.mixer(mring, s)
    op = base + ZOp.from_finite(
        mring, {(0, -2): mring.one, (-1, 1): mring.scalar(Fraction(1, 2))}
    )
    window = (-3, 3)
    inv = finm.stripe_inverse(op, s, window)
    assert _zeq(op * inv, ZOp.one(mring))
    assert _zeq(inv * op, ZOp.one(mring))


def test_stripe_kind_classifies_window():
    mring = MatrixRing(QQ, 1)
    sv = mring.scalar(Fraction(3))
    base = ZOp.mixer(mring, sv)
    op = base + ZOp.from_finite(mring, {(1, 2): mring.one})
    kind = finm.stripe_kind(op, sv, (-3, 3))
    assert kind in ("both", "L", "R")
    with pytest.raises(StripeClassViolation):
        finm.stripe_kind(op, sv, (-1, 0))


def test_tower_reduces_to_pointed_identity():
    mring, lring, u, decomp = _decomp()
    vring = vgrade_ring(mring)
    rot = Rotation.trig(QQ, pythagorean_grid(3)[0])
    tower = finm.build_tower(decomp, rot, vring)
    one_m = ZOp.one(mring)
    for h in tower.red:
        assert _zeq(zop_bind_v(h, vring), one_m)


def test_finite_linearization_endpoints_and_box():
    mring, lring, u, decomp = _decomp()
    vring = vgrade_ring(mring)
    rot = Rotation.trig(QQ, pythagorean_grid(3)[1])
    tower = finm.build_tower(decomp, rot, vring)
    kf0 = finm.finite_linearization(decomp, rot, vring, Fraction(0), tower)
    assert _zeq(kf0, linearize_k(u, rot, vring))
    kf1 = finm.finite_linearization(decomp, rot, vring, Fraction(1), tower)
    assert _zeq(kf1, finm.reduced_endpoint_reference(tower))
    lo, hi = tower.windows[-1]
    dev = kf1 - ZOp.one(vring)
    assert not dev.neg and not dev.pos
    assert all(lo <= i <= hi and lo <= j <= hi for (i, j) in dev.finite)


def test_finite_linearization_constant_at_quarter_turn():
    mring, lring, u, decomp = _decomp(d=1, seed=23)
    vring = vgrade_ring(mring)
    rotq = Rotation.trig(QQ, CirclePoint.theta_half_pi())
    towerq = finm.build_tower(decomp, rotq, vring)
    ref = k_endpoint_quarter(u, vring)
    for h in (Fraction(0), Fraction(2, 5), Fraction(1)):
        assert _zeq(finm.finite_linearization(decomp, rotq, vring, h, towerq), ref)


def test_box_involution_squares_and_transports():
    mring, lring, u, decomp = _decomp(seed=29)
    bf = finm.box_involution(decomp, mring)
    assert _zeq(bf * bf, ZOp.one(mring))
    us1, us1_inv = finm.finite_mixer_product(decomp, mring, Fraction(1))
    m_op = us1 * ZOp.shift_poly(mring, u.inv)
    m_inv = ZOp.shift_poly(mring, u.fwd) * us1_inv
    assert _zeq(bf, m_op * bott(u, mring) * m_inv)


def test_finite_mixer_product_deviates_finitely():
    mring, lring, u, decomp = _decomp(seed=43)
    usf, usf_inv = finm.finite_mixer_product(decomp, mring, Fraction(1, 2))
    assert _zeq(usf * usf_inv, ZOp.one(mring))
    diff = finm.finite_mixer_product(decomp, mring, Fraction(1))[0] - ZOp.shift_poly(
        mring, u.fwd
    )
    assert not diff.neg and not diff.pos
