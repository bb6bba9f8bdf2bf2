"""One-sided stabilization, symbol deformation, contraction steps, and the
symbol section of a two-sided band unit."""

import random
from fractions import Fraction

import pytest

from linloop import (
    QQ,
    CirclePoint,
    LaurentRing,
    MatrixRing,
    Rotation,
    TOp,
    ZOp,
    build_unit,
    pythagorean_grid,
    vgrade_ring,
)
from linloop.errors import WrongKind
from linloop.loops import random_involution
from linloop.operators import FinZRing, loop_eq
from linloop import toeplitz as tzm


def test_stabilize_symbol_is_constant_in_grading():
    mring = MatrixRing(QQ, 2)
    vring = vgrade_ring(mring)
    rng = random.Random(31)
    a = tzm.random_toeplitz_unit(mring, rng)
    rot = Rotation.trig(mring, pythagorean_grid(3)[0])
    tv = tzm.toeplitz_stabilize(a.fwd, rot, vring)
    want = {e: vring.const(c) for e, c in a.symbol.items()}
    assert loop_eq(vring, dict(tv.sym), want)


def test_stabilize_endpoints():
    mring = MatrixRing(QQ, 1)
    vring = vgrade_ring(mring)
    rng = random.Random(33)
    a = tzm.random_toeplitz_unit(mring, rng)
    rot0 = Rotation.trig(mring, CirclePoint.theta_zero())
    assert tzm.toeplitz_stabilize(a.fwd, rot0, vring) == tzm.top_embed(a.fwd, vring)
    for negate, pt in (
        (False, CirclePoint.theta_half_pi()),
        (True, CirclePoint.theta_minus_half_pi()),
    ):
        rotq = Rotation.trig(mring, pt)
        got = tzm.toeplitz_stabilize(a.fwd, rotq, vring)
        assert got == tzm.stabilize_quarter_display(a.fwd, vring, negate)


def test_symbol_deformation_endpoints():
    mring = MatrixRing(QQ, 1)
    vring = vgrade_ring(mring)
    rng = random.Random(35)
    a = tzm.random_toeplitz_unit(mring, rng)
    rot0 = Rotation.trig(mring, CirclePoint.theta_zero())
    assert tzm.symbol_deformation(a, rot0, vring) == TOp.one(vring)
    rotq = Rotation.trig(mring, CirclePoint.theta_half_pi())
    got = tzm.symbol_deformation(a, rotq, vring)
    assert got == tzm.symbol_deformation_quarter(a, vring, False)


def test_contract_corner_endpoints():
    mring = MatrixRing(QQ, 2)
    fr = FinZRing(mring)
    rng = random.Random(37)
    kappa = tzm.embed_below_zero({(0, 2): random_involution(mring, rng)})
    v0, _ = tzm.contract_trivial_symbol(fr, kappa, CirclePoint.theta_zero())
    corner = TOp.make(fr, {0: fr.one}, {(0, 0): fr.finite(kappa)})
    assert v0 == corner
    vq, _ = tzm.contract_trivial_symbol(fr, kappa, CirclePoint.theta_half_pi())
    assert vq == TOp.one(fr)
    p = pythagorean_grid(3)[2]
    vi, vii = tzm.contract_trivial_symbol(fr, kappa, p)
    assert vi * vii == TOp.one(fr) and vii * vi == TOp.one(fr)


def test_step_symbol_factors_are_units():
    mring = MatrixRing(QQ, 2)
    lring = LaurentRing(mring)
    rng = random.Random(39)
    from linloop.loops import LoopUnit
    from linloop.operators import OperatorRing

    a_unit = tzm.random_toeplitz_unit(mring, rng)
    unit = LoopUnit(lring, a_unit.symbol, a_unit.symbol_inv, ())
    o4 = OperatorRing(mring, "block", 4)
    p = pythagorean_grid(3)[0]
    s_op, s_inv = tzm.step_symbol_factors(unit, a_unit, p)
    assert o4.eq(o4.mul(s_op, s_inv), o4.one)


def test_section_symbol_closed_form_narrow_band():
    mring = MatrixRing(QQ, 1)
    lring = LaurentRing(mring)
    u = build_unit(lring, [("monomial", 1, mring.one)])
    g, ref, oring = tzm.section_of_loop(u)
    assert loop_eq(oring, dict(g.sym), ref)


def test_section_symbol_closed_form_two_sided_band():
    # band support on both sides of zero exercises the below-block
    # cancellations of the inflated conjugation
    mring = MatrixRing(QQ, 2)
    lring = LaurentRing(mring)
    rng = random.Random(41)
    u = build_unit(
        lring,
        [
            ("mixer", 1, random_involution(mring, rng)),
            ("mixer", -1, random_involution(mring, rng)),
        ],
    )
    from linloop.loops import support

    lo, hi = support(u.fwd)
    assert lo < 0 < hi  # genuinely two-sided
    g, ref, oring = tzm.section_of_loop(u)
    assert loop_eq(oring, dict(g.sym), ref)


def test_section_windows_nest_consistently():
    mring = MatrixRing(QQ, 1)
    lring = LaurentRing(mring)
    u = build_unit(lring, [("monomial", -1, mring.scalar(Fraction(2)))])
    g, ref, oring = tzm.section_of_loop(u)
    sym = dict(g.sym)
    for size in (4, 7, 10):
        idx = range(-size, size)
        for e in set(sym) | set(ref):
            wa = sym.get(e, oring.zero).window(idx, idx)
            wb = ref.get(e, oring.zero).window(idx, idx)
            assert all(
                mring.eq(wa[i][j], wb[i][j])
                for i in range(len(wa))
                for j in range(len(wa))
            )
