"""Two-sided and one-sided structured operators: bands, finite parts,
adjoints, and the anomalous one-sided product."""

import random
from fractions import Fraction

from linloop import QQ, MatrixRing, TOp, ZOp
from linloop.loops import LaurentRing, random_invertible_matrix
from linloop.operators import FinZRing, OperatorRing
from linloop import toeplitz as tzm


def test_zop_entry_conventions():
    op = ZOp.sign(QQ)
    assert op.entry(-1, -1) == -1
    assert op.entry(0, 0) == 1
    assert op.entry(-1, 0) == 0
    m = ZOp.mixer(QQ, Fraction(2))
    assert m.entry(-3, -3) == 2 and m.entry(3, 3) == 1


def test_zop_shift_times_adjoint_is_one():
    s = ZOp.shift_poly(QQ, {1: QQ.one})
    si = ZOp.shift_poly(QQ, {-1: QQ.one})
    prod = s * si
    diff = prod - ZOp.one(QQ)
    assert not diff.neg and not diff.pos and not diff.finite


def test_zop_finite_parts_multiply_against_windows():
    rng = random.Random(9)
    mring = MatrixRing(QQ, 2)
    a = ZOp.make(
        mring,
        {0: mring.one},
        {0: mring.one, 1: mring.scalar(2)},
        {(0, -2): random_invertible_matrix(mring, rng)},
    )
    b = ZOp.make(
        mring,
        {0: mring.one, -1: mring.scalar(3)},
        {0: mring.one},
        {(-1, 1): random_invertible_matrix(mring, rng)},
    )
    prod = a * b
    idx = range(-6, 6)
    wa, wb, wp = a.window(idx, idx), b.window(idx, idx), prod.window(idx, idx)
    # interior rows/cols of the window product agree with the structured product
    for i in range(2, 10):
        for j in range(2, 10):
            want = mring.zero
            for x in range(12):
                want = mring.add(want, mring.mul(wa[i][x], wb[x][j]))
            assert mring.eq(want, wp[i][j])


def test_zop_adjoint_is_involutive_antihomomorphism():
    mring = MatrixRing(QQ, 2)
    rng = random.Random(21)
    a = ZOp.make(
        mring,
        {0: mring.one, 1: random_invertible_matrix(mring, rng)},
        {0: mring.one},
        {(2, -1): random_invertible_matrix(mring, rng)},
    )
    b = ZOp.shift_poly(mring, {1: random_invertible_matrix(mring, rng)})
    assert (a.adjoint().adjoint() - a).finite == {}
    lhs = (a * b).adjoint()
    rhs = b.adjoint() * a.adjoint()
    d = lhs - rhs
    assert not d.neg and not d.pos and not d.finite


def test_top_anomalous_product_symbol():
    mring = MatrixRing(QQ, 1)
    rng = random.Random(4)
    a = tzm.random_toeplitz_unit(mring, rng)
    b = tzm.random_toeplitz_unit(mring, rng)
    prod = a.fwd * b.fwd
    from linloop.operators import loop_eq, loop_mul

    assert loop_eq(mring, dict(prod.sym), loop_mul(mring, a.symbol, b.symbol))


def test_top_one_sided_truncation_differs_from_full_band():
    # multiplying shift by co-shift one-sidedly leaves a corner defect
    s = TOp.toeplitz(QQ, {-1: QQ.one})  # upward shift symbol z^{-1}... row convention
    si = TOp.toeplitz(QQ, {1: QQ.one})
    prod = si * s
    w = prod.window(range(3), range(3))
    flat = [w[i][j] for i in range(3) for j in range(3)]
    # exactly one defect entry distinguishes it from the identity
    idw = TOp.one(QQ).window(range(3), range(3))
    diffs = sum(
        1 for i in range(3) for j in range(3) if w[i][j] != idw[i][j]
    )
    assert diffs == 1


def test_finz_ring_inverse():
    mring = MatrixRing(QQ, 1)
    fr = FinZRing(mring)
    k = fr.make(mring.one, {(0, 1): mring.scalar(5)})
    ki = fr.inv(k)
    assert fr.eq(fr.mul(k, ki), fr.one)
    assert fr.eq(fr.mul(ki, k), fr.one)
