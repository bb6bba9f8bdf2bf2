"""Independent dense-window engine: product cross-checks and truncated
series inverses for loops outside the exact class."""

import random
from fractions import Fraction

from linloop import QQ, MatrixRing, ZOp
from linloop.loops import LaurentRing, random_invertible_matrix
from linloop.oracle import Bindings, check_top_product, check_zop_product, truncated_loop_inverse
from linloop import toeplitz as tzm


def test_zop_product_against_dense_window():
    mring = MatrixRing(QQ, 2)
    rng = random.Random(17)
    a = ZOp.make(
        mring,
        {0: mring.one, 1: random_invertible_matrix(mring, rng)},
        {0: mring.one},
        {(1, -1): random_invertible_matrix(mring, rng)},
    )
    b = ZOp.make(
        mring,
        {0: mring.one},
        {0: mring.one, -1: random_invertible_matrix(mring, rng)},
        {(-2, 0): random_invertible_matrix(mring, rng)},
    )
    assert check_zop_product(a, b, 16, Bindings())


def test_top_product_against_dense_window():
    mring = MatrixRing(QQ, 1)
    rng = random.Random(23)
    a = tzm.random_toeplitz_unit(mring, rng)
    b = tzm.random_toeplitz_unit(mring, rng)
    assert check_top_product(a.fwd, b.fwd, 16, Bindings())


def test_truncated_geometric_inverse():
    mring = MatrixRing(QQ, 1)
    half = mring.scalar(Fraction(1, 2))
    loop = {0: mring.one, 1: mring.neg(half)}  # 1 - z/2
    trunc = truncated_loop_inverse(mring, loop, 4, Bindings())
    for e in range(5):
        got = trunc.series.get(e)
        assert got == ((Fraction(1, 2) ** e,),)


def test_truncated_inverse_residual_beyond_cutoff():
    mring = MatrixRing(QQ, 1)
    loop = {0: mring.one, 1: mring.scalar(Fraction(1, 3))}
    trunc = truncated_loop_inverse(mring, loop, 6, Bindings())
    # a * truncated-inverse deviates from 1 only beyond the cutoff
    from linloop.operators import loop_mul

    prod = loop_mul(mring, loop, trunc.series)
    for e, c in prod.items():
        if e == 0:
            assert mring.eq(c, mring.one)
        elif not mring.is_zero(c):
            assert abs(e) > trunc.cutoff
