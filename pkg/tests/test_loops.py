"""Presented loop units: builders, inverses, and finiteness decomposition."""

import random
from fractions import Fraction

import pytest

from linloop import QQ, LaurentRing, MatrixRing, build_unit, decompose_unit
from linloop.errors import LinloopError
from linloop.loops import random_invertible_matrix, random_involution, support
from linloop.operators import loop_eq, loop_mul


def make_rings(d=2):
    mring = MatrixRing(QQ, d)
    return mring, LaurentRing(mring)


def test_builder_unit_has_exact_inverse():
    mring, lring = make_rings()
    rng = random.Random(3)
    specs = [
        ("const", random_invertible_matrix(mring, rng)),
        ("monomial", 1, random_invertible_matrix(mring, rng)),
        ("mixer", -1, random_involution(mring, rng)),
    ]
    u = build_unit(lring, specs)
    assert loop_eq(mring, loop_mul(mring, u.fwd, u.inv), {0: mring.one})
    assert loop_eq(mring, loop_mul(mring, u.inv, u.fwd), {0: mring.one})


def test_unit_product_and_inverse_laws():
    mring, lring = make_rings(1)
    rng = random.Random(5)
    a = build_unit(lring, [("monomial", 1, mring.one)])
    b = build_unit(lring, [("const", mring.scalar(Fraction(2)))])
    ab = a * b
    assert loop_eq(mring, ab.fwd, loop_mul(mring, a.fwd, b.fwd))
    assert loop_eq(mring, ab.inv, loop_mul(mring, b.inv, a.inv))
    assert loop_eq(mring, a.inverse().fwd, a.inv)


def test_mixer_support_is_one_sided():
    mring, lring = make_rings()
    rng = random.Random(7)
    q = random_involution(mring, rng)
    u = build_unit(lring, [("mixer", 1, q)])
    lo, hi = support(u.fwd)
    assert lo >= 0 and hi <= 1


def test_decompose_unit_product_recovers_unit():
    mring, lring = make_rings()
    rng = random.Random(11)
    specs = [
        ("mixer", 1, random_involution(mring, rng)),
        ("const", random_invertible_matrix(mring, rng)),
        ("monomial", -1, random_invertible_matrix(mring, rng)),
    ]
    u = build_unit(lring, specs)
    decomp = decompose_unit(u)
    assert loop_eq(mring, decomp.product.fwd, u.fwd)
    for f in decomp.factors:
        assert f.tag in ("L", "R")
        assert f.m <= 0 <= f.n


def test_decomposition_windows_accumulate():
    mring, lring = make_rings(1)
    rng = random.Random(13)
    u = build_unit(
        lring,
        [("monomial", 1, mring.one), ("monomial", 1, mring.one)],
    )
    decomp = decompose_unit(u)
    wins = decomp.windows()
    assert len(wins) == len(decomp.factors)
    los = [w[0] for w in wins]
    his = [w[1] for w in wins]
    assert los == sorted(los, reverse=True)
    assert his == sorted(his)


def test_build_unit_rejects_unknown_kind():
    mring, lring = make_rings(1)
    with pytest.raises((LinloopError, ValueError, KeyError, IndexError)):
        build_unit(lring, [("nонsense",)])
