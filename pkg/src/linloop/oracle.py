"""Dense-window oracle: independent truncation checks for structured ops.

The structured algebras compute products by closed-form rules.  This module
re-does the same computations the naive way -- truncate to a dense window,
multiply densely -- and compares on the *safe window*: the sub-window whose
entries cannot be contaminated by the truncation boundary, namely the
original window shrunk by the band breadth of the left factor.

Also provides a truncated geometric inverse for loops whose exact inverse
is an infinite series, with an explicit residual window and a decay
certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .errors import NoInvertibleLeadingStructure, NotInvertible
from .operators import Loop, TOp, ZOp, loop_mul
from .rings import (
    CIRCLE,
    CircleRing,
    FunctionField,
    LaurentRing,
    MatrixRing,
    RationalRing,
    Ring,
)


# ---------------------------------------------------------------------------
# numeric bindings: map tower elements to Fractions / dense Fraction matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bindings:
    """Rational evaluation data for the symbolic layers.

    ``t``/``s`` evaluate circle or function-field leaves; ``v`` evaluates a
    grading variable layer.  All values are Fractions.
    """

    t: Optional[Fraction] = None
    s: Optional[Fraction] = None
    v: Optional[Fraction] = None


def eval_scalar(ring: Ring, x, b: Bindings) -> Fraction:
    if isinstance(ring, RationalRing):
        return x
    if isinstance(ring, FunctionField):
        if b.t is None:
            raise ValueError("binding for t required")
        return x.eval(b.t)
    if isinstance(ring, CircleRing):
        if b.t is None or b.s is None:
            raise ValueError("bindings for t and s required")
        return ring.eval(x, b.t, b.s)
    raise TypeError(f"not a scalar leaf: {ring!r}")


def eval_entry(ring: Ring, x, b: Bindings):
    """Evaluate an entry of any tower ring to a Fraction or Fraction matrix."""
    if isinstance(ring, LaurentRing):
        if b.v is None:
            raise ValueError("binding for v required")
        base = ring.base
        acc = None
        for e, c in x.items():
            val = eval_entry(base, c, b)
            w = b.v**e
            term = _scale(val, w)
            acc = term if acc is None else _madd(acc, term)
        if acc is None:
            acc = eval_entry(base, base.zero, b)
        return acc
    if isinstance(ring, MatrixRing):
        return tuple(
            tuple(eval_entry(ring.base, v, b) for v in row) for row in x
        )
    return eval_scalar(ring, x, b)


def _scale(val, w: Fraction):
    if isinstance(val, tuple):
        return tuple(tuple(_scale(v, w) for v in row) for row in val)
    return val * w


def _madd(a, bb):
    if isinstance(a, tuple):
        return tuple(tuple(_madd(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, bb))
    return a + bb


def numeric_norm(val) -> float:
    """Sup-norm of a Fraction or nested Fraction tuple."""
    if isinstance(val, tuple):
        return max((numeric_norm(v) for row in val for v in row), default=0.0)
    return abs(float(val))


# ---------------------------------------------------------------------------
# dense windows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DenseWindow:
    """A dense cut-out of an operator: rows/cols ``lo..hi`` inclusive.

    ``breadth`` bounds the band breadth (max |i - j| over nonzero entries
    outside the window's interior knowledge); products are trusted only on
    the window shrunk by the left factor's breadth.
    """

    lo: int
    hi: int
    rows: Tuple[Tuple[Any, ...], ...]
    breadth: int

    def at(self, i: int, j: int):
        return self.rows[i - self.lo][j - self.lo]


def zop_breadth(a: ZOp) -> int:
    cands = [abs(e) for e in a.neg] + [abs(e) for e in a.pos]
    cands += [abs(i - j) for (i, j) in a.finite]
    return max(cands, default=0)


def top_breadth(a: TOp) -> int:
    cands = [abs(e) for e in a.sym] + [abs(i - j) for (i, j) in a.finite]
    return max(cands, default=0)


def zop_window(a: ZOp, w: int, b: Bindings) -> DenseWindow:
    ring = a.cring
    rows = tuple(
        tuple(eval_entry(ring, a.entry(i, j), b) for j in range(-w, w + 1))
        for i in range(-w, w + 1)
    )
    return DenseWindow(-w, w, rows, zop_breadth(a))


def top_window(a: TOp, w: int, b: Bindings) -> DenseWindow:
    ring = a.cring
    rows = tuple(
        tuple(eval_entry(ring, a.entry(i, j), b) for j in range(0, w + 1))
        for i in range(0, w + 1)
    )
    return DenseWindow(0, w, rows, top_breadth(a))


def _mul_vals(x, y):
    if isinstance(x, tuple):
        d = len(x)
        return tuple(
            tuple(sum(x[i][k] * y[k][j] for k in range(d)) for j in range(d))
            for i in range(d)
        )
    return x * y


def _zero_like(x):
    if isinstance(x, tuple):
        d = len(x)
        return tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d))
    return Fraction(0)


def dense_mul(a: DenseWindow, b: DenseWindow) -> DenseWindow:
    """Dense product; the result is trusted on the window shrunk by the
    breadth of the left factor (entries needing middle indices outside the
    window are contaminated)."""
    if (a.lo, a.hi) != (b.lo, b.hi):
        raise ValueError("windows must align")
    n = a.hi - a.lo + 1
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = _zero_like(a.rows[0][0])
            for k in range(n):
                acc = _madd(acc, _mul_vals(a.rows[i][k], b.rows[k][j]))
            row.append(acc)
        rows.append(tuple(row))
    return DenseWindow(a.lo, a.hi, tuple(rows), a.breadth + b.breadth)


def safe_range(win: DenseWindow, margin: int):
    return range(win.lo + margin, win.hi - margin + 1)


def agree_on_safe_window(
    exact: DenseWindow, dense: DenseWindow, margin: int
) -> bool:
    """Compare an exactly computed window with a dense-product window on the
    sub-window unaffected by truncation."""
    rng = list(safe_range(dense, margin))
    lo = max(exact.lo, dense.lo)
    hi = min(exact.hi, dense.hi)
    for i in rng:
        if not (lo <= i <= hi):
            continue
        for j in rng:
            if not (lo <= j <= hi):
                continue
            if exact.at(i, j) != dense.at(i, j):
                return False
    return True


def check_zop_product(a: ZOp, b: ZOp, w: int, bind: Bindings) -> bool:
    """Exact product vs dense truncated product on the safe window."""
    exact = zop_window(a * b, w, bind)
    dense = dense_mul(zop_window(a, w, bind), zop_window(b, w, bind))
    return agree_on_safe_window(exact, dense, zop_breadth(a))


def check_top_product(a: TOp, b: TOp, w: int, bind: Bindings) -> bool:
    """One-sided truncation needs no margin at the zero end: the half-line
    product is genuinely finite there.  Only the upper end is shrunk."""
    exact = top_window(a * b, w, bind)
    dense = dense_mul(top_window(a, w, bind), top_window(b, w, bind))
    m = top_breadth(a)
    for i in range(0, w - m + 1):
        for j in range(0, w - m + 1):
            if exact.at(i, j) != dense.at(i, j):
                return False
    return True


# ---------------------------------------------------------------------------
# truncated geometric loop inverse with certificate
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedInverse:
    """An order-limited inverse of a loop, with an explicit error record.

    ``series`` satisfies  a * series = 1 + residual,  where the residual's
    support lies strictly above ``cutoff``.  ``decay`` is a float map of
    sup-norms of the residual coefficients by exponent, for eyeballing
    geometric decay; the exact statement is only the support claim.
    """

    series: Loop
    cutoff: int
    residual: Loop
    decay: Dict[int, float]


def truncated_loop_inverse(
    cring: Ring, a: Loop, order: int, bind: Bindings
) -> TruncatedInverse:
    """Invert a loop as a truncated series around an invertible extreme term.

    Writes a = a_m z^m (1 + r) with r supported in positive degrees (m the
    lowest exponent, a_m invertible) and expands the finite geometric sum
    to the given order.  Raises if no invertible extreme coefficient exists.
    """
    if not a:
        raise NotInvertible("zero loop")
    m = min(a)
    try:
        am_inv = cring.inv(a[m])
    except NotInvertible as exc:
        raise NoInvertibleLeadingStructure(
            "lowest coefficient is not invertible"
        ) from exc
    # r = a_m^{-1} z^{-m} a - 1, supported in degrees >= 1
    r: Loop = {}
    for e, c in a.items():
        if e == m:
            continue
        r[e - m] = cring.mul(am_inv, c)
    # (1 + r)^{-1} ~ sum (-r)^k, truncated
    acc: Loop = {0: cring.one}
    term: Loop = {0: cring.one}
    negr = {e: cring.neg(c) for e, c in r.items()}
    for _ in range(order):
        term = loop_mul(cring, term, negr)
        term = {e: c for e, c in term.items() if e <= order}
        if not term:
            break
        for e, c in term.items():
            acc[e] = cring.add(acc.get(e, cring.zero), c)
    acc = {e: c for e, c in acc.items() if not cring.is_zero(c)}
    # series = acc * z^{-m} a_m^{-1}
    series = {e - m: cring.mul(c, am_inv) for e, c in acc.items()}
    prod = loop_mul(cring, a, series)
    prod[0] = cring.sub(prod.get(0, cring.zero), cring.one)
    residual = {e: c for e, c in prod.items() if not cring.is_zero(c)}
    cutoff = min(residual) - 1 if residual else order
    decay = {
        e: numeric_norm(eval_entry(cring, c, bind))
        for e, c in residual.items()
    }
    return TruncatedInverse(series, cutoff, residual, decay)
