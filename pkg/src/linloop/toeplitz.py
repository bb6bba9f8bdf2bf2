"""Stabilization and contraction machinery for one-sided operators.

This module covers three related constructions on the half-line algebra:

* the one-parameter stabilizing family ``T`` that conjugates a one-sided
  operator by the graded rotation isometry, together with the induced
  family ``Z`` that deforms the symbol of a unit to its value at 1;
* the corner-conjugation homomorphism ``L`` (and its inflated variant)
  that turns a two-sided unit into a one-sided unit whose symbol records
  the twisted commutator with the half-line sign; composing it with the
  band embedding produces the section map ``G``;
* the two contraction steps for one-sided units: the block-rotation step
  that trivializes the symbol, and the corner-rotation step that contracts
  units with trivial symbol to the identity.

Everything is exact: coefficients live in the supplied rings and no
truncation is performed anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import (
    EndpointMismatch,
    NotInvertible,
    RingMismatch,
    WrongKind,
)
from .rings import CirclePoint, LaurentRing, MatrixRing, Ring
from .loops import LoopUnit, make_generator, random_invertible_matrix
from .operators import (
    BlockTOp,
    FinZ,
    FinZRing,
    Finite,
    Loop,
    OperatorRing,
    TOp,
    ZOp,
    _fin_add,
    _fin_normalize,
    loop_eq,
    loop_mul,
    loop_rev,
    zop_sign_conjugate,
    zop_to_quad,
)
from .homotopies import Rotation, loop_in_v

# ---------------------------------------------------------------------------
# symbols of one-sided operators
# ---------------------------------------------------------------------------


def top_symbol(a: TOp) -> Loop:
    """The band part of a one-sided operator, as a Laurent polynomial."""
    return dict(a.sym)


def loop_value(cring: Ring, a: Loop, negate: bool = False):
    """Evaluate a loop at 1 (or at -1 with ``negate``)."""
    vals = []
    for e, c in a.items():
        vals.append(cring.neg(c) if negate and e % 2 else c)
    return cring.total(vals)


def top_embed(a: TOp, vring: LaurentRing) -> TOp:
    """View a plain one-sided operator inside the graded coefficient ring."""
    return a.map_coeffs(vring.const, vring)


def top_bind_v(a: TOp, vring: LaurentRing, value=None) -> TOp:
    """Substitute a ring element (default 1) for the grading variable."""
    mring = vring.base
    val = value if value is not None else mring.one
    return a.map_coeffs(lambda c: vring.bind(c, val, mring), mring)


# ---------------------------------------------------------------------------
# one-sided units with exact inverses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ToeplitzUnit:
    """An invertible one-sided operator carried together with its inverse."""

    ring: Ring
    fwd: TOp
    inv: TOp

    def __post_init__(self) -> None:
        one = TOp.one(self.ring)
        if self.fwd * self.inv != one or self.inv * self.fwd != one:
            raise NotInvertible("stored inverse fails verification")

    def inverse(self) -> "ToeplitzUnit":
        return ToeplitzUnit(self.ring, self.inv, self.fwd)

    def __mul__(self, o: "ToeplitzUnit") -> "ToeplitzUnit":
        if o.ring != self.ring:
            raise RingMismatch("units over different rings")
        return ToeplitzUnit(self.ring, self.fwd * o.fwd, o.inv * self.inv)

    @property
    def symbol(self) -> Loop:
        return dict(self.fwd.sym)

    @property
    def symbol_inv(self) -> Loop:
        return dict(self.inv.sym)


def _finite_unit(mring: Ring, fin: Finite) -> ToeplitzUnit:
    """1 + (finite matrix), inverted by dense linear algebra."""
    fr = FinZRing(mring)
    x = fr.make(mring.one, fin)
    xi = fr.inv(x)
    return ToeplitzUnit(
        mring,
        TOp.make(mring, {0: mring.one}, fin),
        TOp.make(mring, {0: mring.one}, dict(xi.fin)),
    )


def build_toeplitz_unit(mring: Ring, specs: Sequence[tuple]) -> ToeplitzUnit:
    """Assemble a one-sided unit from a list of factor specifications.

    Recognized factors:

    * ``("const", c)``         -- the constant band ``c`` (invertible);
    * ``("band", a, ainv)``    -- compressions of one-sided loops: all
      exponents of both ``a`` and ``ainv`` must share a sign, so the
      compression is multiplicative and the inverse stays exact;
    * ``("finite", fin)``      -- 1 + finite, inverted densely.
    """
    acc = ToeplitzUnit(mring, TOp.one(mring), TOp.one(mring))
    ring = LaurentRing(mring, "z")
    for spec in specs:
        kind = spec[0]
        if kind == "const":
            c = spec[1]
            fac = ToeplitzUnit(
                mring,
                TOp.toeplitz(mring, {0: c}),
                TOp.toeplitz(mring, {0: mring.inv(c)}),
            )
        elif kind == "band":
            a, ainv = spec[1], spec[2]
            exps = [e for e in a] + [e for e in ainv]
            if any(e < 0 for e in exps) and any(e > 0 for e in exps):
                raise WrongKind("band factor mixes positive and negative exponents")
            fac = ToeplitzUnit(
                mring, TOp.toeplitz(mring, a), TOp.toeplitz(mring, ainv)
            )
        elif kind == "finite":
            fac = _finite_unit(mring, _fin_normalize(mring, dict(spec[1])))
        else:
            raise WrongKind(f"unknown one-sided factor kind {kind!r}")
        acc = acc * fac
    return acc


def random_toeplitz_unit(
    mring: MatrixRing, rng: random.Random, steps: int = 3, width: int = 2
) -> ToeplitzUnit:
    """A random product of constant, one-sided band, and finite factors."""
    ring = LaurentRing(mring, "z")
    specs: List[tuple] = []
    for _ in range(steps):
        kind = rng.choice(["const", "up", "down", "finite"])
        if kind == "const":
            specs.append(("const", random_invertible_matrix(mring, rng)))
        elif kind in ("up", "down"):
            n = rng.randint(1, width)
            nil = {n: _strict_upper(mring, rng)}
            gen = make_generator(ring, ("unipotent", nil, mring.d))
            a, ainv = gen.fwd, gen.inv
            if kind == "down":
                a, ainv = loop_rev(a), loop_rev(ainv)
            specs.append(("band", a, ainv))
        else:
            # a strictly triangular perturbation keeps 1 + finite invertible
            span = rng.randint(1, 2)
            lower = rng.random() < 0.5
            fin = {}
            for i in range(span + 1):
                for j in range(span + 1):
                    if (j > i) != lower and j != i:
                        fin[(i, j)] = mring.scalar(
                            Fraction(rng.randint(-2, 2), rng.randint(1, 3))
                        )
            specs.append(("finite", fin))
    return build_toeplitz_unit(mring, specs)


def _strict_upper(mring: MatrixRing, rng: random.Random):
    """A strictly upper triangular (hence nilpotent) coefficient matrix."""
    d = mring.d
    rows = [
        [
            Fraction(rng.randint(-2, 2), rng.randint(1, 3)) if j > i else 0
            for j in range(d)
        ]
        for i in range(d)
    ]
    return mring.from_rows(rows)


# ---------------------------------------------------------------------------
# the stabilizing family on one-sided operators
# ---------------------------------------------------------------------------


def toeplitz_stabilize(a: TOp, rot: Rotation, vring: LaurentRing) -> TOp:
    """Stabilize a one-sided operator by the graded rotation conjugation.

    The result is a one-sided operator over the graded coefficient ring.
    The symbol is carried over unchanged; each band exponent ``e``
    contributes its closed-form finite correction graded by ``v^(e+j-i)``,
    and the finite part is conjugated entrywise with grade
    ``v^((n-i)+(j-m))``.  The same uniform formula is valid at the quarter
    turns, where the corner entry assembles the symbol value at ``+-v``.
    """
    mring = a.cring
    if rot.ring != mring:
        raise RingMismatch("rotation scalars live in a different ring")
    R = vring
    sym = {e: R.const(c) for e, c in a.sym.items()}
    fin: Finite = {}
    for e, c in a.sym.items():
        for (i, j), val in rot.conj_shift_correction(e).items():
            _fin_add(R, fin, (i, j), R.monomial(e + j - i, mring.mul(c, val)))
    for (n, m), c in a.finite.items():
        col = rot.left_col(n)
        row = rot.right_row(m)
        for i, ci in col.items():
            for j, rj in row.items():
                v = mring.mul(ci, mring.mul(c, rj))
                _fin_add(R, fin, (i, j), R.monomial((n - i) + (j - m), v))
    return TOp.make(R, sym, fin)


def stabilize_quarter_display(a: TOp, vring: LaurentRing, negate: bool = False) -> TOp:
    """The quarter-turn value: symbol at +-v in the corner, then the shift
    conjugate of the operator itself."""
    mring = a.cring
    ae = top_embed(a, vring)
    w = TOp.toeplitz(vring, {1: vring.one})
    wi = TOp.toeplitz(vring, {-1: vring.one})
    sv = loop_in_v(vring, a.sym, negate)
    out = w * ae * wi
    return out + TOp.from_finite(vring, {(0, 0): sv})


def symbol_deformation(unit: ToeplitzUnit, rot: Rotation, vring: LaurentRing) -> TOp:
    """The family Z: stabilized unit times the inverse of its ungraded twin."""
    ta = toeplitz_stabilize(unit.fwd, rot, vring)
    ti = toeplitz_stabilize(unit.inv, rot, vring)
    ti1 = top_embed(top_bind_v(ti, vring), vring)
    return ta * ti1


def symbol_deformation_quarter(
    unit: ToeplitzUnit, vring: LaurentRing, negate: bool = False
) -> TOp:
    """Corner embedding of (symbol at +-v) * (symbol at +-1)^{-1}."""
    sv = loop_in_v(vring, unit.fwd.sym, negate)
    s1i = vring.const(loop_value(unit.ring, unit.inv.sym, negate))
    return TOp.corner_embed(vring, vring.mul(sv, s1i))


# ---------------------------------------------------------------------------
# the corner-conjugation homomorphism on scalar-plus-finite coefficients
# ---------------------------------------------------------------------------


def split_finite(fin: Finite) -> Dict[str, Finite]:
    """Split a finite two-sided matrix by the signs of its index pair.

    Keys: "pp" (both at or above zero), "pm" (row >= 0 > column),
    "mp" (row < 0 <= column), "mm" (both below zero).
    """
    out: Dict[str, Finite] = {"pp": {}, "pm": {}, "mp": {}, "mm": {}}
    for (i, j), c in fin.items():
        key = ("p" if i >= 0 else "m") + ("p" if j >= 0 else "m")
        out[key][(i, j)] = c
    return out


def corner_conjugate_unit(fr: FinZRing, k: FinZ) -> TOp:
    """The one-sided unit W(mix(z)) k W(mix(z^{-1})) for a unit k = 1 + finite.

    ``mix(z)`` is the linear loop that multiplies the negative half-line by
    ``z``.  The result is tridiagonal in the band picture: the diagonal
    carries the sign-even part, the off-diagonals the sign-odd corners, and
    the (0, 0) entry loses the below-zero compression.
    """
    base = fr.base
    if not base.eq(k.c, base.one):
        raise WrongKind("corner conjugation expects a unit of the form 1 + finite")
    parts = split_finite(k.fin)
    plus: Finite = dict(parts["pp"])
    for key, v in parts["mm"].items():
        plus[key] = v
    sym: Dict[int, FinZ] = {0: fr.make(base.one, plus)}
    mp = fr.finite(parts["mp"])
    pm = fr.finite(parts["pm"])
    if not fr.eq(mp, fr.zero):
        sym[1] = mp
    if not fr.eq(pm, fr.zero):
        sym[-1] = pm
    fin: Finite = {}
    mm = fr.finite(parts["mm"])
    if not fr.eq(mm, fr.zero):
        fin[(0, 0)] = fr.neg(mm)
    return TOp.make(fr, sym, fin)


def _reflect_rows(fin: Finite, base: Ring) -> Finite:
    """Left action of the quarter-turn reflection (x -> -1-x with sign)."""
    out: Finite = {}
    for (x, j), v in fin.items():
        sgn = 1 if x >= 0 else -1
        _fin_add(base, out, (-1 - x, j), v if sgn == 1 else base.neg(v))
    return out


def _reflect_cols(fin: Finite, base: Ring) -> Finite:
    """Right action of the quarter-turn reflection."""
    out: Finite = {}
    for (i, y), v in fin.items():
        j = -1 - y
        sgn = 1 if j >= 0 else -1
        _fin_add(base, out, (i, j), v if sgn == 1 else base.neg(v))
    return out


def corner_rotate(fr: FinZRing, kappa: Finite, point: CirclePoint) -> FinZ:
    """Conjugate 1 + kappa by the rotation mixing the two half-lines.

    The rotation is ``s + t J`` where ``J`` maps the upward half-line onto
    the reflected downward one and back with a sign, so ``J^2 = -1``.
    """
    base = fr.base
    t = point.t_in(base)
    s = point.s_in(base)
    s2 = base.mul(s, s)
    st = base.mul(s, t)
    t2 = base.mul(t, t)
    fin: Finite = {}
    for key, v in kappa.items():
        _fin_add(base, fin, key, base.mul(s2, v))
    for key, v in _reflect_rows(kappa, base).items():
        _fin_add(base, fin, key, base.mul(st, v))
    for key, v in _reflect_cols(kappa, base).items():
        _fin_add(base, fin, key, base.neg(base.mul(st, v)))
    for key, v in _reflect_rows(_reflect_cols(kappa, base), base).items():
        _fin_add(base, fin, key, base.neg(base.mul(t2, v)))
    return fr.make(base.one, fin)


def embed_below_zero(fin: Finite) -> Finite:
    """Relocate a one-sided finite matrix to the reflected negative block."""
    return {(-1 - i, -1 - j): v for (i, j), v in fin.items()}


def contract_trivial_symbol(
    fr: FinZRing, kappa: Finite, point: CirclePoint
) -> Tuple[TOp, TOp]:
    """One step of the contraction of a unit with trivial symbol.

    ``kappa`` is the finite part of the unit ``k = 1 + kappa``, supported
    below zero.  Returns the deformed unit and its inverse; at the flat
    point the pair is the corner embedding of ``k``, at the quarter turn it
    is the identity.
    """
    base = fr.base
    kth = corner_rotate(fr, kappa, point)
    kthi = fr.inv(kth)
    diag = TOp.toeplitz(fr, {0: kth})
    diag_i = TOp.toeplitz(fr, {0: kthi})
    lt = corner_conjugate_unit(fr, kth)
    lti = corner_conjugate_unit(fr, kthi)
    v = diag * lti
    vi = lt * diag_i
    if v * vi != TOp.one(fr) or vi * v != TOp.one(fr):
        raise NotInvertible("contraction step is not a unit")
    return v, vi


# ---------------------------------------------------------------------------
# the inflated corner conjugation and the section map
# ---------------------------------------------------------------------------


def _corner_elem(cring: Ring, c) -> ZOp:
    return ZOp.from_finite(cring, {(0, 0): c})


def inflate_corner_conjugate(k: ZOp, oring: OperatorRing) -> ZOp:
    """The inflated corner conjugation of a two-sided band-plus-finite unit.

    The rows at and above zero of the plain corner conjugation are spread
    out: entry ``(i, j)`` (both nonnegative) of the result is the scalar
    ``k^{++}_{i,j}`` sitting in the corner of the coefficient, the column
    at -1 carries the rows of ``k^{+-}`` moved into row zero, and the row
    at -1 carries the columns of ``k^{-+}`` moved into column zero.  Below
    -1 the operator is the tridiagonal band of the plain conjugation.
    """
    R = k.cring
    if oring.base != R or oring.kind != "z":
        raise RingMismatch("inflation needs the two-sided coefficient ring")
    half = R.half
    kp = (k + zop_sign_conjugate(k)).scale(half)
    # corner compressions of the band-plus-finite operator
    pm_fin: Finite = {}
    mp_fin: Finite = {}
    for (i, j), c in k.finite.items():
        if i >= 0 and j < 0:
            _fin_add(R, pm_fin, (i, j), c)
        elif i < 0 <= j:
            _fin_add(R, mp_fin, (i, j), c)
    for e, c in k.pos.items():
        if e >= 1:
            for i in range(0, e):
                _fin_add(R, pm_fin, (i, i - e), c)
    for e, c in k.neg.items():
        if e <= -1:
            for i in range(e, 0):
                _fin_add(R, mp_fin, (i, i - e), c)
    neg: Dict[int, ZOp] = {0: kp}
    # band coefficients adjacent to the diagonal
    mp_op = ZOp.from_finite(R, mp_fin)
    pm_op = ZOp.from_finite(R, pm_fin)
    if not mp_op.is_zero():
        neg[-1] = mp_op
    if not pm_op.is_zero():
        neg[1] = pm_op
    pos: Dict[int, ZOp] = {}
    for e, c in k.pos.items():
        pos[e] = _corner_elem(R, c)
    fin: Dict[Tuple[int, int], ZOp] = {}

    def fadd(coord, elem: ZOp) -> None:
        if coord in fin:
            fin[coord] = fin[coord] + elem
        else:
            fin[coord] = elem

    # deviations of the inflated quadrant from its band
    for (i, j), c in k.finite.items():
        if i >= 0 and j >= 0:
            fadd((i, j), _corner_elem(R, c))
    # spill of the inflated band into the columns below zero
    for e, c in k.pos.items():
        if e >= 1:
            for i in range(0, e):
                fadd((i, i - e), -_corner_elem(R, c))
    # column -1: rows of the +- compression moved into row zero
    rows_pm: Dict[int, Finite] = {}
    for (x, y), c in pm_fin.items():
        rows_pm.setdefault(x, {})[(0, y)] = c
    for x, payload in rows_pm.items():
        fadd((x, -1), ZOp.from_finite(R, payload))
    # row -1: columns of the -+ compression moved into column zero,
    # replacing the band value that sits there
    cols_mp: Dict[int, Finite] = {}
    for (x, y), c in mp_fin.items():
        cols_mp.setdefault(y, {})[(x, 0)] = c
    for y, payload in cols_mp.items():
        fadd((-1, y), ZOp.from_finite(R, payload))
    if not mp_op.is_zero():
        fadd((-1, 0), -mp_op)
    out_fin = {kk: v for kk, v in fin.items() if not v.is_zero()}
    # the raw map is a nonunital homomorphism; extend it to units by
    # 1 + (raw of k - 1).  Raw is linear, and raw(1) differs from 1 only
    # in the constant coefficient of the inflated quadrant.
    adjust = ZOp.one(R) - _corner_elem(R, R.one)
    pos[0] = pos.get(0, ZOp.zero(R)) + adjust
    if pos[0].is_zero():
        del pos[0]
    return ZOp.make(oring, neg, pos, out_fin)


def half_shift_loops(cring: Ring) -> Tuple[Loop, Loop]:
    """The linear loops that multiply the negative half-line by z / z^{-1}.

    Returned as loops with two-sided operator coefficients: the generator
    exponent carries the below-zero projection, the constant term the
    at-or-above-zero projection.
    """
    pminus = ZOp(cring, {0: cring.one}, {}, {})
    pplus = ZOp.projector(cring)
    return {1: pminus, 0: pplus}, {-1: pminus, 0: pplus}


def twisted_commutator_loop(k: ZOp, kinv: ZOp, oring: OperatorRing) -> Loop:
    """The loop k mix(z^{-1}) k^{-1} mix(z) with operator coefficients."""
    R = k.cring
    lam_z, lam_zi = half_shift_loops(R)
    b = loop_mul(oring, {0: k}, lam_zi)
    b = loop_mul(oring, b, {0: kinv})
    return loop_mul(oring, b, lam_z)


def section_product(k: ZOp, kinv: ZOp) -> Tuple[ZOp, OperatorRing]:
    """The product (inflated conjugation) (corner mixer) (band of the
    twisted commutator loop), which is the identity away from the inflated
    corner block."""
    R = k.cring
    oring = OperatorRing(R, "z")
    lt = inflate_corner_conjugate(k, oring)
    lam = ZOp.make(oring, {0: kinv}, {0: ZOp.one(R)}, {})
    ub = ZOp.shift_poly(oring, twisted_commutator_loop(k, kinv, oring))
    return lt * lam * ub, oring


def section_map(k: ZOp, kinv: ZOp) -> TOp:
    """Extract the one-sided operator occupying the inflated corner block.

    Raises if the product fails to be the identity away from that block,
    which would signal a bookkeeping error upstream.
    """
    prod, oring = section_product(k, kinv)
    R = k.cring
    if not loop_eq(oring, prod.neg, {0: ZOp.one(R)}):
        raise WrongKind("section product deviates from 1 below the corner block")
    # outside the corner block the entries (band plus deviation) must be the
    # identity; the band of wide symbols leaks below the block and is
    # cancelled there by finite deviations
    for (i, j) in prod.finite:
        if i < -1 or j < -1:
            want = ZOp.one(R) if i == j else ZOp.zero(R)
            if prod.entry(i, j) != want:
                raise WrongKind("section product has stray entries below the block")
    for e, c in prod.pos.items():
        for i in range(0, e - 1):
            if not prod.entry(i, i - e).is_zero():
                raise WrongKind("section product has stray entries below the block")
    sym = dict(prod.pos)
    fin: Dict[Tuple[int, int], ZOp] = {}

    def fadd(coord, elem: ZOp) -> None:
        if coord in fin:
            fin[coord] = fin[coord] + elem
        else:
            fin[coord] = elem

    for (i, j), c in prod.finite.items():
        fadd((i + 1, j + 1), c)
    # row zero of the block comes from the banded row at -1
    fadd((0, 0), ZOp.one(R))
    for e, c in sym.items():
        if e <= 0:
            fadd((0, -e), -c)
    out_fin = {kk: v for kk, v in fin.items() if not v.is_zero()}
    return TOp.make(oring, sym, out_fin)


def section_of_loop(unit: LoopUnit) -> Tuple[TOp, Loop, OperatorRing]:
    """The section map applied to the band embedding of a loop unit.

    Returns the one-sided operator, the closed form of its symbol (the
    scalar loop times the twisted commutator), and the coefficient ring.
    """
    mring = unit.ring.base
    k = ZOp.shift_poly(mring, unit.fwd)
    kinv = ZOp.shift_poly(mring, unit.inv)
    g = section_map(k, kinv)
    oring = OperatorRing(mring, "z")
    # corner embedding of the scalar loop: 1 + (a(z) - 1) at the corner
    a_corner: Loop = {
        e: ZOp.from_finite(mring, {(0, 0): c}) for e, c in unit.fwd.items()
    }
    adjust = ZOp.one(mring) - ZOp.from_finite(mring, {(0, 0): mring.one})
    a_corner[0] = a_corner.get(0, ZOp.zero(mring)) + adjust
    ref = loop_mul(oring, a_corner, twisted_commutator_loop(k, kinv, oring))
    return g, ref, oring


# ---------------------------------------------------------------------------
# the block-rotation step: trivializing the symbol of a one-sided unit
# ---------------------------------------------------------------------------

#: Diagonal signs of the splitting involution on the four half-lines
#: (two copies of the two-sided index set, each split at zero).  The first
#: copy is inert; on the second the sign distinguishes the two halves.
SPLIT_SIGNS: Tuple[int, int, int, int] = (-1, -1, -1, 1)


def _embed4(q: BlockTOp, offset: int, cring: Ring) -> BlockTOp:
    """Place a 2 x 2 grid on the diagonal of the 4 x 4 identity grid."""
    one = TOp.one(cring)
    z = TOp.zero(cring)
    rows = [[one if i == j else z for j in range(4)] for i in range(4)]
    for i in range(2):
        for j in range(2):
            rows[offset + i][offset + j] = q.blocks[i][j]
    return BlockTOp.make(rows)


def _scalar4(cring: Ring, entries) -> BlockTOp:
    return BlockTOp.make(
        [
            [TOp.toeplitz(cring, {0: v} if not cring.is_zero(v) else {}) for v in row]
            for row in entries
        ]
    )


def step_symbol_factors(
    unit: LoopUnit, a_unit: ToeplitzUnit, point: CirclePoint
) -> Tuple[BlockTOp, BlockTOp]:
    """The rotated four-block unit S and its inverse.

    ``unit`` is the symbol of ``a_unit`` as a loop unit; the outer factors
    rotate the first and last half-lines into each other, the middle
    factors are the quadrant grids of the band embeddings of the loop and
    of the reflected inverse loop, and the diagonal factor carries the
    one-sided unit and its inverse.
    """
    mring = a_unit.ring
    t = point.t_in(mring)
    s = point.s_in(mring)
    zero = mring.zero
    one = mring.one
    r = _scalar4(
        mring,
        [[s, zero, zero, mring.neg(t)], [zero, one, zero, zero],
         [zero, zero, one, zero], [t, zero, zero, s]],
    )
    ri = _scalar4(
        mring,
        [[s, zero, zero, t], [zero, one, zero, zero],
         [zero, zero, one, zero], [mring.neg(t), zero, zero, s]],
    )
    f2 = _embed4(zop_to_quad(ZOp.shift_poly(mring, unit.fwd)), 2, mring)
    f2i = _embed4(zop_to_quad(ZOp.shift_poly(mring, unit.inv)), 2, mring)
    f3 = _embed4(
        zop_to_quad(ZOp.shift_poly(mring, loop_rev(unit.inv))), 1, mring
    )
    f3i = _embed4(
        zop_to_quad(ZOp.shift_poly(mring, loop_rev(unit.fwd))), 1, mring
    )
    f4 = BlockTOp.diag(
        mring, [TOp.one(mring), a_unit.fwd, TOp.one(mring), a_unit.inv]
    )
    f4i = BlockTOp.diag(
        mring, [TOp.one(mring), a_unit.inv, TOp.one(mring), a_unit.fwd]
    )
    s_op = r * f2 * f3 * f4 * ri
    s_inv = r * f4i * f3i * f2i * ri
    return s_op, s_inv


def _lambda4(oring: OperatorRing, signs, inverse: bool) -> Loop:
    """mix(z, -Q) (or its z -> z^{-1} companion) over the four-block ring."""
    cring = oring.base
    one = TOp.one(cring)
    z = TOp.zero(cring)
    carrier = BlockTOp.make(
        [[one if (i == j and signs[i] == 1) else z for j in range(4)] for i in range(4)]
    )
    rest = BlockTOp.make(
        [[one if (i == j and signs[i] == -1) else z for j in range(4)] for i in range(4)]
    )
    key = -1 if inverse else 1
    out: Loop = {}
    if not oring.eq(carrier, oring.zero):
        out[key] = carrier
    if not oring.eq(rest, oring.zero):
        out[0] = rest
    return out


def step_symbol(
    unit: LoopUnit,
    a_unit: ToeplitzUnit,
    point: CirclePoint,
    signs: Tuple[int, int, int, int] = SPLIT_SIGNS,
) -> Loop:
    """The symbol of the block-rotation deformation, as a four-block loop."""
    mring = a_unit.ring
    oring = OperatorRing(mring, "block", 4)
    s_op, s_inv = step_symbol_factors(unit, a_unit, point)
    lam_z = _lambda4(oring, signs, inverse=False)
    lam_zi = _lambda4(oring, signs, inverse=True)
    out = loop_mul(oring, lam_z, {0: s_op})
    out = loop_mul(oring, out, lam_zi)
    return loop_mul(oring, out, {0: s_inv})


def step_symbol_flat_display(unit: LoopUnit) -> Loop:
    """The flat-point display: identity on the first two half-lines and the
    quadrant grid of mix(z^{-1}) (band a) mix(z) (band a^{-1}) on the rest."""
    mring = unit.ring.base
    ozz = OperatorRing(mring, "z")
    lam_z, lam_zi = half_shift_loops(mring)
    ref = loop_mul(ozz, lam_zi, {0: ZOp.shift_poly(mring, unit.fwd)})
    ref = loop_mul(ozz, ref, lam_z)
    ref = loop_mul(ozz, ref, {0: ZOp.shift_poly(mring, unit.inv)})
    o4 = OperatorRing(mring, "block", 4)
    # the identity on the first two half-lines sits in the constant term
    out: Loop = {0: _embed4(zop_to_quad(ref.get(0, ozz.zero)), 2, mring)}
    for e, zop in ref.items():
        if e == 0:
            continue
        blk = _embed4(zop_to_quad(zop), 2, mring)
        rows = [list(r) for r in blk.blocks]
        for i in range(2):
            rows[i][i] = TOp.zero(mring)
        out[e] = BlockTOp.make(rows)
    return {e: b for e, b in out.items() if not o4.eq(b, o4.zero)}


def step_symbol_quarter_display(mring: Ring) -> Loop:
    """The quarter-turn display: the constant identity loop."""
    o4 = OperatorRing(mring, "block", 4)
    return {0: o4.one}
