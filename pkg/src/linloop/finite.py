"""Finite linearization of units presented by finite factors.

The linearizing family of a loop unit conjugates the diagonal mixer by
band-plus-finite operators, and the resulting involution generally has an
infinite (rapidly decreasing) deviation from the reference sign involution.
When the unit is a product of factors each of which (or whose inverse) has
finite support, the deviation can be cut back to a finite box after every
conjugation step without leaving the unit group.  This module implements:

* stripe perturbations of the diagonal mixer and their classification,
* the cut-off operator that reduces a row/column stripe to a box,
* the straight-line interpolation between a perturbation and its cut-off,
  with closed-form inverses,
* the conjugation towers obtained by interleaving cut-offs with the
  factorwise conjugations,
* the deformed two-parameter family built from those towers, together with
  its flat-angle form, its fully reduced endpoint, and the finite-box
  involution replacing the unreduced one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Tuple

from .errors import (
    NotAPerturbation,
    SingularMiddleBlock,
    HintMismatch,
    StripeClassViolation,
    WrongKind,
)
from .rings import Ring, invert_dense
from .loops import FiniteDecomposition, LaurentRing
from .operators import Finite, ZOp, _fin_normalize
from .homotopies import Rotation, linearize_u, zop_embed, zop_bind_v, lambda_v

__all__ = [
    "stripe_deviation",
    "stripe_kind",
    "reduce_box",
    "pert_path",
    "pert_path_inverse",
    "stripe_inverse",
    "Tower",
    "build_tower",
    "InvolutionTower",
    "involution_tower",
    "box_involution",
    "finite_mixer_product",
    "deformed_family",
    "deformed_family_flat",
    "finite_linearization",
    "reduced_endpoint_reference",
]


# ---------------------------------------------------------------------------
# stripe perturbations of the diagonal mixer
# ---------------------------------------------------------------------------


def stripe_deviation(op: ZOp, s: Any) -> Finite:
    """The finite deviation of ``op`` from the mixer diag(s | 1).

    Raises :class:`NotAPerturbation` when the band structure differs from
    the mixer's, i.e. when the deviation is not carried by the finite part.
    """
    R = op.cring
    base = ZOp.mixer(R, s)
    neg = dict(op.neg)
    pos = dict(op.pos)
    if neg != base.neg or pos != base.pos:
        raise NotAPerturbation("bands differ from the diagonal mixer")
    return dict(op.finite)


def stripe_kind(op: ZOp, s: Any, window: Tuple[int, int]) -> str:
    """Classify a mixer perturbation against a window ``(m, n)``.

    Returns ``"both"`` when the deviation sits in the (m, n)-box, ``"L"``
    when it sits in rows m..n, ``"R"`` when it sits in columns m..n, and
    raises :class:`StripeClassViolation` otherwise.
    """
    m, n = window
    if m > 0 or n < 0:
        raise WrongKind("window must contain 0")
    fin = stripe_deviation(op, s)
    rows_ok = all(m <= i <= n for (i, _) in fin)
    cols_ok = all(m <= j <= n for (_, j) in fin)
    if rows_ok and cols_ok:
        return "both"
    if rows_ok:
        return "L"
    if cols_ok:
        return "R"
    raise StripeClassViolation(
        f"deviation escapes both the row and the column stripe {window}"
    )


def reduce_box(op: ZOp, window: Tuple[int, int]) -> ZOp:
    """Cut the finite deviation back to the ``window`` box.

    Entries with either index outside [m, n] are dropped; bands are kept.
    """
    m, n = window
    fin = {
        (i, j): v
        for (i, j), v in op.finite.items()
        if m <= i <= n and m <= j <= n
    }
    return ZOp(op.cring, dict(op.neg), dict(op.pos), fin)


# ---------------------------------------------------------------------------
# interpolation between a perturbation and its cut-off
# ---------------------------------------------------------------------------


def pert_path(op: ZOp, window: Tuple[int, int], t: Fraction) -> ZOp:
    """The straight line A + t*(Ared - A) toward the boxed cut-off."""
    red = reduce_box(op, window)
    return op + (red - op).scale(op.cring.scalar(Fraction(t)))


def pert_path_inverse(
    op: ZOp, op_inv: ZOp, window: Tuple[int, int], t: Fraction
) -> ZOp:
    """Inverse of the interpolation, via A^{-1} C(-t) A^{-1}."""
    return op_inv * pert_path(op, window, -Fraction(t)) * op_inv


def stripe_inverse(op: ZOp, s: Any, window: Tuple[int, int]) -> ZOp:
    """Closed-form inverse of an invertible row/column stripe perturbation.

    For a row stripe the inverse is assembled from the inverse of the
    middle block M (rows and columns inside the stripe) as

        rows outside: the inverse mixer rows;
        middle rows:  M^{-1} on the middle columns, -M^{-1} L^- s^{-1} on
                      the columns left of the stripe and -M^{-1} L^+ on
                      the columns right of it,

    and symmetrically for a column stripe.  Raises
    :class:`SingularMiddleBlock` when M is not invertible, and verifies
    the result against ``op`` on both sides.
    """
    R = op.cring
    m, n = window
    kind = stripe_kind(op, s, window)
    fin = stripe_deviation(op, s)
    s_inv = R.inv(s)
    base_inv = ZOp.mixer(R, s_inv)
    if not fin:
        return base_inv
    mid = op.window(range(m, n + 1), range(m, n + 1))
    try:
        mid_inv = invert_dense(R, mid)
    except Exception as exc:  # invert_dense raises SingularFiniteBlock
        raise SingularMiddleBlock(str(exc)) from exc

    out_fin: Finite = {}
    size = n - m + 1
    # middle box of the inverse: M^{-1} minus the base diagonal
    for a in range(size):
        for b in range(size):
            i, j = m + a, m + b
            dev = R.sub(mid_inv[a][b], base_inv.entry(i, j))
            if not R.is_zero(dev):
                out_fin[(i, j)] = dev
    if kind in ("both", "L"):
        # wings: -M^{-1} L^- s^{-1} and -M^{-1} L^+
        wing_cols = sorted({j for (_, j) in fin if j < m or j > n})
        for j in wing_cols:
            col = [op.entry(m + a, j) for a in range(size)]
            scalef = s_inv if j < m else R.one
            for a in range(size):
                acc = R.zero
                for b in range(size):
                    acc = R.add(acc, R.mul(mid_inv[a][b], col[b]))
                val = R.neg(R.mul(acc, scalef))
                if not R.is_zero(val):
                    out_fin[(m + a, j)] = val
    else:
        wing_rows = sorted({i for (i, _) in fin if i < m or i > n})
        for i in wing_rows:
            row = [op.entry(i, m + b) for b in range(size)]
            scalef = s_inv if i < m else R.one
            for b in range(size):
                acc = R.zero
                for a in range(size):
                    acc = R.add(acc, R.mul(row[a], mid_inv[a][b]))
                val = R.neg(R.mul(scalef, acc))
                if not R.is_zero(val):
                    out_fin[(i, m + b)] = val
    result = ZOp(R, dict(base_inv.neg), dict(base_inv.pos), _fin_normalize(R, out_fin))
    one = ZOp.one(R)
    if not (_zop_eq(op * result, one) and _zop_eq(result * op, one)):
        raise HintMismatch("closed-form stripe inverse fails to verify")
    return result


def _zop_eq(a: ZOp, b: ZOp) -> bool:
    R = a.cring
    diff = a - b
    return not diff.neg and not diff.pos and not diff.finite


# ---------------------------------------------------------------------------
# the conjugation towers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tower:
    """All stripe data of one factor decomposition at one circle point.

    Lists are indexed by the factor position (0 = rightmost factor).
    ``hat`` holds the unreduced conjugates, ``red`` their cut-offs, with
    carried two-sided inverses; ``u_v``/``u_1`` hold the graded and bound
    deformations of each factor with their inverses.
    """

    vring: LaurentRing
    windows: Tuple[Tuple[int, int], ...]
    hat: Tuple[ZOp, ...]
    hat_inv: Tuple[ZOp, ...]
    red: Tuple[ZOp, ...]
    red_inv: Tuple[ZOp, ...]
    u_v: Tuple[ZOp, ...]
    u_v_inv: Tuple[ZOp, ...]
    u_1: Tuple[ZOp, ...]
    u_1_inv: Tuple[ZOp, ...]


def build_tower(
    decomp: FiniteDecomposition, rot: Rotation, vring: LaurentRing
) -> Tower:
    """Interleave factorwise conjugation of the mixer with cut-offs.

    Starting from the graded mixer, each step conjugates by the deformed
    factor (graded on the left, bound at 1 on the right) and then cuts the
    deviation back to the cumulative window.  The stripe class of every
    unreduced step is checked against the declared factor tags; a failure
    raises :class:`StripeClassViolation`.  Inverses are carried exactly:
    the cut-off of the inverse is the inverse of the cut-off.
    """
    R = vring
    v = R.gen
    windows = tuple(decomp.windows())
    h = ZOp.mixer(R, v)
    h_inv = ZOp.mixer(R, R.gen_pow(-1))
    hat: List[ZOp] = []
    hat_inv: List[ZOp] = []
    red: List[ZOp] = []
    red_inv: List[ZOp] = []
    u_v: List[ZOp] = []
    u_v_inv: List[ZOp] = []
    u_1: List[ZOp] = []
    u_1_inv: List[ZOp] = []
    one = ZOp.one(R)
    for f, window in zip(decomp.factors, windows):
        uv = linearize_u(f.unit.fwd, rot, vring)
        uvi = linearize_u(f.unit.inv, rot, vring)
        u1 = zop_embed(zop_bind_v(uv, vring), vring)
        u1i = zop_embed(zop_bind_v(uvi, vring), vring)
        hk = uv * h * u1i
        hki = u1 * h_inv * uvi
        kind = stripe_kind(hk, v, window)
        if kind != "both" and kind != f.tag:
            raise StripeClassViolation(
                f"step class {kind} contradicts declared tag {f.tag}"
            )
        rk = reduce_box(hk, window)
        rki = reduce_box(hki, window)
        if not (_zop_eq(rk * rki, one) and _zop_eq(rki * rk, one)):
            raise StripeClassViolation(
                "cut-off of the inverse is not the inverse of the cut-off"
            )
        hat.append(hk)
        hat_inv.append(hki)
        red.append(rk)
        red_inv.append(rki)
        u_v.append(uv)
        u_v_inv.append(uvi)
        u_1.append(u1)
        u_1_inv.append(u1i)
        h, h_inv = rk, rki
    return Tower(
        vring,
        windows,
        tuple(hat),
        tuple(hat_inv),
        tuple(red),
        tuple(red_inv),
        tuple(u_v),
        tuple(u_v_inv),
        tuple(u_1),
        tuple(u_1_inv),
    )


# ---------------------------------------------------------------------------
# the involution towers (flat angle, ungraded)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionTower:
    """The sign-involution conjugates and their cut-offs (flat angle)."""

    mring: Ring
    windows: Tuple[Tuple[int, int], ...]
    hat: Tuple[ZOp, ...]
    red: Tuple[ZOp, ...]
    tilde: Tuple[ZOp, ...]


def involution_tower(decomp: FiniteDecomposition, mring: Ring) -> InvolutionTower:
    """Conjugate the sign involution factor by factor with cut-offs.

    ``hat[k]`` is the band conjugate of the previous cut-off, ``red[k]``
    its boxed reduction, and ``tilde[k]`` the reduction pushed back through
    the remaining (leftmost) factors; ``tilde[-1]`` equals ``red[-1]``.
    """
    windows = tuple(decomp.windows())
    q = ZOp.sign(mring)
    hat: List[ZOp] = []
    red: List[ZOp] = []
    bands = [
        (
            ZOp.shift_poly(mring, f.unit.fwd),
            ZOp.shift_poly(mring, f.unit.inv),
        )
        for f in decomp.factors
    ]
    for (band, band_inv), window in zip(bands, windows):
        qk = band * q * band_inv
        hat.append(qk)
        q = reduce_box(qk, window)
        red.append(q)
    tilde: List[ZOp] = []
    for k, rk in enumerate(red):
        left = ZOp.one(mring)
        left_inv = ZOp.one(mring)
        for band, band_inv in bands[k + 1 :][::-1]:
            left = left * band
            left_inv = band_inv * left_inv
        tilde.append(left * rk * left_inv)
    return InvolutionTower(mring, windows, tuple(hat), tuple(red), tuple(tilde))


def box_involution(decomp: FiniteDecomposition, mring: Ring) -> ZOp:
    """The finite-box involution replacing the unreduced one."""
    return involution_tower(decomp, mring).red[-1]


def finite_mixer_product(
    decomp: FiniteDecomposition, mring: Ring, h: Fraction
) -> Tuple[ZOp, ZOp]:
    """The flat-angle deformation product and its inverse.

    The product interleaves the interpolation paths at parameter h/2 with
    the unreduced involution conjugates and the band factors; at h = 0 it
    collapses to the band operator of the full product, and at h = 1 it
    becomes the averaged-involution product times that band operator.
    """
    tower = involution_tower(decomp, mring)
    one = ZOp.one(mring)
    prod = one
    prod_inv = one
    h = Fraction(h)
    bands = [
        (
            ZOp.shift_poly(mring, f.unit.fwd),
            ZOp.shift_poly(mring, f.unit.inv),
        )
        for f in decomp.factors
    ]
    for k in range(len(decomp.factors) - 1, -1, -1):
        qhat = tower.hat[k]
        window = tower.windows[k]
        c_half = pert_path(qhat, window, h / 2)
        c_half_inv = pert_path_inverse(qhat, qhat, window, h / 2)
        band, band_inv = bands[k]
        prod = prod * (c_half * qhat * band)
        prod_inv = (band_inv * qhat * c_half_inv) * prod_inv
    return prod, prod_inv


# ---------------------------------------------------------------------------
# the two-parameter deformed family
# ---------------------------------------------------------------------------


def _bind_pair(tower: Tower, a: ZOp, b: ZOp) -> Tuple[ZOp, ZOp]:
    """Bind the grading variable to -1 in a carried (op, inverse) pair."""
    R = tower.vring
    neg_one = R.base.neg(R.base.one)
    return (
        zop_embed(zop_bind_v(a, R, neg_one), R),
        zop_embed(zop_bind_v(b, R, neg_one), R),
    )


def deformed_family(
    decomp: FiniteDecomposition,
    rot: Rotation,
    vring: LaurentRing,
    h: Fraction,
    tower: Optional[Tower] = None,
) -> Tuple[ZOp, ZOp]:
    """The deformed linearizing product at cut-off parameter ``h``.

    Each factor contributes, left to right,

        C(hat -> red)(h) * C(hat(-1) -> red(-1))(h/2)^{-1}
        * hat(-1) * hat^{-1} * (deformed factor),

    and the function returns the full product together with its exact
    inverse.  At h = 0 the dressing collapses and the product equals the
    deformed band of the full loop.
    """
    if tower is None:
        tower = build_tower(decomp, rot, vring)
    R = vring
    one = ZOp.one(R)
    h = Fraction(h)
    prod = one
    prod_inv = one
    for k in range(len(decomp.factors) - 1, -1, -1):
        hat, hat_i = tower.hat[k], tower.hat_inv[k]
        window = tower.windows[k]
        hat_m1, hat_m1_i = _bind_pair(tower, hat, hat_i)
        c_full = pert_path(hat, window, h)
        c_full_inv = pert_path_inverse(hat, hat_i, window, h)
        c_half = pert_path(hat_m1, window, h / 2)
        c_half_inv = pert_path_inverse(hat_m1, hat_m1_i, window, h / 2)
        factor = c_full * c_half_inv * hat_m1 * hat_i * tower.u_v[k]
        factor_inv = (
            tower.u_v_inv[k] * hat * hat_m1_i * c_half * c_full_inv
        )
        prod = prod * factor
        prod_inv = factor_inv * prod_inv
    return prod, prod_inv


def deformed_family_flat(
    decomp: FiniteDecomposition, vring: LaurentRing, h: Fraction
) -> ZOp:
    """Flat-angle value of the deformed product, ungraded and embedded.

    At the flat point each deformed factor is the plain band operator, so
    the grading variable drops out and the product equals the interleaved
    involution-path product.
    """
    prod, _ = finite_mixer_product(decomp, vring.base, h)
    return zop_embed(prod, vring)


def finite_linearization(
    decomp: FiniteDecomposition,
    rot: Rotation,
    vring: LaurentRing,
    h: Fraction,
    tower: Optional[Tower] = None,
) -> ZOp:
    """The pointed two-parameter family built from the deformed product.

    mixer(v)^{-1} * P(theta, h, v) * mixer(v) * P(theta, h, 1)^{-1}
    where P is the deformed linearizing product.
    """
    if tower is None:
        tower = build_tower(decomp, rot, vring)
    prod, prod_inv = deformed_family(decomp, rot, vring, h, tower)
    lam, lam_inv = lambda_v(vring)
    bound_inv = zop_embed(zop_bind_v(prod_inv, vring), vring)
    return lam_inv * prod * lam * bound_inv


def reduced_endpoint_reference(tower: Tower) -> ZOp:
    """Closed form of the fully cut-off endpoint: mixer(v)^{-1} times the
    last reduced step of the tower."""
    _, lam_inv = lambda_v(tower.vring)
    return lam_inv * tower.red[-1]
