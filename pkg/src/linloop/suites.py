"""Verification suites: every library identity checked on random instances.

Each suite function returns a list of report rows.  A row is a dict with a
descriptive ``anchor`` (what identity is certified), an ``instance``
string (which randomized input), a boolean ``pass``, and an optional
``detail``.  Rows are deterministic functions of the configuration, so a
fixed seed yields byte-identical reports.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from .rings import (
    QQ,
    CirclePoint,
    CircleRing,
    FunctionField,
    MatrixRing,
    Ring,
    pythagorean_grid,
)
from .loops import (
    LaurentRing,
    LoopUnit,
    build_unit,
    decompose_unit,
    loop_reverse,
    random_invertible_matrix,
    random_involution,
    support,
)
from .operators import (
    FinZRing,
    OperatorRing,
    TOp,
    ZOp,
    loop_eq,
    loop_mul,
    zop_inverse,
)
from .homotopies import (
    Rotation,
    bott,
    bott_invert,
    bott_linear_display,
    conj_finite,
    conjugation_symmetry,
    k_endpoint_quarter,
    k_endpoint_zero,
    key_coisometry,
    key_isometry,
    key_rank_one,
    key_rank_one_display,
    key_shift_closed_form,
    key_shift_window,
    lambda_v,
    linearize_k,
    linearize_u,
    quarter_turn_structure,
    recover_window,
    shift_relabel,
    vgrade_ring,
    zop_bind_v,
    zop_embed,
)
from . import toeplitz as tzm
from . import finite as finm
from .oracle import (
    Bindings,
    check_top_product,
    check_zop_product,
    truncated_loop_inverse,
    zop_window,
)

Row = Dict[str, Any]


@dataclass(frozen=True)
class SuiteConfig:
    """Size and sampling knobs for the verification suites."""

    seed: int = 42
    d: int = 2
    window: int = 16
    points: int = 3
    s: int = 3
    instances: int = 20


def _row(anchor: str, instance: str, ok: bool, detail: str = "") -> Row:
    return {"anchor": anchor, "instance": instance, "pass": bool(ok), "detail": detail}


def _ihash(instance: str) -> str:
    return hashlib.sha256(instance.encode()).hexdigest()[:12]


def sort_rows(rows: List[Row]) -> List[Row]:
    return sorted(rows, key=lambda r: (r["anchor"], _ihash(r["instance"])))


def _zeq(a: ZOp, b: ZOp) -> bool:
    d = a - b
    return not d.neg and not d.pos and not d.finite


def _interior_points(n: int) -> List[CirclePoint]:
    return pythagorean_grid(max(n, 3))


def _rand_unit(
    mring: MatrixRing, lring: LaurentRing, rng: random.Random, nfac: int
) -> LoopUnit:
    specs = []
    for _ in range(max(nfac, 1)):
        kind = rng.choice(["const", "monomial", "mixer"])
        if kind == "const":
            specs.append(("const", random_invertible_matrix(mring, rng)))
        elif kind == "monomial":
            specs.append(
                ("monomial", rng.choice([-1, 1]), random_invertible_matrix(mring, rng))
            )
        else:
            specs.append(("mixer", rng.choice([-1, 1]), random_involution(mring, rng)))
    return build_unit(lring, specs)


def _rand_finite(
    mring: MatrixRing, rng: random.Random, size: int = 3, count: int = 4
) -> dict:
    fin = {}
    for _ in range(count):
        i, j = rng.randrange(size), rng.randrange(size)
        fin[(i, j)] = random_invertible_matrix(mring, rng)
    return fin


def _fin_mul(mring: Ring, a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k != k2:
                continue
            v = mring.mul(x, y)
            key = (i, j)
            if key in out:
                v = mring.add(out[key], v)
            if mring.is_zero(v):
                out.pop(key, None)
            else:
                out[key] = v
    return out


def _fin_eq(mring: Ring, a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    return all(
        mring.eq(a.get(k, mring.zero), b.get(k, mring.zero)) for k in keys
    )


# ---------------------------------------------------------------------------
# suite: the rotation identities (trig and polynomial variants)
# ---------------------------------------------------------------------------


def _rotation_rows(make_rot: Callable[[CirclePoint], Rotation], tag: str,
                   cfg: SuiteConfig, symbolic_rot: Optional[Rotation],
                   coiso_points: List[CirclePoint]) -> List[Row]:
    rows: List[Row] = []
    if symbolic_rot is not None:
        rows.append(
            _row(
                f"{tag}-isometry-symbolic",
                "window 8",
                key_isometry(symbolic_rot, 8),
            )
        )
    for p in coiso_points:
        rot = make_rot(p)
        rows.append(
            _row(
                f"{tag}-coisometry",
                f"point t={p.t} s={p.s}",
                key_coisometry(rot, 8),
            )
        )
    # rank-one closed form (part with finite outer products)
    for p in _interior_points(cfg.points)[: cfg.points]:
        rot = make_rot(p)
        R = rot.ring
        ok = True
        for n in range(0, 9, 2):
            for m in range(0, 9, 3):
                got = key_rank_one(rot, n, m)
                want = key_rank_one_display(rot, n, m)
                ok &= _fin_eq(R, got, want)
        rows.append(_row(f"{tag}-rank-one-closed-form", f"point t={p.t}", ok))
    # conjugated shift powers against the band-plus-correction closed form
    shift_pts = coiso_points
    for p in shift_pts:
        rot = make_rot(p)
        R = rot.ring
        ok = True
        for e in range(-3, 4):
            win = key_shift_window(rot, e, 8)
            ref = key_shift_closed_form(rot, e, 8)
            ok &= all(
                R.eq(win[i][j], ref[i][j]) for i in range(8) for j in range(8)
            )
        rows.append(_row(f"{tag}-shift-closed-form", f"point t={p.t}", ok))
    return rows


def suite_artkey(cfg: SuiteConfig) -> List[Row]:
    pts = [
        CirclePoint.theta_half_pi(),
        CirclePoint.theta_minus_half_pi(),
    ] + _interior_points(cfg.points)[: max(cfg.points, 3)]
    return _rotation_rows(
        lambda p: Rotation.trig(QQ, p),
        "rotation",
        cfg,
        Rotation.trig(CircleRing(), CirclePoint.symbolic()),
        pts,
    )


# ---------------------------------------------------------------------------
# suite: stabilization of finite matrices
# ---------------------------------------------------------------------------


def _stabilize_rows(make_rot, tag: str, cfg: SuiteConfig,
                    symbolic_rot: Optional[Rotation]) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    mring = MatrixRing(QQ, min(cfg.d, 3))
    rot0 = make_rot(CirclePoint.theta_zero())
    rotq = Rotation.trig(QQ, CirclePoint.theta_half_pi())
    interior = _interior_points(cfg.points)
    for k in range(max(cfg.instances, 20)):
        fin = _rand_finite(mring, rng)
        inst = f"instance {k} d={mring.d}"
        lifted = {key: mring.from_leaf(QQ.one) for key in fin}
        # endpoints: identity at the flat point, index shift at the quarter
        flat_ok = _fin_eq(QQ, conj_finite(rot0, {key: QQ.one for key in fin}),
                          {key: QQ.one for key in fin})
        quarter = conj_finite(rotq, {key: QQ.one for key in fin})
        quarter_ok = _fin_eq(QQ, quarter, shift_relabel({key: QQ.one for key in fin}))
        rows.append(_row(f"{tag}-endpoints", inst, flat_ok and quarter_ok))
        # endomorphism on random pairs at an interior point
        rot = make_rot(interior[k % len(interior)])
        fin2 = _rand_finite(mring, rng)
        f1 = {key: QQ.scalar(rng.randint(-3, 3)) for key in fin}
        f2 = {key: QQ.scalar(rng.randint(-3, 3)) for key in fin2}
        lhs = conj_finite(rot, _fin_mul(QQ, f1, f2))
        rhs = _fin_mul(QQ, conj_finite(rot, f1), conj_finite(rot, f2))
        rows.append(_row(f"{tag}-endomorphism", inst, _fin_eq(QQ, lhs, rhs)))
    # symbolic recovery on a handful of instances
    if symbolic_rot is not None:
        rngr = random.Random(cfg.seed + 1)
        R = symbolic_rot.ring
        for k in range(3):
            fin = {
                (rngr.randrange(3), rngr.randrange(3)): R.scalar(rngr.randint(-3, 3))
                for _ in range(3)
            }
            size = 6
            got = recover_window(symbolic_rot, conj_finite(symbolic_rot, fin), size)
            ok = all(
                R.eq(got[i][j], fin.get((i, j), R.zero))
                for i in range(size)
                for j in range(size)
            )
            rows.append(_row(f"{tag}-recovery-symbolic", f"instance {k}", ok))
    return rows


def suite_stabilize(cfg: SuiteConfig) -> List[Row]:
    return _stabilize_rows(
        lambda p: Rotation.trig(QQ, p),
        "stabilize",
        cfg,
        Rotation.trig(CircleRing(), CirclePoint.symbolic()),
    )


# ---------------------------------------------------------------------------
# suite: the two-sided involution calculus
# ---------------------------------------------------------------------------


def suite_bott(cfg: SuiteConfig) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    for k in range(max(cfg.instances, 20)):
        d = 1 + k % min(cfg.d, 3)
        mring = MatrixRing(QQ, d)
        lring = LaurentRing(mring)
        u = _rand_unit(mring, lring, rng, rng.randrange(1, 4))
        inst = f"instance {k} d={d}"
        b = bott(u, mring)
        rows.append(_row("bott-involution", inst, _zeq(b * b, ZOp.one(mring))))
        c = random_invertible_matrix(mring, rng)
        uc = u * build_unit(lring, [("const", c)])
        rows.append(_row("bott-right-constant-immunity", inst, _zeq(b, bott(uc, mring))))
        got = bott_invert(b)
        a1_inv = mring.inv(mring.total(u.fwd.values()))
        want = {e: mring.mul(cf, a1_inv) for e, cf in u.fwd.items()}
        want = {e: cf for e, cf in want.items() if not mring.is_zero(cf)}
        rows.append(
            _row(
                "bott-inversion",
                inst,
                set(got) == set(want)
                and all(mring.eq(got[e], want[e]) for e in want),
            )
        )
    mring = MatrixRing(QQ, min(cfg.d, 3))
    lring = LaurentRing(mring)
    for k in range(3):
        q = random_involution(mring, rng)
        u = build_unit(lring, [("mixer", 1, q)])
        rows.append(
            _row(
                "bott-linear-display",
                f"involution case {k}",
                _zeq(bott(u, mring), bott_linear_display(mring, q)),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# suite: linearization of loops
# ---------------------------------------------------------------------------


def _linearize_rows(make_rot, tag: str, cfg: SuiteConfig,
                    with_quarter: bool = True) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    interior = _interior_points(cfg.points)
    for k in range(max(cfg.instances, 20)):
        d = 1 + k % min(cfg.d, 3)
        mring = MatrixRing(QQ, d)
        lring = LaurentRing(mring)
        vring = vgrade_ring(mring)
        inst = f"instance {k} d={d}"
        rot = make_rot(interior[k % len(interior)])
        u = _rand_unit(mring, lring, rng, rng.randrange(1, 3))
        w = _rand_unit(mring, lring, rng, rng.randrange(1, 3))
        prod = lring.mul(u.fwd, w.fwd)
        lhs = linearize_u(prod, rot, vring)
        rhs = linearize_u(u.fwd, rot, vring) * linearize_u(w.fwd, rot, vring)
        rows.append(_row(f"{tag}-multiplicative", inst, _zeq(lhs, rhs)))
        rot0 = make_rot(CirclePoint.theta_zero())
        flat = linearize_u(u.fwd, rot0, vring)
        band = ZOp.shift_poly(vring, {e: vring.const(c) for e, c in u.fwd.items()})
        rows.append(_row(f"{tag}-flat-endpoint", inst, _zeq(flat, band)))
        # pointed family endpoints
        kz = linearize_k(u, rot0, vring)
        rows.append(_row(f"{tag}-pointed-flat", inst, _zeq(kz, k_endpoint_zero(u, vring))))
        if with_quarter:
            rotq = make_rot(CirclePoint.theta_half_pi())
            rows.append(
                _row(
                    f"{tag}-quarter-display",
                    inst,
                    quarter_turn_structure(u, rotq, vring),
                )
            )
            kq = linearize_k(u, rotq, vring)
            rows.append(
                _row(f"{tag}-pointed-quarter", inst, _zeq(kq, k_endpoint_quarter(u, vring)))
            )
            rows.append(
                _row(
                    f"{tag}-reflection-symmetry",
                    inst,
                    conjugation_symmetry(u.fwd, rot, vring),
                )
            )
    # constant pointed family for linear loops, on the whole grid
    mring = MatrixRing(QQ, min(cfg.d, 3))
    lring = LaurentRing(mring)
    vring = vgrade_ring(mring)
    grid = pythagorean_grid(max(cfg.points, 3), include_endpoints=with_quarter)
    for k in range(3):
        q = random_involution(mring, rng)
        u = build_unit(lring, [("mixer", 1, q)])
        ref = k_endpoint_quarter(u, vring)
        ok = all(
            _zeq(linearize_k(u, make_rot(p), vring), ref) for p in grid
        )
        rows.append(_row(f"{tag}-constant-linear-loop", f"involution case {k}", ok))
    return rows


def suite_linearize(cfg: SuiteConfig) -> List[Row]:
    return _linearize_rows(lambda p: Rotation.trig(QQ, p), "linearize", cfg)


# ---------------------------------------------------------------------------
# suite: one-sided stabilization and its deformation
# ---------------------------------------------------------------------------


def suite_toeplitz(cfg: SuiteConfig) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    interior = _interior_points(cfg.points)
    for k in range(max(cfg.instances, 20)):
        d = 1 + k % min(cfg.d, 3)
        mring = MatrixRing(QQ, d)
        vring = vgrade_ring(mring)
        inst = f"instance {k} d={d}"
        a = tzm.random_toeplitz_unit(mring, rng)
        b = tzm.random_toeplitz_unit(mring, rng)
        # anomalous product rule against the dense oracle
        rows.append(
            _row(
                "toeplitz-product-oracle",
                inst,
                check_top_product(a.fwd, b.fwd, max(cfg.window, 12), Bindings()),
            )
        )
        prod = a.fwd * b.fwd
        rows.append(
            _row(
                "toeplitz-symbol-multiplicative",
                inst,
                loop_eq(mring, dict(prod.sym), loop_mul(mring, a.symbol, b.symbol)),
            )
        )
        rot = Rotation.trig(mring, interior[k % len(interior)])
        tv = tzm.toeplitz_stabilize(a.fwd, rot, vring)
        sym_ok = loop_eq(
            vring, dict(tv.sym), {e: vring.const(c) for e, c in a.symbol.items()}
        )
        rows.append(_row("toeplitz-stabilize-symbol", inst, sym_ok))
        rot0 = Rotation.trig(mring, CirclePoint.theta_zero())
        flat = tzm.toeplitz_stabilize(a.fwd, rot0, vring)
        rows.append(
            _row(
                "toeplitz-stabilize-flat",
                inst,
                flat == tzm.top_embed(a.fwd, vring),
            )
        )
        for negate in (False, True):
            rotq = Rotation.trig(
                mring,
                CirclePoint.theta_minus_half_pi()
                if negate
                else CirclePoint.theta_half_pi(),
            )
            got = tzm.toeplitz_stabilize(a.fwd, rotq, vring)
            want = tzm.stabilize_quarter_display(a.fwd, vring, negate)
            rows.append(
                _row(
                    "toeplitz-stabilize-quarter",
                    f"{inst} negate={negate}",
                    got == want,
                )
            )
            gotz = tzm.symbol_deformation(a, rotq, vring)
            wantz = tzm.symbol_deformation_quarter(a, vring, negate)
            rows.append(
                _row("toeplitz-deformation-quarter", f"{inst} negate={negate}", gotz == wantz)
            )
        z0 = tzm.symbol_deformation(a, rot0, vring)
        rows.append(_row("toeplitz-deformation-flat", inst, z0 == TOp.one(vring)))
    return rows


# ---------------------------------------------------------------------------
# suite: contractibility of the pointed one-sided unit group
# ---------------------------------------------------------------------------


def suite_contract(cfg: SuiteConfig) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    interior = _interior_points(cfg.points)
    # four-block rotation step: endpoint displays and exact unit property
    for k in range(6):
        d = 1 + k % min(cfg.d, 2)
        mring = MatrixRing(QQ, d)
        lring = LaurentRing(mring)
        o4 = OperatorRing(mring, "block", 4)
        a_unit = tzm.random_toeplitz_unit(mring, rng)
        unit = LoopUnit(lring, a_unit.symbol, a_unit.symbol_inv, ())
        inst = f"instance {k} d={d}"
        p = interior[k % len(interior)]
        s_op, s_inv = tzm.step_symbol_factors(unit, a_unit, p)
        rows.append(
            _row("contract-step-unit", inst, o4.eq(o4.mul(s_op, s_inv), o4.one))
        )
        flat = tzm.step_symbol(unit, a_unit, CirclePoint.theta_zero())
        rows.append(
            _row(
                "contract-step-flat",
                inst,
                loop_eq(o4, flat, tzm.step_symbol_flat_display(unit)),
            )
        )
        quarter_ref = tzm.step_symbol_quarter_display(mring)
        for p2 in (CirclePoint.theta_half_pi(), CirclePoint.theta_minus_half_pi()):
            got = tzm.step_symbol(unit, a_unit, p2)
            rows.append(
                _row(
                    "contract-step-quarter",
                    f"{inst} t={p2.t}",
                    loop_eq(o4, got, quarter_ref),
                )
            )
    # corner conjugation step: trivial-symbol units contract to one
    for k in range(6):
        d = 1 + k % min(cfg.d, 2)
        mring = MatrixRing(QQ, d)
        fr = FinZRing(mring)
        kappa = {}
        for _ in range(3):
            kappa[(rng.randrange(3), rng.randrange(3))] = mring.sub(
                random_invertible_matrix(mring, rng),
                random_invertible_matrix(mring, rng),
            )
        # make 1 + kappa invertible by forcing strict triangularity, then
        # relocate it below zero where the contraction step expects it
        kappa = {(i, j): v for (i, j), v in kappa.items() if i < j}
        if not kappa:
            kappa = {(0, 1): mring.one}
        kappa = tzm.embed_below_zero(kappa)
        inst = f"instance {k} d={d}"
        v0, _ = tzm.contract_trivial_symbol(fr, kappa, CirclePoint.theta_zero())
        corner = TOp.make(fr, {0: fr.one}, {(0, 0): fr.finite(kappa)})
        rows.append(_row("contract-corner-flat", inst, v0 == corner))
        for pq in (CirclePoint.theta_half_pi(), CirclePoint.theta_minus_half_pi()):
            vq, _ = tzm.contract_trivial_symbol(fr, kappa, pq)
            rows.append(
                _row(
                    "contract-corner-quarter",
                    f"{inst} t={pq.t}",
                    vq == TOp.one(fr),
                )
            )
        vi, vi_inv = tzm.contract_trivial_symbol(
            fr, kappa, interior[k % len(interior)]
        )
        rows.append(
            _row(
                "contract-corner-unit",
                inst,
                vi * vi_inv == TOp.one(fr) and vi_inv * vi == TOp.one(fr),
            )
        )
    # the symbol section: exact symbol identity plus nested windows
    for k in range(max(10, cfg.instances // 2)):
        d = 1 + k % min(cfg.d, 2)
        mring = MatrixRing(QQ, d)
        lring = LaurentRing(mring)
        u = _rand_unit(mring, lring, rng, rng.randrange(1, 3))
        inst = f"instance {k} d={d}"
        g, ref, oring = tzm.section_of_loop(u)
        sym = dict(g.sym)
        rows.append(_row("section-symbol-closed-form", inst, loop_eq(oring, sym, ref)))
        ok = True
        for size in (4, 7, 10):
            idx = range(-size, size)
            for e in set(sym) | set(ref):
                ga = sym.get(e, oring.zero)
                rb = ref.get(e, oring.zero)
                wa = ga.window(idx, idx)
                wb = rb.window(idx, idx)
                ok &= all(
                    mring.eq(wa[i][j], wb[i][j])
                    for i in range(len(wa))
                    for j in range(len(wa))
                )
        rows.append(_row("section-symbol-windows", inst, ok))
    return rows


# ---------------------------------------------------------------------------
# suite: finite linearization
# ---------------------------------------------------------------------------


def suite_finite(cfg: SuiteConfig) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    interior = _interior_points(cfg.points)
    # interpolation paths: unit law, inverse law, involution preservation
    mring = MatrixRing(QQ, min(cfg.d, 2))
    lring = LaurentRing(mring)
    vring = vgrade_ring(mring)
    decomp0 = decompose_unit(_rand_unit(mring, lring, rng, 2))
    rot_i = Rotation.trig(QQ, interior[0])
    tower0 = finm.build_tower(decomp0, rot_i, vring)
    hat, hati = tower0.hat[-1], tower0.hat_inv[-1]
    w = tower0.windows[-1]
    one_v = ZOp.one(vring)
    for t in (Fraction(1, 3), Fraction(-2, 7), Fraction(5, 4)):
        c = finm.pert_path(hat, w, t)
        ci = finm.pert_path_inverse(hat, hati, w, t)
        rows.append(
            _row(
                "cutoff-path-unit",
                f"t={t}",
                _zeq(c * ci, one_v) and _zeq(ci * c, one_v),
            )
        )
        rows.append(
            _row("cutoff-path-inverse-law", f"t={t}", _zeq(ci, finm.pert_path(hati, w, t)))
        )
        rows.append(
            _row(
                "cutoff-path-halving",
                f"t={t}",
                _zeq(c, finm.pert_path(hat, w, t / 2) * hati * finm.pert_path(hat, w, t / 2)),
            )
        )
    itow0 = finm.involution_tower(decomp0, mring)
    cq = finm.pert_path(itow0.hat[-1], itow0.windows[-1], Fraction(1, 2))
    rows.append(_row("cutoff-path-involution", "t=1/2", _zeq(cq * cq, ZOp.one(mring))))
    # closed-form stripe inverses at a bound point
    for k in range(len(tower0.hat)):
        s2 = mring.scalar(Fraction(2))
        hb = zop_bind_v(tower0.hat[k], vring, s2)
        try:
            finm.stripe_inverse(hb, s2, tower0.windows[k])
            rows.append(_row("stripe-closed-form-inverse", f"step {k}", True))
        except Exception as exc:  # report, never raise, in a suite
            rows.append(
                _row("stripe-closed-form-inverse", f"step {k}", False, repr(exc))
            )
    # stripe class growth under factor conjugation
    for k in range(5):
        u = _rand_unit(mring, lring, rng, 1)
        lo, hi = support(u.fwd)
        window = (min(lo, 0), max(hi, 0))
        rot = Rotation.trig(QQ, interior[k % len(interior)])
        uv = linearize_u(u.fwd, rot, vring)
        u1i = zop_embed(zop_bind_v(linearize_u(u.inv, rot, vring), vring), vring)
        base = ZOp.mixer(vring, vring.gen)
        conj = uv * base * u1i
        try:
            kind = finm.stripe_kind(conj, vring.gen, window)
            rows.append(_row("stripe-class-growth", f"instance {k} {window}", True, kind))
        except Exception as exc:
            rows.append(_row("stripe-class-growth", f"instance {k} {window}", False, repr(exc)))
    # the towers and the deformed families
    n_decomp = max(10, cfg.instances // 2)
    for k in range(n_decomp):
        d = 1 + k % min(cfg.d, 2)
        mring = MatrixRing(QQ, d)
        lring = LaurentRing(mring)
        vring = vgrade_ring(mring)
        nfac = 1 + k % max(min(cfg.s, 3), 1)
        u = _rand_unit(mring, lring, rng, nfac)
        decomp = decompose_unit(u)
        inst = f"instance {k} d={d} s={nfac}"
        pt = interior[k % len(interior)]
        rot = Rotation.trig(QQ, pt)
        rot0 = Rotation.trig(QQ, CirclePoint.theta_zero())
        rotq = Rotation.trig(QQ, CirclePoint.theta_half_pi())
        tower = finm.build_tower(decomp, rot, vring)
        tower0 = finm.build_tower(decomp, rot0, vring)
        towerq = finm.build_tower(decomp, rotq, vring)
        one_m = ZOp.one(mring)
        rows.append(
            _row(
                "tower-pointed-steps",
                inst,
                all(_zeq(zop_bind_v(h, vring), one_m) for h in tower.red),
            )
        )
        p0, _ = finm.deformed_family(decomp, rot, vring, Fraction(0), tower)
        rows.append(
            _row(
                "tower-family-start",
                inst,
                _zeq(p0, linearize_u(u.fwd, rot, vring)),
            )
        )
        hmid = Fraction(1, 3)
        p, pi = finm.deformed_family(decomp, rot, vring, hmid, tower)
        rows.append(
            _row(
                "tower-family-unit",
                inst,
                _zeq(p * pi, ZOp.one(vring)) and _zeq(pi * p, ZOp.one(vring)),
            )
        )
        p1, _ = finm.deformed_family(decomp, rot, vring, Fraction(1), tower)
        lam, lam_inv = lambda_v(vring)
        rhs = tower.red[-1] * zop_embed(zop_bind_v(p1, vring), vring) * lam_inv
        rows.append(_row("tower-family-reduced-end", inst, _zeq(p1, rhs)))
        pq, _ = finm.deformed_family(decomp, rotq, vring, hmid, towerq)
        rows.append(
            _row(
                "tower-family-quarter-constant",
                inst,
                _zeq(pq, linearize_u(u.fwd, rotq, vring)),
            )
        )
        pf, _ = finm.deformed_family(decomp, rot0, vring, hmid, tower0)
        rows.append(
            _row(
                "tower-family-flat",
                inst,
                _zeq(pf, finm.deformed_family_flat(decomp, vring, hmid)),
            )
        )
        # the pointed two-parameter family
        kf0 = finm.finite_linearization(decomp, rot, vring, Fraction(0), tower)
        rows.append(
            _row("finite-pointed-start", inst, _zeq(kf0, linearize_k(u, rot, vring)))
        )
        kf1 = finm.finite_linearization(decomp, rot, vring, Fraction(1), tower)
        rows.append(
            _row(
                "finite-pointed-reduced-end",
                inst,
                _zeq(kf1, finm.reduced_endpoint_reference(tower)),
            )
        )
        M, N = tower.windows[-1]
        dev = kf1 - ZOp.one(vring)
        rows.append(
            _row(
                "finite-pointed-box-bound",
                inst,
                not dev.neg
                and not dev.pos
                and all(M <= i <= N and M <= j <= N for (i, j) in dev.finite),
                f"box=({M},{N})",
            )
        )
        ref_q = k_endpoint_quarter(u, vring)
        okq = all(
            _zeq(finm.finite_linearization(decomp, rotq, vring, h, towerq), ref_q)
            for h in (Fraction(0), Fraction(1, 2), Fraction(1))
        )
        rows.append(_row("finite-pointed-quarter-constant", inst, okq))
        usf, usf_inv = finm.finite_mixer_product(decomp, mring, hmid)
        ref_flat = (
            lam_inv * zop_embed(usf, vring) * lam * zop_embed(usf_inv, vring)
        )
        rows.append(
            _row(
                "finite-pointed-flat",
                inst,
                _zeq(
                    finm.finite_linearization(decomp, rot0, vring, hmid, tower0),
                    ref_flat,
                ),
            )
        )
        diff = usf - ZOp.shift_poly(mring, u.fwd)
        rows.append(
            _row("finite-mixer-finite-deviation", inst, not diff.neg and not diff.pos)
        )
        # the box involution and its conjugation transport
        bf = finm.box_involution(decomp, mring)
        rows.append(_row("box-involution", inst, _zeq(bf * bf, one_m)))
        us1, us1_inv = finm.finite_mixer_product(decomp, mring, Fraction(1))
        m_op = us1 * ZOp.shift_poly(mring, u.inv)
        m_inv = ZOp.shift_poly(mring, u.fwd) * us1_inv
        rows.append(
            _row(
                "box-involution-transport",
                inst,
                _zeq(bf, m_op * bott(u, mring) * m_inv),
            )
        )
        devb = bf - ZOp.sign(mring)
        rows.append(
            _row(
                "box-involution-bound",
                inst,
                not devb.neg
                and not devb.pos
                and all(M <= i <= N and M <= j <= N for (i, j) in devb.finite),
                f"box=({M},{N})",
            )
        )
    return rows


# ---------------------------------------------------------------------------
# suite: the adjoint structure
# ---------------------------------------------------------------------------


def suite_star(cfg: SuiteConfig) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    interior = _interior_points(cfg.points)
    for k in range(max(cfg.instances, 20)):
        d = 1 + k % min(cfg.d, 3)
        mring = MatrixRing(QQ, d)
        lring = LaurentRing(mring)
        vring = vgrade_ring(mring)
        # star-unitary generators: symmetric involutions and the variable
        specs = []
        for _ in range(rng.randrange(1, 4)):
            if rng.random() < 0.5:
                specs.append(("monomial", rng.choice([-1, 1]), mring.one))
            else:
                specs.append(("mixer", rng.choice([-1, 1]), random_involution(mring, rng)))
        u = build_unit(lring, specs)
        inst = f"instance {k} d={d}"
        rows.append(
            _row("star-loop-unitary", inst, lring.eq(lring.star(u.fwd), u.inv))
        )
        p = interior[k % len(interior)]
        rot = Rotation.trig(QQ, p)
        uu = linearize_u(u.fwd, rot, vring)
        ui = linearize_u(u.inv, rot, vring)
        rows.append(_row("star-deformed-unitary", f"{inst} t={p.t}", _zeq(uu.adjoint(), ui)))
        b = bott(u, mring)
        rows.append(_row("star-involution-selfadjoint", inst, _zeq(b.adjoint(), b)))
    return rows


# ---------------------------------------------------------------------------
# suite: the polynomial variant
# ---------------------------------------------------------------------------


def _poly_interior(n: int) -> List[CirclePoint]:
    # the polynomial rotation is defined for every rational t; reuse the
    # Pythagorean abscissas (s is ignored by the poly variant)
    return _interior_points(n)


def suite_poly(cfg: SuiteConfig) -> List[Row]:
    rows: List[Row] = []
    make_rot = lambda p: Rotation.poly(QQ, p)
    # one-sided inverse symbolically over the polynomial scalars
    sym_rot = Rotation.poly(FunctionField("t"), CirclePoint.symbolic_t())
    rows.append(
        _row("poly-rotation-isometry-symbolic", "window 8", key_isometry(sym_rot, 8))
    )
    pts = _poly_interior(cfg.points)[: max(cfg.points, 3)]
    for p in pts:
        rot = make_rot(p)
        R = rot.ring
        ok = True
        for n in range(0, 9, 2):
            for m in range(0, 9, 3):
                ok &= _fin_eq(
                    R, key_rank_one(rot, n, m), key_rank_one_display(rot, n, m)
                )
        rows.append(_row("poly-rank-one-closed-form", f"point t={p.t}", ok))
    rows += _stabilize_rows(make_rot, "poly-stabilize", cfg, sym_rot)
    rows += _linearize_rows(make_rot, "poly-linearize", cfg, with_quarter=False)
    return rows


# ---------------------------------------------------------------------------
# suite: the dense oracle
# ---------------------------------------------------------------------------


def suite_oracle(cfg: SuiteConfig) -> List[Row]:
    rows: List[Row] = []
    rng = random.Random(cfg.seed)
    for k in range(max(cfg.instances, 20)):
        d = 1 + k % min(cfg.d, 2)
        mring = MatrixRing(QQ, d)
        lring = LaurentRing(mring)
        inst = f"instance {k} d={d}"
        u = _rand_unit(mring, lring, rng, rng.randrange(1, 3))
        w2 = _rand_unit(mring, lring, rng, rng.randrange(1, 3))
        a = ZOp.shift_poly(mring, u.fwd) + ZOp.from_finite(
            mring, {(rng.randrange(-2, 2), rng.randrange(-2, 2)): mring.one}
        )
        b = ZOp.shift_poly(mring, w2.fwd)
        rows.append(
            _row(
                "oracle-two-sided-product",
                inst,
                check_zop_product(a, b, max(cfg.window, 16), Bindings()),
            )
        )
        ta = tzm.random_toeplitz_unit(mring, rng)
        tb = tzm.random_toeplitz_unit(mring, rng)
        rows.append(
            _row(
                "oracle-one-sided-product",
                inst,
                check_top_product(ta.fwd, tb.fwd, max(cfg.window, 16), Bindings()),
            )
        )
    # truncated series inverses for loops with only one finite side
    mring = MatrixRing(QQ, 1)
    half = ((Fraction(-1, 2),),)
    loop = {0: mring.one, 1: half}
    trunc = truncated_loop_inverse(mring, loop, 4, Bindings())
    want = {e: ((Fraction(1, 2) ** e,),) for e in range(5)}
    ok = all(
        mring.eq(trunc.series.get(e, mring.zero), want.get(e, mring.zero))
        for e in set(trunc.series) | set(want)
    )
    ok &= all(e > trunc.cutoff for e in trunc.residual)
    rows.append(_row("oracle-truncated-inverse-series", "geometric loop", ok))
    return rows


SUITES: Dict[str, Callable[[SuiteConfig], List[Row]]] = {
    "artkey": suite_artkey,
    "stabilize": suite_stabilize,
    "bott": suite_bott,
    "linearize": suite_linearize,
    "toeplitz": suite_toeplitz,
    "contract": suite_contract,
    "finite": suite_finite,
    "star": suite_star,
    "poly": suite_poly,
    "oracle-equiv": suite_oracle,
}


def run_suites(names: List[str], cfg: SuiteConfig) -> Dict[str, Any]:
    rows: List[Row] = []
    for name in names:
        rows.extend(SUITES[name](cfg))
    rows = sort_rows(rows)
    return {
        "suites": sorted(names),
        "config": {
            "seed": cfg.seed,
            "d": cfg.d,
            "window": cfg.window,
            "points": cfg.points,
            "s": cfg.s,
            "instances": cfg.instances,
        },
        "rows": rows,
        "passed": sum(1 for r in rows if r["pass"]),
        "failed": sum(1 for r in rows if not r["pass"]),
    }
