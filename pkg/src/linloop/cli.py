"""Command-line front end: verification suites, loop linearization exports,
finite linearization exports, homotopy traces, and benchmarks.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on a
configuration or input error.  Reports are deterministic for a fixed seed:
rows are sorted by anchor and instance hash and carry no timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from .errors import LinloopError
from .finite import (
    build_tower,
    box_involution,
    finite_linearization,
    finite_mixer_product,
    reduced_endpoint_reference,
)
from .homotopies import (
    CirclePoint,
    Rotation,
    bott,
    k_endpoint_quarter,
    k_endpoint_zero,
    linearize_k,
    vgrade_ring,
)
from .loops import LaurentRing, decompose_unit
from .operators import ZOp
from .rings import QQ, MatrixRing, pythagorean_grid
from .serialize import (
    report_to_csv,
    report_to_json,
    unit_spec_from_json,
    zop_to_json,
)
from .suites import SUITES, SuiteConfig, run_suites

#: Suite names accepted by ``verify --suite all``.
ALL_SUITES: List[str] = sorted(SUITES)


# ---------------------------------------------------------------------------
# exact-value JSON rendering
# ---------------------------------------------------------------------------


def _value_json(x: Any) -> Any:
    """Render an exact scalar, matrix, or graded element as JSON data."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(
            x.numerator
        )
    if isinstance(x, tuple):
        return [[_value_json(c) for c in row] for row in x]
    if isinstance(x, dict):
        return {str(e): _value_json(c) for e, c in sorted(x.items())}
    return str(x)


def _window_json(op: ZOp, size: int) -> List[List[Any]]:
    idx = range(-size, size)
    return [[_value_json(c) for c in row] for row in op.window(idx, idx)]


def _write_json(path: Path, payload: Any) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _load_input(path: str) -> Dict[str, Any]:
    with open(path) as fh:
        return json.load(fh)


def _infer_dim(obj: Dict[str, Any]) -> int:
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise LinloopError("input must carry a non-empty generator list")
    g = gens[0]
    mat = g.get("c") or g.get("q")
    if not isinstance(mat, list) or not mat:
        raise LinloopError("generator entries must carry a coefficient matrix")
    return len(mat)


def _outdir(arg: Optional[str]) -> Path:
    path = Path(arg or ".")
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite == "all":
        names = ALL_SUITES
    elif args.suite in SUITES:
        names = [args.suite]
    else:
        print(f"unknown suite {args.suite!r}; choose from "
              f"{', '.join(ALL_SUITES)} or all", file=sys.stderr)
        return 2
    cfg = SuiteConfig(
        seed=args.seed,
        d=args.d,
        window=args.window,
        points=args.points,
        s=args.s,
        instances=args.instances,
    )
    report = run_suites(names, cfg)
    text = report_to_csv(report) if args.format == "csv" else report_to_json(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report["failed"] == 0 else 1


def cmd_linearize(args: argparse.Namespace) -> int:
    obj = _load_input(args.input)
    mring = MatrixRing(QQ, _infer_dim(obj))
    lring = LaurentRing(mring)
    unit = unit_spec_from_json(lring, obj)
    vring = vgrade_ring(mring)
    out = _outdir(args.out)
    size = max(args.window, 4)
    _write_json(out / "bott.json", zop_to_json(mring, bott(unit, mring)))
    endpoints = {
        "flat": _window_json(k_endpoint_zero(unit, vring), size),
        "quarter": _window_json(k_endpoint_quarter(unit, vring), size),
    }
    _write_json(out / "endpoints.json", endpoints)
    frames = []
    for p in pythagorean_grid(max(args.points, 3), include_endpoints=True):
        k = linearize_k(unit, Rotation.trig(QQ, p), vring)
        frames.append(
            {
                "t": _value_json(p.t_in(QQ)),
                "s": _value_json(p.s_in(QQ)),
                "window": _window_json(k, size),
            }
        )
    _write_json(out / "trace.json", frames)
    return 0


def cmd_finite_linearize(args: argparse.Namespace) -> int:
    obj = _load_input(args.input)
    mring = MatrixRing(QQ, _infer_dim(obj))
    lring = LaurentRing(mring)
    unit = unit_spec_from_json(lring, obj)
    vring = vgrade_ring(mring)
    decomp = decompose_unit(unit)
    out = _outdir(args.out)
    size = max(args.window, 4)
    bf = box_involution(decomp, mring)
    _write_json(out / "b_f.json", zop_to_json(mring, bf))
    _write_json(
        out / "box.json",
        {
            "factors": [
                {"tag": f.tag, "window": [f.m, f.n]} for f in decomp.factors
            ],
            "accumulated": list(decomp.windows()[-1]) if decomp.factors else [0, 0],
        },
    )
    grid = [Fraction(0), Fraction(1, 2), Fraction(1)]
    pt = pythagorean_grid(3)[0]
    rot = Rotation.trig(QQ, pt)
    rotq = Rotation.trig(QQ, CirclePoint.theta_half_pi())
    tower = build_tower(decomp, rot, vring)
    towerq = build_tower(decomp, rotq, vring)
    one_v = ZOp.one(vring)

    def zeq(a: ZOp, b: ZOp) -> bool:
        d = a - b
        return not d.neg and not d.pos and not d.finite

    kf0 = finite_linearization(decomp, rot, vring, Fraction(0), tower)
    kf1 = finite_linearization(decomp, rot, vring, Fraction(1), tower)
    dev = kf1 - one_v
    m_lo, m_hi = tower.windows[-1]
    ref_q = k_endpoint_quarter(unit, vring)
    checks = [
        {
            "check": "start-is-pointed-linearization",
            "pass": zeq(kf0, linearize_k(unit, rot, vring)),
        },
        {
            "check": "reduced-endpoint",
            "pass": zeq(kf1, reduced_endpoint_reference(tower)),
        },
        {
            "check": "endpoint-box-bound",
            "pass": not dev.neg
            and not dev.pos
            and all(m_lo <= i <= m_hi and m_lo <= j <= m_hi for (i, j) in dev.finite),
            "box": [m_lo, m_hi],
        },
        {
            "check": "quarter-turn-constant",
            "pass": all(
                zeq(finite_linearization(decomp, rotq, vring, h, towerq), ref_q)
                for h in grid
            ),
        },
        {
            "check": "box-involution-squares-to-one",
            "pass": zeq(bf * bf, ZOp.one(mring)),
        },
        {
            "check": "finite-product-deviation",
            "pass": (
                lambda diff: not diff.neg and not diff.pos
            )(finite_mixer_product(decomp, mring, Fraction(1))[0]
              - ZOp.shift_poly(mring, unit.fwd)),
        },
    ]
    _write_json(out / "checks.json", checks)
    return 0 if all(c["pass"] for c in checks) else 1


def cmd_trace(args: argparse.Namespace) -> int:
    obj = _load_input(args.input)
    mring = MatrixRing(QQ, _infer_dim(obj))
    lring = LaurentRing(mring)
    unit = unit_spec_from_json(lring, obj)
    vring = vgrade_ring(mring)
    size = max(args.window, 4)
    frames = []
    for p in pythagorean_grid(max(args.points, 3), include_endpoints=True):
        k = linearize_k(unit, Rotation.trig(QQ, p), vring)
        frames.append(
            {
                "t": _value_json(p.t_in(QQ)),
                "s": _value_json(p.s_in(QQ)),
                "window": _window_json(k, size),
            }
        )
    text = json.dumps(frames, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    names = ALL_SUITES if args.suite == "all" else [args.suite]
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        print(f"unknown suite {unknown[0]!r}", file=sys.stderr)
        return 2
    cfg = SuiteConfig(
        seed=args.seed,
        d=args.d,
        window=args.window,
        points=args.points,
        s=args.s,
        instances=args.instances,
    )
    timings = []
    for name in names:
        t0 = time.perf_counter()
        rows = SUITES[name](cfg)
        timings.append(
            {
                "suite": name,
                "seconds": round(time.perf_counter() - t0, 3),
                "rows": len(rows),
                "failed": sum(1 for r in rows if not r["pass"]),
            }
        )
    text = json.dumps(timings, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--d", type=int, default=2, help="coefficient matrix dimension")
    p.add_argument("--window", type=int, default=16, help="largest index window")
    p.add_argument("--points", type=int, default=3, help="rational sample points")
    p.add_argument("--s", type=int, default=3, help="max decomposition length")
    p.add_argument("--instances", type=int, default=20, help="random instances")
    p.add_argument("--out", default=None, help="output file or directory")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="artifact",
        description="Exact verification and linearization of operator loops.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("--suite", default="all")
    pv.add_argument("--format", choices=["json", "csv"], default="json")
    _add_common(pv)
    pv.set_defaults(func=cmd_verify)

    pl = sub.add_parser("linearize", help="linearize a presented loop unit")
    pl.add_argument("--input", required=True, help="loop unit JSON file")
    _add_common(pl)
    pl.set_defaults(func=cmd_linearize)

    pf = sub.add_parser(
        "finite-linearize", help="finite linearization of a presented unit"
    )
    pf.add_argument("--input", required=True, help="loop unit JSON file")
    _add_common(pf)
    pf.set_defaults(func=cmd_finite_linearize)

    pt = sub.add_parser("trace", help="export pointed-family frames")
    pt.add_argument("--input", required=True, help="loop unit JSON file")
    _add_common(pt)
    pt.set_defaults(func=cmd_trace)

    pb = sub.add_parser("bench", help="time the verification suites")
    pb.add_argument("--suite", default="all")
    _add_common(pb)
    pb.set_defaults(func=cmd_bench)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (LinloopError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
