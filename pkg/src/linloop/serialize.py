"""Wire formats: exact rationals, loops, operators, reports.

All numbers serialize as strings "p/q" (or "p" when the denominator is 1)
so that round-trips are exact and reports are backend-independent.  Matrix
coefficients serialize as row-major nested lists.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from .errors import WrongKind
from .rings import MatrixRing, QQ, Ring
from .loops import LaurentRing, LoopUnit, build_unit
from .operators import ZOp

__all__ = [
    "rational_to_str",
    "rational_from_str",
    "matrix_to_json",
    "matrix_from_json",
    "loop_to_json",
    "loop_from_json",
    "zop_to_json",
    "unit_spec_from_json",
    "report_to_json",
    "report_to_csv",
]


def rational_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_str(s: str) -> Fraction:
    return Fraction(s)


def matrix_to_json(mring: MatrixRing, m) -> List[List[str]]:
    return [[rational_to_str(x) for x in row] for row in m]


def matrix_from_json(mring: MatrixRing, rows) -> Any:
    if len(rows) != mring.d or any(len(r) != mring.d for r in rows):
        raise WrongKind(f"matrix is not {mring.d}x{mring.d}")
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def loop_to_json(mring: MatrixRing, loop: dict) -> Dict[str, Any]:
    return {
        "coeffs": {str(e): matrix_to_json(mring, c) for e, c in sorted(loop.items())}
    }


def loop_from_json(mring: MatrixRing, obj: Dict[str, Any]) -> dict:
    return {
        int(e): matrix_from_json(mring, rows)
        for e, rows in obj["coeffs"].items()
    }


def zop_to_json(mring: MatrixRing, op: ZOp) -> Dict[str, Any]:
    return {
        "laurent": {
            "neg": loop_to_json(mring, op.neg),
            "pos": loop_to_json(mring, op.pos),
        },
        "finite": [
            {"i": i, "j": j, "entry": matrix_to_json(mring, v)}
            for (i, j), v in sorted(op.finite.items())
        ],
    }


def unit_spec_from_json(
    lring: LaurentRing, obj: Dict[str, Any]
) -> LoopUnit:
    """Rebuild a presented unit from its generator list.

    Expected form: {"generators": [{"kind": "const"|"monomial"|"mixer",
    ...}]}.  Free-form loops without presentation data are rejected,
    since only presented units carry constructed inverses.
    """
    mring = lring.base
    gens = obj.get("generators")
    if not isinstance(gens, list) or not gens:
        raise WrongKind("input must carry a non-empty generator list")
    specs = []
    for g in gens:
        kind = g.get("kind")
        if kind == "const":
            specs.append(("const", matrix_from_json(mring, g["c"])))
        elif kind == "monomial":
            specs.append(
                ("monomial", int(g["k"]), matrix_from_json(mring, g["c"]))
            )
        elif kind == "mixer":
            specs.append(("mixer", int(g["k"]), matrix_from_json(mring, g["q"])))
        else:
            raise WrongKind(f"unknown generator kind {kind!r}")
    return build_unit(lring, specs)


def report_to_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_to_csv(report: Dict[str, Any]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["anchor", "instance", "pass", "detail"])
    for row in report["rows"]:
        w.writerow(
            [row["anchor"], row["instance"], "pass" if row["pass"] else "FAIL", row.get("detail", "")]
        )
    return buf.getvalue()
