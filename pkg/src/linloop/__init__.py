"""Exact operator-algebra toolkit for loop linearization on the line.

Everything is computed over exact scalar rings (rationals, rational
functions, and a circle coordinate ring), so every identity checked by the
verification suites holds with zero tolerance.
"""

from .errors import LinloopError
from .rings import QQ, CircleRing, FunctionField, MatrixRing, pythagorean_grid
from .loops import (
    FiniteDecomposition,
    FiniteFactor,
    LaurentRing,
    LoopUnit,
    build_unit,
    decompose_unit,
)
from .operators import BlockTOp, FinZ, FinZRing, OperatorRing, TOp, ZOp
from .homotopies import CirclePoint, Rotation, vgrade_ring
from .suites import SUITES, SuiteConfig, run_suites

__version__ = "0.1.0"

__all__ = [
    "LinloopError",
    "QQ",
    "CircleRing",
    "FunctionField",
    "MatrixRing",
    "FiniteDecomposition",
    "FiniteFactor",
    "LaurentRing",
    "LoopUnit",
    "build_unit",
    "decompose_unit",
    "BlockTOp",
    "FinZ",
    "FinZRing",
    "OperatorRing",
    "TOp",
    "ZOp",
    "CirclePoint",
    "Rotation",
    "pythagorean_grid",
    "vgrade_ring",
    "SUITES",
    "SuiteConfig",
    "run_suites",
    "__version__",
]
