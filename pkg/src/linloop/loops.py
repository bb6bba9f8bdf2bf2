"""Cyclic loops with matrix coefficients, and invertible loops as pairs.

A *loop* is a finite Laurent polynomial in a cyclic variable ``z`` whose
coefficients live in a coefficient ring (typically ``d x d`` matrices over
an exact scalar ring).  Invertible loops are carried around as explicit
pairs ``(fwd, inv)`` together with the generator presentation that produced
them, so that inverses never need to be discovered after the fact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from .errors import BadInvolution, HintMismatch, NotInvertible, WrongKind
from .rings import (
    CIRCLE,
    LaurentRing,
    MatrixRing,
    QQ,
    Ring,
    check_involution,
    symmetric_rational_involution,
)

Loop = dict  # {exponent: coefficient}


def loop_ring(coeff: Ring) -> LaurentRing:
    """The Laurent ring of loops over a coefficient ring."""
    return LaurentRing(coeff, "z")


def matrix_loop_ring(leaf: Ring, d: int) -> LaurentRing:
    return loop_ring(MatrixRing(leaf, d))


def support(a: Loop) -> Tuple[int, int]:
    """(min exponent, max exponent); (0, 0) for the zero loop."""
    if not a:
        return (0, 0)
    return (min(a), max(a))


def loop_eval_at_one(ring: LaurentRing, a: Loop):
    """Sum of coefficients: the value of the loop at z = 1."""
    return ring.base.total(a.values())


def loop_reverse(a: Loop) -> Loop:
    """Substitute z -> 1/z (coefficients untouched)."""
    return {-e: c for e, c in a.items()}


# ---------------------------------------------------------------------------
# invertible loops as pairs with presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """One factor of a loop-unit presentation.

    kind is one of "const", "monomial", "mixer", "unipotent"; ``data``
    holds the defining elements (see :func:`build_unit`).  ``fwd``/``inv``
    are the resulting loop and its exact inverse.
    """

    kind: str
    data: tuple
    fwd: Loop
    inv: Loop


@dataclass(frozen=True)
class LoopUnit:
    """An invertible loop: the loop, its inverse, and how it was built.

    ``gens`` lists the generating factors such that
    ``fwd = gens[-1].fwd * ... * gens[0].fwd`` (rightmost factor first).
    """

    ring: LaurentRing
    fwd: Loop
    inv: Loop
    gens: Tuple[Generator, ...] = ()

    def __post_init__(self):
        prod = self.ring.mul(self.fwd, self.inv)
        if not self.ring.is_one(prod):
            raise NotInvertible("claimed inverse fails fwd * inv == 1")

    def inverse(self) -> "LoopUnit":
        return LoopUnit(self.ring, self.inv, self.fwd)

    def adjoint(self) -> "LoopUnit":
        return LoopUnit(
            self.ring, self.ring.star(self.fwd), self.ring.star(self.inv)
        )

    def reverse(self) -> "LoopUnit":
        """The unit a(1/z)."""
        return LoopUnit(
            self.ring, loop_reverse(self.fwd), loop_reverse(self.inv)
        )

    def __mul__(self, o: "LoopUnit") -> "LoopUnit":
        if o.ring != self.ring:
            raise WrongKind("loop units over different rings")
        return LoopUnit(
            self.ring,
            self.ring.mul(self.fwd, o.fwd),
            self.ring.mul(o.inv, self.inv),
            o.gens + self.gens,
        )

    @property
    def window(self) -> Tuple[int, int]:
        """Smallest (m, n) with m <= 0 <= n containing supp(fwd) U supp(inv)."""
        lo1, hi1 = support(self.fwd)
        lo2, hi2 = support(self.inv)
        return (min(lo1, lo2, 0), max(hi1, hi2, 0))

    def value_at_one(self):
        return loop_eval_at_one(self.ring, self.fwd)

    def is_pointed(self) -> bool:
        """Whether the loop takes the value 1 at z = 1."""
        return self.ring.base.is_one(self.value_at_one())

    def pointed(self) -> "LoopUnit":
        """Normalize to a(z) a(1)^{-1} (a pointed loop)."""
        c1 = self.value_at_one()
        c1i = loop_eval_at_one(self.ring, self.inv)
        # inv evaluated at 1 is the inverse of fwd evaluated at 1
        return self * LoopUnit(
            self.ring,
            self.ring.const(c1i),
            self.ring.const(c1),
            (Generator("const", (c1i,), self.ring.const(c1i), self.ring.const(c1)),),
        )


# ---------------------------------------------------------------------------
# generator construction
# ---------------------------------------------------------------------------


def mixer_coeffs(cring: Ring, q: Any) -> Tuple[Any, Any]:
    """Coefficients ((1+Q)/2, (1-Q)/2) of the linear loop attached to Q."""
    check_involution(cring, q)
    h = cring.half
    plus = cring.mul(h, cring.add(cring.one, q))
    minus = cring.mul(h, cring.sub(cring.one, q))
    return plus, minus


def linear_loop(ring: LaurentRing, k: int, q: Any) -> Loop:
    """The loop (1 + z**k)/2 + (1 - z**k)/2 * Q for an involution Q."""
    plus, minus = mixer_coeffs(ring.base, q)
    return ring.add(ring.monomial(0, plus), ring.monomial(k, minus))


def make_generator(ring: LaurentRing, spec: tuple) -> Generator:
    """Build one presentation factor.

    Supported specs:

    * ``("const", c)`` -- constant loop from an invertible coefficient;
    * ``("monomial", k, c)`` -- ``c * z**k`` with ``c`` invertible;
    * ``("mixer", k, q)`` -- the linear loop of an involution ``q`` in the
      variable ``z**k`` with ``k`` in {1, -1}; its inverse is the mixer at
      ``-k``;
    * ``("unipotent", n, N)`` -- ``1 + n`` for a loop ``n`` with
      ``n**N == 0``; the inverse is the finite geometric series.
    """
    cring = ring.base
    kind = spec[0]
    if kind == "const":
        c = spec[1]
        return Generator(
            "const", (c,), ring.const(c), ring.const(cring.inv(c))
        )
    if kind == "monomial":
        k, c = spec[1], spec[2]
        return Generator(
            "monomial",
            (k, c),
            ring.monomial(k, c),
            ring.monomial(-k, cring.inv(c)),
        )
    if kind == "mixer":
        k, q = spec[1], spec[2]
        if k not in (1, -1):
            raise WrongKind("mixer exponent must be +1 or -1")
        return Generator(
            "mixer", (k, q), linear_loop(ring, k, q), linear_loop(ring, -k, q)
        )
    if kind == "unipotent":
        n, order = spec[1], spec[2]
        if not ring.is_zero(ring.power(n, order)):
            raise HintMismatch("claimed nilpotency order fails")
        fwd = ring.add(ring.one, n)
        inv = ring.zero
        term = ring.one
        for _ in range(order):
            inv = ring.add(inv, term)
            term = ring.mul(term, ring.neg(n))
        return Generator("unipotent", (n, order), fwd, inv)
    raise WrongKind(f"unknown generator kind {kind!r}")


def build_unit(ring: LaurentRing, specs: Sequence[tuple]) -> LoopUnit:
    """Multiply generator factors (leftmost spec is the leftmost factor)."""
    gens = [make_generator(ring, s) for s in specs]
    fwd = ring.one
    inv = ring.one
    for g in gens:
        fwd = ring.mul(fwd, g.fwd)
        inv = ring.mul(g.inv, inv)
    return LoopUnit(ring, fwd, inv, tuple(reversed(gens)))


# ---------------------------------------------------------------------------
# finiteness bookkeeping for the finite-linearization tower
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteFactor:
    """One factor of a finiteness decomposition.

    ``tag`` is "L" if the loop itself is supported in [m, n] and "R" if its
    inverse is supported in [-n, -m].  ``m <= 0 <= n`` always.
    """

    unit: LoopUnit
    tag: str
    m: int
    n: int


def classify_factor(unit: LoopUnit, prefer: str = "L") -> FiniteFactor:
    """Attach the L/R window of a single finite factor.

    When both the loop and its inverse are finite (e.g. monomials, mixers)
    either tag works; ``prefer`` breaks the tie.
    """
    lo_f, hi_f = support(unit.fwd)
    lo_i, hi_i = support(unit.inv)
    l_window = (min(lo_f, 0), max(hi_f, 0))
    r_window = (min(-hi_i, 0), max(-lo_i, 0))
    if prefer == "R":
        return FiniteFactor(unit, "R", r_window[0], r_window[1])
    return FiniteFactor(unit, "L", l_window[0], l_window[1])


@dataclass(frozen=True)
class FiniteDecomposition:
    """An ordered tuple (a_s, ..., a_1) of finite factors, rightmost first.

    ``factors[0]`` is a_1 (the rightmost factor of the product).
    """

    ring: LaurentRing
    factors: Tuple[FiniteFactor, ...]

    @property
    def product(self) -> LoopUnit:
        acc = LoopUnit(self.ring, self.ring.one, self.ring.one)
        for f in self.factors:
            acc = f.unit * acc
        return acc

    def windows(self) -> List[Tuple[int, int]]:
        """Cumulative windows (M_k, N_k) for k = 1..s."""
        out = []
        m = n = 0
        for f in self.factors:
            m += f.m
            n += f.n
            out.append((m, n))
        return out


def decompose_unit(unit: LoopUnit, prefer: str = "L") -> FiniteDecomposition:
    """Turn a presented unit into a finiteness decomposition.

    Every supported generator kind is finite with finite inverse except
    "unipotent", whose inverse is still a finite loop, so each factor gets
    the smaller of its L/R windows (ties broken by ``prefer``).
    """
    if not unit.gens:
        raise WrongKind("unit carries no presentation")
    factors = []
    for g in unit.gens:
        u = LoopUnit(unit.ring, g.fwd, g.inv, (g,))
        lo_f, hi_f = support(u.fwd)
        lo_i, hi_i = support(u.inv)
        lw = (min(lo_f, 0), max(hi_f, 0))
        rw = (min(-hi_i, 0), max(-lo_i, 0))
        l_size = lw[1] - lw[0]
        r_size = rw[1] - rw[0]
        if l_size < r_size or (l_size == r_size and prefer == "L"):
            factors.append(FiniteFactor(u, "L", lw[0], lw[1]))
        else:
            factors.append(FiniteFactor(u, "R", rw[0], rw[1]))
    return FiniteDecomposition(unit.ring, tuple(factors))


# ---------------------------------------------------------------------------
# deterministic random instances for tests and benchmarks
# ---------------------------------------------------------------------------


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def random_involution(mring: MatrixRing, rng: random.Random):
    """A rational symmetric involution 1 - 2 v v^T / (v^T v)."""
    d = mring.d
    while True:
        vec = [rng.randint(-2, 2) for _ in range(d)]
        if any(vec):
            return symmetric_rational_involution(mring, vec)


def random_orthogonal(mring: MatrixRing, rng: random.Random):
    """A rational orthogonal matrix (product of symmetric involutions)."""
    q1 = random_involution(mring, rng)
    q2 = random_involution(mring, rng)
    return mring.mul(q1, q2)


def random_invertible_matrix(mring: MatrixRing, rng: random.Random):
    """An invertible rational matrix: 1 + strictly triangular noise, mixed."""
    d = mring.d
    lower = [
        [
            Fraction(1) if i == j else (_random_fraction(rng) if i > j else Fraction(0))
            for j in range(d)
        ]
        for i in range(d)
    ]
    upper = [
        [
            Fraction(1) if i == j else (_random_fraction(rng) if i < j else Fraction(0))
            for j in range(d)
        ]
        for i in range(d)
    ]
    return mring.mul(mring.from_rows(lower), mring.from_rows(upper))


def random_nilpotent_loop(ring: LaurentRing, rng: random.Random, width: int = 1):
    """A loop n with n**d == 0: strictly-triangular coefficients only."""
    mring = ring.base
    d = mring.d
    out = ring.zero
    for _ in range(width):
        e = rng.randint(-2, 2)
        rows = [
            [
                _random_fraction(rng) if i < j else Fraction(0)
                for j in range(d)
            ]
            for i in range(d)
        ]
        out = ring.add(out, ring.monomial(e, mring.from_rows(rows)))
    return out


def random_unit_specs(
    ring: LaurentRing,
    rng: random.Random,
    n_factors: int = 3,
    kinds: Optional[Sequence[str]] = None,
    orthogonal: bool = False,
) -> List[tuple]:
    """Generator specs for a random unit (orthogonal: star-unitary factors)."""
    mring = ring.base
    d = mring.d
    kinds = list(kinds or ("const", "monomial", "mixer", "unipotent"))
    if orthogonal and "unipotent" in kinds:
        kinds.remove("unipotent")
    specs: List[tuple] = []
    for _ in range(n_factors):
        kind = rng.choice(kinds)
        if kind == "const":
            c = (
                random_orthogonal(mring, rng)
                if orthogonal
                else random_invertible_matrix(mring, rng)
            )
            specs.append(("const", c))
        elif kind == "monomial":
            k = rng.choice([-2, -1, 1, 2])
            c = (
                random_orthogonal(mring, rng)
                if orthogonal
                else random_invertible_matrix(mring, rng)
            )
            specs.append(("monomial", k, c))
        elif kind == "mixer":
            specs.append(
                ("mixer", rng.choice([1, -1]), random_involution(mring, rng))
            )
        else:
            if d < 2:
                specs.append(("monomial", 1, mring.one))
            else:
                specs.append(
                    ("unipotent", random_nilpotent_loop(ring, rng), d)
                )
    return specs


def random_unit(
    ring: LaurentRing,
    rng: random.Random,
    n_factors: int = 3,
    kinds: Optional[Sequence[str]] = None,
    orthogonal: bool = False,
) -> LoopUnit:
    return build_unit(
        ring, random_unit_specs(ring, rng, n_factors, kinds, orthogonal)
    )
