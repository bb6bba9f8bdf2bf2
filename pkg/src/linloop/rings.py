"""Exact coefficient rings used throughout the library.

All arithmetic is exact.  The scalar leaf is either the rationals, the field
of rational functions in one variable ``t``, or the quadratic extension

    circle ring  =  QQ(t)[s] / (s**2 - (1 - t**2)),

whose elements represent trigonometric expressions ``p(t) + q(t)*s`` with
``t = sin(theta)``, ``s = cos(theta)``.  On top of a leaf one can stack a
``d x d`` matrix layer (with transpose involution) and a Laurent layer in a
cyclic formal variable (typically ``v``), giving the coefficient towers the
operator modules work over.

Rings are *parent* objects: elements are plain immutable Python data
(``Fraction``, tuples, dicts treated as frozen) and all arithmetic goes
through the parent, in the style of computer-algebra parent/element designs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

from .errors import (
    BadInvolution,
    DenominatorVanishes,
    NoStarStructure,
    NotInvertible,
    RingMismatch,
    SymbolicPoint,
)

Elem = Any

# ---------------------------------------------------------------------------
# dense polynomial helpers over Fraction (coefficient index == degree)
# ---------------------------------------------------------------------------

PZERO: tuple = ()
PONE: tuple = (Fraction(1),)


def pnorm(c: Iterable[Fraction]) -> tuple:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def pconst(x) -> tuple:
    x = Fraction(x)
    return (x,) if x else ()


def padd(a: tuple, b: tuple) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return pnorm(out)


def pneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


def psub(a: tuple, b: tuple) -> tuple:
    return padd(a, pneg(b))


def pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return PZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return pnorm(out)


def pscale(a: tuple, x: Fraction) -> tuple:
    if not x:
        return PZERO
    return tuple(c * x for c in a)


def pdivmod(a: tuple, b: tuple) -> tuple:
    """Polynomial division with remainder; ``b`` must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    binv = 1 / b[-1]
    while len(a) >= len(b):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(b):
            break
        k = len(a) - len(b)
        f = a[-1] * binv
        q[k] = f
        for i, x in enumerate(b):
            a[k + i] -= f * x
        a.pop()
    return pnorm(q), pnorm(a)


def pgcd(a: tuple, b: tuple) -> tuple:
    """Monic gcd via Euclid's algorithm."""
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    if not a:
        return PZERO
    lead = a[-1]
    return tuple(x / lead for x in a)


def peval(a: tuple, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# rational functions in one variable over QQ
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RF:
    """A reduced rational function num/den; den is monic and coprime to num."""

    num: tuple
    den: tuple

    @staticmethod
    def make(num, den=PONE) -> "RF":
        num = pnorm(num)
        den = pnorm(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return RF(PZERO, PONE)
        g = pgcd(num, den)
        if len(g) > 1:
            num, _ = pdivmod(num, g)
            den, _ = pdivmod(den, g)
        lead = den[-1]
        if lead != 1:
            num = tuple(x / lead for x in num)
            den = tuple(x / lead for x in den)
        return RF(num, den)

    @staticmethod
    def const(x) -> "RF":
        return RF(pconst(x), PONE)

    @staticmethod
    def var() -> "RF":
        return RF((Fraction(0), Fraction(1)), PONE)

    def is_zero(self) -> bool:
        return not self.num

    def is_poly(self) -> bool:
        return self.den == PONE

    def __add__(self, o: "RF") -> "RF":
        return RF.make(
            padd(pmul(self.num, o.den), pmul(o.num, self.den)),
            pmul(self.den, o.den),
        )

    def __neg__(self) -> "RF":
        return RF(pneg(self.num), self.den)

    def __sub__(self, o: "RF") -> "RF":
        return self + (-o)

    def __mul__(self, o: "RF") -> "RF":
        return RF.make(pmul(self.num, o.num), pmul(self.den, o.den))

    def inv(self) -> "RF":
        if not self.num:
            raise NotInvertible("zero rational function")
        return RF.make(self.den, self.num)

    def eval(self, x: Fraction) -> Fraction:
        d = peval(self.den, x)
        if d == 0:
            raise DenominatorVanishes(f"pole at t = {x}")
        return peval(self.num, x) / d


RF_ZERO = RF(PZERO, PONE)
RF_ONE = RF(PONE, PONE)
RF_T = RF.var()


# ---------------------------------------------------------------------------
# ring parents
# ---------------------------------------------------------------------------


class Ring:
    """Abstract parent.  Elements are plain data; arithmetic lives here."""

    #: leaf scalar ring of the tower (self for leaves)
    leaf: "Ring"

    def add(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def neg(self, a: Elem) -> Elem:
        raise NotImplementedError

    def sub(self, a: Elem, b: Elem) -> Elem:
        return self.add(a, self.neg(b))

    def mul(self, a: Elem, b: Elem) -> Elem:
        raise NotImplementedError

    def eq(self, a: Elem, b: Elem) -> bool:
        raise NotImplementedError

    def is_zero(self, a: Elem) -> bool:
        return self.eq(a, self.zero)

    def scalar(self, q) -> Elem:
        """Embed a rational number as q * 1."""
        raise NotImplementedError

    def inv(self, a: Elem) -> Elem:
        raise NotImplementedError

    def star(self, a: Elem) -> Elem:
        raise NoStarStructure(f"{self!r} carries no involution")

    def from_leaf(self, x: Elem) -> Elem:
        """Embed an element of the leaf scalar ring."""
        raise NotImplementedError

    @property
    def half(self) -> Elem:
        return self.scalar(Fraction(1, 2))

    # convenience ------------------------------------------------------
    def total(self, elems: Iterable[Elem]) -> Elem:
        acc = self.zero
        for e in elems:
            acc = self.add(acc, e)
        return acc

    def is_one(self, a: Elem) -> bool:
        return self.eq(a, self.one)

    def power(self, a: Elem, n: int) -> Elem:
        if n < 0:
            return self.power(self.inv(a), -n)
        acc = self.one
        for _ in range(n):
            acc = self.mul(acc, a)
        return acc


class RationalRing(Ring):
    """The rationals; elements are :class:`fractions.Fraction`."""

    def __init__(self) -> None:
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.leaf = self

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, o) -> bool:
        return isinstance(o, RationalRing)

    def __hash__(self) -> int:
        return hash("QQ")

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def scalar(self, q):
        return Fraction(q)

    def inv(self, a):
        if a == 0:
            raise NotInvertible("zero has no inverse")
        return 1 / a

    def star(self, a):
        return a

    def from_leaf(self, x):
        return Fraction(x)


QQ = RationalRing()


class FunctionField(Ring):
    """Rational functions in one variable over QQ; elements are :class:`RF`."""

    def __init__(self, varname: str = "t") -> None:
        self.varname = varname
        self.zero = RF_ZERO
        self.one = RF_ONE
        self.leaf = self

    def __repr__(self) -> str:
        return f"QQ({self.varname})"

    def __eq__(self, o) -> bool:
        return isinstance(o, FunctionField) and o.varname == self.varname

    def __hash__(self) -> int:
        return hash(("FF", self.varname))

    @property
    def gen(self) -> RF:
        return RF_T

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def scalar(self, q):
        return RF.const(q)

    def inv(self, a):
        return a.inv()

    def star(self, a):
        return a

    def from_leaf(self, x):
        return x


class CircleRing(Ring):
    """QQ(t)[s]/(s**2 - (1 - t**2)); elements are pairs ``(p, q)`` of RF."""

    def __init__(self) -> None:
        self.zero = (RF_ZERO, RF_ZERO)
        self.one = (RF_ONE, RF_ZERO)
        self.leaf = self
        # s**2 as a rational function of t
        self.s2 = RF_ONE - RF_T * RF_T

    def __repr__(self) -> str:
        return "Circle"

    def __eq__(self, o) -> bool:
        return isinstance(o, CircleRing)

    def __hash__(self) -> int:
        return hash("Circle")

    @property
    def t(self) -> Elem:
        return (RF_T, RF_ZERO)

    @property
    def s(self) -> Elem:
        return (RF_ZERO, RF_ONE)

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def neg(self, a):
        return (-a[0], -a[1])

    def mul(self, a, b):
        p1, q1 = a
        p2, q2 = b
        return (p1 * p2 + q1 * q2 * self.s2, p1 * q2 + q1 * p2)

    def eq(self, a, b):
        return a[0] == b[0] and a[1] == b[1]

    def scalar(self, q):
        return (RF.const(q), RF_ZERO)

    def inv(self, a):
        p, q = a
        norm = p * p - q * q * self.s2
        if norm.is_zero():
            raise NotInvertible("zero circle-ring element")
        ninv = norm.inv()
        return (p * ninv, -(q * ninv))

    def star(self, a):
        return a

    def from_leaf(self, x):
        return x

    def eval(self, a, t0: Fraction, s0: Fraction) -> Fraction:
        """Evaluate at a rational circle point (t0, s0)."""
        p, q = a
        return p.eval(t0) + q.eval(t0) * s0


CIRCLE = CircleRing()
TFIELD = FunctionField("t")


class MatrixRing(Ring):
    """d x d matrices over a base ring; elements are tuples of row tuples."""

    def __init__(self, base: Ring, d: int) -> None:
        if d < 1:
            raise ValueError("matrix dimension must be >= 1")
        self.base = base
        self.d = d
        rng = range(d)
        self.zero = tuple(tuple(base.zero for _ in rng) for _ in rng)
        self.one = tuple(
            tuple(base.one if i == j else base.zero for j in rng) for i in rng
        )
        self.leaf = base.leaf

    def __repr__(self) -> str:
        return f"M{self.d}({self.base!r})"

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, MatrixRing) and o.d == self.d and o.base == self.base
        )

    def __hash__(self) -> int:
        return hash(("M", self.d, self.base))

    def add(self, a, b):
        return tuple(
            tuple(self.base.add(x, y) for x, y in zip(ra, rb))
            for ra, rb in zip(a, b)
        )

    def neg(self, a):
        return tuple(tuple(self.base.neg(x) for x in row) for row in a)

    def mul(self, a, b):
        d = self.d
        bb = self.base
        return tuple(
            tuple(
                bb.total(bb.mul(a[i][k], b[k][j]) for k in range(d))
                for j in range(d)
            )
            for i in range(d)
        )

    def eq(self, a, b):
        return all(
            self.base.eq(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)
        )

    def scalar(self, q):
        qe = self.base.scalar(q)
        rng = range(self.d)
        return tuple(
            tuple(qe if i == j else self.base.zero for j in rng) for i in rng
        )

    def from_leaf(self, x):
        xe = self.base.from_leaf(x)
        rng = range(self.d)
        return tuple(
            tuple(xe if i == j else self.base.zero for j in rng) for i in rng
        )

    def from_rows(self, rows) -> Elem:
        """Build a matrix from rational entries (ints/Fractions) or base elems."""
        d = self.d
        rows = list(rows)
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError("wrong matrix shape")
        out = []
        for r in rows:
            row = []
            for x in r:
                if isinstance(x, (int, Fraction)):
                    row.append(self.base.scalar(x))
                else:
                    row.append(x)
            out.append(tuple(row))
        return tuple(out)

    def inv(self, a):
        rows = [list(r) for r in a]
        return tuple(
            tuple(r) for r in invert_dense(self.base, rows)
        )

    def star(self, a):
        d = self.d
        return tuple(
            tuple(self.base.star(a[j][i]) for j in range(d)) for i in range(d)
        )

    def map_entries(self, a, fn: Callable[[Elem], Elem]):
        return tuple(tuple(fn(x) for x in row) for row in a)


class LaurentRing(Ring):
    """Finite Laurent polynomials in a cyclic variable over a base ring.

    Elements are dicts ``{exponent: coefficient}`` with no zero values,
    treated as immutable.  The involution sends the variable to its inverse
    and stars the coefficients (the variable is *cyclic*: it represents a
    point on the unit circle).
    """

    def __init__(self, base: Ring, varname: str = "v") -> None:
        self.base = base
        self.varname = varname
        self.zero: dict = {}
        self.one = {0: base.one}
        self.leaf = base.leaf

    def __repr__(self) -> str:
        return f"{self.base!r}[{self.varname}^-1,{self.varname}]"

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, LaurentRing)
            and o.varname == self.varname
            and o.base == self.base
        )

    def __hash__(self) -> int:
        return hash(("L", self.varname, self.base))

    @property
    def gen(self) -> Elem:
        return {1: self.base.one}

    def gen_pow(self, k: int) -> Elem:
        return {k: self.base.one}

    def monomial(self, k: int, c: Elem) -> Elem:
        return {} if self.base.is_zero(c) else {k: c}

    def const(self, c: Elem) -> Elem:
        return self.monomial(0, c)

    def add(self, a, b):
        out = dict(a)
        for e, c in b.items():
            acc = self.base.add(out.get(e, self.base.zero), c)
            if self.base.is_zero(acc):
                out.pop(e, None)
            else:
                out[e] = acc
        return out

    def neg(self, a):
        return {e: self.base.neg(c) for e, c in a.items()}

    def mul(self, a, b):
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                p = self.base.mul(c1, c2)
                e = e1 + e2
                if e in out:
                    out[e] = self.base.add(out[e], p)
                else:
                    out[e] = p
        return {e: c for e, c in out.items() if not self.base.is_zero(c)}

    def eq(self, a, b):
        if set(a) != set(b):
            # normalized dicts carry no zero values, so keys must agree
            return False
        return all(self.base.eq(a[e], b[e]) for e in a)

    def scalar(self, q):
        c = self.base.scalar(q)
        return {} if self.base.is_zero(c) else {0: c}

    def from_leaf(self, x):
        c = self.base.from_leaf(x)
        return {} if self.base.is_zero(c) else {0: c}

    def inv(self, a):
        if len(a) != 1:
            raise NotInvertible(
                "only monomials are invertible inside a Laurent ring"
            )
        ((e, c),) = a.items()
        return {-e: self.base.inv(c)}

    def star(self, a):
        return {-e: self.base.star(c) for e, c in a.items()}

    # maps --------------------------------------------------------------
    def map_coeffs(self, a, fn: Callable[[Elem], Elem], target: "LaurentRing"):
        out: dict = {}
        for e, c in a.items():
            fc = fn(c)
            if not target.base.is_zero(fc):
                out[e] = fc
        return out

    def twist(self, a, k: int):
        """Substitute the variable by its k-th power (k = -1: v -> 1/v)."""
        return {e * k: c for e, c in a.items()}

    def bind(self, a, value: Elem, target: Ring, coeff_fn=None):
        """Evaluate at ``value`` (an invertible element of ``target``)."""
        coeff_fn = coeff_fn or (lambda c: c)
        acc = target.zero
        vinv: Optional[Elem] = None
        for e, c in a.items():
            if e >= 0:
                p = target.power(value, e)
            else:
                if vinv is None:
                    vinv = target.inv(value)
                p = target.power(vinv, -e)
            acc = target.add(acc, target.mul(coeff_fn(c), p))
        return acc


# ---------------------------------------------------------------------------
# dense exact linear algebra over a ring
# ---------------------------------------------------------------------------


def _flatten_block(ring: MatrixRing, rows):
    """Expand an n x n matrix over M_d(base) into an (nd) x (nd) base matrix."""
    d = ring.d
    n = len(rows)
    out = [[None] * (n * d) for _ in range(n * d)]
    for i in range(n):
        for j in range(n):
            blk = rows[i][j]
            for a in range(d):
                for b in range(d):
                    out[i * d + a][j * d + b] = blk[a][b]
    return out


def _unflatten_block(ring: MatrixRing, flat, n: int):
    d = ring.d
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(
                tuple(
                    tuple(flat[i * d + a][j * d + b] for b in range(d))
                    for a in range(d)
                )
            )
        out.append(row)
    return out


def invert_dense(ring: Ring, rows):
    """Invert a square dense matrix with entries in ``ring``.

    Matrix-ring entries are flattened to the base ring first.  Pivots are
    sought among entries invertible in the (remaining) ring; for field
    leaves this is ordinary Gaussian elimination.
    """
    n = len(rows)
    if n == 0:
        return []
    if isinstance(ring, MatrixRing):
        flat = _flatten_block(ring, rows)
        inv = invert_dense(ring.base, flat)
        return _unflatten_block(ring, inv, n)

    from .errors import SingularFiniteBlock

    a = [list(r) for r in rows]
    res = [
        [ring.one if i == j else ring.zero for j in range(n)] for i in range(n)
    ]
    for col in range(n):
        piv = None
        pe = None
        for r in range(col, n):
            cand = a[r][col]
            if ring.is_zero(cand):
                continue
            try:
                pe = ring.inv(cand)
                piv = r
                break
            except NotInvertible:
                continue
        if piv is None:
            raise SingularFiniteBlock(
                "no invertible pivot found while inverting a finite block"
            )
        a[col], a[piv] = a[piv], a[col]
        res[col], res[piv] = res[piv], res[col]
        a[col] = [ring.mul(pe, x) for x in a[col]]
        res[col] = [ring.mul(pe, x) for x in res[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if ring.is_zero(f):
                continue
            a[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(a[r], a[col])]
            res[r] = [
                ring.sub(x, ring.mul(f, y)) for x, y in zip(res[r], res[col])
            ]
    return res


def mat_mul_dense(ring: Ring, a, b):
    n = len(a)
    m = len(b[0]) if b else 0
    k = len(b)
    return [
        [
            ring.total(ring.mul(a[i][x], b[x][j]) for x in range(k))
            for j in range(m)
        ]
        for i in range(n)
    ]


# ---------------------------------------------------------------------------
# circle points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CirclePoint:
    """A point (t, s) on the unit circle, rational or symbolic.

    ``kind`` is one of:

    * ``"rational"`` -- t, s are Fractions with t**2 + s**2 == 1;
    * ``"symbolic"`` -- t, s are the generators of the circle ring;
    * ``"symbolic-t"`` -- t is the generator of QQ(t); there is no s.
      (Used by the polynomial conjugation variant.)
    """

    kind: str
    t: Optional[Fraction] = None
    s: Optional[Fraction] = None

    @staticmethod
    def rational(t, s) -> "CirclePoint":
        t, s = Fraction(t), Fraction(s)
        if t * t + s * s != 1:
            raise ValueError(f"({t},{s}) is not on the unit circle")
        return CirclePoint("rational", t, s)

    @staticmethod
    def from_parameter(u) -> "CirclePoint":
        """Pythagorean parametrization t = 2u/(1+u**2), s = (1-u**2)/(1+u**2)."""
        u = Fraction(u)
        den = 1 + u * u
        return CirclePoint.rational(2 * u / den, (1 - u * u) / den)

    @staticmethod
    def theta_zero() -> "CirclePoint":
        return CirclePoint.rational(0, 1)

    @staticmethod
    def theta_half_pi() -> "CirclePoint":
        return CirclePoint.rational(1, 0)

    @staticmethod
    def theta_minus_half_pi() -> "CirclePoint":
        return CirclePoint.rational(-1, 0)

    @staticmethod
    def symbolic() -> "CirclePoint":
        return CirclePoint("symbolic")

    @staticmethod
    def symbolic_t() -> "CirclePoint":
        return CirclePoint("symbolic-t")

    @property
    def delta_plus(self) -> bool:
        """Indicator of the endpoint (t, s) == (1, 0)."""
        return self.kind == "rational" and self.t == 1 and self.s == 0

    @property
    def delta_minus(self) -> bool:
        """Indicator of the endpoint (t, s) == (-1, 0)."""
        return self.kind == "rational" and self.t == -1 and self.s == 0

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    # leaf-level scalars --------------------------------------------------
    def t_leaf(self, leaf: Ring) -> Elem:
        if self.kind == "rational":
            return leaf.scalar(self.t)
        if self.kind == "symbolic":
            if not isinstance(leaf, CircleRing):
                raise SymbolicPoint("symbolic point needs a circle-ring leaf")
            return leaf.t
        if self.kind == "symbolic-t":
            if not isinstance(leaf, FunctionField):
                raise SymbolicPoint("symbolic-t point needs a QQ(t) leaf")
            return leaf.gen
        raise SymbolicPoint(f"unknown point kind {self.kind}")

    def s_leaf(self, leaf: Ring) -> Elem:
        if self.kind == "rational":
            return leaf.scalar(self.s)
        if self.kind == "symbolic":
            if not isinstance(leaf, CircleRing):
                raise SymbolicPoint("symbolic point needs a circle-ring leaf")
            return leaf.s
        raise SymbolicPoint("this circle point carries no exact s value")

    def t_in(self, ring: Ring) -> Elem:
        return ring.from_leaf(self.t_leaf(ring.leaf))

    def s_in(self, ring: Ring) -> Elem:
        return ring.from_leaf(self.s_leaf(ring.leaf))


def pythagorean_grid(n: int, include_endpoints: bool = False):
    """Deterministic rational sample points in the open upper arc.

    Uses parameters u = 1/2, 1/3, 2/5, ... generating distinct interior
    points (s > 0, t != +-1).  Optionally prepends the three endpoints
    theta = 0, pi/2, -pi/2.
    """
    pts = []
    if include_endpoints:
        pts += [
            CirclePoint.theta_zero(),
            CirclePoint.theta_half_pi(),
            CirclePoint.theta_minus_half_pi(),
        ]
    k = 0
    num, den = 1, 2
    while k < n:
        u = Fraction(num, den)
        pts.append(CirclePoint.from_parameter(u))
        k += 1
        num, den = num + 1, den + 1
        if num == den:
            num, den = 1, den + 1
    return pts


def check_involution(ring: Ring, q: Elem) -> Elem:
    """Verify q**2 == 1 and return q."""
    if not ring.eq(ring.mul(q, q), ring.one):
        raise BadInvolution("element does not square to one")
    return q


def symmetric_rational_involution(mring: MatrixRing, vec) -> Elem:
    """Build the symmetric involution 1 - 2*v*v^T/(v^T v) from a rational vector."""
    d = mring.d
    vec = [Fraction(x) for x in vec]
    nrm = sum(x * x for x in vec)
    if nrm == 0:
        raise ValueError("zero vector")
    rows = [
        [
            (1 if i == j else 0) - 2 * vec[i] * vec[j] / nrm
            for j in range(d)
        ]
        for i in range(d)
    ]
    return mring.from_rows(rows)


def require_same_ring(a_ring: Ring, b_ring: Ring) -> None:
    if a_ring != b_ring:
        raise RingMismatch(f"{a_ring!r} vs {b_ring!r}")
