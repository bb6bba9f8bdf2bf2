"""Exact infinite-matrix algebras: banded-plus-finite operators.

Three operator classes, all with entries in an arbitrary exact coefficient
ring ``cring``:

* :class:`ZOp` -- operators on the two-sided index set (the integers) whose
  rows sufficiently far below zero follow one band symbol and rows at or
  above zero follow another, up to a finitely supported correction.  Entry
  formula::

      A[i, j] = (neg if i < 0 else pos)[i - j]  +  finite[i, j].

  This class is closed under addition, multiplication, adjoints and the
  reflection ``i -> -i``, and contains all shift polynomials, the sign
  involution of the splitting at zero, and the diagonal mixers built from
  it.

* :class:`TOp` -- operators on the one-sided index set (the naturals):
  a Toeplitz band symbol plus a finitely supported correction.

* :class:`BlockTOp` -- square block matrices of :class:`TOp`, used for
  operators on several half-lines at once (each half-line indexed by the
  naturals after reflecting downward-pointing ones).

Representations are canonical: bands are read off from far rows, so two
operators are equal iff their components agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple

from .errors import (
    HintMismatch,
    NotInvertible,
    RingMismatch,
    SingularFiniteBlock,
    WrongKind,
)
from .rings import Ring, invert_dense

Loop = dict
Coord = Tuple[int, int]
Finite = Dict[Coord, Any]


# ---------------------------------------------------------------------------
# loop helpers on plain dicts (coefficients in cring)
# ---------------------------------------------------------------------------


def loop_add(cring: Ring, a: Loop, b: Loop) -> Loop:
    out = dict(a)
    for e, c in b.items():
        s = cring.add(out.get(e, cring.zero), c)
        if cring.is_zero(s):
            out.pop(e, None)
        else:
            out[e] = s
    return out


def loop_neg(cring: Ring, a: Loop) -> Loop:
    return {e: cring.neg(c) for e, c in a.items()}


def loop_sub(cring: Ring, a: Loop, b: Loop) -> Loop:
    return loop_add(cring, a, loop_neg(cring, b))


def loop_mul(cring: Ring, a: Loop, b: Loop) -> Loop:
    out: Loop = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            p = cring.mul(c1, c2)
            e = e1 + e2
            out[e] = cring.add(out[e], p) if e in out else p
    return {e: c for e, c in out.items() if not cring.is_zero(c)}

def loop_eq(cring: Ring, a: Loop, b: Loop) -> bool:
    return set(a) == set(b) and all(cring.eq(a[e], b[e]) for e in a)


def loop_star(cring: Ring, a: Loop) -> Loop:
    return {-e: cring.star(c) for e, c in a.items()}


def loop_rev(a: Loop) -> Loop:
    """Substitute the band variable by its inverse (no entry star)."""
    return {-e: c for e, c in a.items()}


def _fin_add(cring: Ring, fin: Finite, coord: Coord, val) -> None:
    if cring.is_zero(val):
        return
    if coord in fin:
        s = cring.add(fin[coord], val)
        if cring.is_zero(s):
            del fin[coord]
        else:
            fin[coord] = s
    else:
        fin[coord] = val


def _fin_normalize(cring: Ring, fin: Finite) -> Finite:
    return {k: v for k, v in fin.items() if not cring.is_zero(v)}


def _fin_eq(cring: Ring, a: Finite, b: Finite) -> bool:
    return set(a) == set(b) and all(cring.eq(a[k], b[k]) for k in a)


# ---------------------------------------------------------------------------
# two-sided operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZOp:
    """Banded-plus-finite operator on the two-sided index set."""

    cring: Ring
    neg: Loop
    pos: Loop
    finite: Finite

    # construction ------------------------------------------------------
    @staticmethod
    def make(cring: Ring, neg: Loop, pos: Loop, finite: Optional[Finite] = None) -> "ZOp":
        return ZOp(cring, dict(neg), dict(pos), _fin_normalize(cring, finite or {}))

    @staticmethod
    def zero(cring: Ring) -> "ZOp":
        return ZOp(cring, {}, {}, {})

    @staticmethod
    def one(cring: Ring) -> "ZOp":
        return ZOp(cring, {0: cring.one}, {0: cring.one}, {})

    @staticmethod
    def shift_poly(cring: Ring, a: Loop) -> "ZOp":
        """The two-sided band operator of a loop (same symbol on all rows)."""
        return ZOp(cring, dict(a), dict(a), {})

    @staticmethod
    def sign(cring: Ring) -> "ZOp":
        """Diagonal: -1 on negative rows, +1 on the rest."""
        return ZOp(cring, {0: cring.neg(cring.one)}, {0: cring.one}, {})

    @staticmethod
    def mixer(cring: Ring, s) -> "ZOp":
        """Diagonal: ``s`` on negative rows, 1 on the rest."""
        neg = {} if cring.is_zero(s) else {0: s}
        return ZOp(cring, neg, {0: cring.one}, {})

    @staticmethod
    def projector(cring: Ring) -> "ZOp":
        """Diagonal projection onto the non-negative half."""
        return ZOp(cring, {}, {0: cring.one}, {})

    @staticmethod
    def from_finite(cring: Ring, fin: Finite) -> "ZOp":
        return ZOp(cring, {}, {}, _fin_normalize(cring, fin))

    @staticmethod
    def corner_embed(cring: Ring, a) -> "ZOp":
        """1 + (a - 1) at position (0, 0)."""
        fin: Finite = {}
        diff = cring.sub(a, cring.one)
        if not cring.is_zero(diff):
            fin[(0, 0)] = diff
        return ZOp(cring, {0: cring.one}, {0: cring.one}, fin)

    # basic entry access -------------------------------------------------
    def entry(self, i: int, j: int):
        band = (self.neg if i < 0 else self.pos).get(i - j, self.cring.zero)
        fin = self.finite.get((i, j))
        return band if fin is None else self.cring.add(band, fin)

    def window(self, rows, cols):
        return [[self.entry(i, j) for j in cols] for i in rows]

    # ring operations ----------------------------------------------------
    def _chk(self, o: "ZOp") -> None:
        if o.cring != self.cring:
            raise RingMismatch("operators over different coefficient rings")

    def __add__(self, o: "ZOp") -> "ZOp":
        self._chk(o)
        R = self.cring
        fin = dict(self.finite)
        for k, v in o.finite.items():
            _fin_add(R, fin, k, v)
        return ZOp(R, loop_add(R, self.neg, o.neg), loop_add(R, self.pos, o.pos), fin)

    def __neg__(self) -> "ZOp":
        R = self.cring
        return ZOp(
            R,
            loop_neg(R, self.neg),
            loop_neg(R, self.pos),
            {k: R.neg(v) for k, v in self.finite.items()},
        )

    def __sub__(self, o: "ZOp") -> "ZOp":
        return self + (-o)

    def scale(self, c) -> "ZOp":
        R = self.cring
        if R.is_zero(c):
            return ZOp.zero(R)
        neg = {e: R.mul(c, x) for e, x in self.neg.items()}
        pos = {e: R.mul(c, x) for e, x in self.pos.items()}
        fin = {k: R.mul(c, v) for k, v in self.finite.items()}
        return ZOp(
            R,
            {e: x for e, x in neg.items() if not R.is_zero(x)},
            {e: x for e, x in pos.items() if not R.is_zero(x)},
            _fin_normalize(R, fin),
        )

    def __mul__(self, o: "ZOp") -> "ZOp":
        self._chk(o)
        R = self.cring
        an, ap, aF = self.neg, self.pos, self.finite
        bn, bp, bF = o.neg, o.pos, o.finite
        cn = loop_mul(R, an, bn)
        cp = loop_mul(R, ap, bp)
        fin: Finite = {}

        # band x band: rows where the column index of the middle sum crosses
        # zero pick the other factor's symbol.
        bdiff = loop_sub(R, bp, bn)
        if bdiff:
            for e1, ca in an.items():
                if e1 >= 0:
                    continue
                for e2, cd in bdiff.items():
                    val = R.mul(ca, cd)
                    for k in range(0, -e1):
                        _fin_add(R, fin, (k + e1, k - e2), val)
            for e1, ca in ap.items():
                if e1 <= 0:
                    continue
                for e2, cd in bdiff.items():
                    val = R.neg(R.mul(ca, cd))
                    for k in range(-e1, 0):
                        _fin_add(R, fin, (k + e1, k - e2), val)

        # band x finite
        if bF:
            for (k, j), cb in bF.items():
                for e, ca in an.items():
                    i = k + e
                    if i < 0:
                        _fin_add(R, fin, (i, j), R.mul(ca, cb))
                for e, ca in ap.items():
                    i = k + e
                    if i >= 0:
                        _fin_add(R, fin, (i, j), R.mul(ca, cb))

        # finite x band
        if aF:
            for (i, k), ca in aF.items():
                band = bn if k < 0 else bp
                for e, cb in band.items():
                    _fin_add(R, fin, (i, k - e), R.mul(ca, cb))

        # finite x finite
        if aF and bF:
            for (i, k), ca in aF.items():
                for (k2, j), cb in bF.items():
                    if k == k2:
                        _fin_add(R, fin, (i, j), R.mul(ca, cb))

        return ZOp(R, cn, cp, fin)

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, ZOp) or o.cring != self.cring:
            return NotImplemented
        R = self.cring
        return (
            loop_eq(R, self.neg, o.neg)
            and loop_eq(R, self.pos, o.pos)
            and _fin_eq(R, self.finite, o.finite)
        )

    def __hash__(self):
        raise TypeError("operators are not hashable")

    def is_zero(self) -> bool:
        return not self.neg and not self.pos and not self.finite

    def is_one(self) -> bool:
        return self == ZOp.one(self.cring)

    def is_banded(self) -> bool:
        return not self.finite

    def adjoint(self) -> "ZOp":
        """Transpose with entry star."""
        R = self.cring
        neg2 = loop_star(R, self.neg)
        pos2 = loop_star(R, self.pos)
        fin: Finite = {}
        # rows/columns whose sign disagrees need the other original symbol
        mix = loop_sub(R, self.pos, self.neg)
        for f, c in mix.items():
            sc = R.star(c)
            if f >= 1:
                for i in range(-f, 0):
                    _fin_add(R, fin, (i, i + f), sc)
            elif f <= -1:
                sc = R.neg(sc)
                for i in range(0, -f):
                    _fin_add(R, fin, (i, i + f), sc)
        for (j, i), c in self.finite.items():
            _fin_add(R, fin, (i, j), R.star(c))
        return ZOp(R, neg2, pos2, fin)

    def reflect(self) -> "ZOp":
        """Conjugate by the reflection of the index set (i -> -i)."""
        R = self.cring
        neg2 = loop_rev(self.pos)
        pos2 = loop_rev(self.neg)
        fin: Finite = {}
        # row zero belongs to the non-negative side both before and after
        for f, c in loop_sub(R, self.pos, self.neg).items():
            _fin_add(R, fin, (0, f), c)
        for (i, j), c in self.finite.items():
            _fin_add(R, fin, (-i, -j), c)
        return ZOp(R, neg2, pos2, fin)

    def map_coeffs(self, fn: Callable[[Any], Any], target: Ring) -> "ZOp":
        """Apply a ring map to every band coefficient and finite entry."""
        neg = {e: fn(c) for e, c in self.neg.items()}
        pos = {e: fn(c) for e, c in self.pos.items()}
        fin = {k: fn(v) for k, v in self.finite.items()}
        return ZOp(
            target,
            {e: c for e, c in neg.items() if not target.is_zero(c)},
            {e: c for e, c in pos.items() if not target.is_zero(c)},
            _fin_normalize(target, fin),
        )

    def finite_indices(self):
        rows = {i for (i, _) in self.finite}
        cols = {j for (_, j) in self.finite}
        return rows, cols


def zop_sign_conjugate(a: ZOp) -> ZOp:
    """Conjugate by the diagonal sign involution (-1 below zero)."""
    q = ZOp.sign(a.cring)
    return q * a * q


def zop_inverse(a: ZOp, hint_neg: Loop, hint_pos: Loop) -> ZOp:
    """Invert a banded-plus-finite operator given exact band inverses.

    ``hint_neg`` / ``hint_pos`` must be the exact loop inverses of the two
    band symbols.  Then ``a * hint`` is the identity plus a finite block,
    which is inverted by exact dense elimination.
    """
    R = a.cring
    b0 = ZOp.make(R, hint_neg, hint_pos)
    prod = a * b0
    if not (loop_eq(R, prod.neg, {0: R.one}) and loop_eq(R, prod.pos, {0: R.one})):
        raise HintMismatch("band inverses do not cancel the symbols")
    g = prod.finite
    if g:
        rows, cols = {i for (i, _) in g}, {j for (_, j) in g}
        idx = sorted(rows | cols)
        pos_of = {x: p for p, x in enumerate(idx)}
        n = len(idx)
        m = [
            [R.one if p == q else R.zero for q in range(n)] for p in range(n)
        ]
        for (i, j), v in g.items():
            m[pos_of[i]][pos_of[j]] = R.add(m[pos_of[i]][pos_of[j]], v)
        minv = invert_dense(R, m)
        h: Finite = {}
        for p, i in enumerate(idx):
            for q, j in enumerate(idx):
                val = R.sub(minv[p][q], R.one if p == q else R.zero)
                _fin_add(R, h, (i, j), val)
        correction = ZOp.one(R) + ZOp.from_finite(R, h)
        result = b0 * correction
    else:
        result = b0
    if not (a * result).is_one() or not (result * a).is_one():
        raise NotInvertible("inverse verification failed")
    return result


# ---------------------------------------------------------------------------
# one-sided operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TOp:
    """Toeplitz band plus finite correction on the one-sided index set."""

    cring: Ring
    sym: Loop
    finite: Finite

    @staticmethod
    def make(cring: Ring, sym: Loop, finite: Optional[Finite] = None) -> "TOp":
        return TOp(cring, dict(sym), _fin_normalize(cring, finite or {}))

    @staticmethod
    def zero(cring: Ring) -> "TOp":
        return TOp(cring, {}, {})

    @staticmethod
    def one(cring: Ring) -> "TOp":
        return TOp(cring, {0: cring.one}, {})

    @staticmethod
    def toeplitz(cring: Ring, a: Loop) -> "TOp":
        """The compression of a band symbol to the half-line."""
        return TOp(cring, dict(a), {})

    @staticmethod
    def from_finite(cring: Ring, fin: Finite) -> "TOp":
        return TOp(cring, {}, _fin_normalize(cring, fin))

    @staticmethod
    def corner_embed(cring: Ring, a) -> "TOp":
        diff = cring.sub(a, cring.one)
        fin = {} if cring.is_zero(diff) else {(0, 0): diff}
        return TOp(cring, {0: cring.one}, fin)

    def entry(self, i: int, j: int):
        if i < 0 or j < 0:
            raise IndexError("one-sided operator indexed below zero")
        band = self.sym.get(i - j, self.cring.zero)
        fin = self.finite.get((i, j))
        return band if fin is None else self.cring.add(band, fin)

    def window(self, rows, cols):
        return [[self.entry(i, j) for j in cols] for i in rows]

    def _chk(self, o: "TOp") -> None:
        if o.cring != self.cring:
            raise RingMismatch("operators over different coefficient rings")

    def __add__(self, o: "TOp") -> "TOp":
        self._chk(o)
        R = self.cring
        fin = dict(self.finite)
        for k, v in o.finite.items():
            _fin_add(R, fin, k, v)
        return TOp(R, loop_add(R, self.sym, o.sym), fin)

    def __neg__(self) -> "TOp":
        R = self.cring
        return TOp(
            R,
            loop_neg(R, self.sym),
            {k: R.neg(v) for k, v in self.finite.items()},
        )

    def __sub__(self, o: "TOp") -> "TOp":
        return self + (-o)

    def __mul__(self, o: "TOp") -> "TOp":
        self._chk(o)
        R = self.cring
        a, aF = self.sym, self.finite
        b, bF = o.sym, o.finite
        sym = loop_mul(R, a, b)
        fin: Finite = {}

        # the band product over-counts the sum across negative middle indices
        for e1, ca in a.items():
            if e1 < 1:
                continue
            for e2, cb in b.items():
                if e2 > -1:
                    continue
                val = R.neg(R.mul(ca, cb))
                for k in range(1, min(e1, -e2) + 1):
                    _fin_add(R, fin, (e1 - k, -k - e2), val)

        if bF:
            for (k, j), cb in bF.items():
                for e, ca in a.items():
                    i = k + e
                    if i >= 0:
                        _fin_add(R, fin, (i, j), R.mul(ca, cb))
        if aF:
            for (i, k), ca in aF.items():
                for e, cb in b.items():
                    j = k - e
                    if j >= 0:
                        _fin_add(R, fin, (i, j), R.mul(ca, cb))
        if aF and bF:
            for (i, k), ca in aF.items():
                for (k2, j), cb in bF.items():
                    if k == k2:
                        _fin_add(R, fin, (i, j), R.mul(ca, cb))
        return TOp(R, sym, fin)

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, TOp) or o.cring != self.cring:
            return NotImplemented
        R = self.cring
        return loop_eq(R, self.sym, o.sym) and _fin_eq(R, self.finite, o.finite)

    def __hash__(self):
        raise TypeError("operators are not hashable")

    def is_zero(self) -> bool:
        return not self.sym and not self.finite

    def is_one(self) -> bool:
        return self == TOp.one(self.cring)

    def is_finite(self) -> bool:
        return not self.sym

    def adjoint(self) -> "TOp":
        R = self.cring
        fin = {}
        for (j, i), c in self.finite.items():
            _fin_add(R, fin, (i, j), R.star(c))
        return TOp(R, loop_star(R, self.sym), fin)

    def map_coeffs(self, fn: Callable[[Any], Any], target: Ring) -> "TOp":
        sym = {e: fn(c) for e, c in self.sym.items()}
        fin = {k: fn(v) for k, v in self.finite.items()}
        return TOp(
            target,
            {e: c for e, c in sym.items() if not target.is_zero(c)},
            _fin_normalize(target, fin),
        )


def top_inverse(a: TOp, hint: Loop) -> TOp:
    """Invert a one-sided operator given the exact loop inverse of its symbol."""
    R = a.cring
    b0 = TOp.make(R, hint)
    prod = a * b0
    if not loop_eq(R, prod.sym, {0: R.one}):
        raise HintMismatch("band inverse does not cancel the symbol")
    g = prod.finite
    if g:
        idx = sorted({i for (i, _) in g} | {j for (_, j) in g})
        pos_of = {x: p for p, x in enumerate(idx)}
        n = len(idx)
        m = [[R.one if p == q else R.zero for q in range(n)] for p in range(n)]
        for (i, j), v in g.items():
            m[pos_of[i]][pos_of[j]] = R.add(m[pos_of[i]][pos_of[j]], v)
        minv = invert_dense(R, m)
        h = {}
        for p, i in enumerate(idx):
            for q, j in enumerate(idx):
                val = R.sub(minv[p][q], R.one if p == q else R.zero)
                _fin_add(R, h, (i, j), val)
        result = b0 * (TOp.one(R) + TOp.from_finite(R, h))
    else:
        result = b0
    if not (a * result).is_one() or not (result * a).is_one():
        raise NotInvertible("inverse verification failed")
    return result


# ---------------------------------------------------------------------------
# block matrices of one-sided operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockTOp:
    """A square grid of one-sided operators over a common coefficient ring.

    Models operators on a disjoint union of half-lines; half-lines pointing
    downward are understood in reflected coordinates, so every block is a
    plain one-sided matrix and composition is block matrix multiplication.
    """

    cring: Ring
    blocks: Tuple[Tuple[TOp, ...], ...]

    @staticmethod
    def make(blocks) -> "BlockTOp":
        rows = tuple(tuple(r) for r in blocks)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise WrongKind("block grid must be square")
        cring = rows[0][0].cring
        return BlockTOp(cring, rows)

    @staticmethod
    def diag(cring: Ring, diags, n: Optional[int] = None) -> "BlockTOp":
        diags = list(diags)
        n = n or len(diags)
        z = TOp.zero(cring)
        return BlockTOp.make(
            [[diags[i] if i == j else z for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def one(cring: Ring, n: int) -> "BlockTOp":
        return BlockTOp.diag(cring, [TOp.one(cring)] * n)

    @property
    def n(self) -> int:
        return len(self.blocks)

    def __add__(self, o: "BlockTOp") -> "BlockTOp":
        return BlockTOp.make(
            [
                [x + y for x, y in zip(ra, rb)]
                for ra, rb in zip(self.blocks, o.blocks)
            ]
        )

    def __neg__(self) -> "BlockTOp":
        return BlockTOp.make([[-x for x in r] for r in self.blocks])

    def __sub__(self, o: "BlockTOp") -> "BlockTOp":
        return self + (-o)

    def __mul__(self, o: "BlockTOp") -> "BlockTOp":
        n = self.n
        z = TOp.zero(self.cring)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = z
                for k in range(n):
                    acc = acc + self.blocks[i][k] * o.blocks[k][j]
                row.append(acc)
            out.append(row)
        return BlockTOp.make(out)

    def __eq__(self, o: object) -> bool:
        if not isinstance(o, BlockTOp) or o.n != self.n:
            return NotImplemented
        return all(
            x == y for ra, rb in zip(self.blocks, o.blocks) for x, y in zip(ra, rb)
        )

    def __hash__(self):
        raise TypeError("operators are not hashable")

    def is_one(self) -> bool:
        return self == BlockTOp.one(self.cring, self.n)

    def adjoint(self) -> "BlockTOp":
        n = self.n
        return BlockTOp.make(
            [[self.blocks[j][i].adjoint() for j in range(n)] for i in range(n)]
        )

    def map_blocks(self, fn: Callable[[TOp], TOp]) -> "BlockTOp":
        return BlockTOp.make([[fn(x) for x in r] for r in self.blocks])


# ---------------------------------------------------------------------------
# conversion between the two-sided picture and the two-half-line picture
# ---------------------------------------------------------------------------


def zop_to_quad(a: ZOp) -> BlockTOp:
    """Split a two-sided operator at zero into a 2 x 2 grid of one-sided ones.

    Block order: (downward half, upward half).  The downward half-line is
    reflected: its local coordinate ``i'`` is the original ``-1 - i'``.
    """
    R = a.cring
    nw_fin: Finite = {}
    ne_fin: Finite = {}
    sw_fin: Finite = {}
    se_fin: Finite = {}
    for (i, j), c in a.finite.items():
        if i < 0 and j < 0:
            nw_fin[(-1 - i, -1 - j)] = c
        elif i < 0 <= j:
            ne_fin[(-1 - i, j)] = c
        elif j < 0 <= i:
            sw_fin[(i, -1 - j)] = c
        else:
            se_fin[(i, j)] = c
    # band spillover across the splitting point
    for e, c in a.neg.items():
        if e <= -1:
            # original (i, j) with i in [e, -1], j = i - e >= 0
            for i in range(e, 0):
                _fin_add(R, ne_fin, (-1 - i, i - e), c)
    for e, c in a.pos.items():
        if e >= 1:
            # original (i, j) with i in [0, e-1], j = i - e < 0
            for i in range(0, e):
                _fin_add(R, sw_fin, (i, -1 - (i - e)), c)
    nw = TOp.make(R, loop_rev(a.neg), nw_fin)
    ne = TOp.from_finite(R, ne_fin)
    sw = TOp.from_finite(R, sw_fin)
    se = TOp.make(R, a.pos, se_fin)
    return BlockTOp.make([[nw, ne], [sw, se]])


def quad_to_zop(q: BlockTOp) -> ZOp:
    """Inverse of :func:`zop_to_quad`; corner blocks must be finite."""
    if q.n != 2:
        raise WrongKind("expected a 2 x 2 grid")
    nw, ne = q.blocks[0]
    sw, se = q.blocks[1]
    if not ne.is_finite() or not sw.is_finite():
        raise WrongKind("corner blocks carry band symbols")
    R = q.cring
    neg = loop_rev(nw.sym)
    pos = dict(se.sym)
    fin: Finite = {}
    for (i2, j2), c in nw.finite.items():
        _fin_add(R, fin, (-1 - i2, -1 - j2), c)
    for (i, j), c in se.finite.items():
        _fin_add(R, fin, (i, j), c)
    for (i2, j), c in ne.finite.items():
        i = -1 - i2
        band = neg.get(i - j, R.zero)
        _fin_add(R, fin, (i, j), R.sub(c, band))
    for (i, j2), c in sw.finite.items():
        j = -1 - j2
        band = pos.get(i - j, R.zero)
        _fin_add(R, fin, (i, j), R.sub(c, band))
    # entries of the band that leak into the corners but were not reported
    for e, c in neg.items():
        if e <= -1:
            for i in range(e, 0):
                coord = (-1 - i, i - e)
                if coord not in ne.finite:
                    _fin_add(R, fin, (i, i - e), R.neg(c))
    for e, c in pos.items():
        if e >= 1:
            for i in range(0, e):
                coord = (i, -1 - (i - e))
                if coord not in sw.finite:
                    _fin_add(R, fin, (i, i - e), R.neg(c))
    return ZOp(R, neg, pos, _fin_normalize(R, fin))


# ---------------------------------------------------------------------------
# adapter rings: operators as coefficients
# ---------------------------------------------------------------------------


class OperatorRing(Ring):
    """Wrap one of the operator classes as a coefficient ring.

    This lets loops (Laurent polynomials) take operator coefficients, which
    is how symbols of operator-valued Toeplitz matrices are computed
    exactly.  ``kind`` is one of "z", "t", "block"; for "block" pass the
    grid size ``n``.
    """

    def __init__(self, cring: Ring, kind: str, n: int = 2) -> None:
        self.base = cring
        self.kind = kind
        self.nblk = n
        if kind == "z":
            self.zero = ZOp.zero(cring)
            self.one = ZOp.one(cring)
        elif kind == "t":
            self.zero = TOp.zero(cring)
            self.one = TOp.one(cring)
        elif kind == "block":
            self.zero = BlockTOp.diag(cring, [TOp.zero(cring)] * n)
            self.one = BlockTOp.one(cring, n)
        else:
            raise WrongKind(f"unknown operator-ring kind {kind!r}")
        self.leaf = cring.leaf

    def __repr__(self) -> str:
        return f"Op[{self.kind}]({self.base!r})"

    def __eq__(self, o) -> bool:
        return (
            isinstance(o, OperatorRing)
            and o.kind == self.kind
            and o.nblk == self.nblk
            and o.base == self.base
        )

    def __hash__(self) -> int:
        return hash(("OpRing", self.kind, self.nblk, self.base))

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def scalar(self, q):
        c = self.base.scalar(q)
        if self.kind == "z":
            return ZOp.shift_poly(self.base, {0: c} if not self.base.is_zero(c) else {})
        if self.kind == "t":
            return TOp.toeplitz(self.base, {0: c} if not self.base.is_zero(c) else {})
        return BlockTOp.diag(
            self.base,
            [TOp.toeplitz(self.base, {0: c} if not self.base.is_zero(c) else {})]
            * self.nblk,
        )

    def from_leaf(self, x):
        return self._from_base(self.base.from_leaf(x))

    def _from_base(self, c):
        band = {} if self.base.is_zero(c) else {0: c}
        if self.kind == "z":
            return ZOp.shift_poly(self.base, band)
        if self.kind == "t":
            return TOp.toeplitz(self.base, band)
        return BlockTOp.diag(
            self.base, [TOp.toeplitz(self.base, band)] * self.nblk
        )

    def star(self, a):
        return a.adjoint()

    def inv(self, a):
        raise NotInvertible(
            "operator coefficients carry no generic inverse; supply hints"
        )


# ---------------------------------------------------------------------------
# scalar-plus-finite two-sided matrices as a coefficient ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinZ:
    """A scalar multiple of the two-sided identity plus a finite matrix."""

    c: Any
    fin: Any  # dict {(i, j): coeff}, i, j integers


class FinZRing(Ring):
    """Ring of scalar-plus-finite matrices over the two-sided index set.

    Elements are :class:`FinZ`.  Used as the inner coefficient ring when a
    one-sided operator has compact-plus-scalar entries.
    """

    def __init__(self, base: Ring) -> None:
        self.base = base
        self.zero = FinZ(base.zero, {})
        self.one = FinZ(base.one, {})
        self.leaf = base.leaf

    def __repr__(self) -> str:
        return f"ScalarPlusFinite({self.base!r})"

    def __eq__(self, o) -> bool:
        return isinstance(o, FinZRing) and o.base == self.base

    def __hash__(self) -> int:
        return hash(("FinZ", self.base))

    def make(self, c, fin) -> FinZ:
        return FinZ(c, _fin_normalize(self.base, fin))

    def finite(self, fin) -> FinZ:
        return self.make(self.base.zero, fin)

    def add(self, a: FinZ, b: FinZ) -> FinZ:
        R = self.base
        fin = dict(a.fin)
        for k, v in b.fin.items():
            _fin_add(R, fin, k, v)
        return FinZ(R.add(a.c, b.c), fin)

    def neg(self, a: FinZ) -> FinZ:
        R = self.base
        return FinZ(R.neg(a.c), {k: R.neg(v) for k, v in a.fin.items()})

    def mul(self, a: FinZ, b: FinZ) -> FinZ:
        R = self.base
        fin: Finite = {}
        for k, v in a.fin.items():
            _fin_add(R, fin, k, R.mul(v, b.c))
        for k, v in b.fin.items():
            _fin_add(R, fin, k, R.mul(a.c, v))
        for (i, k), va in a.fin.items():
            for (k2, j), vb in b.fin.items():
                if k == k2:
                    _fin_add(R, fin, (i, j), R.mul(va, vb))
        return FinZ(R.mul(a.c, b.c), fin)

    def eq(self, a: FinZ, b: FinZ) -> bool:
        return self.base.eq(a.c, b.c) and _fin_eq(self.base, a.fin, b.fin)

    def scalar(self, q) -> FinZ:
        return FinZ(self.base.scalar(q), {})

    def from_leaf(self, x) -> FinZ:
        return FinZ(self.base.from_leaf(x), {})

    def star(self, a: FinZ) -> FinZ:
        R = self.base
        fin: Finite = {}
        for (i, j), v in a.fin.items():
            _fin_add(R, fin, (j, i), R.star(v))
        return FinZ(R.star(a.c), fin)

    def inv(self, a: FinZ) -> FinZ:
        R = self.base
        ci = R.inv(a.c)
        if not a.fin:
            return FinZ(ci, {})
        # (c + F)^{-1} = c^{-1} (1 + c^{-1} F)^{-1}
        g = {k: R.mul(ci, v) for k, v in a.fin.items()}
        idx = sorted({i for (i, _) in g} | {j for (_, j) in g})
        pos_of = {x: p for p, x in enumerate(idx)}
        n = len(idx)
        m = [[R.one if p == q else R.zero for q in range(n)] for p in range(n)]
        for (i, j), v in g.items():
            m[pos_of[i]][pos_of[j]] = R.add(m[pos_of[i]][pos_of[j]], v)
        try:
            minv = invert_dense(R, m)
        except SingularFiniteBlock:
            raise NotInvertible("finite part is singular")
        fin: Finite = {}
        for p, i in enumerate(idx):
            for q, j in enumerate(idx):
                val = R.sub(minv[p][q], R.one if p == q else R.zero)
                _fin_add(R, fin, (i, j), R.mul(ci, val))
        result = FinZ(ci, fin)
        if not self.eq(self.mul(a, result), self.one):
            raise NotInvertible("inverse verification failed")
        return result

    def sign_conjugate(self, a: FinZ) -> FinZ:
        """Conjugate by the diagonal sign (-1 below zero, +1 at and above)."""
        R = self.base
        fin = {}
        for (i, j), v in a.fin.items():
            s = (1 if i >= 0 else -1) * (1 if j >= 0 else -1)
            fin[(i, j)] = v if s == 1 else R.neg(v)
        return FinZ(a.c, fin)

    def zop(self, a: FinZ, cring: Ring) -> ZOp:
        """View a scalar-plus-finite element as a two-sided operator."""
        band = {} if self.base.is_zero(a.c) else {0: a.c}
        return ZOp.make(cring, band, dict(band), dict(a.fin))
