"""Exact sparse linear algebra over the rationals.

Vectors are sparse dicts ``{index: Fraction}`` with no zero entries stored.
Matrices are given column-wise: a list of column vectors together with the
number of rows.  Elimination is fraction-free: working vectors are kept as
primitive integer rows with a separate common denominator, so the only
rationals that ever get built are the final answers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Vector = dict  # dict[int, Fraction]

__all__ = [
    "Vector",
    "Elimination",
    "SpanReducer",
    "rank_kernel_image",
    "solve_linear",
    "extend_to_complement",
    "vec_add",
    "vec_scale",
    "vec_sub",
    "apply_columns",
    "unit",
]


def unit(i: int) -> Vector:
    return {i: Fraction(1)}


def vec_add(a: Vector, b: Vector, scale=1) -> Vector:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + scale * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def vec_sub(a: Vector, b: Vector) -> Vector:
    return vec_add(a, b, -1)


def vec_scale(a: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def apply_columns(cols: Sequence[Vector], x: Vector) -> Vector:
    """Return M x for M given by its columns."""
    out: dict = {}
    for j, c in x.items():
        for i, v in cols[j].items():
            s = out.get(i, 0) + c * v
            if s:
                out[i] = s
            else:
                del out[i]
    return out


def _to_int(v: Vector) -> tuple[dict, int]:
    """Scale a rational vector to a primitive integer vector.

    Returns ``(w, den)`` with ``v == w / den``.
    """
    den = 1
    for x in v.values():
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // gcd(den, x.denominator)
    w = {}
    for k, x in v.items():
        if isinstance(x, Fraction):
            w[k] = x.numerator * (den // x.denominator)
        else:
            w[k] = int(x) * den
    return w, den


def _content(*dicts: dict, start: int = 0) -> int:
    g = start
    for d in dicts:
        for x in d.values():
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _axpy(out: dict, a: int, u: dict, b: int) -> None:
    """In place: out <- a*out - b*u (integers)."""
    if a != 1:
        for k in out:
            out[k] *= a
    for k, x in u.items():
        s = out.get(k, 0) - b * x
        if s:
            out[k] = s
        else:
            out.pop(k, None)


class SpanReducer:
    """Echelon basis of a subspace of Q^n with exact membership tests.

    Each stored basis vector has as pivot its *largest* nonzero index, and
    reduction runs through the pivots in descending order.  With this rule a
    fully reduced vector vanishes on every pivot, so the non-pivot indices
    are exactly the greedy canonical complement (see extend_to_complement)
    and reduction is the projection onto that complement along the span.

    With ``track=True`` every basis vector remembers how it was combined from
    the inserted vectors, which lets ``reduce`` express membership as explicit
    coefficients and ``insert`` report linear dependencies.
    """

    def __init__(self, vectors: Iterable[Vector] = (), track: bool = False):
        self.track = track
        self._rows: dict[int, dict] = {}  # pivot -> primitive int vector
        # pivot -> int combination of the integer-scaled inserts
        self._combo: dict[int, dict] = {}
        self._dens: list[int] = []  # insert i was scaled by _dens[i]
        self._order: list[int] = []
        self._dirty = False
        self.independent: list[int] = []  # insert ids that enlarged the span
        for v in vectors:
            self.insert(v)

    @property
    def n_inserted(self) -> int:
        return len(self._dens)

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def basis(self) -> list[Vector]:
        return [
            {k: Fraction(x) for k, x in self._rows[p].items()} for p in self.pivots
        ]

    def _pivot_order(self) -> list[int]:
        if self._dirty:
            self._order = sorted(self._rows, reverse=True)
            self._dirty = False
        return self._order

    def _reduce_int(self, w: dict, tag: dict | None) -> tuple[dict, int, dict | None]:
        # invariant: w == scale * target - sum tag[i] * insert_i   (all integer)
        scale = 1
        if not w:
            return w, scale, tag
        rows, combo = self._rows, self._combo
        top = max(w)
        for p in self._pivot_order():
            if p > top:
                continue
            a = w.get(p)
            if not a:
                continue
            u = rows[p]
            b = u[p]
            g = gcd(a, b)
            a //= g
            b //= g
            _axpy(w, b, u, a)
            scale *= b
            if tag is not None:
                if b != 1:
                    for k in tag:
                        tag[k] *= b
                for k, x in combo[p].items():
                    s = tag.get(k, 0) + a * x
                    if s:
                        tag[k] = s
                    else:
                        del tag[k]
            if not w:
                break
            if b != 1:
                c = _content(w, tag or {}, start=scale)
                if c > 1:
                    for k in w:
                        w[k] //= c
                    if tag:
                        for k in tag:
                            tag[k] //= c
                    scale //= c
        return w, scale, tag

    def insert(self, v: Vector):
        """Add v to the span.

        Returns True if v enlarged the span.  Otherwise returns False, or,
        with tracking, the dependency ``{insert_id: coeff}`` satisfying
        ``sum coeff * insert == 0`` with v's own coefficient nonzero.
        """
        idx = len(self._dens)
        w, den = _to_int(v)
        self._dens.append(den)
        tag = {} if self.track else None
        w, scale, tag = self._reduce_int(w, tag)
        if not w:
            if not self.track:
                return False
            dep = {k: Fraction(-x * self._dens[k]) for k, x in tag.items()}
            dep[idx] = Fraction(scale * den)
            return dep
        p = max(w)
        if self.track:
            comb = {k: -x for k, x in tag.items()}
            comb[idx] = scale
            c = _content(w, comb)
        else:
            comb = None
            c = _content(w)
        if w[p] < 0:
            c = -c
        self._rows[p] = {k: x // c for k, x in w.items()}
        if comb is not None:
            self._combo[p] = {k: x // c for k, x in comb.items()}
        self._dirty = True
        self.independent.append(idx)
        return True

    def reduce(self, v: Vector) -> tuple[Vector, dict]:
        """Return (residual, coeffs) with v == residual + sum coeffs[i] * insert_i.

        The residual vanishes on every pivot.  ``coeffs`` is only populated
        when tracking is enabled.
        """
        w, den = _to_int(v)
        tag = {} if self.track else None
        w, scale, tag = self._reduce_int(w, tag)
        total = scale * den
        res = {k: Fraction(x, total) for k, x in w.items()}
        coeffs = {}
        if tag:
            coeffs = {k: Fraction(x * self._dens[k], total) for k, x in tag.items()}
        return res, coeffs

    def residual(self, v: Vector) -> Vector:
        w, den = _to_int(v)
        w, scale, _ = self._reduce_int(w, None)
        total = scale * den
        return {k: Fraction(x, total) for k, x in w.items()}

    def __contains__(self, v: Vector) -> bool:
        w, _ = _to_int(v)
        w, _, _ = self._reduce_int(w, None)
        return not w


@dataclass(frozen=True)
class Elimination:
    rank: int
    kernel: list  # list[Vector], basis of the null space
    image: list  # list[Vector], the pivot columns themselves
    pivots: list  # list[int], column indices


def rank_kernel_image(cols: Sequence[Vector], nrows: int | None = None) -> Elimination:
    """Rank, kernel basis, image basis and pivot columns of a matrix.

    Columns are processed left to right; a column is a pivot column when it
    is independent of all earlier ones, so ties go to the smallest index.
    Every non-pivot column j yields the kernel vector ``e_j - (its expression
    in earlier pivot columns)``.
    """
    red = SpanReducer(track=True)
    kernel, image, pivots = [], [], []
    for j, c in enumerate(cols):
        if nrows is not None and c and max(c) >= nrows:
            raise ValueError(f"column {j} has entries beyond row {nrows - 1}")
        dep = red.insert(c)
        if dep is True:
            image.append(dict(c))
            pivots.append(j)
        else:
            lead = dep[j]
            kernel.append({k: x / lead for k, x in dep.items()})
    return Elimination(len(pivots), kernel, image, pivots)


def solve_linear(cols: Sequence[Vector], nrows: int, b: Vector) -> Vector | None:
    """A particular solution x of ``M x = b``, or None when inconsistent."""
    for j, c in enumerate(cols):
        if c and max(c) >= nrows:
            raise ValueError(f"column {j} does not fit in {nrows} rows")
    if b and max(b) >= nrows:
        raise ValueError(f"right-hand side does not fit in {nrows} rows")
    red = SpanReducer(cols, track=True)
    res, coeffs = red.reduce(b)
    if res:
        return None
    return {k: x for k, x in coeffs.items() if x}


def extend_to_complement(U: Sequence[Vector], dim: int) -> list[Vector]:
    """Canonical vectors e_0, e_1, ... greedily added to complete span(U) to Q^dim."""
    red = SpanReducer()
    for u in U:
        if red.insert(u) is not True:
            raise ValueError("input vectors are linearly dependent")
        if u and max(u) >= dim:
            raise ValueError("vector does not lie in the ambient space")
    out = []
    for i in range(dim):
        if red.dim == dim:
            break
        if red.insert(unit(i)) is True:
            out.append(unit(i))
    return out
