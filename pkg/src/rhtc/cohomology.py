"""Cohomology of degreewise-finite cochain complexes and induced maps.

A *complex* here is anything with ``dim(k)`` and ``d_matrix(k)`` (the
columns of d: C^k -> C^{k+1}); free CDGAs, their quotients and all DG
modules qualify.  A *linear map* is anything with ``source``, ``target``,
``degree`` and ``matrix(k)`` (columns of C^k -> D^{k+degree}).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .linalg import (
    SpanReducer,
    Vector,
    apply_columns,
    extend_to_complement,
    rank_kernel_image,
    vec_add,
    vec_scale,
)


class ComplexError(ValueError):
    """d∘d ≠ 0, a map that is not a chain map, or similar."""

    def __init__(self, message: str, degree: int | None = None, witness=None):
        super().__init__(message)
        self.degree = degree
        self.witness = witness


class LinearMap:
    """Graded linear map given by a lazily evaluated per-degree matrix."""

    def __init__(self, source, target, matrix_fn: Callable[[int], list], degree: int = 0, name: str = "f"):
        self.source = source
        self.target = target
        self.degree = degree
        self.name = name
        self._fn = matrix_fn
        self._cache: dict[int, list] = {}

    def matrix(self, k: int) -> list:
        m = self._cache.get(k)
        if m is None:
            m = self._fn(k)
            self._cache[k] = m
        return m

    def apply(self, k: int, v: Vector) -> Vector:
        return apply_columns(self.matrix(k), v)

    def __repr__(self):
        return f"<{self.name}: {self.source!r} -> {self.target!r}, degree {self.degree}>"


def compose(g, f, name: str | None = None) -> LinearMap:
    """g ∘ f."""

    def fn(k):
        gm = g.matrix(k + f.degree)
        return [apply_columns(gm, c) for c in f.matrix(k)]

    return LinearMap(f.source, g.target, fn, f.degree + g.degree, name or f"{g.name}∘{f.name}")


def difference(f, g, name: str | None = None) -> LinearMap:
    """f − g for maps with the same source, target and degree."""
    if f.degree != g.degree:
        raise ValueError("maps of different degrees")

    def fn(k):
        return [vec_add(a, b, -1) for a, b in zip(f.matrix(k), g.matrix(k))]

    return LinearMap(f.source, f.target, fn, f.degree, name or f"{f.name}-{g.name}")


def identity_map(cx, name: str = "id") -> LinearMap:
    return LinearMap(cx, cx, lambda k: [{i: Fraction(1)} for i in range(cx.dim(k))], 0, name)


def zero_map(source, target, degree: int = 0, name: str = "0") -> LinearMap:
    return LinearMap(source, target, lambda k: [{} for _ in range(source.dim(k))], degree, name)


def check_d_squared(cx, lo: int, hi: int) -> None:
    """Raise ComplexError naming a degree and basis element if d∘d ≠ 0."""
    for k in range(lo, hi):
        d1 = cx.d_matrix(k + 1)
        for j, c in enumerate(cx.d_matrix(k)):
            dd = apply_columns(d1, c)
            if dd:
                raise ComplexError(f"d∘d ≠ 0 on basis element {j} of degree {k}", k, j)


def chain_map_defect(f, lo: int, hi: int):
    """First (degree, basis index) where d∘f ≠ (−1)^{|f|} f∘d, else None.

    Checked for source degrees lo..hi-1.
    """
    sign = -1 if f.degree % 2 else 1
    S, T = f.source, f.target
    for k in range(lo, hi):
        fk = f.matrix(k)
        fk1 = f.matrix(k + 1)
        dT = T.d_matrix(k + f.degree)
        dS = S.d_matrix(k)
        for j in range(S.dim(k)):
            lhs = apply_columns(dT, fk[j])
            rhs = vec_scale(apply_columns(fk1, dS[j]), sign)
            if lhs != rhs:
                return k, j
    return None


@dataclass
class _DegreeData:
    cocycles: list
    boundaries: SpanReducer
    reps: list
    coords: SpanReducer  # boundary basis followed by reps, tracked
    nb: int


class CohomologyData:
    """Cohomology of a complex in degrees lo..hi.

    Representatives are chosen greedily from the echelon kernel basis, so
    they are reproducible.  Class coordinates of a cocycle z are the
    coefficients c with z − Σ c_i rep_i a coboundary.
    """

    def __init__(self, cx, lo: int, hi: int, check: bool = True):
        self.complex = cx
        self.lo = lo
        self.hi = hi
        self._deg: dict[int, _DegreeData] = {}
        if check:
            check_d_squared(cx, lo - 1, hi)

    def _data(self, k: int) -> _DegreeData:
        dd = self._deg.get(k)
        if dd is not None:
            return dd
        if not self.lo <= k <= self.hi:
            raise ValueError(f"degree {k} outside the computed window [{self.lo}, {self.hi}]")
        cx = self.complex
        n = cx.dim(k)
        cocycles = rank_kernel_image(cx.d_matrix(k), cx.dim(k + 1)).kernel if n else []
        bnd = SpanReducer()
        bvecs = []
        if n:
            for c in cx.d_matrix(k - 1):
                if bnd.insert(c) is True:
                    bvecs.append(c)
        coords = SpanReducer(bvecs, track=True)
        reps = []
        for z in cocycles:
            if len(reps) + len(bvecs) == len(cocycles):
                break
            if coords.insert(z) is True:
                reps.append(z)
        dd = _DegreeData(cocycles, bnd, reps, coords, len(bvecs))
        self._deg[k] = dd
        return dd

    def dim(self, k: int) -> int:
        if k < self.lo or k > self.hi:
            return 0
        return len(self._data(k).reps)

    def betti(self) -> list[int]:
        return [self.dim(k) for k in range(self.lo, self.hi + 1)]

    def reps(self, k: int) -> list:
        return self._data(k).reps

    def cocycle_basis(self, k: int) -> list:
        return self._data(k).cocycles

    def boundary_basis(self, k: int) -> list:
        return self._data(k).boundaries.basis()

    def is_coboundary(self, k: int, v: Vector) -> bool:
        return v in self._data(k).boundaries

    def coordinates(self, k: int, z: Vector) -> Vector:
        """Class of the cocycle z in the representative basis."""
        if k < self.lo or k > self.hi:
            raise ValueError(f"degree {k} outside the computed window")
        dd = self._data(k)
        res, coeffs = dd.coords.reduce(z)
        if res:
            raise ComplexError(f"vector in degree {k} is not a cocycle", k, z)
        nb = dd.nb
        # inserts: boundary vectors first, then cocycle candidates; reps are
        # the independent candidates in order.
        out = {}
        rep_ids = dd.coords.independent[nb:]
        for j, ins in enumerate(rep_ids):
            c = coeffs.get(ins)
            if c:
                out[j] = c
        return out

    def representative(self, k: int, cls: Vector) -> Vector:
        out: dict = {}
        reps = self.reps(k)
        for j, c in cls.items():
            out = vec_add(out, reps[j], c)
        return out

    def product(self, k1: int, u: Vector, k2: int, v: Vector) -> Vector:
        """Cup product of classes (needs a complex with a product)."""
        z = self.complex.product(k1, self.representative(k1, u), k2, self.representative(k2, v))
        if k1 + k2 > self.hi:
            if z:
                raise ValueError(f"product lands in degree {k1 + k2} beyond the window")
            return {}
        return self.coordinates(k1 + k2, z)

    def top_degree(self) -> int | None:
        top = None
        for k in range(self.lo, self.hi + 1):
            if self.dim(k):
                top = k
        return top


def cohomology(cx, cap: int, lo: int = 0, check: bool = True) -> CohomologyData:
    """Cohomology in degrees lo..cap (uses d up to degree cap)."""
    return CohomologyData(cx, lo, cap, check=check)


class InducedMap:
    """H(f) in degrees lo..hi, as matrices on representative bases."""

    def __init__(self, f, Hs: CohomologyData, Ht: CohomologyData, lo: int, hi: int, check: bool = True):
        self.map = f
        self.source = Hs
        self.target = Ht
        self.lo = lo
        self.hi = hi
        self.degree = f.degree
        self._mat: dict[int, list] = {}
        if check:
            self.check_well_defined()

    def matrix(self, k: int) -> list:
        m = self._mat.get(k)
        if m is None:
            f = self.map
            t = k + f.degree
            if self.target.dim(t) == 0 and not (self.target.lo <= t <= self.target.hi):
                m = [{} for _ in self.source.reps(k)]
            else:
                m = [self.target.coordinates(t, f.apply(k, z)) for z in self.source.reps(k)]
            self._mat[k] = m
        return m

    def check_well_defined(self) -> None:
        f = self.map
        for k in range(self.lo, self.hi + 1):
            t = k + f.degree
            if not self.target.lo <= t <= self.target.hi:
                continue
            for b in self.source.boundary_basis(k):
                img = f.apply(k, b)
                if not self.target.is_coboundary(t, img):
                    raise ComplexError(
                        f"{f.name} sends a coboundary in degree {k} to a non-coboundary", k, b
                    )

    def rank(self, k: int) -> int:
        return rank_kernel_image(self.matrix(k), self.target.dim(k + self.degree)).rank

    def is_iso(self, k: int) -> bool:
        n = self.source.dim(k)
        return n == self.target.dim(k + self.degree) and self.rank(k) == n


def induced_map(f, cap: int, lo: int = 0, Hs: CohomologyData | None = None,
                Ht: CohomologyData | None = None, check: bool = True) -> InducedMap:
    if Hs is None:
        Hs = cohomology(f.source, cap, lo)
    if Ht is None:
        Ht = cohomology(f.target, cap + f.degree, lo + f.degree)
    if check:
        defect = chain_map_defect(f, lo, cap)
        if defect is not None:
            raise ComplexError(
                f"{f.name} is not a chain map (degree {defect[0]}, basis element {defect[1]})",
                *defect,
            )
    return InducedMap(f, Hs, Ht, lo, cap, check=check)


@dataclass
class Injectivity:
    injective: bool
    checked: tuple  # (lo, hi)
    degree: int | None = None
    witness: Vector | None = None  # class coordinates in the source
    cocycle: Vector | None = None  # a representative of that class
    ranks: dict = field(default_factory=dict)


def is_injective_on_H(Hf: InducedMap, lo: int | None = None, hi: int | None = None) -> Injectivity:
    """Decide injectivity degree by degree; report the first kernel class."""
    lo = Hf.lo if lo is None else lo
    hi = Hf.hi if hi is None else hi
    ranks = {}
    for k in range(lo, hi + 1):
        mat = Hf.matrix(k)
        if not mat:
            continue
        el = rank_kernel_image(mat, Hf.target.dim(k + Hf.degree))
        ranks[k] = el.rank
        if el.kernel:
            w = el.kernel[0]
            return Injectivity(False, (lo, hi), k, w, Hf.source.representative(k, w), ranks)
    return Injectivity(True, (lo, hi), ranks=ranks)


def cokernel_classes(Hf: InducedMap, k: int) -> list:
    """Target classes completing the image of H(f) in degree k (canonical greedy choice)."""
    t = k + Hf.degree
    n = Hf.target.dim(t)
    img = rank_kernel_image(Hf.matrix(k), n).image
    return extend_to_complement(img, n)
