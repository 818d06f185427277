"""Free graded-commutative algebras, their quotients and morphisms.

A free CDGA ``ΛV`` is described by an ordered list of generators (name,
degree) and the value of the differential on each generator.  Elements are
sparse dicts ``{monomial: Fraction}`` where a monomial is the tuple of
exponents in generator order; odd generators have exponent at most 1 and
the stored order of factors is the generator order, so the sign of a
product comes from reordering odd factors (Koszul rule).

Everything is computed lazily degree by degree and memoized; results are
exact, and a degree cap is only ever imposed by the caller.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .linalg import SpanReducer, Vector, apply_columns, rank_kernel_image

Monomial = tuple  # tuple[int, ...]


class ModelError(ValueError):
    """Invalid algebra data (bad degrees, d∘d ≠ 0, non-chain morphism, ...)."""


def _clean(p: dict) -> dict:
    return {m: c for m, c in p.items() if c}


def _accumulate(out: dict, m, c) -> None:
    s = out.get(m, 0) + c
    if s:
        out[m] = s
    else:
        out.pop(m, None)


class FreeCDGA:
    """Free commutative cochain algebra ΛV on finitely many generators."""

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence[int],
        differential: dict | Sequence | None = None,
        *,
        allow_degree_one: bool = False,
        check: bool = True,
    ):
        names = tuple(names)
        degrees = tuple(int(d) for d in degrees)
        if len(names) != len(degrees):
            raise ModelError("names and degrees differ in length")
        if len(set(names)) != len(names):
            raise ModelError("duplicate generator names")
        for n, d in zip(names, degrees):
            if d <= 0:
                raise ModelError(f"generator {n} has degree {d}; degrees must be positive")
            if d == 1 and not allow_degree_one:
                raise ModelError(
                    f"generator {n} has degree 1; pass allow_degree_one to permit it"
                )
        self.names = names
        self.degrees = degrees
        self.ngens = len(names)
        self.allow_degree_one = allow_degree_one
        self._odd = tuple(d % 2 == 1 for d in degrees)
        self._index = {n: i for i, n in enumerate(names)}
        if differential is None:
            dvals = [{} for _ in names]
        elif isinstance(differential, dict):
            unknown = set(differential) - set(names)
            if unknown:
                raise ModelError(f"differential given for unknown generators {sorted(unknown)}")
            dvals = [differential.get(n, {}) for n in names]
        else:
            dvals = list(differential)
        self._dgen = []
        for i, p in enumerate(dvals):
            if isinstance(p, Poly):
                p = p.terms
            p = {tuple(m): Fraction(c) for m, c in p.items() if c}
            for m in p:
                if len(m) != self.ngens:
                    raise ModelError(f"d({names[i]}) has a malformed monomial {m}")
                if self.mon_degree(m) != degrees[i] + 1:
                    raise ModelError(
                        f"d({names[i]}) is not homogeneous of degree {degrees[i] + 1}"
                    )
                if any(e > 1 for e, o in zip(m, self._odd) if o):
                    raise ModelError(f"d({names[i]}) contains the square of an odd generator")
            self._dgen.append(p)
        self._basis: dict[int, list] = {}
        self._pos: dict[int, dict] = {}
        self._mul: dict = {}
        self._dmon: dict = {}
        self._dmat: dict = {}
        if check:
            self.check_d_squared()

    # ----- monomials -------------------------------------------------------

    @property
    def one(self) -> Monomial:
        return (0,) * self.ngens

    def gen(self, i: int) -> Monomial:
        m = [0] * self.ngens
        m[i] = 1
        return tuple(m)

    def index_of(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ModelError(f"unknown generator {name!r}") from None

    def mon_degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def word_length(self, m: Monomial) -> int:
        return sum(m)

    def basis(self, k: int) -> list:
        """Monomials of total degree k, lexicographically descending in exponents."""
        if k < 0:
            return []
        b = self._basis.get(k)
        if b is not None:
            return b
        out: list = []
        n = self.ngens
        degs, odd = self.degrees, self._odd

        def rec(i, remaining, prefix):
            if i == n:
                if remaining == 0:
                    out.append(tuple(prefix))
                return
            top = 1 if odd[i] else remaining // degs[i]
            top = min(top, remaining // degs[i])
            for e in range(top, -1, -1):
                prefix.append(e)
                rec(i + 1, remaining - e * degs[i], prefix)
                prefix.pop()

        rec(0, k, [])
        self._basis[k] = out
        self._pos[k] = {m: i for i, m in enumerate(out)}
        return out

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def position(self, k: int) -> dict:
        self.basis(k)
        return self._pos[k]

    def mul_mon(self, a: Monomial, b: Monomial):
        """Product of monomials as (sign, monomial), or None when it vanishes."""
        key = (a, b)
        r = self._mul.get(key, False)
        if r is not False:
            return r
        odd = self._odd
        parity = 0
        seen = 0  # odd generators of a with index above the current one
        for j in range(self.ngens - 1, -1, -1):
            if odd[j]:
                if b[j]:
                    if a[j]:
                        self._mul[key] = None
                        return None
                    parity += seen
                if a[j]:
                    seen += 1
        r = (-1 if parity & 1 else 1, tuple(x + y for x, y in zip(a, b)))
        self._mul[key] = r
        return r

    # ----- elements --------------------------------------------------------

    def mul(self, p: dict, q: dict) -> dict:
        out: dict = {}
        for a, ca in p.items():
            for b, cb in q.items():
                r = self.mul_mon(a, b)
                if r is not None:
                    _accumulate(out, r[1], r[0] * ca * cb)
        return out

    def d_mon(self, m: Monomial) -> dict:
        r = self._dmon.get(m)
        if r is not None:
            return r
        out: dict = {}
        prefix_deg = 0
        n = self.ngens
        for i in range(n):
            e = m[i]
            if not e:
                continue
            dg = self._dgen[i]
            if dg:
                left = m[:i] + (e - 1,) + (0,) * (n - i - 1)
                right = (0,) * (i + 1) + m[i + 1 :]
                coef = e if prefix_deg % 2 == 0 else -e
                part = self.mul(self.mul({left: Fraction(coef)}, dg), {right: Fraction(1)})
                for mm, c in part.items():
                    _accumulate(out, mm, c)
            prefix_deg += e * self.degrees[i]
        self._dmon[m] = out
        return out

    def d(self, p: dict) -> dict:
        out: dict = {}
        for m, c in p.items():
            for mm, cc in self.d_mon(m).items():
                _accumulate(out, mm, c * cc)
        return out

    def dgen(self, i: int) -> dict:
        return self._dgen[i]

    def to_vector(self, p: dict, k: int) -> Vector:
        pos = self.position(k)
        v = {}
        for m, c in p.items():
            if c:
                try:
                    v[pos[m]] = Fraction(c)
                except KeyError:
                    raise ModelError(f"monomial {m} is not of degree {k}") from None
        return v

    def from_vector(self, v: Vector, k: int) -> dict:
        b = self.basis(k)
        return {b[i]: c for i, c in v.items() if c}

    def element(self, terms) -> "Poly":
        return Poly(self, terms)

    def generator(self, name: str) -> "Poly":
        return Poly(self, {self.gen(self.index_of(name)): 1})

    # ----- complex / algebra interface --------------------------------------

    ambient = property(lambda self: self)

    def d_matrix(self, k: int) -> list:
        """Columns of d: (ΛV)^k -> (ΛV)^{k+1}."""
        cols = self._dmat.get(k)
        if cols is None:
            cols = [self.to_vector(self.d_mon(m), k + 1) for m in self.basis(k)]
            self._dmat[k] = cols
        return cols

    def product(self, k1: int, v1: Vector, k2: int, v2: Vector) -> Vector:
        p = self.mul(self.from_vector(v1, k1), self.from_vector(v2, k2))
        return self.to_vector(p, k1 + k2)

    def project(self, p: dict, k: int) -> Vector:
        return self.to_vector(p, k)

    def lift(self, v: Vector, k: int) -> dict:
        return self.from_vector(v, k)

    def label(self, k: int, i: int) -> str:
        return format_monomial(self, self.basis(k)[i])

    # ----- validation ---------------------------------------------------------

    def check_d_squared(self) -> None:
        """d∘d is a derivation, so it vanishes iff it vanishes on generators."""
        for i, p in enumerate(self._dgen):
            dd = self.d(p)
            if dd:
                m = sorted(dd)[0]
                raise ModelError(
                    f"d(d({self.names[i]})) = {format_poly(self, dd)} ≠ 0; "
                    f"witness monomial {format_monomial(self, m)}"
                )

    def max_generator_degree(self) -> int:
        return max(self.degrees, default=0)

    def __repr__(self) -> str:
        gens = ", ".join(f"{n}_{d}" for n, d in zip(self.names, self.degrees))
        return f"Λ({gens})"


# SullivanModel is the user-facing name; the class is the same.
SullivanModel = FreeCDGA


class Poly:
    """Element of a free CDGA with arithmetic operators."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeCDGA, terms):
        self.algebra = algebra
        if isinstance(terms, Poly):
            terms = terms.terms
        self.terms = {tuple(m): Fraction(c) for m, c in terms.items() if c}

    def _other(self, other) -> dict:
        if isinstance(other, Poly):
            if other.algebra is not self.algebra:
                raise ModelError("elements belong to different algebras")
            return other.terms
        if isinstance(other, (int, Fraction)):
            return {self.algebra.one: Fraction(other)} if other else {}
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for m, c in o.items():
            _accumulate(out, m, c)
        return Poly(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self + Poly(self.algebra, {m: -c for m, c in o.items()})

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.algebra, {m: c * other for m, c in self.terms.items()})
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Poly(self.algebra, self.algebra.mul(self.terms, o))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        out = Poly(self.algebra, {self.algebra.one: 1})
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int | None:
        degs = {self.algebra.mon_degree(m) for m in self.terms}
        if len(degs) > 1:
            raise ModelError("element is not homogeneous")
        return degs.pop() if degs else None

    def __repr__(self):
        return format_poly(self.algebra, self.terms)


def multiply(a: Poly, b: Poly) -> Poly:
    return a * b


def apply_derivation(model: FreeCDGA, a: Poly) -> Poly:
    if a.algebra is not model:
        raise ModelError("element does not belong to this model")
    return Poly(model, model.d(a.terms))


def basis_in_degree(model: FreeCDGA, k: int, cap: int) -> list:
    if k > cap:
        raise ValueError(f"degree {k} exceeds cap {cap}")
    return list(model.basis(k))


def format_monomial(alg: FreeCDGA, m: Monomial) -> str:
    parts = []
    for n, e in zip(alg.names, m):
        if e == 1:
            parts.append(n)
        elif e > 1:
            parts.append(f"{n}^{e}")
    return " ".join(parts) if parts else "1"


def format_poly(alg: FreeCDGA, p: dict) -> str:
    if not p:
        return "0"
    out = []
    for m in sorted(p, key=lambda m: (alg.mon_degree(m), tuple(-e for e in m))):
        c = p[m]
        mon = format_monomial(alg, m)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mon == "1":
            body = str(a)
        elif a == 1:
            body = mon
        else:
            body = f"{a} * {mon}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for s, body in out[1:]:
        text += f" {s} {body}"
    return text


# ----- ideals and quotients ------------------------------------------------------


class DegreewiseIdeal:
    """A subspace of a free CDGA given degree by degree.

    ``spanning(k)`` yields elements (dicts) spanning the degree-k part.  The
    echelon data per degree is computed on first use and cached.
    """

    def __init__(self, algebra: FreeCDGA, spanning: Callable[[int], Iterable[dict]], name: str = "I"):
        self.algebra = algebra
        self.name = name
        self._spanning = spanning
        self._red: dict[int, SpanReducer] = {}

    @classmethod
    def zero(cls, algebra: FreeCDGA) -> "DegreewiseIdeal":
        return cls(algebra, lambda k: (), "0")

    @classmethod
    def generated_by(cls, algebra: FreeCDGA, elements: Sequence[dict], name: str = "I"):
        elements = [e.terms if isinstance(e, Poly) else e for e in elements]
        degs = []
        for e in elements:
            ds = {algebra.mon_degree(m) for m in e}
            if len(ds) != 1:
                raise ModelError("ideal generators must be nonzero and homogeneous")
            degs.append(ds.pop())

        def spanning(k):
            for e, dg in zip(elements, degs):
                for m in algebra.basis(k - dg):
                    yield algebra.mul({m: Fraction(1)}, e)

        return cls(algebra, spanning, name)

    @classmethod
    def monomial(cls, algebra: FreeCDGA, keep: Callable[[Monomial], bool], name: str = "I"):
        """Span of the monomials m with keep(m) true."""

        def spanning(k):
            for m in algebra.basis(k):
                if keep(m):
                    yield {m: Fraction(1)}

        return cls(algebra, spanning, name)

    def reducer(self, k: int) -> SpanReducer:
        r = self._red.get(k)
        if r is None:
            r = SpanReducer()
            alg = self.algebra
            full = alg.dim(k)
            for e in self._spanning(k):
                if r.dim == full:
                    break
                r.insert(alg.to_vector(e, k))
            self._red[k] = r
        return r

    def dim(self, k: int) -> int:
        return self.reducer(k).dim

    def basis(self, k: int) -> list:
        return self.reducer(k).basis()

    def contains(self, p: dict, k: int) -> bool:
        return self.algebra.to_vector(p, k) in self.reducer(k)

    def check_d_stable(self, cap: int) -> None:
        alg = self.algebra
        for k in range(cap):
            nxt = self.reducer(k + 1)
            for v in self.basis(k):
                dv = alg.to_vector(alg.d(alg.from_vector(v, k)), k + 1)
                if dv not in nxt:
                    raise ModelError(
                        f"ideal {self.name} is not stable under d: "
                        f"d({format_poly(alg, alg.from_vector(v, k))}) ∉ {self.name}"
                    )

    def check_subset(self, other: "DegreewiseIdeal", cap: int) -> bool:
        return all(
            v in other.reducer(k) for k in range(cap + 1) for v in self.basis(k)
        )


class QuotientCDGA:
    """The quotient A/I of a free CDGA by a differential ideal.

    The basis in each degree is the greedy canonical complement of I, i.e.
    the monomials at non-pivot positions of I's echelon basis; projection is
    reduction modulo I.
    """

    def __init__(self, ambient: FreeCDGA, ideal: DegreewiseIdeal):
        if ideal.algebra is not ambient:
            raise ModelError("ideal lives in a different algebra")
        self.ambient = ambient
        self.ideal = ideal
        self._keep: dict[int, list] = {}
        self._kpos: dict[int, dict] = {}
        self._d: dict[int, list] = {}

    def _kept(self, k: int) -> list:
        kp = self._keep.get(k)
        if kp is None:
            piv = set(self.ideal.reducer(k).pivots)
            kp = [i for i in range(self.ambient.dim(k)) if i not in piv]
            self._keep[k] = kp
            self._kpos[k] = {a: j for j, a in enumerate(kp)}
        return kp

    def dim(self, k: int) -> int:
        return len(self._kept(k))

    def basis(self, k: int) -> list:
        amb = self.ambient.basis(k)
        return [amb[i] for i in self._kept(k)]

    def project_vector(self, v: Vector, k: int) -> Vector:
        self._kept(k)
        res = self.ideal.reducer(k).residual(v)
        pos = self._kpos[k]
        return {pos[i]: c for i, c in res.items()}

    def project(self, p: dict, k: int) -> Vector:
        return self.project_vector(self.ambient.to_vector(p, k), k)

    def lift(self, v: Vector, k: int) -> dict:
        kp = self._kept(k)
        amb = self.ambient.basis(k)
        return {amb[kp[i]]: c for i, c in v.items() if c}

    def d_matrix(self, k: int) -> list:
        cols = self._d.get(k)
        if cols is None:
            A = self.ambient
            cols = [self.project(A.d_mon(m), k + 1) for m in self.basis(k)]
            self._d[k] = cols
        return cols

    def product(self, k1: int, v1: Vector, k2: int, v2: Vector) -> Vector:
        A = self.ambient
        return self.project(A.mul(self.lift(v1, k1), self.lift(v2, k2)), k1 + k2)

    def label(self, k: int, i: int) -> str:
        return format_monomial(self.ambient, self.basis(k)[i])

    def __repr__(self):
        return f"{self.ambient!r}/{self.ideal.name}"


class CdgaMorphism:
    """Morphism of CDGAs determined by the images of the source generators.

    The target is a free CDGA or a quotient of one; images are given as
    elements of the target's free ambient algebra.
    """

    def __init__(self, source: FreeCDGA, target, images: Sequence, name: str = "f"):
        self.source = source
        self.target = target
        self.name = name
        amb = target.ambient
        imgs = []
        for p in images:
            if isinstance(p, Poly):
                if p.algebra is not amb:
                    raise ModelError("image lives in the wrong algebra")
                p = p.terms
            imgs.append({tuple(m): Fraction(c) for m, c in p.items() if c})
        if len(imgs) != source.ngens:
            raise ModelError("one image per source generator is required")
        for i, p in enumerate(imgs):
            for m in p:
                if amb.mon_degree(m) != source.degrees[i]:
                    raise ModelError(
                        f"{name}({source.names[i]}) is not of degree {source.degrees[i]}"
                    )
        self.images = tuple(imgs)
        self._mon: dict = {}
        self._mat: dict = {}

    def apply_mon(self, m: Monomial) -> dict:
        r = self._mon.get(m)
        if r is not None:
            return r
        amb = self.target.ambient
        out = {amb.one: Fraction(1)}
        for i, e in enumerate(m):
            for _ in range(e):
                out = amb.mul(out, self.images[i])
        self._mon[m] = out
        return out

    def apply_poly(self, p: dict) -> dict:
        out: dict = {}
        for m, c in p.items():
            for mm, cc in self.apply_mon(m).items():
                _accumulate(out, mm, c * cc)
        return out

    def apply(self, k: int, v: Vector) -> Vector:
        return apply_columns(self.matrix(k), v)

    def matrix(self, k: int) -> list:
        cols = self._mat.get(k)
        if cols is None:
            cols = [self.target.project(self.apply_mon(m), k) for m in self.source.basis(k)]
            self._mat[k] = cols
        return cols

    degree = 0

    def check_chain(self) -> None:
        """f∘d and d∘f are f-derivations, so agreeing on generators suffices."""
        src, tgt = self.source, self.target
        amb = tgt.ambient
        for i in range(src.ngens):
            k = src.degrees[i] + 1
            lhs = tgt.project(self.apply_poly(src.dgen(i)), k)
            rhs = tgt.project(amb.d(self.images[i]), k)
            if lhs != rhs:
                raise ModelError(
                    f"{self.name} does not commute with d on generator {src.names[i]}"
                )

    def is_surjective(self, k: int) -> bool:
        return rank_kernel_image(self.matrix(k), self.target.dim(k)).rank == self.target.dim(k)


class TensorSquare:
    """ΛV ⊗ ΛV realised as Λ(V ⊕ V') with the multiplication μ: v, v' ↦ v."""

    def __init__(self, model: FreeCDGA, suffix: str = "'"):
        self.model = model
        r = model.ngens
        names = list(model.names) + [n + suffix for n in model.names]
        degrees = list(model.degrees) * 2

        def shift(p: dict, offset: int) -> dict:
            out = {}
            for m, c in p.items():
                mm = [0] * (2 * r)
                mm[offset : offset + r] = m
                out[tuple(mm)] = c
            return out

        diff = [shift(model.dgen(i), 0) for i in range(r)] + [
            shift(model.dgen(i), r) for i in range(r)
        ]
        self.algebra = FreeCDGA(
            names, degrees, diff, allow_degree_one=model.allow_degree_one, check=True
        )
        self.left = lambda p: shift(p, 0)
        self.right = lambda p: shift(p, r)
        imgs = [{model.gen(i): 1} for i in range(r)] * 2
        self.mu = CdgaMorphism(self.algebra, model, imgs, name="μ")
        self.mu.check_chain()
        # θ: v ↦ v, v' ↦ v - v' is an algebra automorphism carrying the
        # ideal generated by V' onto ker μ.
        A = self.algebra
        theta = [{A.gen(i): 1} for i in range(r)] + [
            {A.gen(i): 1, A.gen(i + r): -1} for i in range(r)
        ]
        self.theta = CdgaMorphism(A, A, theta, name="θ")

    def diagonal_class(self, i: int) -> dict:
        """The kernel generator v_i ⊗ 1 − 1 ⊗ v_i."""
        A, r = self.algebra, self.model.ngens
        return {A.gen(i): Fraction(1), A.gen(i + r): Fraction(-1)}

    def primed_length(self, m: Monomial) -> int:
        return sum(m[self.model.ngens :])


def tensor_square(model: FreeCDGA) -> TensorSquare:
    return TensorSquare(model)


def kernel_of_mu(ts: TensorSquare) -> DegreewiseIdeal:
    """Degreewise kernel of μ, straight from elimination."""
    A = ts.algebra

    def spanning(k):
        el = rank_kernel_image(ts.mu.matrix(k), ts.model.dim(k))
        for v in el.kernel:
            yield A.from_vector(v, k)

    return DegreewiseIdeal(A, spanning, "ker μ")


def ideal_power_basis(
    ts: TensorSquare, m: int, cap: int | None = None, method: str = "substitution"
) -> DegreewiseIdeal:
    """(ker μ)^m, degree by degree.

    ``substitution``: the images under θ of the monomials with at least m
    primed factors (θ is an automorphism taking (V')^m onto (ker μ)^m).
    ``products``: iterated spans of products of kernel bases, slower; kept
    as an independent cross-check.
    """
    if m < 1:
        raise ValueError("ideal power must be at least 1")
    A = ts.algebra
    _warn_high_generators(ts.model, cap)
    if method == "substitution":

        def spanning(k):
            for mon in A.basis(k):
                if ts.primed_length(mon) >= m:
                    yield ts.theta.apply_mon(mon)

        return DegreewiseIdeal(A, spanning, f"(ker μ)^{m}")
    if method != "products":
        raise ValueError(f"unknown method {method!r}")
    base = kernel_of_mu(ts)
    if m == 1:
        return base
    prev = ideal_power_basis(ts, m - 1, cap, method="products")

    def spanning(k):
        for i in range(k + 1):
            left = prev.basis(i)
            if not left:
                continue
            right = base.basis(k - i)
            for a in left:
                pa = A.from_vector(a, i)
                for b in right:
                    yield A.mul(pa, A.from_vector(b, k - i))

    return DegreewiseIdeal(A, spanning, f"(ker μ)^{m}")


def _warn_high_generators(model: FreeCDGA, cap: int | None) -> None:
    if cap is not None and model.ngens and 2 * model.max_generator_degree() > cap:
        warnings.warn(
            f"generator degree {model.max_generator_degree()} exceeds cap/2 = {cap / 2}; "
            "products of kernel classes may be truncated",
            stacklevel=3,
        )


def quotient_by_ideal(algebra: FreeCDGA, ideal: DegreewiseIdeal, cap: int):
    """Quotient CDGA and the projection, after checking d-stability up to cap."""
    ideal.check_d_stable(cap)
    Q = QuotientCDGA(algebra, ideal)
    proj = CdgaMorphism(
        algebra, Q, [{algebra.gen(i): 1} for i in range(algebra.ngens)], name="p"
    )
    return Q, proj


def word_length_quotient(model: FreeCDGA, n: int, cap: int):
    """ΛV / Λ^{>n}V with its projection."""
    if n < 0:
        raise ValueError("word length must be non-negative")
    ideal = DegreewiseIdeal.monomial(model, lambda m: sum(m) > n, f"Λ^>{n}")
    return quotient_by_ideal(model, ideal, cap)


def identity_morphism(A: FreeCDGA) -> CdgaMorphism:
    return CdgaMorphism(A, A, [{A.gen(i): 1} for i in range(A.ngens)], name="id")
