"""Differential graded modules over a free CDGA R.

Every module exposes ``dim(k)``, ``d_matrix(k)`` and ``act(i, k)``, the
columns of left multiplication by the i-th generator of R from degree k.
The action of a general element is assembled from generator actions.
"""

from __future__ import annotations

from fractions import Fraction

from .cdga import FreeCDGA
from .cohomology import LinearMap
from .linalg import Vector, apply_columns, vec_add, vec_scale


class DgModule:
    """Base class; subclasses provide _dim, _d and _act."""

    def __init__(self, algebra: FreeCDGA, name: str = "M"):
        self.algebra = algebra
        self.name = name
        self._dcache: dict[int, list] = {}
        self._acache: dict[tuple, list] = {}

    def dim(self, k: int) -> int:
        return self._dim(k)

    def d_matrix(self, k: int) -> list:
        c = self._dcache.get(k)
        if c is None:
            c = self._d(k)
            self._dcache[k] = c
        return c

    def act(self, i: int, k: int) -> list:
        key = (i, k)
        c = self._acache.get(key)
        if c is None:
            c = self._act(i, k)
            self._acache[key] = c
        return c

    def act_monomial(self, m, k: int, v: Vector) -> Vector:
        """m·v for a monomial m = g_1^{e_1}…g_r^{e_r} of the algebra."""
        degs = self.algebra.degrees
        cur = k
        for i in range(len(m) - 1, -1, -1):
            for _ in range(m[i]):
                if not v:
                    return {}
                v = apply_columns(self.act(i, cur), v)
                cur += degs[i]
        return v

    def act_element(self, p: dict, k: int, v: Vector) -> Vector:
        out: dict = {}
        for m, c in p.items():
            out = vec_add(out, self.act_monomial(m, k, v), c)
        return out

    def leibniz_defect(self, lo: int, hi: int):
        """First (generator, degree, basis index) violating
        d(g·m) = dg·m + (−1)^{|g|} g·dm, checked while all degrees ≤ hi."""
        R = self.algebra
        for i, dg_deg in enumerate(R.degrees):
            dg = R.dgen(i)
            sign = -1 if dg_deg % 2 else 1
            for k in range(lo, hi - dg_deg):
                gk = self.act(i, k)
                dgk = self.d_matrix(k + dg_deg)
                dk = self.d_matrix(k)
                gk1 = self.act(i, k + 1)
                for j in range(self.dim(k)):
                    lhs = apply_columns(dgk, gk[j])
                    rhs = vec_add(
                        self.act_element(dg, k, {j: Fraction(1)}),
                        apply_columns(gk1, dk[j]),
                        sign,
                    )
                    if lhs != rhs:
                        return i, k, j
        return None

    def __repr__(self):
        return self.name


class AlgebraModule(DgModule):
    """A CDGA Q viewed as an R-module through an algebra map h: R → Q.

    With h omitted, Q must be R itself (the regular module).
    """

    def __init__(self, algebra: FreeCDGA, target=None, via=None, name: str | None = None):
        super().__init__(algebra, name or repr(target if target is not None else algebra))
        self.target = algebra if target is None else target
        if via is None and self.target is not algebra:
            raise ValueError("an algebra map is needed to act on a different CDGA")
        self.via = via

    def _dim(self, k):
        return self.target.dim(k)

    def _d(self, k):
        return self.target.d_matrix(k)

    def _act(self, i, k):
        T = self.target
        amb = T.ambient
        g = self.via.images[i] if self.via is not None else {self.algebra.gen(i): Fraction(1)}
        gd = self.algebra.degrees[i]
        cols = []
        for j in range(T.dim(k)):
            x = T.lift({j: Fraction(1)}, k)
            cols.append(T.project(amb.mul(g, x), k + gd))
        return cols


def _transpose_into(cols: list, nrows_src: int, sign_fn) -> list:
    """Given columns of A: X -> Y, return columns of ±A^T: Y* -> X*.

    sign_fn(i) gives the sign for source index i.
    """
    out = [dict() for _ in range(nrows_src)]
    for i, c in enumerate(cols):
        s = sign_fn(i)
        for j, v in c.items():
            out[j][i] = v * s
    return out


class DualModule(DgModule):
    """Hom(M, Q), truncated to functionals on M^0..M^top.

    Degree −k holds the dual basis of M^k.  The differential is
    δf = −(−1)^{|f|} f∘d and the action (a·f)(x) = (−1)^{|a||f|} f(a·x).
    Cohomology is only meaningful in degrees −(top−1)..0.
    """

    def __init__(self, M: DgModule, top: int, name: str | None = None):
        super().__init__(M.algebra, name or f"Hom({M.name},Q)")
        self.module = M
        self.top = top

    def _dim(self, k):
        if -self.top <= k <= 0:
            return self.module.dim(-k)
        return 0

    def _d(self, k):
        # δ: Hom^k -> Hom^{k+1}, i.e. (M^{-k})* -> (M^{-k-1})*
        n = self._dim(k)
        if n == 0 or k == 0:
            return [{} for _ in range(n)]
        m = -k
        sign = 1 if m % 2 else -1  # −(−1)^{|f|} with |f| = −m
        return _transpose_into(self.module.d_matrix(m - 1), n, lambda i: sign)

    def _act(self, i, k):
        n = self._dim(k)
        gd = self.algebra.degrees[i]
        tgt = k + gd
        if n == 0 or self._dim(tgt) == 0:
            return [{} for _ in range(n)]
        m = -k  # f ∈ (M^m)*, a·f ∈ (M^{m-gd})*
        sign = -1 if (gd * m) % 2 else 1
        return _transpose_into(self.module.act(i, m - gd), n, lambda j: sign)


class SuspendedModule(DgModule):
    """s^{−n}M: (s^{−n}M)^i = M^{i−n}, d(s^{−n}x) = (−1)^n s^{−n}dx,
    a·s^{−n}x = (−1)^{n|a|} s^{−n}(a·x)."""

    def __init__(self, M: DgModule, n: int, name: str | None = None):
        super().__init__(M.algebra, name or f"s^{-n}{M.name}")
        self.module = M
        self.shift = n

    def _dim(self, k):
        return self.module.dim(k - self.shift)

    def _d(self, k):
        cols = self.module.d_matrix(k - self.shift)
        if self.shift % 2:
            return [vec_scale(c, -1) for c in cols]
        return cols

    def _act(self, i, k):
        cols = self.module.act(i, k - self.shift)
        if (self.shift * self.algebra.degrees[i]) % 2:
            return [vec_scale(c, -1) for c in cols]
        return cols


def suspend_module(M: DgModule, n: int) -> SuspendedModule:
    return SuspendedModule(M, n)


def suspension_map(M: DgModule, S: SuspendedModule) -> LinearMap:
    """x ↦ s^{−n}x, an isomorphism of degree n."""
    return LinearMap(M, S, lambda k: [{j: Fraction(1)} for j in range(M.dim(k))], S.shift, "s")


def module_map_defect(f: LinearMap, lo: int, hi: int, generators=None):
    """First (generator, degree, basis index) where f(g·m) ≠ (−1)^{|f||g|} g·f(m).

    f must go between modules over the same algebra (or an algebra whose
    generators are listed in ``generators`` as indices into both).
    """
    S, T = f.source, f.target
    R = S.algebra
    gens = range(R.ngens) if generators is None else generators
    for i in gens:
        gd = R.degrees[i]
        sign = -1 if (gd * f.degree) % 2 else 1
        for k in range(lo, hi - gd + 1):
            n = S.dim(k)
            if n == 0:
                continue
            gS = S.act(i, k)
            fk = f.matrix(k)
            fkg = f.matrix(k + gd)
            gT = T.act(i, k + f.degree)
            for j in range(n):
                lhs = apply_columns(fkg, gS[j])
                rhs = vec_scale(apply_columns(gT, fk[j]), sign)
                if lhs != rhs:
                    return i, k, j
    return None
