"""Poincaré duality: detection on cohomology and the chain-level duality map.

Given a CDGA R whose cohomology is a Poincaré duality algebra of formal
dimension n, a cocycle ω representing the fundamental class and a
complement S of Q·ω in R^n containing d(R^{n−1}) (and K^n for an ideal K)
define the functional ω♯ and the map φ(a)(b) = ω♯(a·b).  After suspension
φ̂ = s^{−n}∘φ is a degree-0 morphism of R-modules R → s^{−n}Hom(R, Q); when
φ̂ kills an ideal K it factors through R/K.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import (
    CohomologyData,
    LinearMap,
    chain_map_defect,
    cohomology,
    induced_map,
)
from .linalg import (
    SpanReducer,
    Vector,
    apply_columns,
    rank_kernel_image,
    solve_linear,
    unit,
)
from .modules import AlgebraModule, DualModule, SuspendedModule, module_map_defect


class HypothesisError(ValueError):
    """A hypothesis of the retraction theorem fails (with a witness)."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass
class NotPoincare:
    reason: str
    degree: int | None = None
    witness: Vector | None = None  # class coordinates
    complete: bool = False
    is_pd: bool = field(default=False, init=False)


@dataclass
class PdCertificate:
    n: int
    fundamental_class: Vector  # coordinates in H^n (always {0: 1})
    pairings: dict  # p -> pairing matrix as list of rows, H^p x H^{n-p}
    complete: bool  # H verified zero in (n, cap] with the requested margin
    cap: int
    omega: Vector | None = None  # chain representative in R^n
    complement: list | None = None  # basis of S
    is_pd: bool = field(default=True, init=False)


def detect_pd(H: CohomologyData, cap: int | None = None, margin: int = 1):
    """Decide whether H (up to cap) is a Poincaré duality algebra.

    The formal dimension is the top nonzero degree within the window.  The
    verdict is flagged complete when H vanishes on at least ``margin``
    degrees above it.
    """
    cap = H.hi if cap is None else cap
    top = None
    for k in range(0, cap + 1):
        if H.dim(k):
            top = k
    if top is None or H.dim(0) != 1:
        return NotPoincare("H^0 is not one-dimensional", 0, None, True)
    complete = cap - top >= margin
    if H.dim(top) != 1:
        # Take the functional reading off the last top class; the first top
        # class then pairs to zero with all of H (only H^0 reaches it).
        return NotPoincare(
            f"top cohomology H^{top} has dimension {H.dim(top)} ≠ 1", top, {0: Fraction(1)}, complete
        )
    pairings = {}
    for p in range(0, top + 1):
        q = top - p
        rows = []
        for j in range(H.dim(q)):
            row = []
            for i in range(H.dim(p)):
                prod = H.product(p, unit(i), q, unit(j))
                row.append(prod.get(0, Fraction(0)))
            rows.append(row)
        # columns indexed by classes of H^p
        cols = [
            {j: rows[j][i] for j in range(len(rows)) if rows[j][i]} for i in range(H.dim(p))
        ]
        el = rank_kernel_image(cols, H.dim(q))
        if el.kernel:
            return NotPoincare(
                f"pairing H^{p} x H^{q} -> Q is degenerate", p, el.kernel[0], complete
            )
        if H.dim(p) != H.dim(q):
            # the other side has the kernel; it is reported when p reaches q
            continue
        pairings[p] = [[rows[j][i] for j in range(len(rows))] for i in range(H.dim(p))]
    return PdCertificate(top, {0: Fraction(1)}, pairings, complete, cap)


@dataclass
class OmegaChoice:
    n: int
    omega: Vector  # cocycle in R^n
    complement: list  # basis of S
    functional: Vector  # ω♯ on the monomial basis of R^n


def choose_omega_complement(R, H: CohomologyData, n: int, K=None) -> OmegaChoice:
    """ω representing the fundamental class, S ⊇ d(R^{n−1}) + K^n, R^n = Q·ω ⊕ S.

    S is d(R^{n−1}) + K^n extended by canonical basis vectors.
    """
    if H.dim(n) != 1:
        raise HypothesisError(f"H^{n} is not one-dimensional")
    omega = H.reps(n)[0]
    dim = R.dim(n)
    W = SpanReducer()
    Wvecs = []
    for c in R.d_matrix(n - 1) if n >= 1 else []:
        if W.insert(c) is True:
            Wvecs.append(c)
    if K is not None:
        for v in K.basis(n):
            if W.insert(v) is True:
                Wvecs.append(v)
    if omega in W:
        raise HypothesisError(
            "the fundamental class lies in d(R^{n-1}) + K^n, so H of the quotient "
            f"map is not injective in degree {n}",
            omega,
        )
    full = SpanReducer(Wvecs)
    full.insert(omega)
    extra = []
    for i in range(dim):
        if full.dim == dim:
            break
        if full.insert(unit(i)) is True:
            extra.append(unit(i))
    S = Wvecs + extra
    # ω♯(e_i) = coefficient of ω when e_i is written in the basis (ω, S)
    basis = [omega] + S
    functional = {}
    for i in range(dim):
        x = solve_linear(basis, dim, unit(i))
        c = x.get(0) if x else None
        if c:
            functional[i] = c
    return OmegaChoice(n, omega, S, functional)


def omega_sharp(choice: OmegaChoice, k: int, v: Vector) -> Fraction:
    if k != choice.n:
        return Fraction(0)
    return sum((choice.functional.get(i, 0) * c for i, c in v.items()), Fraction(0))


@dataclass
class DualityMorphisms:
    choice: OmegaChoice
    regular: AlgebraModule  # R as a module over itself
    dual: DualModule  # Hom(R, Q)
    suspended: SuspendedModule  # s^{−n} Hom(R, Q)
    phi: LinearMap  # R -> Hom(R, Q), degree −n
    phi_hat: LinearMap  # R -> s^{−n}Hom(R, Q), degree 0
    factor: LinearMap | None = None  # l: B -> s^{−n}Hom(R, Q) with l∘q = φ̂
    report: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is True for k, v in self.report.items() if k.endswith("_ok"))


def build_duality_morphisms(R, H: CohomologyData, choice: OmegaChoice, K=None, q=None,
                            B_module=None, cap: int | None = None) -> DualityMorphisms:
    """Build ω♯, φ, φ̂ (and l when q: R → B with kernel K is given) and verify them.

    The report records: chain map, module morphism (over the generators of
    R), quasi-isomorphism in degrees 0..n, φ(K) = 0 and l∘q = φ̂.
    """
    n = choice.n
    RM = AlgebraModule(R, name="R")
    D = DualModule(RM, n + 1, name="Hom(R,Q)")
    SD = SuspendedModule(D, n, name=f"s^-{n}Hom(R,Q)")
    lam = choice.functional

    def pairing_columns(p):
        # column for a ∈ R^p: the functional b ↦ ω♯(a·b) on R^{n−p}
        if p < 0 or p > n:
            return [{} for _ in range(R.dim(p))]
        q_ = n - p
        cols = []
        for i in range(R.dim(p)):
            col = {}
            ai = {i: Fraction(1)}
            for j in range(R.dim(q_)):
                ab = R.product(p, ai, q_, {j: Fraction(1)})
                s = sum((lam.get(t, 0) * c for t, c in ab.items()), Fraction(0))
                if s:
                    col[j] = s
            cols.append(col)
        return cols

    phi = LinearMap(RM, D, pairing_columns, -n, "φ")
    phi_hat = LinearMap(RM, SD, pairing_columns, 0, "φ̂")
    out = DualityMorphisms(choice, RM, D, SD, phi, phi_hat)
    rep = out.report

    # ω♯(ω) = 1 and ω♯ ∘ d = 0 on R^{n−1}
    rep["omega_sharp_omega_ok"] = omega_sharp(choice, n, choice.omega) == 1
    rep["omega_sharp_d_ok"] = all(
        omega_sharp(choice, n, c) == 0 for c in (R.d_matrix(n - 1) if n >= 1 else [])
    )
    rep["chain_map_ok"] = chain_map_defect(phi_hat, 0, n + 1) is None
    rep["phi_chain_map_ok"] = chain_map_defect(phi, 0, n + 1) is None
    rep["module_map_ok"] = module_map_defect(phi_hat, 0, n) is None
    rep["phi_module_map_ok"] = module_map_defect(phi, 0, n) is None
    Ht = cohomology(SD, n, lo=0)
    Hphi = induced_map(phi_hat, n, 0, Hs=H, Ht=Ht, check=False)
    bad = [k for k in range(0, n + 1) if not Hphi.is_iso(k)]
    rep["quasi_iso_ok"] = not bad
    rep["quasi_iso_failures"] = bad
    rep["pairing_ranks"] = {k: Hphi.rank(k) for k in range(0, n + 1)}
    if K is not None:
        rep["kills_K_ok"] = all(
            not apply_columns(phi_hat.matrix(p), v)
            for p in range(0, n + 1)
            for v in K.basis(p)
        )
    if q is not None:
        out.factor = _factor_through(q, phi_hat, B_module, SD, n)
        rep["factorization_ok"] = all(
            apply_columns(out.factor.matrix(p), c) == phi_hat.matrix(p)[j]
            for p in range(0, n + 1)
            for j, c in enumerate(q.matrix(p))
        )
    return out


def _factor_through(q, phi_hat: LinearMap, B_module, SD, n: int) -> LinearMap:
    """l with l∘q = φ̂, defined on each basis element via a preimage under q."""
    B = q.target

    def fn(p):
        if p < 0 or p > n:
            return [{} for _ in range(B.dim(p))]
        qm = q.matrix(p)
        cols = []
        for j in range(B.dim(p)):
            x = solve_linear(qm, B.dim(p), unit(j))
            if x is None:
                raise HypothesisError(f"q is not surjective in degree {p}")
            cols.append(apply_columns(phi_hat.matrix(p), x))
        return cols

    return LinearMap(B_module, SD, fn, 0, "l")
