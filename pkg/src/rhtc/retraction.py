"""Explicit homotopy retractions of CDGA morphisms as modules.

Pipeline for f: A → B with H(A) a Poincaré duality algebra:

1. surjective trick: A ⊂ R = A ⊗ Λ(U ⊕ dU), q: R ↠ B, r: R → A;
2. duality data on R (ω, S ⊇ d(R^{n−1}) + K^n, φ̂ and its factorization l);
3. semifree factorization R ↣ P ⥲ B, built degree by degree;
4. a strict retraction ρ of R ↣ P, found by one exact linear solve;
5. the witness (P, g = j∘i, ψ, ret = r∘ρ) and its verification.

All of it is truncated at a degree cap; a failed lift is reported as
undetermined at that cap, never as nonexistence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cdga import CdgaMorphism, DegreewiseIdeal, FreeCDGA, QuotientCDGA, identity_morphism
from .cohomology import (
    LinearMap,
    chain_map_defect,
    cohomology,
    compose,
    difference,
    induced_map,
    is_injective_on_H,
)
from .linalg import (
    Vector,
    apply_columns,
    extend_to_complement,
    rank_kernel_image,
    solve_linear,
    unit,
)
from .modules import AlgebraModule, DgModule, module_map_defect
from .poincare import (
    build_duality_morphisms,
    choose_omega_complement,
    detect_pd,
)


class RetractionError(RuntimeError):
    pass


# ----- surjective trick ----------------------------------------------------------


@dataclass
class SurjectiveTrickFactorization:
    f: CdgaMorphism
    R: FreeCDGA
    i: CdgaMorphism  # A -> R
    r: CdgaMorphism  # R -> A, r∘i = id
    q: CdgaMorphism  # R -> B, surjective up to cap, q∘i = f
    K: DegreewiseIdeal  # ker q
    added: list  # (name, degree) of the U generators
    cap: int


def _pad(p: dict, n: int) -> dict:
    return {m + (0,) * (n - len(m)): c for m, c in p.items()}


def surjective_trick(f: CdgaMorphism, cap: int) -> SurjectiveTrickFactorization:
    """Factor f as A ⥲ R ↠ B with R = A ⊗ Λ(U ⊕ dU).

    U receives one generator u for each canonical basis vector of B^k that
    completes the image of q in degree k (k = 1..cap), with d(u) = du a new
    generator; q(u) is that basis element and q(du) its differential.  When
    f is already surjective up to cap, R = A and i = r = id.
    """
    A, B = f.source, f.target
    if cap < 0:
        raise ValueError("cap must be non-negative")
    amb = B.ambient
    hi_gen = amb.max_generator_degree()
    if isinstance(B, FreeCDGA) and hi_gen > cap:
        raise ValueError(
            f"cap {cap} is below the top generator degree {hi_gen} of the target"
        )
    f.check_chain()
    names = list(A.names)
    degrees = list(A.degrees)
    diffs = [dict(A.dgen(i)) for i in range(A.ngens)]
    images = [dict(p) for p in f.images]
    added = []
    R, q = A, f
    for k in range(1, cap + 1):
        n = B.dim(k)
        if n == 0:
            continue
        img = rank_kernel_image(q.matrix(k), n).image
        missing = extend_to_complement(img, n)
        if not missing:
            continue
        for idx, e in enumerate(missing):
            u, du = f"u{k}_{idx}", f"du{k}_{idx}"
            if u in names or du in names:
                raise RetractionError(f"generator name clash on {u}")
            names += [u, du]
            degrees += [k, k + 1]
            total = len(names)
            diffs = [_pad(p, total) for p in diffs]
            diffs.append(_pad({(0,) * (total - 1) + (1,): Fraction(1)}, total))
            diffs.append({})
            b = B.lift(e, k)
            images += [b, amb.d(b)]
            added += [(u, k), (du, k + 1)]
        R = FreeCDGA(names, degrees, diffs, allow_degree_one=True)
        q = CdgaMorphism(R, B, images, name="q")
    if R is A:
        i = identity_morphism(A)
        i.name = "i"
        r = identity_morphism(A)
        r.name = "r"
        q = f
    else:
        i = CdgaMorphism(A, R, [{R.gen(j): 1} for j in range(A.ngens)], name="i")
        r = CdgaMorphism(
            R, A, [{A.gen(j): 1} for j in range(A.ngens)] + [{}] * (R.ngens - A.ngens), name="r"
        )
        q.check_chain()
    K = _kernel_ideal(q, R)
    return SurjectiveTrickFactorization(f, R, i, r, q, K, added, cap)


def _kernel_ideal(q: CdgaMorphism, R: FreeCDGA) -> DegreewiseIdeal:
    B = q.target
    if (
        isinstance(B, QuotientCDGA)
        and B.ambient is R
        and all(img == {R.gen(j): 1} for j, img in enumerate(q.images))
    ):
        return B.ideal

    def spanning(k):
        for v in rank_kernel_image(q.matrix(k), B.dim(k)).kernel:
            yield R.from_vector(v, k)

    return DegreewiseIdeal(R, spanning, "ker q")


# ----- semifree modules ------------------------------------------------------------


@dataclass
class SemifreeGenerator:
    name: str
    degree: int
    stage: int
    d: dict  # {(generator index, monomial of R): coefficient}


class SemifreeModule(DgModule):
    """P = R ⊗ (Q·1 ⊕ Y) with d(m⊗y) = dm⊗y + (−1)^{|m|} m·dy.

    Generator 0 is the unit 1 (the image of j: R → P).  Basis elements of
    P^k are pairs (generator index, monomial of R^{k−|y|}).
    """

    def __init__(self, R: FreeCDGA, name: str = "P"):
        super().__init__(R, name)
        self.gens: list[SemifreeGenerator] = [SemifreeGenerator("1", 0, 0, {})]
        self._bcache: dict[int, tuple] = {}

    def add_generator(self, gen: SemifreeGenerator) -> int:
        self.gens.append(gen)
        self._bcache.clear()
        self._dcache.clear()
        self._acache.clear()
        return len(self.gens) - 1

    def _basis(self, k: int):
        b = self._bcache.get(k)
        if b is None:
            R = self.algebra
            labels = []
            for gi, g in enumerate(self.gens):
                for m in R.basis(k - g.degree):
                    labels.append((gi, m))
            b = (labels, {lab: j for j, lab in enumerate(labels)})
            self._bcache[k] = b
        return b

    def basis(self, k: int) -> list:
        return self._basis(k)[0]

    def index(self, k: int, label) -> int:
        return self._basis(k)[1][label]

    def label_vector(self, k: int, terms: dict) -> Vector:
        pos = self._basis(k)[1]
        return {pos[lab]: c for lab, c in terms.items() if c}

    def vector_labels(self, k: int, v: Vector) -> dict:
        labels = self._basis(k)[0]
        return {labels[j]: c for j, c in v.items()}

    def _dim(self, k):
        return len(self._basis(k)[0])

    def _times(self, m, terms: dict) -> dict:
        """m·(Σ c·(g, m')) = Σ ±c·(g, m m')."""
        R = self.algebra
        out: dict = {}
        for (g, mm), c in terms.items():
            r = R.mul_mon(m, mm)
            if r is None:
                continue
            lab = (g, r[1])
            s = out.get(lab, 0) + r[0] * c
            if s:
                out[lab] = s
            else:
                out.pop(lab, None)
        return out

    def _d(self, k):
        R = self.algebra
        cols = []
        for gi, m in self.basis(k):
            g = self.gens[gi]
            terms: dict = {}
            for mm, c in R.d_mon(m).items():
                terms[(gi, mm)] = terms.get((gi, mm), 0) + c
            if g.d:
                sign = -1 if R.mon_degree(m) % 2 else 1
                for lab, c in self._times(m, g.d).items():
                    s = terms.get(lab, 0) + sign * c
                    terms[lab] = s
            cols.append(self.label_vector(k + 1, terms))
        return cols

    def _act(self, i, k):
        R = self.algebra
        gm = R.gen(i)
        cols = []
        for gi, m in self.basis(k):
            r = R.mul_mon(gm, m)
            if r is None:
                cols.append({})
            else:
                cols.append({self.index(k + R.degrees[i], (gi, r[1])): Fraction(r[0])})
        return cols


@dataclass
class SemifreeFactorization:
    q: CdgaMorphism
    R: FreeCDGA
    P: SemifreeModule
    B_module: AlgebraModule
    j: LinearMap  # R -> P
    psi: LinearMap  # P -> B
    psi_values: list  # ψ(y) as vectors of B^{|y|}
    stages: int
    cap: int


def _psi_map(P: SemifreeModule, BM: AlgebraModule, q: CdgaMorphism, values: list) -> LinearMap:
    B = BM.target
    amb = B.ambient

    def fn(k):
        cols = []
        for gi, m in P.basis(k):
            g = P.gens[gi]
            if not values[gi]:
                cols.append({})
                continue
            x = amb.mul(q.apply_mon(m), B.lift(values[gi], g.degree))
            cols.append(B.project(x, k))
        return cols

    return LinearMap(P, BM, fn, 0, "ψ")


def _inclusion_map(R: FreeCDGA, RM, P: SemifreeModule) -> LinearMap:
    def fn(k):
        return [{P.index(k, (0, m)): Fraction(1)} for m in R.basis(k)]

    return LinearMap(RM, P, fn, 0, "j")


def semifree_factorization(q: CdgaMorphism, cap: int, stage_budget: int = 64) -> SemifreeFactorization:
    """Factor q: R ↠ B as R ↣ P ⥲ B with P semifree, H(ψ) iso in degrees ≤ cap.

    Degree by degree: adjoin cycles y (dy = 0) mapping onto the classes of
    H^k(B) missing from the image, then generators y of degree k−1 with dy
    a cocycle representing each class of ker H^k(ψ).  Generator names are
    y{stage}_{degree}_{index}.
    """
    R = q.source
    B = q.target
    BM = AlgebraModule(R, B, q, name="B")
    P = SemifreeModule(R)
    values: list = [{0: Fraction(1)} if B.dim(0) else {}]
    HB = cohomology(B, cap)
    stage = 0
    for k in range(0, cap + 1):
        rounds = 0
        while True:
            psi = _psi_map(P, BM, q, values)
            HP = cohomology(P, k, lo=k, check=False)
            reps = HP.reps(k)
            mat = [HB.coordinates(k, psi.apply(k, z)) for z in reps]
            el = rank_kernel_image(mat, HB.dim(k))
            missing = extend_to_complement(el.image, HB.dim(k))
            if not missing and not el.kernel:
                break
            rounds += 1
            if rounds > stage_budget:
                raise RetractionError(
                    f"semifree construction did not stabilise in degree {k} "
                    f"after {stage_budget} stages"
                )
            stage += 1
            if missing:
                for idx, c in enumerate(missing):
                    P.add_generator(SemifreeGenerator(f"y{stage}_{k}_{idx}", k, stage, {}))
                    values.append(HB.representative(k, c))
                continue
            dB = B.d_matrix(k - 1)
            for idx, w in enumerate(el.kernel):
                z = HP.representative(k, w)
                target = psi.apply(k, z)
                b = solve_linear(dB, B.dim(k), target) if target else {}
                if b is None:
                    raise RetractionError(f"kernel class in degree {k} does not map to a coboundary")
                P.add_generator(
                    SemifreeGenerator(f"y{stage}_{k - 1}_{idx}", k - 1, stage, P.vector_labels(k, z))
                )
                values.append(b)
    psi = _psi_map(P, BM, q, values)
    RM = AlgebraModule(R, name="R")
    j = _inclusion_map(R, RM, P)
    return SemifreeFactorization(q, R, P, BM, j, psi, values, stage, cap)


# ----- lifting ------------------------------------------------------------------


@dataclass
class Lift:
    rho: LinearMap | None  # P -> R, None when the system is inconsistent
    values: dict  # generator index -> ρ(y) in R^{|y|}
    unknowns: int
    equations: int


def lift_retraction(sf: SemifreeFactorization, cap: int | None = None) -> Lift:
    """Solve for ρ: P → R with ρ∘j = id as one exact linear system.

    ρ is R-linear and determined by ρ(y) ∈ R^{|y|}; the chain-map
    condition d ρ(y) = ρ(dy) for every generator with |y| ≤ cap is linear
    in these unknowns.
    """
    cap = sf.cap if cap is None else cap
    R, P = sf.R, sf.P
    gens = [gi for gi in range(1, len(P.gens)) if P.gens[gi].degree <= cap]
    ucol = {}  # generator -> offset of its unknowns
    erow = {}  # generator -> offset of its equations
    nu = ne = 0
    for gi in gens:
        deg = P.gens[gi].degree
        ucol[gi] = nu
        nu += R.dim(deg)
        erow[gi] = ne
        ne += R.dim(deg + 1)
    users: dict[int, list] = {}
    rhs: dict = {}
    for gi in gens:
        g = P.gens[gi]
        for (h, m), c in g.d.items():
            if h == 0:
                k = g.degree + 1
                for t, v in R.to_vector({m: c}, k).items():
                    rhs[erow[gi] + t] = rhs.get(erow[gi] + t, 0) + v
            else:
                users.setdefault(h, []).append((gi, m, c))
    rhs = {k: v for k, v in rhs.items() if v}
    cols = []
    for gi in gens:
        deg = P.gens[gi].degree
        dmat = R.d_matrix(deg)
        for t, mon in enumerate(R.basis(deg)):
            col = {erow[gi] + s: v for s, v in dmat[t].items()}
            for g2, m, c in users.get(gi, ()):
                r = R.mul_mon(m, mon)
                if r is None:
                    continue
                k2 = P.gens[g2].degree + 1
                row = erow[g2] + R.position(k2)[r[1]]
                s = col.get(row, 0) - c * r[0]
                if s:
                    col[row] = s
                else:
                    col.pop(row, None)
            cols.append(col)
    sol = solve_linear(cols, ne, rhs)
    if sol is None:
        return Lift(None, {}, nu, ne)
    values = {0: {0: Fraction(1)}}
    for gi in gens:
        deg = P.gens[gi].degree
        off = ucol[gi]
        values[gi] = {t: sol[off + t] for t in range(R.dim(deg)) if sol.get(off + t)}
    RM = AlgebraModule(R, name="R")

    def fn(k):
        out = []
        for gi, m in P.basis(k):
            val = values.get(gi)
            if not val:
                out.append({})
                continue
            deg = P.gens[gi].degree
            out.append(R.product(k - deg, {R.position(k - deg)[m]: Fraction(1)}, deg, val))
        return out

    return Lift(LinearMap(P, RM, fn, 0, "ρ"), values, nu, ne)


# ----- witness ------------------------------------------------------------------


@dataclass
class RetractionWitness:
    """g: A → P, ψ: P → B with ψ∘g = f, ret: P → A with ret∘g = id."""

    f: CdgaMorphism
    A_module: AlgebraModule
    P: SemifreeModule
    B_module: AlgebraModule
    g: LinearMap
    psi: LinearMap
    ret: LinearMap
    cap: int
    generators: tuple  # indices of A's generators inside R


def assemble_witness(st: SurjectiveTrickFactorization, sf: SemifreeFactorization, lift: Lift) -> RetractionWitness:
    A = st.f.source
    AM = AlgebraModule(A, name="A")
    P = sf.P
    i = st.i

    def g_fn(k):
        return [apply_columns(sf.j.matrix(k), c) for c in i.matrix(k)]

    g = LinearMap(AM, P, g_fn, 0, "g")
    ret = compose(LinearMap(None, AM, st.r.matrix, 0, "r"), lift.rho, "ret")
    ret.source = P
    return RetractionWitness(st.f, AM, P, sf.B_module, g, sf.psi, ret, sf.cap, tuple(range(A.ngens)))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {c.name: c.passed for c in self.checks}


def _maps_equal(f, g, lo, hi) -> tuple | None:
    for k in range(lo, hi + 1):
        for j, (a, b) in enumerate(zip(f.matrix(k), g.matrix(k))):
            if a != b:
                return k, j
    return None


def verify_retraction(w: RetractionWitness, cap: int | None = None) -> VerificationReport:
    """Check ψ∘g = f, ret∘g = id, chain maps, A-module maps and H(ψ) iso."""
    cap = w.cap if cap is None else cap
    checks = []
    f_lin = LinearMap(w.A_module, w.B_module, w.f.matrix, 0, "f")
    bad = _maps_equal(compose(w.psi, w.g), f_lin, 0, cap)
    checks.append(Check("ψ∘g = f", bad is None, "" if bad is None else f"degree {bad[0]}"))
    ident = LinearMap(w.A_module, w.A_module, lambda k: [unit(j) for j in range(w.A_module.dim(k))])
    bad = _maps_equal(compose(w.ret, w.g), ident, 0, cap)
    checks.append(Check("ret∘g = id", bad is None, "" if bad is None else f"degree {bad[0]}"))
    for name, m in (("g", w.g), ("ψ", w.psi), ("ret", w.ret)):
        bad = chain_map_defect(m, 0, cap)
        checks.append(Check(f"{name} chain map", bad is None, "" if bad is None else f"degree {bad[0]}"))
    for name, m in (("g", w.g), ("ψ", w.psi), ("ret", w.ret)):
        bad = module_map_defect(m, 0, cap, generators=w.generators)
        checks.append(
            Check(f"{name} module map", bad is None, "" if bad is None else f"degree {bad[1]}")
        )
    HP = cohomology(w.P, cap, check=False)
    HB = cohomology(w.B_module, cap, check=False)
    Hpsi = induced_map(w.psi, cap, Hs=HP, Ht=HB, check=False)
    bad = [k for k in range(cap + 1) if not Hpsi.is_iso(k)]
    checks.append(Check("H(ψ) iso", not bad, "" if not bad else f"degrees {bad}"))
    return VerificationReport(checks)


# ----- the whole pipeline ----------------------------------------------------------------


@dataclass
class RetractionReport:
    status: str  # built | no_retraction_at_cap | undetermined_at_cap | not_injective | not_pd
    cap: int
    injectivity: object = None
    pd: object = None
    factorization: SurjectiveTrickFactorization | None = None
    duality: object = None
    semifree: SemifreeFactorization | None = None
    lift: Lift | None = None
    witness: RetractionWitness | None = None
    verification: VerificationReport | None = None
    notes: dict = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == "built"


def build_homotopy_retraction(f: CdgaMorphism, cap: int, enforce_hypotheses: bool = True,
                              with_duality: bool = True) -> RetractionReport:
    """Construct and verify a module homotopy retraction of f up to cap.

    With ``enforce_hypotheses`` the run stops at the first failed
    hypothesis (H(f) not injective, H(A) not PD).  Without it the lift is
    attempted anyway, which is how non-existence is probed.
    """
    A, B = f.source, f.target
    f.check_chain()
    HA = cohomology(A, cap)
    HB = cohomology(B, cap)
    Hf = induced_map(f, cap, Hs=HA, Ht=HB)
    inj = is_injective_on_H(Hf)
    pd = detect_pd(HA, cap)
    rep = RetractionReport("pending", cap, injectivity=inj, pd=pd)
    if enforce_hypotheses:
        if not inj.injective:
            rep.status = "not_injective"
            return rep
        if not pd.is_pd:
            rep.status = "not_pd"
            return rep
    st = surjective_trick(f, cap + 1)
    rep.factorization = st
    R = st.R
    if st.R is not A:
        HR = cohomology(R, cap)
        Hi = induced_map(st.i, cap, Hs=HA, Ht=HR)
        rep.notes["H(i) iso"] = all(Hi.is_iso(k) for k in range(cap + 1))
    else:
        HR = HA
        rep.notes["H(i) iso"] = True
    if with_duality and inj.injective and pd.is_pd:
        n = pd.n
        choice = choose_omega_complement(R, HR, n, st.K)
        BM = AlgebraModule(R, B, st.q, name="B")
        rep.duality = build_duality_morphisms(R, HR, choice, K=st.K, q=st.q, B_module=BM)
    sf = semifree_factorization(st.q, cap)
    rep.semifree = sf
    lift = lift_retraction(sf, cap)
    rep.lift = lift
    if lift.rho is None:
        # A strict lift exists whenever a homotopy retraction does, and any
        # capped lift forces H(f) injective below the cap.
        rep.status = "undetermined_at_cap" if inj.injective else "no_retraction_at_cap"
        return rep
    w = assemble_witness(st, sf, lift)
    rep.witness = w
    rep.verification = verify_retraction(w, cap)
    if rep.duality is not None:
        rep.notes["bottom triangle defect rank"] = _triangle_defect(rep.duality, sf, lift, pd.n)
    if not inj.injective:
        raise RetractionError("a retraction was built although H(f) is not injective")
    rep.status = "built" if rep.verification.passed else "verification_failed"
    return rep


def _triangle_defect(dm, sf: SemifreeFactorization, lift: Lift, n: int) -> dict:
    """Rank on cohomology of φ̂∘ρ − l∘ψ (not required to vanish strictly)."""
    diff = difference(compose(dm.phi_hat, lift.rho), compose(dm.factor, sf.psi))
    HP = cohomology(sf.P, n, check=False)
    HS = cohomology(dm.suspended, n, check=False)
    H = induced_map(diff, n, Hs=HP, Ht=HS, check=False)
    return {k: H.rank(k) for k in range(n + 1)}
